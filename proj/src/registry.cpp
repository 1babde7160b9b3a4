#include "bloch/registry.hpp"

#include <set>

namespace bloch {

namespace pauli {
Matrix identity() { return Matrix::Identity(2, 2); }
Matrix x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}
Matrix y() {
    Matrix m(2, 2);
    m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
    return m;
}
Matrix z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}
} // namespace pauli

namespace {

const cplx I{0.0, 1.0};

double param_or(const std::map<std::string, double>& params, const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void check_params(const std::string& model, const std::map<std::string, double>& params,
                  const std::set<std::string>& allowed) {
    for (const auto& [key, value] : params)
        if (!allowed.count(key)) throw InputError("model " + model + " has no parameter '" + key + "'");
}

} // namespace

HoppingModel qwz(double m) {
    using namespace pauli;
    return build_model(2, 2,
                       {
                           {{0, 0}, m * z()},
                           {{1, 0}, -0.5 * (z() + I * x())},
                           {{0, 1}, -0.5 * (z() + I * y())},
                       });
}

HoppingModel trivial_atomic(int bands, int dim) {
    if (bands <= 0) throw InputError("trivial_atomic needs a positive band count");
    Matrix onsite = Matrix::Zero(bands, bands);
    for (int i = 0; i < bands; ++i) onsite(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
    return build_model(dim, bands, {{LatticeVector(dim, 0), onsite}});
}

HoppingModel chain_1d(double t) {
    Matrix intra(2, 2), inter(2, 2);
    intra << 0.0, 1.0, 1.0, 0.0;
    inter << 0.0, 0.0, t, 0.0;
    return build_model(1, 2, {{{0}, intra}, {{1}, inter}});
}

HoppingModel doubled_qwz(double m) {
    const HoppingModel base = qwz(m);
    return direct_sum(base, conjugate(base));
}

Matrix block_trs_unitary(int half) {
    Matrix u = Matrix::Zero(2 * half, 2 * half);
    u.topRightCorner(half, half) = -Matrix::Identity(half, half);
    u.bottomLeftCorner(half, half) = Matrix::Identity(half, half);
    return u;
}

Matrix named_trs_unitary(const std::string& name, int bands) {
    if (name == "identity") return Matrix::Identity(bands, bands);
    if (name == "isigma2") {
        if (bands != 2) throw InputError("trs 'isigma2' needs a two-band model");
        return I * pauli::y();
    }
    if (name == "block") {
        if (bands % 2 != 0) throw InputError("trs 'block' needs an even band count");
        return block_trs_unitary(bands / 2);
    }
    throw InputError("unknown time-reversal datum '" + name + "' (expected identity, isigma2 or block)");
}

ModelDocument registry_model(const std::string& name, const std::map<std::string, double>& params, int bands) {
    if (name == "trivial_atomic") {
        check_params(name, params, {"dim"});
        const int dim = static_cast<int>(param_or(params, "dim", 2));
        HoppingModel model = trivial_atomic(bands, dim);
        return {model, Matrix::Identity(bands, bands)};
    }
    if (name == "chain_1d") {
        check_params(name, params, {"t"});
        return {chain_1d(param_or(params, "t", 0.5)), Matrix::Identity(2, 2)};
    }
    if (name == "qwz") {
        check_params(name, params, {"m"});
        return {qwz(param_or(params, "m", 1.0)), std::nullopt};
    }
    if (name == "doubled_qwz") {
        check_params(name, params, {"m"});
        return {doubled_qwz(param_or(params, "m", 1.0)), block_trs_unitary(2)};
    }
    throw InputError("unknown model '" + name + "' (registry: trivial_atomic, chain_1d, qwz, doubled_qwz)");
}

} // namespace bloch
