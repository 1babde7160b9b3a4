#include "bloch/symmetry.hpp"

#include "bloch/parallel.hpp"

namespace bloch {

TimeReversalDatum classify_datum(const Matrix& u) {
    if (u.rows() != u.cols() || u.rows() == 0) throw InputError("time-reversal unitary must be square");
    const Matrix id = Matrix::Identity(u.rows(), u.cols());
    if (max_abs(u * u.adjoint() - id) > kInputIdentityTol)
        throw InputError("time-reversal datum is not unitary");
    const Matrix square = u * u.conjugate();
    if (max_abs(square - id) <= kModelCheckTol) return TimeReversalDatum(u, +1);
    if (max_abs(square + id) <= kModelCheckTol) return TimeReversalDatum(u, -1);
    throw InputError("not an involution datum: U*conj(U) is not +-identity, so theta^2 is not a scalar sign");
}

SymmetryCheck check_model_symmetry(const HoppingModel& model, const TimeReversalDatum& trs) {
    if (trs.bands() != model.bands()) throw InputError("time-reversal datum does not match the band count");
    const Matrix& u = trs.unitary_part();
    SymmetryCheck check;
    for (const auto& [a, h] : model.hoppings()) {
        const double v = max_abs(u * h.conjugate() * u.adjoint() - h);
        if (check.worst_vector.empty() || v > check.max_violation) {
            check.max_violation = v;
            check.worst_vector = a;
        }
    }
    check.holds = check.max_violation <= kModelCheckTol;
    return check;
}

SymmetryCheck verify_bundle_involution(const ProjectorField& field, const TimeReversalDatum& trs) {
    if (trs.bands() != field.bands()) throw InputError("time-reversal datum does not match the band count");
    const Matrix& u = trs.unitary_part();
    const MomentumGrid& grid = field.grid();
    std::vector<double> violation(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        violation[i] = max_abs(u * field[i].conjugate() * u.adjoint() - field[grid.negated(i)]);
    });
    SymmetryCheck check;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < violation.size(); ++i)
        if (violation[i] > violation[worst]) worst = i;
    check.max_violation = violation[worst];
    check.worst_k = grid.point(worst);
    check.holds = check.max_violation <= kGridCheckTol;
    return check;
}

SymmetryCheck kramers_check(const BlochSample& sample, const TimeReversalDatum& trs) {
    if (trs.sign() != -1) throw InputError("Kramers pairing requires a quaternionic datum (sign -1)");
    if (sample.bands() % 2 != 0) throw InputError("quaternionic fibre must have even dimension");
    if (trs.bands() != sample.bands()) throw InputError("time-reversal datum does not match the band count");
    SymmetryCheck check;
    for (std::size_t point : sample.grid().fixed_points()) {
        const RealVector& values = sample.eigen()[point].values;
        for (Eigen::Index i = 0; i + 1 < values.size(); i += 2) {
            const double defect = std::abs(values(i + 1) - values(i));
            if (check.worst_k.empty() || defect > check.max_violation) {
                check.max_violation = defect;
                check.worst_k = sample.grid().point(point);
            }
        }
    }
    check.holds = check.max_violation <= kGridCheckTol;
    return check;
}

std::string class_name(const TimeReversalDatum& trs) { return trs.sign() > 0 ? "real" : "quaternionic"; }

nlohmann::ordered_json to_json(const SymmetryCheck& check) {
    nlohmann::ordered_json j;
    j["holds"] = check.holds;
    j["max_violation"] = check.max_violation;
    if (!check.worst_vector.empty()) j["worst_vector"] = check.worst_vector;
    if (!check.worst_k.empty()) j["worst_k"] = check.worst_k;
    return j;
}

} // namespace bloch
