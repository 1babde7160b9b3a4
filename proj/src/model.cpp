#include "bloch/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>
#include <string>

#include "bloch/parallel.hpp"

namespace bloch {

namespace {

LatticeVector negated_vector(const LatticeVector& a) {
    LatticeVector out(a.size());
    std::transform(a.begin(), a.end(), out.begin(), [](int x) { return -x; });
    return out;
}

} // namespace

cplx rational_phase(long long num, long long den) {
    num %= den;
    if (num < 0) num += den;
    if ((4 * num) % den == 0) {
        switch ((4 * num) / den) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
        }
    }
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den));
}

namespace {

Matrix hermitian_part(const Matrix& m) {
    Matrix h = 0.5 * (m + m.adjoint());
    return h;
}

std::vector<std::pair<LatticeVector, Matrix>> as_list(const HoppingModel& model) {
    return {model.hoppings().begin(), model.hoppings().end()};
}

} // namespace

int HoppingModel::range() const {
    int r = 0;
    for (const auto& [a, h] : hoppings_)
        for (int x : a) r = std::max(r, std::abs(x));
    return r;
}

double HoppingModel::norm_bound() const {
    double total = 0.0;
    for (const auto& [a, h] : hoppings_) {
        Eigen::JacobiSVD<Matrix> svd(h);
        total += svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    }
    return total;
}

bool HoppingModel::is_real() const {
    return std::all_of(hoppings_.begin(), hoppings_.end(),
                       [](const auto& kv) { return kv.second.imag().isZero(0.0); });
}

HoppingModel build_model(int dim, int bands,
                         const std::vector<std::pair<LatticeVector, Matrix>>& hopping_list) {
    if (dim <= 0) throw InputError("model dimension must be positive, got " + std::to_string(dim));
    if (bands <= 0) throw InputError("band count must be positive, got " + std::to_string(bands));

    HoppingModel::HoppingMap given;
    for (std::size_t i = 0; i < hopping_list.size(); ++i) {
        const auto& [a, h] = hopping_list[i];
        if (static_cast<int>(a.size()) != dim)
            throw InputError("hopping entry " + std::to_string(i) + ": lattice vector has length " +
                             std::to_string(a.size()) + ", expected " + std::to_string(dim));
        if (h.rows() != bands || h.cols() != bands)
            throw InputError("hopping entry " + std::to_string(i) + ": matrix is " + std::to_string(h.rows()) +
                             "x" + std::to_string(h.cols()) + ", expected " + std::to_string(bands) + "x" +
                             std::to_string(bands));
        if (!h.allFinite())
            throw InputError("hopping entry " + std::to_string(i) + ": matrix has non-finite entries");
        auto [it, inserted] = given.try_emplace(a, h);
        if (!inserted) it->second += h;
    }

    HoppingModel::HoppingMap closed;
    for (const auto& [a, h] : given) {
        const LatticeVector minus = negated_vector(a);
        if (a == minus) {
            closed[a] = hermitian_part(h);
            continue;
        }
        if (minus < a && given.count(minus)) continue; // handled from the partner
        Matrix forward = h;
        if (auto partner = given.find(minus); partner != given.end())
            forward = 0.5 * (h + partner->second.adjoint());
        Matrix backward = forward.adjoint();
        closed[a] = std::move(forward);
        closed[minus] = std::move(backward);
    }
    std::erase_if(closed, [](const auto& kv) { return kv.second.isZero(0.0); });
    return HoppingModel(dim, bands, std::move(closed));
}

MomentumGrid::MomentumGrid(int dim, int points_per_axis) : dim_(dim), n_(points_per_axis), size_(1) {
    if (dim <= 0) throw InputError("grid dimension must be positive");
    if (points_per_axis <= 0 || points_per_axis % 2 != 0)
        throw InputError("grid points per axis must be a positive even integer, got " +
                         std::to_string(points_per_axis));
    for (int i = 0; i < dim; ++i) size_ *= static_cast<std::size_t>(n_);
}

std::vector<int> MomentumGrid::indices(std::size_t flat) const {
    std::vector<int> j(dim_);
    for (int axis = dim_ - 1; axis >= 0; --axis) {
        j[axis] = static_cast<int>(flat % n_);
        flat /= n_;
    }
    return j;
}

std::size_t MomentumGrid::flat_index(std::span<const int> j) const {
    std::size_t flat = 0;
    for (int axis = 0; axis < dim_; ++axis) {
        int v = j[axis] % n_;
        if (v < 0) v += n_;
        flat = flat * n_ + static_cast<std::size_t>(v);
    }
    return flat;
}

std::vector<double> MomentumGrid::point(std::size_t flat) const {
    auto j = indices(flat);
    std::vector<double> k(dim_);
    for (int axis = 0; axis < dim_; ++axis) k[axis] = static_cast<double>(j[axis]) / n_;
    return k;
}

std::size_t MomentumGrid::negated(std::size_t flat) const {
    auto j = indices(flat);
    for (int& v : j) v = -v;
    return flat_index(j);
}

bool MomentumGrid::is_fixed_point(std::size_t flat) const {
    auto j = indices(flat);
    return std::all_of(j.begin(), j.end(), [&](int v) { return v == 0 || 2 * v == n_; });
}

std::vector<std::size_t> MomentumGrid::fixed_points() const {
    std::vector<std::size_t> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << dim_); ++mask) {
        std::vector<int> j(dim_);
        for (int axis = 0; axis < dim_; ++axis) j[axis] = (mask >> (dim_ - 1 - axis)) & 1 ? n_ / 2 : 0;
        out.push_back(flat_index(j));
    }
    return out;
}

Matrix bloch_matrix(const HoppingModel& model, std::span<const double> k) {
    Matrix h = Matrix::Zero(model.bands(), model.bands());
    for (const auto& [a, coeff] : model.hoppings()) {
        double phase = 0.0;
        for (int i = 0; i < model.dim(); ++i) phase += k[i] * a[i];
        h += std::polar(1.0, 2.0 * std::numbers::pi * phase) * coeff;
    }
    return hermitian_part(h);
}

Matrix bloch_matrix_rational(const HoppingModel& model, std::span<const int> j, int n) {
    Matrix h = Matrix::Zero(model.bands(), model.bands());
    for (const auto& [a, coeff] : model.hoppings()) {
        long long num = 0;
        for (int i = 0; i < model.dim(); ++i) num += static_cast<long long>(j[i]) * a[i];
        h += rational_phase(num, n) * coeff;
    }
    return hermitian_part(h);
}

EigenData hermitian_eigen(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    const RealVector& raw = solver.eigenvalues();
    std::vector<Eigen::Index> order(raw.size());
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](auto l, auto r) { return raw(l) < raw(r); });
    EigenData out{RealVector(raw.size()), Matrix(h.rows(), h.cols())};
    for (Eigen::Index i = 0; i < raw.size(); ++i) {
        out.values(i) = raw(order[i]);
        out.vectors.col(i) = solver.eigenvectors().col(order[i]);
    }
    return out;
}

BlochSample::BlochSample(MomentumGrid grid, std::vector<Matrix> matrices, std::vector<EigenData> eigen)
    : grid_(std::move(grid)), matrices_(std::move(matrices)), eigen_(std::move(eigen)) {
    if (matrices_.size() != grid_.size() || eigen_.size() != grid_.size())
        throw InputError("Bloch sample does not cover its grid");
}

BlochSample bloch_transform(const HoppingModel& model, const MomentumGrid& grid) {
    if (grid.dim() != model.dim())
        throw InputError("grid dimension " + std::to_string(grid.dim()) + " does not match model dimension " +
                         std::to_string(model.dim()));
    std::vector<Matrix> matrices(grid.size());
    std::vector<EigenData> eigen(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const auto j = grid.indices(i);
        matrices[i] = bloch_matrix_rational(model, j, grid.n());
        eigen[i] = hermitian_eigen(matrices[i]);
    });
    return BlochSample(grid, std::move(matrices), std::move(eigen));
}

namespace {
constexpr double kGapTieTol = 1e-12;
}

GapLocation locate_gap(const BlochSample& sample) {
    std::vector<double> local(sample.eigen().size());
    for (std::size_t i = 0; i < local.size(); ++i) local[i] = sample.eigen()[i].values.cwiseAbs().minCoeff();
    const double gap = *std::min_element(local.begin(), local.end());
    // Minima are often attained on whole lines; report the first point whose
    // value ties the minimum up to roundoff so the location is reproducible.
    std::size_t at = 0;
    while (local[at] > gap + kGapTieTol) ++at;
    return {gap, at};
}

double spectral_gap(const BlochSample& sample) { return locate_gap(sample).gap; }

ProjectorField::ProjectorField(MomentumGrid grid, std::vector<Matrix> projectors)
    : grid_(std::move(grid)), projectors_(std::move(projectors)), rank_(0) {
    if (projectors_.size() != grid_.size() || projectors_.empty())
        throw InputError("projector field does not cover its grid");
    rank_ = static_cast<int>(std::lround(projectors_.front().trace().real()));
    for (std::size_t i = 0; i < projectors_.size(); ++i) {
        const Matrix& p = projectors_[i];
        if (max_abs(p * p - p) > 1e-10 || max_abs(p - p.adjoint()) > 1e-10)
            throw InputError("matrix at grid point " + std::to_string(i) + " is not an orthogonal projector");
        if (std::abs(p.trace().real() - rank_) > 1e-8)
            throw InputError("projector rank varies across the grid (point " + std::to_string(i) + ")");
    }
}

Matrix ProjectorField::frame(std::size_t i) const {
    if (rank_ == 0) return Matrix(bands(), 0);
    EigenData e = hermitian_eigen(projectors_[i]);
    return e.vectors.rightCols(rank_);
}

ProjectorField ProjectorField::complement() const {
    std::vector<Matrix> out(projectors_.size());
    const Matrix id = Matrix::Identity(bands(), bands());
    for (std::size_t i = 0; i < projectors_.size(); ++i) out[i] = id - projectors_[i];
    return ProjectorField(grid_, std::move(out));
}

ProjectorField flatten(const BlochSample& sample, double gap_tol) {
    const GapLocation gap = locate_gap(sample);
    if (!(gap.gap > gap_tol)) throw NotInsulatorError(sample.grid().point(gap.point), gap.gap);

    const auto& eigen = sample.eigen();
    std::vector<Matrix> projectors(eigen.size());
    std::vector<int> ranks(eigen.size());
    parallel_for(eigen.size(), [&](std::size_t i) {
        const EigenData& e = eigen[i];
        const auto negative = static_cast<Eigen::Index>(
            std::count_if(e.values.begin(), e.values.end(), [](double v) { return v < 0.0; }));
        const Eigen::Index positive = e.values.size() - negative;
        Matrix v = e.vectors.rightCols(positive);
        projectors[i] = v * v.adjoint();
        ranks[i] = static_cast<int>(positive);
    });
    for (std::size_t i = 1; i < ranks.size(); ++i)
        if (ranks[i] != ranks[0])
            throw UnresolvedError("internal inconsistency: projector rank " + std::to_string(ranks[i]) + " at k = " +
                                  format_momentum(sample.grid().point(i)) + " differs from rank " +
                                  std::to_string(ranks[0]) + " at k = 0; gap_tol is too small for this grid");
    return ProjectorField(sample.grid(), std::move(projectors));
}

HoppingModel direct_sum(const HoppingModel& a, const HoppingModel& b) {
    if (a.dim() != b.dim()) throw InputError("direct sum of models with different dimensions");
    const int n = a.bands() + b.bands();
    std::map<LatticeVector, Matrix> blocks;
    auto block = [&](const LatticeVector& v) -> Matrix& {
        auto [it, inserted] = blocks.try_emplace(v, Matrix::Zero(n, n));
        return it->second;
    };
    for (const auto& [v, h] : a.hoppings()) block(v).topLeftCorner(a.bands(), a.bands()) = h;
    for (const auto& [v, h] : b.hoppings()) block(v).bottomRightCorner(b.bands(), b.bands()) = h;
    return build_model(a.dim(), n, {blocks.begin(), blocks.end()});
}

HoppingModel conjugate(const HoppingModel& model) {
    auto list = as_list(model);
    for (auto& [v, h] : list) h = h.conjugate().eval();
    return build_model(model.dim(), model.bands(), list);
}

HoppingModel negate(const HoppingModel& model) {
    auto list = as_list(model);
    for (auto& [v, h] : list) h = -h;
    return build_model(model.dim(), model.bands(), list);
}

HoppingModel unitary_conjugate(const HoppingModel& model, const Matrix& v) {
    if (v.rows() != model.bands() || v.cols() != model.bands())
        throw InputError("conjugating unitary has the wrong size");
    auto list = as_list(model);
    for (auto& [a, h] : list) h = (v * h * v.adjoint()).eval();
    return build_model(model.dim(), model.bands(), list);
}

HoppingModel extend_dimension(const HoppingModel& model, int new_dim) {
    if (new_dim < model.dim()) throw InputError("cannot reduce model dimension");
    auto list = as_list(model);
    for (auto& [a, h] : list) a.resize(new_dim, 0);
    return build_model(new_dim, model.bands(), list);
}

} // namespace bloch
