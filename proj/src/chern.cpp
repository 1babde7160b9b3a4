#include "bloch/chern.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bloch/parallel.hpp"

namespace bloch {

namespace {

std::string plane_name(std::pair<int, int> plane) {
    return "(" + std::to_string(plane.first) + "," + std::to_string(plane.second) + ")";
}

} // namespace

UnresolvedChernError::UnresolvedChernError(std::pair<int, int> plane, const std::string& reason)
    : UnresolvedError("Chern number in plane " + plane_name(plane) + " unresolved: " + reason +
                      "; try a finer grid (the gap may be closing)"),
      plane_(plane) {}

ChernResult chern_number(const ProjectorField& field, std::pair<int, int> plane, const std::vector<int>& transverse) {
    const MomentumGrid& grid = field.grid();
    const int dim = grid.dim();
    const auto [ax, ay] = plane;
    if (dim < 2) throw InputError("Chern numbers need a grid of dimension at least 2");
    if (ax == ay || ax < 0 || ay < 0 || ax >= dim || ay >= dim)
        throw InputError("invalid Chern plane " + plane_name(plane));
    if (!transverse.empty() && static_cast<int>(transverse.size()) != dim)
        throw InputError("transverse index vector must have one entry per axis");

    const int n = grid.n();
    std::vector<int> base = transverse.empty() ? std::vector<int>(dim, 0) : transverse;
    auto flat_at = [&](int x, int y) {
        std::vector<int> j = base;
        j[ax] = x;
        j[ay] = y;
        return grid.flat_index(j);
    };

    const std::size_t cells = static_cast<std::size_t>(n) * n;
    std::vector<Matrix> frames(cells);
    parallel_for(cells, [&](std::size_t c) {
        frames[c] = field.frame(flat_at(static_cast<int>(c / n), static_cast<int>(c % n)));
    });
    auto frame = [&](int x, int y) -> const Matrix& { return frames[((x % n) * n) + (y % n)]; };

    // Normalized link variable det(F(k)^† F(k')), or zero when singular.
    std::vector<cplx> link_x(cells), link_y(cells);
    std::vector<char> singular(cells, 0);
    parallel_for(cells, [&](std::size_t c) {
        const int x = static_cast<int>(c / n), y = static_cast<int>(c % n);
        const Matrix& here = frame(x, y);
        for (int dir = 0; dir < 2; ++dir) {
            const Matrix& next = dir == 0 ? frame(x + 1, y) : frame(x, y + 1);
            cplx det = field.rank() == 0 ? cplx(1.0) : (here.adjoint() * next).determinant();
            const double mag = std::abs(det);
            if (mag < kOverlapSingularTol) {
                singular[c] = 1;
                det = 1.0;
            } else {
                det /= mag;
            }
            (dir == 0 ? link_x : link_y)[c] = det;
        }
    });
    for (std::size_t c = 0; c < cells; ++c)
        if (singular[c])
            throw UnresolvedChernError(plane, "overlap matrix numerically singular at grid cell (" +
                                                  std::to_string(c / n) + "," + std::to_string(c % n) + ")");

    auto idx = [&](int x, int y) { return static_cast<std::size_t>(((x % n) * n) + (y % n)); };
    double flux = 0.0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const cplx loop = link_x[idx(x, y)] * link_y[idx(x + 1, y)] * std::conj(link_x[idx(x, y + 1)]) *
                              std::conj(link_y[idx(x, y)]);
            flux += std::arg(loop);
        }

    const double raw = flux / (2.0 * std::numbers::pi);
    ChernResult result{plane, static_cast<int>(std::lround(raw)), 0.0, n};
    result.residual = std::abs(raw - result.value);
    if (!(result.residual < kChernResidualTol))
        throw UnresolvedChernError(plane, "residual " + std::to_string(result.residual) + " exceeds tolerance");
    return result;
}

std::vector<ChernResult> chern_vector(const ProjectorField& field) {
    const int dim = field.grid().dim();
    if (dim < 2) throw InputError("Chern vector needs dimension at least 2");
    std::vector<ChernResult> out;
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) out.push_back(chern_number(field, {i, j}));
    return out;
}

std::vector<ChernResult> chern_sweep(const ProjectorField& field, std::pair<int, int> plane, int sweep_axis) {
    const int dim = field.grid().dim();
    if (sweep_axis < 0 || sweep_axis >= dim || sweep_axis == plane.first || sweep_axis == plane.second)
        throw InputError("sweep axis must be a transverse axis");
    std::vector<ChernResult> out;
    for (int t = 0; t < field.grid().n(); ++t) {
        std::vector<int> transverse(dim, 0);
        transverse[sweep_axis] = t;
        out.push_back(chern_number(field, plane, transverse));
    }
    return out;
}

StableVerdict stably_trivial(const ProjectorField& field) {
    StableVerdict verdict;
    const int dim = field.grid().dim();
    verdict.necessary_only = dim > 3;
    if (dim < 2) {
        // Reduced K-theory of the circle vanishes.
        verdict.status = StableStatus::stably_trivial;
        verdict.message = "no coordinate planes in dimension 1; every bundle over the circle is stably trivial";
        return verdict;
    }
    try {
        verdict.evidence = chern_vector(field);
    } catch (const UnresolvedChernError& e) {
        verdict.status = StableStatus::unresolved;
        verdict.message = e.what();
        return verdict;
    }
    const bool all_zero = std::all_of(verdict.evidence.begin(), verdict.evidence.end(),
                                      [](const ChernResult& r) { return r.value == 0; });
    verdict.status = all_zero ? StableStatus::stably_trivial : StableStatus::obstructed;
    if (!all_zero)
        verdict.message = "nonzero Chern number";
    else if (verdict.necessary_only)
        verdict.message = "all first Chern numbers vanish; necessary-only in dimension > 3";
    else
        verdict.message = "all Chern numbers vanish";
    return verdict;
}

std::string to_string(StableStatus status) {
    switch (status) {
    case StableStatus::stably_trivial: return "stably_trivial";
    case StableStatus::obstructed: return "obstructed";
    default: return "unresolved";
    }
}

nlohmann::ordered_json to_json(const ChernResult& r) {
    nlohmann::ordered_json j;
    j["plane"] = {r.plane.first, r.plane.second};
    j["value"] = r.value;
    j["residual"] = r.residual;
    j["grid_n"] = r.grid_n;
    return j;
}

nlohmann::ordered_json to_json(const StableVerdict& v) {
    nlohmann::ordered_json j;
    j["status"] = to_string(v.status);
    j["necessary_only"] = v.necessary_only;
    j["evidence"] = nlohmann::ordered_json::array();
    for (const auto& r : v.evidence) j["evidence"].push_back(to_json(r));
    j["message"] = v.message;
    return j;
}

} // namespace bloch
