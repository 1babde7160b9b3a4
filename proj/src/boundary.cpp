#include "bloch/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "bloch/chern.hpp"
#include "bloch/parallel.hpp"

namespace bloch {

namespace {

constexpr double kDegenerate = 1e-8;

struct Match {
    std::size_t from;
    std::size_t to;
};

// Order-preserving alignment of two sorted energy lists minimizing the total
// energy displacement; states left unmatched cost `skip` each.
std::vector<Match> align(const std::vector<double>& a, const std::vector<double>& b, double skip) {
    const std::size_t n = a.size(), m = b.size();
    std::vector<std::vector<double>> cost(n + 1, std::vector<double>(m + 1, 0.0));
    for (std::size_t i = 1; i <= n; ++i) cost[i][0] = i * skip;
    for (std::size_t j = 1; j <= m; ++j) cost[0][j] = j * skip;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= m; ++j)
            cost[i][j] = std::min({cost[i - 1][j - 1] + std::abs(a[i - 1] - b[j - 1]), cost[i - 1][j] + skip,
                                   cost[i][j - 1] + skip});
    std::vector<Match> out;
    std::size_t i = n, j = m;
    while (i > 0 && j > 0) {
        if (cost[i][j] == cost[i - 1][j - 1] + std::abs(a[i - 1] - b[j - 1])) {
            out.push_back({i - 1, j - 1});
            --i;
            --j;
        } else if (cost[i][j] == cost[i - 1][j] + skip) {
            --i;
        } else {
            --j;
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

} // namespace

Matrix partial_bloch_block(const HoppingModel& model, int shift, long long j, long long den) {
    Matrix block = Matrix::Zero(model.bands(), model.bands());
    for (const auto& [a, h] : model.hoppings())
        if (a[0] == shift) block += rational_phase(static_cast<long long>(a[1]) * j, den) * h;
    return block;
}

Matrix ribbon_hamiltonian(const HoppingModel& model, int width, long long j, long long den) {
    const int b = model.bands();
    const int r = model.range();
    Matrix h = Matrix::Zero(static_cast<Eigen::Index>(width) * b, static_cast<Eigen::Index>(width) * b);
    // Lower blocks are filled as adjoints of the upper ones so h is exactly Hermitian.
    for (int s = 0; s <= r; ++s) {
        Matrix block = partial_bloch_block(model, s, j, den);
        if (s == 0) block = (0.5 * (block + block.adjoint())).eval();
        if (block.isZero(0.0)) continue;
        for (int x = 0; x + s < width; ++x) {
            const Eigen::Index row = static_cast<Eigen::Index>(x) * b, col = static_cast<Eigen::Index>(x + s) * b;
            h.block(row, col, b, b) = block;
            if (s > 0) h.block(col, row, b, b) = block.adjoint();
        }
    }
    return h;
}

RibbonSpectrum ribbon_spectrum(const HoppingModel& model, int width, int parallel_points) {
    if (model.dim() != 2) throw InputError("ribbon spectra are implemented for two-dimensional models only");
    if (width <= 2 * model.range())
        throw InputError("ribbon width " + std::to_string(width) + " must exceed twice the hopping range " +
                         std::to_string(model.range()));
    if (parallel_points < 3 || parallel_points % 2 == 0)
        throw InputError("parallel momentum count must be odd and at least 3, got " + std::to_string(parallel_points));

    RibbonSpectrum spec;
    spec.width = width;
    spec.bands = model.bands();
    const auto m = static_cast<std::size_t>(parallel_points);
    const long long den = parallel_points - 1;
    spec.k_parallel.resize(m);
    spec.energies.resize(m);
    spec.left_weights.resize(m);
    spec.right_weights.resize(m);

    const int edge = spec.edge_sites();
    const int b = model.bands();
    parallel_for(m, [&](std::size_t j) {
        spec.k_parallel[j] = static_cast<double>(j) / static_cast<double>(den);
        const EigenData e = hermitian_eigen(ribbon_hamiltonian(model, width, static_cast<long long>(j), den));
        const Eigen::Index count = e.values.size();
        RealVector left(count), right(count);
        for (Eigen::Index c = 0; c < count; ++c) {
            const auto density = e.vectors.col(c).cwiseAbs2();
            left(c) = density.head(static_cast<Eigen::Index>(edge) * b).sum();
            right(c) = density.tail(static_cast<Eigen::Index>(edge) * b).sum();
        }
        spec.energies[j] = e.values;
        spec.left_weights[j] = left;
        spec.right_weights[j] = right;
    });
    return spec;
}

int edge_spectral_flow(const RibbonSpectrum& spec, double bulk_gap, Edge edge) {
    if (!(bulk_gap > 0.0)) throw InputError("edge spectral flow needs a positive bulk gap");
    const auto& weights = edge == Edge::left ? spec.left_weights : spec.right_weights;

    auto candidates = [&](std::size_t j) {
        std::vector<double> out;
        for (Eigen::Index c = 0; c < spec.energies[j].size(); ++c)
            if (std::abs(spec.energies[j](c)) < bulk_gap && weights[j](c) > kEdgeWeightThreshold)
                out.push_back(spec.energies[j](c));
        return out; // ascending, inherited from the spectrum
    };

    const double window = kTrackingAmbiguity * bulk_gap;
    int flow = 0;
    std::vector<double> current = candidates(0);
    for (std::size_t j = 0; j + 1 < spec.energies.size(); ++j) {
        std::vector<double> next = candidates(j + 1);
        for (const Match& match : align(current, next, window)) {
            const double from = current[match.from], to = next[match.to];
            if ((from > 0.0) == (to > 0.0)) continue;
            for (std::size_t alt = 0; alt < next.size(); ++alt) {
                if (alt == match.to) continue;
                const double other = next[alt];
                if (std::abs(other - to) < window && std::abs(other - to) > kDegenerate && (other > 0.0) != (to > 0.0))
                    throw TrackingError("tracking failed near k_parallel = " + std::to_string(spec.k_parallel[j]) +
                                        ": two edge branches compete for one zero crossing; increase the number "
                                        "of parallel momenta");
            }
            flow += to > from ? 1 : -1;
        }
        current = std::move(next);
    }
    return flow;
}

BulkBoundaryReport bulk_boundary_check(const HoppingModel& model, const BulkBoundaryOptions& options) {
    if (model.dim() != 2) throw InputError("bulk-boundary check needs a two-dimensional model");
    return bulk_boundary_check(model, ribbon_spectrum(model, options.width, options.parallel_points), options);
}

BulkBoundaryReport bulk_boundary_check(const HoppingModel& model, const RibbonSpectrum& spec,
                                       const BulkBoundaryOptions& options) {
    if (model.dim() != 2) throw InputError("bulk-boundary check needs a two-dimensional model");
    const BlochSample sample = bloch_transform(model, MomentumGrid(2, options.grid_n));
    BulkBoundaryReport report;
    report.bulk_gap = spectral_gap(sample);
    const ChernResult chern = chern_number(flatten(sample, options.gap_tol), {0, 1});
    report.chern = chern.value;
    report.chern_residual = chern.residual;

    report.flow_left = edge_spectral_flow(spec, report.bulk_gap, Edge::left);
    report.flow_right = edge_spectral_flow(spec, report.bulk_gap, Edge::right);
    report.magnitudes_match = std::abs(report.chern) == std::abs(report.flow_left);
    report.sign_matches = report.flow_left == kEdgeFlowSign * report.chern;
    report.pass = report.magnitudes_match && report.sign_matches;
    return report;
}

void write_ribbon_csv(std::ostream& out, const RibbonSpectrum& spec) {
    out << "k_parallel,eigenvalue_index,energy,left_weight,right_weight\n";
    out << std::setprecision(12);
    for (std::size_t j = 0; j < spec.k_parallel.size(); ++j)
        for (Eigen::Index c = 0; c < spec.energies[j].size(); ++c)
            out << spec.k_parallel[j] << ',' << c << ',' << spec.energies[j](c) << ',' << spec.left_weights[j](c)
                << ',' << spec.right_weights[j](c) << '\n';
}

std::string to_string(Edge edge) { return edge == Edge::left ? "left" : "right"; }

nlohmann::ordered_json to_json(const BulkBoundaryReport& report) {
    nlohmann::ordered_json j;
    j["bulk_gap"] = report.bulk_gap;
    j["chern"] = report.chern;
    j["chern_residual"] = report.chern_residual;
    j["flow_left"] = report.flow_left;
    j["flow_right"] = report.flow_right;
    j["magnitudes_match"] = report.magnitudes_match;
    j["sign_matches"] = report.sign_matches;
    j["pass"] = report.pass;
    return j;
}

} // namespace bloch
