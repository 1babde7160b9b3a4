#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "bloch/model.hpp"

namespace bloch {

/**
 Spectrum of the width-W open truncation of a 2D model along axis 0, Fourier
 transformed along axis 1. Parallel momenta are j/(M-1), j = 0..M-1, so both
 endpoints of the period are sampled.
 */
struct RibbonSpectrum {
    int width = 0;
    int bands = 0;
    std::vector<double> k_parallel;
    std::vector<RealVector> energies;       ///< ascending, width*bands each
    std::vector<RealVector> left_weights;   ///< norm fraction on the first ceil(W/4) sites
    std::vector<RealVector> right_weights;  ///< norm fraction on the last ceil(W/4) sites

    int edge_sites() const { return (width + 3) / 4; }
};

enum class Edge { left, right };

inline constexpr double kEdgeWeightThreshold = 0.7;
inline constexpr double kTrackingAmbiguity = 0.3;
inline constexpr int kDefaultRibbonWidth = 40;
inline constexpr int kDefaultFlowPoints = 401;
inline constexpr int kDefaultSpectrumPoints = 201;

/// Flow on the left edge equals kEdgeFlowSign times the Chern number of the
/// positive-subspace projector in plane (0, 1).
inline constexpr int kEdgeFlowSign = +1;

class TrackingError : public UnresolvedError {
public:
    using UnresolvedError::UnresolvedError;
};

/// Sum over a with a[0] == shift of H_a exp(2πi a[1] j/den).
Matrix partial_bloch_block(const HoppingModel& model, int shift, long long j, long long den);

/// Compression of the partially transformed Hamiltonian to `width` sites;
/// block (x, x') is partial_bloch_block(x' - x), with blocks below the
/// diagonal taken as adjoints so the result is exactly Hermitian.
Matrix ribbon_hamiltonian(const HoppingModel& model, int width, long long j, long long den);

/// Requires dim 2, width > 2 * range, odd parallel_points >= 3.
RibbonSpectrum ribbon_spectrum(const HoppingModel& model, int width, int parallel_points);

/// Signed count of zero crossings by branches localized on `edge`, positive
/// for upward crossings as k_parallel increases through one period.
int edge_spectral_flow(const RibbonSpectrum& spec, double bulk_gap, Edge edge);

struct BulkBoundaryOptions {
    int grid_n = 24;
    int width = kDefaultRibbonWidth;
    int parallel_points = kDefaultFlowPoints;
    double gap_tol = kDefaultGapTol;
};

struct BulkBoundaryReport {
    double bulk_gap = 0.0;
    int chern = 0;
    double chern_residual = 0.0;
    int flow_left = 0;
    int flow_right = 0;
    bool magnitudes_match = false;
    bool sign_matches = false;
    bool pass = false;
};

BulkBoundaryReport bulk_boundary_check(const HoppingModel& model, const BulkBoundaryOptions& options = {});
/// Same check reusing an already computed ribbon spectrum of `model`.
BulkBoundaryReport bulk_boundary_check(const HoppingModel& model, const RibbonSpectrum& spec,
                                       const BulkBoundaryOptions& options);

void write_ribbon_csv(std::ostream& out, const RibbonSpectrum& spec);

std::string to_string(Edge edge);
nlohmann::ordered_json to_json(const BulkBoundaryReport& report);

} // namespace bloch
