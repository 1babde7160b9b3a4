#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bloch/model.hpp"

namespace bloch {

struct ChernResult {
    std::pair<int, int> plane;
    int value = 0;
    double residual = 0.0;   ///< |raw - round(raw)| of the summed plaquette phases / 2π
    int grid_n = 0;
};

inline constexpr double kChernResidualTol = 0.01;
inline constexpr double kOverlapSingularTol = 1e-12;

/// Thrown when a Chern number cannot be resolved on the given grid.
class UnresolvedChernError : public UnresolvedError {
public:
    UnresolvedChernError(std::pair<int, int> plane, const std::string& reason);
    std::pair<int, int> plane() const { return plane_; }

private:
    std::pair<int, int> plane_;
};

/**
 First Chern number of im(p) over the (i, j) coordinate 2-torus, by the
 gauge-invariant link-variable method: each plaquette contributes the
 principal argument of the product of det(overlap) link variables around it.

 Transverse momenta are fixed at grid index `transverse` (0 by default),
 one entry per axis; entries for i and j are ignored.
 */
ChernResult chern_number(const ProjectorField& field, std::pair<int, int> plane,
                         const std::vector<int>& transverse = {});

/// One result per axis pair i < j, transverse momenta at 0.
std::vector<ChernResult> chern_vector(const ProjectorField& field);

/// Chern numbers of the (i, j) plane at every value of one further axis.
std::vector<ChernResult> chern_sweep(const ProjectorField& field, std::pair<int, int> plane, int sweep_axis);

enum class StableStatus { stably_trivial, obstructed, unresolved };

struct StableVerdict {
    StableStatus status = StableStatus::unresolved;
    /// Set for dim > 3, where vanishing first Chern numbers do not exhaust K-theory.
    bool necessary_only = false;
    std::vector<ChernResult> evidence;
    std::string message;
};

StableVerdict stably_trivial(const ProjectorField& field);

std::string to_string(StableStatus status);

nlohmann::ordered_json to_json(const ChernResult& r);
nlohmann::ordered_json to_json(const StableVerdict& v);

} // namespace bloch
