#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "bloch/boundary.hpp"
#include "bloch/registry.hpp"
#include "bloch/stability.hpp"

namespace bloch {

struct AnalysisConfig {
    std::string model = "qwz";                ///< registry name or path to a model JSON file
    std::map<std::string, double> params;
    int bands = 2;                            ///< used by trivial_atomic
    std::optional<std::string> trs;           ///< identity | isigma2 | block; overrides the model's datum
    int grid_n = 24;
    int ribbon_width = kDefaultRibbonWidth;
    int parallel_points = kDefaultFlowPoints;
    double gap_tol = kDefaultGapTol;
    std::string output;                       ///< empty means stdout

    void validate() const;
};

enum ExitCode : int { exit_ok = 0, exit_input_error = 1, exit_unresolved = 2 };

/// A finished command: the JSON document to emit and the process exit code.
struct CommandResult {
    nlohmann::ordered_json report;
    int exit_code = exit_ok;
};

nlohmann::ordered_json to_json(const AnalysisConfig& config);

ModelDocument resolve_model(const AnalysisConfig& config);

CommandResult cmd_analyze(const AnalysisConfig& config);
/// When csv_path is non-empty the ribbon spectrum is written there.
CommandResult cmd_edge(const AnalysisConfig& config, const std::string& csv_path = {});
CommandResult cmd_symmetry(const AnalysisConfig& config);
CommandResult cmd_chern(const AnalysisConfig& config, bool sweep);
CommandResult cmd_thresholds(SymmetryClass cls, CWShape shape, std::optional<int> torus);

/// Serialization used for every emitted report (two-space indent, trailing newline).
std::string dump_report(const nlohmann::ordered_json& report);

} // namespace bloch
