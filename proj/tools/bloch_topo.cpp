#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bloch/pipeline.hpp"

namespace {

void add_model_options(CLI::App& cmd, bloch::AnalysisConfig& config, std::vector<std::string>& params,
                       std::string& trs) {
    cmd.add_option("--model", config.model, "Registry name (trivial_atomic, chain_1d, qwz, doubled_qwz) or model JSON path")
        ->capture_default_str();
    cmd.add_option("--param", params, "Model parameter as name=value (repeatable)");
    cmd.add_option("--bands", config.bands, "Band count for trivial_atomic")->capture_default_str();
    cmd.add_option("--trs", trs, "Time-reversal datum: identity, isigma2 or block");
    cmd.add_option("--grid-n", config.grid_n, "Even number of momentum points per axis")->capture_default_str();
    cmd.add_option("--width", config.ribbon_width, "Ribbon width in sites")->capture_default_str();
    cmd.add_option("--points", config.parallel_points, "Odd number of parallel momenta")->capture_default_str();
    cmd.add_option("--gap-tol", config.gap_tol, "Smallest admissible |eigenvalue|")->capture_default_str();
    cmd.add_option("-o,--output", config.output, "Report path (default: stdout)");
}

void finish_config(bloch::AnalysisConfig& config, const std::vector<std::string>& params, const std::string& trs) {
    for (const auto& p : params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0) throw bloch::InputError("--param expects name=value, got '" + p + "'");
        try {
            std::size_t used = 0;
            const std::string value = p.substr(eq + 1);
            config.params[p.substr(0, eq)] = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::logic_error&) {
            throw bloch::InputError("--param value is not a number in '" + p + "'");
        }
    }
    if (!trs.empty()) config.trs = trs;
}

int emit(const bloch::CommandResult& result, const std::string& output) {
    const std::string text = bloch::dump_report(result.report);
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write report to " << output << '\n';
            return bloch::exit_input_error;
        }
        out << text;
    }
    if (result.exit_code != bloch::exit_ok && result.report.contains("error"))
        std::cerr << "error: " << result.report["error"]["message"].get<std::string>() << '\n';
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topological band analysis of finite-range lattice Hamiltonians"};
    app.require_subcommand(1);

    bloch::AnalysisConfig config;
    std::vector<std::string> params;
    std::string trs;
    std::string csv_path;
    bool sweep = false;
    std::string cls = "real";
    int d0 = 0, d1 = 0, torus = 0;

    auto* analyze = app.add_subcommand("analyze", "Gap, projector rank, Chern numbers, thresholds and triviality verdict");
    add_model_options(*analyze, config, params, trs);
    auto* edge = app.add_subcommand("edge", "Ribbon spectrum and edge spectral flow");
    add_model_options(*edge, config, params, trs);
    edge->add_option("--csv", csv_path, "Write the ribbon spectrum as CSV");
    auto* symmetry = app.add_subcommand("symmetry", "Time-reversal classification and checks");
    add_model_options(*symmetry, config, params, trs);
    auto* chern = app.add_subcommand("chern", "Chern numbers of every coordinate plane");
    add_model_options(*chern, config, params, trs);
    chern->add_flag("--sweep", sweep, "Recompute each plane at every transverse slice");
    auto* thresholds = app.add_subcommand("thresholds", "Rank thresholds k0/k1 for a Z/2-CW shape");
    thresholds->add_option("--class", cls, "complex, real or quaternionic")->capture_default_str();
    thresholds->add_option("--d0", d0, "Max dimension of trivial cells")->check(CLI::NonNegativeNumber);
    thresholds->add_option("--d1", d1, "Max dimension of free cells")->check(CLI::NonNegativeNumber);
    auto* torus_opt = thresholds->add_option("--torus", torus, "Use the torus of this dimension")->check(CLI::PositiveNumber);
    thresholds->add_option("-o,--output", config.output, "Report path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : bloch::exit_input_error;
    }

    try {
        if (thresholds->parsed()) {
            const auto torus_dim = torus_opt->count() ? std::optional<int>(torus) : std::nullopt;
            return emit(bloch::cmd_thresholds(bloch::symmetry_class_from_string(cls), {d0, d1}, torus_dim),
                        config.output);
        }
        finish_config(config, params, trs);
        if (analyze->parsed()) return emit(bloch::cmd_analyze(config), config.output);
        if (edge->parsed()) return emit(bloch::cmd_edge(config, csv_path), config.output);
        if (symmetry->parsed()) return emit(bloch::cmd_symmetry(config), config.output);
        if (chern->parsed()) return emit(bloch::cmd_chern(config, sweep), config.output);
    } catch (const bloch::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bloch::exit_input_error;
    }
    return bloch::exit_input_error;
}
