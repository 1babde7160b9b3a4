#include "bloch/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <functional>

#include "bloch/chern.hpp"
#include "bloch/model_io.hpp"
#include "bloch/symmetry.hpp"

namespace bloch {

using ojson = nlohmann::ordered_json;

namespace {

const char* error_module(const std::exception& e) {
    if (dynamic_cast<const NotInsulatorError*>(&e)) return "model-core";
    if (dynamic_cast<const UnresolvedChernError*>(&e)) return "chern";
    if (dynamic_cast<const TrackingError*>(&e)) return "boundary";
    return "model-core";
}

// Runs a command body; numerical failures become an error report with exit
// code 2, input errors one with exit code 1.
CommandResult guarded(const std::string& command, const ojson& config, const std::function<ojson()>& body) {
    CommandResult result;
    auto error_report = [&](const std::string& kind, const std::string& module, const std::string& message) {
        ojson r;
        r["command"] = command;
        r["config"] = config;
        r["error"]["kind"] = kind;
        r["error"]["module"] = module;
        r["error"]["message"] = message;
        return r;
    };
    try {
        result.report = body();
        result.exit_code = exit_ok;
        if (auto it = result.report.find("unresolved"); it != result.report.end() && it->get<bool>())
            result.exit_code = exit_unresolved;
    } catch (const NotInsulatorError& e) {
        result.report = error_report("not_an_insulator", "model-core", e.what());
        result.report["error"]["k"] = e.momentum();
        result.report["error"]["smallest_magnitude"] = e.smallest_magnitude();
        result.exit_code = exit_unresolved;
    } catch (const UnresolvedError& e) {
        result.report = error_report("unresolved", error_module(e), e.what());
        result.exit_code = exit_unresolved;
    } catch (const InputError& e) {
        result.report = error_report("input_error", "cli", e.what());
        result.exit_code = exit_input_error;
    }
    return result;
}

ojson model_summary(const AnalysisConfig& config, const ModelDocument& doc) {
    ojson j;
    j["source"] = config.model;
    j["dim"] = doc.model.dim();
    j["bands"] = doc.model.bands();
    j["range"] = doc.model.range();
    j["has_trs"] = doc.trs_unitary.has_value();
    return j;
}

ojson header(const std::string& command, const AnalysisConfig& config, const ModelDocument& doc) {
    ojson r;
    r["command"] = command;
    r["config"] = to_json(config);
    r["model"] = model_summary(config, doc);
    return r;
}

bool is_registry_name(const std::string& name) {
    return name == "trivial_atomic" || name == "chain_1d" || name == "qwz" || name == "doubled_qwz";
}

} // namespace

void AnalysisConfig::validate() const {
    if (grid_n <= 0 || grid_n % 2 != 0) throw InputError("--grid-n must be a positive even integer");
    if (ribbon_width <= 0) throw InputError("--width must be positive");
    if (parallel_points <= 0) throw InputError("--points must be positive");
    if (!(gap_tol >= 0.0)) throw InputError("--gap-tol must be nonnegative");
    if (bands <= 0) throw InputError("--bands must be positive");
}

ojson to_json(const AnalysisConfig& config) {
    ojson j;
    j["model"] = config.model;
    j["params"] = ojson::object();
    for (const auto& [k, v] : config.params) j["params"][k] = v;
    j["bands"] = config.bands;
    j["trs"] = config.trs ? ojson(*config.trs) : ojson(nullptr);
    j["grid_n"] = config.grid_n;
    j["ribbon_width"] = config.ribbon_width;
    j["parallel_points"] = config.parallel_points;
    j["gap_tol"] = config.gap_tol;
    j["output"] = config.output;
    return j;
}

ModelDocument resolve_model(const AnalysisConfig& config) {
    ModelDocument doc = [&] {
        if (is_registry_name(config.model)) return registry_model(config.model, config.params, config.bands);
        if (std::filesystem::exists(config.model)) {
            if (!config.params.empty()) throw InputError("--param applies to registry models only");
            return load_model_file(config.model);
        }
        throw InputError("unknown model '" + config.model +
                         "': not a registry name (trivial_atomic, chain_1d, qwz, doubled_qwz) or a readable file");
    }();
    if (config.trs) doc.trs_unitary = named_trs_unitary(*config.trs, doc.model.bands());
    return doc;
}

CommandResult cmd_analyze(const AnalysisConfig& config) {
    return guarded("analyze", to_json(config), [&] {
        config.validate();
        const ModelDocument doc = resolve_model(config);
        ojson r = header("analyze", config, doc);
        const int dim = doc.model.dim();

        const BlochSample sample = bloch_transform(doc.model, MomentumGrid(dim, config.grid_n));
        const GapLocation gap = locate_gap(sample);
        r["gap"]["value"] = gap.gap;
        r["gap"]["at_k"] = sample.grid().point(gap.point);

        const ProjectorField field = flatten(sample, config.gap_tol);
        r["projector_rank"] = field.rank();

        const StableVerdict stable = stably_trivial(field);
        r["chern"] = ojson::array();
        for (const auto& c : stable.evidence) r["chern"].push_back(to_json(c));
        r["stable"] = to_json(stable);

        SymmetryClass cls = SymmetryClass::complex;
        if (doc.trs_unitary) {
            const TimeReversalDatum trs = classify_datum(*doc.trs_unitary);
            const SymmetryCheck model_check = check_model_symmetry(doc.model, trs);
            r["symmetry"]["datum_class"] = class_name(trs);
            r["symmetry"]["sign"] = trs.sign();
            r["symmetry"]["model_symmetry"] = to_json(model_check);
            if (model_check.holds) {
                cls = trs.sign() > 0 ? SymmetryClass::real : SymmetryClass::quaternionic;
                r["symmetry"]["bundle_involution"] = to_json(verify_bundle_involution(field, trs));
            }
        } else {
            r["symmetry"] = nullptr;
        }

        const TrivialityVerdict verdict = triviality_verdict(field.rank(), cls, torus_shape(dim), stable);
        r["symmetry_class"] = to_string(cls);
        r["thresholds"] = to_json(verdict.thresholds);
        r["verdict"] = to_string(verdict.status);
        r["verdict_detail"] = to_json(verdict);
        r["unresolved"] = verdict.status == TrivialityStatus::unresolved;
        return r;
    });
}

CommandResult cmd_edge(const AnalysisConfig& config, const std::string& csv_path) {
    return guarded("edge", to_json(config), [&] {
        config.validate();
        const ModelDocument doc = resolve_model(config);
        ojson r = header("edge", config, doc);
        if (doc.model.dim() != 2) throw InputError("edge analysis needs a two-dimensional model");

        const RibbonSpectrum spec = ribbon_spectrum(doc.model, config.ribbon_width, config.parallel_points);
        if (!csv_path.empty()) {
            std::ofstream out(csv_path);
            if (!out) throw InputError("cannot write CSV to " + csv_path);
            write_ribbon_csv(out, spec);
        }
        BulkBoundaryOptions options;
        options.grid_n = config.grid_n;
        options.width = config.ribbon_width;
        options.parallel_points = config.parallel_points;
        options.gap_tol = config.gap_tol;
        const BulkBoundaryReport report = bulk_boundary_check(doc.model, spec, options);
        r["ribbon"]["width"] = spec.width;
        r["ribbon"]["parallel_points"] = static_cast<int>(spec.k_parallel.size());
        r["ribbon"]["edge_sites"] = spec.edge_sites();
        r["ribbon"]["csv"] = csv_path;
        r["flow_magnitude"] = std::abs(report.flow_left);
        r["bulk_boundary"] = to_json(report);
        return r;
    });
}

CommandResult cmd_symmetry(const AnalysisConfig& config) {
    return guarded("symmetry", to_json(config), [&] {
        config.validate();
        const ModelDocument doc = resolve_model(config);
        ojson r = header("symmetry", config, doc);
        if (!doc.trs_unitary) throw InputError("model carries no time-reversal datum; pass --trs");
        const TimeReversalDatum trs = classify_datum(*doc.trs_unitary);
        const SymmetryCheck model_check = check_model_symmetry(doc.model, trs);

        r["datum_class"] = class_name(trs);
        r["sign"] = trs.sign();
        r["class"] = model_check.holds ? class_name(trs) : "symmetry violated";
        r["model_symmetry"] = to_json(model_check);

        const BlochSample sample = bloch_transform(doc.model, MomentumGrid(doc.model.dim(), config.grid_n));
        if (model_check.holds && trs.sign() < 0) r["kramers"] = to_json(kramers_check(sample, trs));
        const GapLocation gap = locate_gap(sample);
        r["gap"] = gap.gap;
        if (gap.gap > config.gap_tol) {
            const ProjectorField field = flatten(sample, config.gap_tol);
            r["bundle_involution"] = to_json(verify_bundle_involution(field, trs));
            if (doc.model.dim() >= 2) {
                r["chern"] = ojson::array();
                int total = 0;
                for (const auto& c : chern_vector(field)) {
                    r["chern"].push_back(to_json(c));
                    total += c.value;
                }
                r["chern_total"] = total;
            }
        }
        return r;
    });
}

CommandResult cmd_chern(const AnalysisConfig& config, bool sweep) {
    return guarded("chern", to_json(config), [&] {
        config.validate();
        const ModelDocument doc = resolve_model(config);
        ojson r = header("chern", config, doc);
        const int dim = doc.model.dim();
        if (dim < 2) throw InputError("Chern numbers need a model of dimension at least 2");
        const ProjectorField field =
            flatten(bloch_transform(doc.model, MomentumGrid(dim, config.grid_n)), config.gap_tol);
        r["projector_rank"] = field.rank();
        r["chern"] = ojson::array();
        for (const auto& c : chern_vector(field)) r["chern"].push_back(to_json(c));
        if (sweep) {
            r["sweep"] = ojson::array();
            for (int i = 0; i < dim; ++i)
                for (int j = i + 1; j < dim; ++j)
                    for (int t = 0; t < dim; ++t) {
                        if (t == i || t == j) continue;
                        ojson entry;
                        entry["plane"] = {i, j};
                        entry["sweep_axis"] = t;
                        entry["values"] = ojson::array();
                        bool independent = true;
                        const auto results = chern_sweep(field, {i, j}, t);
                        for (const auto& c : results) {
                            entry["values"].push_back(c.value);
                            independent = independent && c.value == results.front().value;
                        }
                        entry["slice_independent"] = independent;
                        r["sweep"].push_back(std::move(entry));
                    }
        }
        return r;
    });
}

CommandResult cmd_thresholds(SymmetryClass cls, CWShape shape, std::optional<int> torus) {
    ojson config;
    config["class"] = to_string(cls);
    config["d0"] = shape.d0;
    config["d1"] = shape.d1;
    config["torus"] = torus ? ojson(*torus) : ojson(nullptr);
    return guarded("thresholds", config, [&] {
        const CWShape used = torus ? torus_shape(*torus) : shape;
        ojson r;
        r["command"] = "thresholds";
        r["config"] = config;
        r["class"] = to_string(cls);
        r["shape"] = to_json(used);
        const ThresholdPair pair = thresholds_for(cls, used);
        r["k0"] = pair.k0;
        r["k1"] = pair.k1;
        r["clamped"] = pair.clamped;
        if (!pair.note.empty()) r["note"] = pair.note;
        return r;
    });
}

std::string dump_report(const ojson& report) { return report.dump(2) + "\n"; }

} // namespace bloch
