#include "bloch/stability.hpp"

#include <algorithm>
#include <initializer_list>

namespace bloch {

namespace {

ThresholdPair clamp_terms(std::initializer_list<int> k0_terms, std::initializer_list<int> k1_terms) {
    ThresholdPair out;
    auto fold = [&](std::initializer_list<int> terms) {
        int best = 0;
        for (int t : terms) {
            if (t < 0) out.clamped = true;
            best = std::max(best, t);
        }
        return best;
    };
    out.k0 = fold(k0_terms);
    out.k1 = fold(k1_terms);
    return out;
}

void check_shape(CWShape shape) {
    if (shape.d0 < 0 || shape.d1 < 0) throw InputError("cell dimensions must be nonnegative");
}

} // namespace

ThresholdPair thresholds_real(CWShape shape) {
    check_shape(shape);
    return clamp_terms({shape.d0, ceil_half(shape.d1 - 1)}, {shape.d0 + 1, ceil_half(shape.d1)});
}

ThresholdPair thresholds_quaternionic(CWShape shape) {
    check_shape(shape);
    ThresholdPair out = clamp_terms({ceil_half(shape.d0 - 3), ceil_half(shape.d1 - 1)},
                                    {ceil_half(shape.d0 - 2), ceil_half(shape.d1)});
    out.note = "trivial quaternionic summands have even rank: rank k >= k0 splits off 2*floor((k-k0)/2)";
    return out;
}

ThresholdPair thresholds_complex(int dimension) {
    if (dimension < 0) throw InputError("dimension must be nonnegative");
    return clamp_terms({ceil_half(dimension - 1)}, {ceil_half(dimension)});
}

ThresholdPair thresholds_for(SymmetryClass cls, CWShape shape) {
    switch (cls) {
    case SymmetryClass::real: return thresholds_real(shape);
    case SymmetryClass::quaternionic: return thresholds_quaternionic(shape);
    default: check_shape(shape); return thresholds_complex(std::max(shape.d0, shape.d1));
    }
}

CWShape torus_shape(int d) {
    if (d <= 0) throw InputError("torus dimension must be positive");
    return {0, d};
}

int trivial_summand_rank(SymmetryClass cls, int rank, int k0) {
    if (rank < k0) return 0;
    if (cls == SymmetryClass::quaternionic) return 2 * ((rank - k0) / 2);
    return rank - k0;
}

TrivialityVerdict triviality_verdict(int rank, SymmetryClass cls, CWShape shape, const StableVerdict& stable) {
    if (rank < 0) throw InputError("bundle rank must be nonnegative");
    TrivialityVerdict v;
    v.rank = rank;
    v.symmetry_class = cls;
    v.shape = shape;
    v.thresholds = thresholds_for(cls, shape);
    v.stable = stable;
    switch (stable.status) {
    case StableStatus::unresolved:
        v.status = TrivialityStatus::unresolved;
        v.message = "stable triviality unresolved: " + stable.message;
        break;
    case StableStatus::obstructed:
        v.status = TrivialityStatus::nontrivial;
        v.message = "nontrivial: no exponentially localised Wannier basis";
        break;
    case StableStatus::stably_trivial:
        if (stable.necessary_only) {
            v.status = TrivialityStatus::stably_trivial_undecided;
            v.message = "Chern numbers vanish but only give a necessary condition in this dimension";
        } else if (rank == 0) {
            v.status = TrivialityStatus::trivial;
            v.message = "zero bundle";
        } else if (rank >= v.thresholds.k1) {
            v.status = TrivialityStatus::trivial;
            v.message = "trivial: Wannier basis exists";
        } else {
            v.status = TrivialityStatus::stably_trivial_undecided;
            v.message = "stably trivial; triviality not decided by thresholds (rank " + std::to_string(rank) +
                        " < k1 = " + std::to_string(v.thresholds.k1) + ")";
        }
        break;
    }
    return v;
}

std::string to_string(SymmetryClass cls) {
    switch (cls) {
    case SymmetryClass::real: return "real";
    case SymmetryClass::quaternionic: return "quaternionic";
    default: return "complex";
    }
}

SymmetryClass symmetry_class_from_string(const std::string& name) {
    if (name == "complex") return SymmetryClass::complex;
    if (name == "real") return SymmetryClass::real;
    if (name == "quaternionic") return SymmetryClass::quaternionic;
    throw InputError("unknown symmetry class '" + name + "' (expected complex, real or quaternionic)");
}

std::string to_string(TrivialityStatus status) {
    switch (status) {
    case TrivialityStatus::trivial: return "trivial";
    case TrivialityStatus::stably_trivial_undecided: return "stably_trivial_undecided";
    case TrivialityStatus::nontrivial: return "nontrivial";
    default: return "unresolved";
    }
}

nlohmann::ordered_json to_json(const CWShape& shape) {
    nlohmann::ordered_json j;
    j["d0"] = shape.d0;
    j["d1"] = shape.d1;
    return j;
}

nlohmann::ordered_json to_json(const ThresholdPair& pair) {
    nlohmann::ordered_json j;
    j["k0"] = pair.k0;
    j["k1"] = pair.k1;
    j["clamped"] = pair.clamped;
    if (!pair.note.empty()) j["note"] = pair.note;
    return j;
}

nlohmann::ordered_json to_json(const TrivialityVerdict& verdict) {
    nlohmann::ordered_json j;
    j["status"] = to_string(verdict.status);
    j["message"] = verdict.message;
    j["symmetry_class"] = to_string(verdict.symmetry_class);
    j["rank"] = verdict.rank;
    j["shape"] = to_json(verdict.shape);
    j["thresholds"] = to_json(verdict.thresholds);
    j["stable"] = to_json(verdict.stable);
    return j;
}

} // namespace bloch
