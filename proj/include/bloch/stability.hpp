#pragma once

#include <string>

#include <json.hpp>

#include "bloch/chern.hpp"

namespace bloch {

/// Maximal dimensions of trivial (d0) and free (d1) cells of a Z/2-CW complex.
struct CWShape {
    int d0 = 0;
    int d1 = 0;
};

/**
 Rank thresholds: every bundle of rank >= k0 splits off a trivial summand,
 and stably isomorphic bundles of rank >= k1 are isomorphic.

 `clamped` records that some ceiling term inside the maximum was negative and
 was raised to 0 before the maximum was taken.
 */
struct ThresholdPair {
    int k0 = 0;
    int k1 = 0;
    bool clamped = false;
    std::string note;
};

enum class SymmetryClass { complex, real, quaternionic };

ThresholdPair thresholds_real(CWShape shape);
ThresholdPair thresholds_quaternionic(CWShape shape);
/// Classical bounds for complex bundles over a CW complex of the given dimension.
ThresholdPair thresholds_complex(int dimension);
ThresholdPair thresholds_for(SymmetryClass cls, CWShape shape);

/// Product structure on the d-torus under componentwise conjugation: 2^d fixed
/// 0-cells, free cells up to dimension d.
CWShape torus_shape(int d);

/// Rank of the trivial summand guaranteed for a rank-k bundle: k - k0 ("real"),
/// 2 floor((k - k0)/2) ("quaternionic"), 0 below k0.
int trivial_summand_rank(SymmetryClass cls, int rank, int k0);

enum class TrivialityStatus { trivial, stably_trivial_undecided, nontrivial, unresolved };

struct TrivialityVerdict {
    TrivialityStatus status = TrivialityStatus::unresolved;
    SymmetryClass symmetry_class = SymmetryClass::complex;
    CWShape shape;
    ThresholdPair thresholds;
    int rank = 0;
    StableVerdict stable;
    std::string message;
};

TrivialityVerdict triviality_verdict(int rank, SymmetryClass cls, CWShape shape, const StableVerdict& stable);

std::string to_string(SymmetryClass cls);
SymmetryClass symmetry_class_from_string(const std::string& name);
std::string to_string(TrivialityStatus status);

nlohmann::ordered_json to_json(const CWShape& shape);
nlohmann::ordered_json to_json(const ThresholdPair& pair);
nlohmann::ordered_json to_json(const TrivialityVerdict& verdict);

} // namespace bloch
