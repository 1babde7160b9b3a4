#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bloch/model.hpp"

namespace bloch {

/// Anti-unitary θ = U·K acting pointwise; sign is θ² = U·conj(U).
class TimeReversalDatum {
public:
    const Matrix& unitary_part() const { return unitary_; }
    int sign() const { return sign_; }
    int bands() const { return static_cast<int>(unitary_.rows()); }

    friend TimeReversalDatum classify_datum(const Matrix& u);

private:
    TimeReversalDatum(Matrix u, int sign) : unitary_(std::move(u)), sign_(sign) {}

    Matrix unitary_;
    int sign_;
};

inline constexpr double kInputIdentityTol = 1e-12;
inline constexpr double kModelCheckTol = 1e-10;
inline constexpr double kGridCheckTol = 1e-9;

/// Throws InputError if U is not unitary (1e-12) or U·conj(U) is not ±identity (1e-10).
TimeReversalDatum classify_datum(const Matrix& u);

struct SymmetryCheck {
    bool holds = false;
    double max_violation = 0.0;
    LatticeVector worst_vector;      ///< model checks: hopping vector with the largest violation
    std::vector<double> worst_k;     ///< grid checks: momentum with the largest violation
};

/// U·conj(H_a)·U† == H_a for every a, within 1e-10.
SymmetryCheck check_model_symmetry(const HoppingModel& model, const TimeReversalDatum& trs);

/// U·conj(p(k))·U† == p(−k) at every grid point, within 1e-9.
SymmetryCheck verify_bundle_involution(const ProjectorField& field, const TimeReversalDatum& trs);

/// Even degeneracy of the spectrum at every involution-fixed momentum.
SymmetryCheck kramers_check(const BlochSample& sample, const TimeReversalDatum& trs);

std::string class_name(const TimeReversalDatum& trs);
nlohmann::ordered_json to_json(const SymmetryCheck& check);

} // namespace bloch
