#pragma once

#include <map>
#include <optional>
#include <string>

#include "bloch/model.hpp"

namespace bloch {

/// A model together with the time-reversal unitary it is meant to carry, if any.
struct ModelDocument {
    HoppingModel model;
    std::optional<Matrix> trs_unitary;
};

namespace pauli {
Matrix identity();
Matrix x();
Matrix y();
Matrix z();
} // namespace pauli

/// Two-band Chern insulator H(k) = sin(2πk1)σ1 + sin(2πk2)σ2 + (m − cos(2πk1) − cos(2πk2))σ3.
HoppingModel qwz(double m);
/// On-site diag(+1, −1, +1, ...) in the given dimension.
HoppingModel trivial_atomic(int bands, int dim = 2);
/// Real dimerized chain: intra-cell hopping 1, inter-cell hopping t. Gapped for |t| != 1.
HoppingModel chain_1d(double t);
/// qwz(m) ⊕ conj(qwz(m)), time-reversal symmetric with the block datum.
HoppingModel doubled_qwz(double m);

/// [[0, −I], [I, 0]] with I of size half.
Matrix block_trs_unitary(int half);
/// Named time-reversal unitaries: identity, isigma2, block.
Matrix named_trs_unitary(const std::string& name, int bands);

/// Builds a registry model by name. Unknown names and parameters raise InputError.
ModelDocument registry_model(const std::string& name, const std::map<std::string, double>& params, int bands);

} // namespace bloch
