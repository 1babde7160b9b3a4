#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bloch {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using LatticeVector = std::vector<int>;

/// Malformed input: bad dimensions, unknown names, invalid parameters.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerics could not produce a trustworthy answer at the requested resolution.
class UnresolvedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when the spectrum touches zero somewhere on the momentum grid.
class NotInsulatorError : public UnresolvedError {
public:
    NotInsulatorError(std::vector<double> momentum, double smallest_magnitude);

    const std::vector<double>& momentum() const { return momentum_; }
    double smallest_magnitude() const { return smallest_magnitude_; }

private:
    std::vector<double> momentum_;
    double smallest_magnitude_;
};

/// Largest entrywise modulus of a matrix; the norm used by every tolerance check.
inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Integer ceiling of n/2, exact for negative n.
constexpr int ceil_half(int n) {
    return n >= 0 ? (n + 1) / 2 : -((-n) / 2);
}

std::string format_momentum(const std::vector<double>& k);

} // namespace bloch
