#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bloch/core.hpp"

namespace bloch {

/**
 Finite-range translation-invariant Hamiltonian on l^2(Z^d, C^k), given by its
 hopping coefficients H_a. The stored family is Hermitian-closed:
 H_{-a} == H_a^dagger exactly for every stored a.
 */
class HoppingModel {
public:
    using HoppingMap = std::map<LatticeVector, Matrix>;

    int dim() const { return dim_; }
    int bands() const { return bands_; }
    const HoppingMap& hoppings() const { return hoppings_; }

    /// Largest |a_i| over all stored vectors and components.
    int range() const;
    /// Sum of operator norms of all H_a; bounds the spectrum of every truncation.
    double norm_bound() const;
    bool is_real() const;

    friend HoppingModel build_model(int dim, int bands,
                                    const std::vector<std::pair<LatticeVector, Matrix>>& hopping_list);

private:
    HoppingModel(int dim, int bands, HoppingMap hoppings)
        : dim_(dim), bands_(bands), hoppings_(std::move(hoppings)) {}

    int dim_;
    int bands_;
    HoppingMap hoppings_;
};

/// Validates the input and applies Hermitian closure. Throws InputError naming
/// the offending list index on any shape mismatch.
HoppingModel build_model(int dim, int bands,
                         const std::vector<std::pair<LatticeVector, Matrix>>& hopping_list);

/// Uniform grid {j/N} on the d-torus, N even, iterated lexicographically
/// (first axis most significant).
class MomentumGrid {
public:
    MomentumGrid(int dim, int points_per_axis);

    int dim() const { return dim_; }
    int n() const { return n_; }
    std::size_t size() const { return size_; }

    std::vector<int> indices(std::size_t flat) const;
    std::size_t flat_index(std::span<const int> indices) const;
    std::vector<double> point(std::size_t flat) const;
    /// Flat index of -k (mod 1).
    std::size_t negated(std::size_t flat) const;
    /// True when every coordinate is 0 or 1/2.
    bool is_fixed_point(std::size_t flat) const;
    std::vector<std::size_t> fixed_points() const;

private:
    int dim_;
    int n_;
    std::size_t size_;
};

/// exp(2πi num/den), exact on quarter turns and periodic in num.
cplx rational_phase(long long num, long long den);

/// Bloch matrix at arbitrary momentum, k in torus units.
Matrix bloch_matrix(const HoppingModel& model, std::span<const double> k);

/// Bloch matrix at the rational momentum j/n; phases are reduced mod n so
/// that j and j+n give bit-identical matrices.
Matrix bloch_matrix_rational(const HoppingModel& model, std::span<const int> j, int n);

struct EigenData {
    RealVector values;   ///< ascending
    Matrix vectors;      ///< orthonormal columns
};

EigenData hermitian_eigen(const Matrix& h);

class BlochSample {
public:
    BlochSample(MomentumGrid grid, std::vector<Matrix> matrices, std::vector<EigenData> eigen);

    const MomentumGrid& grid() const { return grid_; }
    const std::vector<Matrix>& matrices() const { return matrices_; }
    const std::vector<EigenData>& eigen() const { return eigen_; }
    int bands() const { return static_cast<int>(matrices_.front().rows()); }

private:
    MomentumGrid grid_;
    std::vector<Matrix> matrices_;
    std::vector<EigenData> eigen_;
};

BlochSample bloch_transform(const HoppingModel& model, const MomentumGrid& grid);

struct GapLocation {
    double gap;
    std::size_t point;
};

/// min_k min_n |lambda_n(k)|, with the first grid point attaining it up to 1e-12.
GapLocation locate_gap(const BlochSample& sample);
double spectral_gap(const BlochSample& sample);

/// Field of orthogonal projectors of common rank over a momentum grid.
class ProjectorField {
public:
    /// Validates p^2 = p, p = p^dagger (1e-10) and trace = rank (1e-8).
    ProjectorField(MomentumGrid grid, std::vector<Matrix> projectors);

    const MomentumGrid& grid() const { return grid_; }
    const std::vector<Matrix>& projectors() const { return projectors_; }
    const Matrix& operator[](std::size_t i) const { return projectors_[i]; }
    int rank() const { return rank_; }
    int bands() const { return static_cast<int>(projectors_.front().rows()); }

    /// Orthonormal basis (bands x rank) of the image of p(k).
    Matrix frame(std::size_t i) const;

    /// identity - p at every grid point.
    ProjectorField complement() const;

private:
    MomentumGrid grid_;
    std::vector<Matrix> projectors_;
    int rank_;
};

inline constexpr double kDefaultGapTol = 1e-8;

/// Projector onto the positive spectral subspace, p = (1 + sign H)/2.
ProjectorField flatten(const BlochSample& sample, double gap_tol = kDefaultGapTol);

// Model transformations used to build composite and reference models.

HoppingModel direct_sum(const HoppingModel& a, const HoppingModel& b);
/// Entrywise complex conjugate of every H_a.
HoppingModel conjugate(const HoppingModel& model);
HoppingModel negate(const HoppingModel& model);
/// H_a -> V H_a V^dagger for a fixed unitary V.
HoppingModel unitary_conjugate(const HoppingModel& model, const Matrix& v);
/// Embeds into a higher dimension with no hopping along the new axes.
HoppingModel extend_dimension(const HoppingModel& model, int new_dim);

} // namespace bloch
