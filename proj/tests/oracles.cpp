#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace oracle {

using bloch::cplx;
using bloch::Matrix;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

Matrix sx() { Matrix m(2, 2); m << 0.0, 1.0, 1.0, 0.0; return m; }
Matrix sy() { Matrix m(2, 2); m << 0.0, cplx(0, -1), cplx(0, 1), 0.0; return m; }
Matrix sz() { Matrix m(2, 2); m << 1.0, 0.0, 0.0, -1.0; return m; }

} // namespace

Matrix qwz_closed_form(double m, double k1, double k2) {
    return std::sin(two_pi * k1) * sx() + std::sin(two_pi * k2) * sy() +
           (m - std::cos(two_pi * k1) - std::cos(two_pi * k2)) * sz();
}

double berry_curvature_chern(const bloch::HoppingModel& model, int n, std::pair<int, int> plane) {
    const int b = model.bands();
    double total = 0.0;
    std::vector<double> k(model.dim(), 0.0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            k[plane.first] = (x + 0.5) / n;
            k[plane.second] = (y + 0.5) / n;
            Matrix h = Matrix::Zero(b, b), d1 = Matrix::Zero(b, b), d2 = Matrix::Zero(b, b);
            for (const auto& [a, coeff] : model.hoppings()) {
                double phase = 0.0;
                for (int i = 0; i < model.dim(); ++i) phase += k[i] * a[i];
                const cplx e = std::polar(1.0, two_pi * phase);
                h += e * coeff;
                d1 += cplx(0.0, two_pi * a[plane.first]) * e * coeff;
                d2 += cplx(0.0, two_pi * a[plane.second]) * e * coeff;
            }
            Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
            const auto& vals = es.eigenvalues();
            const Matrix& vecs = es.eigenvectors();
            Matrix p = Matrix::Zero(b, b), dp1 = Matrix::Zero(b, b), dp2 = Matrix::Zero(b, b);
            for (int i = 0; i < b; ++i) {
                if (vals(i) <= 0) continue;
                p += vecs.col(i) * vecs.col(i).adjoint();
                for (int j = 0; j < b; ++j) {
                    if (vals(j) > 0) continue;
                    const Matrix ij = vecs.col(j) * vecs.col(i).adjoint();  // |j><i|
                    const double gap = vals(i) - vals(j);
                    const cplx m1 = (vecs.col(j).adjoint() * d1 * vecs.col(i))(0, 0) / gap;
                    const cplx m2 = (vecs.col(j).adjoint() * d2 * vecs.col(i))(0, 0) / gap;
                    dp1 += m1 * ij + std::conj(m1) * ij.adjoint();
                    dp2 += m2 * ij + std::conj(m2) * ij.adjoint();
                }
            }
            const cplx omega = cplx(0.0, -1.0) * (p * (dp1 * dp2 - dp2 * dp1)).trace();
            total += omega.real();
        }
    return total / (two_pi * n * n);
}

int qwz_degree(double m) {
    int degree = 0;
    for (double t1 : {0.0, std::numbers::pi})
        for (double t2 : {0.0, std::numbers::pi}) {
            if (m - std::cos(t1) - std::cos(t2) <= 0) continue;
            // Jacobian of (sin t1, sin t2) at the preimage.
            degree += (std::cos(t1) * std::cos(t2) > 0) ? 1 : -1;
        }
    return degree;
}

std::pair<int, int> torus_cells(int d) {
    // Circle cells: 0 = fixed point +1, 1 = fixed point -1, 2 = upper arc, 3 = lower arc.
    // Conjugation fixes cells 0, 1 and swaps 2 <-> 3.
    int fixed_max = -1, free_max = -1;
    std::vector<int> cell(d, 0);
    for (long code = 0; code < (1L << (2 * d)); ++code) {
        int dimension = 0;
        bool fixed = true;
        for (int i = 0; i < d; ++i) {
            cell[i] = static_cast<int>((code >> (2 * i)) & 3);
            if (cell[i] >= 2) {
                ++dimension;
                fixed = false;
            }
        }
        if (fixed)
            fixed_max = std::max(fixed_max, dimension);
        else
            free_max = std::max(free_max, dimension);
    }
    return {fixed_max, free_max};
}

// k0 = max{d0, ceil((d1-1)/2)}, k1 = max{d0+1, ceil(d1/2)}, worked by hand.
const std::array<std::array<std::pair<int, int>, 7>, 7> kRealTable = {{
    {{{0, 1}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}}},  // d0 = 0
    {{{1, 2}, {1, 2}, {1, 2}, {1, 2}, {2, 2}, {2, 3}, {3, 3}}},  // d0 = 1
    {{{2, 3}, {2, 3}, {2, 3}, {2, 3}, {2, 3}, {2, 3}, {3, 3}}},  // d0 = 2
    {{{3, 4}, {3, 4}, {3, 4}, {3, 4}, {3, 4}, {3, 4}, {3, 4}}},  // d0 = 3
    {{{4, 5}, {4, 5}, {4, 5}, {4, 5}, {4, 5}, {4, 5}, {4, 5}}},  // d0 = 4
    {{{5, 6}, {5, 6}, {5, 6}, {5, 6}, {5, 6}, {5, 6}, {5, 6}}},  // d0 = 5
    {{{6, 7}, {6, 7}, {6, 7}, {6, 7}, {6, 7}, {6, 7}, {6, 7}}},  // d0 = 6
}};

// k0 = max{ceil((d0-3)/2), ceil((d1-1)/2)}, k1 = max{ceil((d0-2)/2), ceil(d1/2)};
// rows d0 = 0, 1 contain negative terms that clamp to 0.
const std::array<std::array<std::pair<int, int>, 7>, 7> kQuaternionicTable = {{
    {{{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}}},  // d0 = 0
    {{{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}}},  // d0 = 1
    {{{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}}},  // d0 = 2
    {{{0, 1}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}}},  // d0 = 3
    {{{1, 1}, {1, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}}},  // d0 = 4
    {{{1, 2}, {1, 2}, {1, 2}, {1, 2}, {2, 2}, {2, 3}, {3, 3}}},  // d0 = 5
    {{{2, 2}, {2, 2}, {2, 2}, {2, 2}, {2, 2}, {2, 3}, {3, 3}}},  // d0 = 6
}};

Matrix random_unitary(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
    Eigen::HouseholderQR<Matrix> qr(a);
    return qr.householderQ() * Matrix::Identity(n, n);
}

} // namespace oracle
