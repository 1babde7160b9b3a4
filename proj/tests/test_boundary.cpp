#include <doctest.h>

#include <sstream>

#include "bloch/boundary.hpp"
#include "bloch/chern.hpp"
#include "bloch/registry.hpp"

using namespace bloch;

namespace {

double bulk_gap(const HoppingModel& model) { return spectral_gap(bloch_transform(model, MomentumGrid(2, 24))); }

int flow(const HoppingModel& model, Edge edge, int width = 40, int points = 401) {
    return edge_spectral_flow(ribbon_spectrum(model, width, points), bulk_gap(model), edge);
}

const HoppingModel onsite_z = build_model(2, 2, {{{0, 0}, pauli::z()}});

} // namespace

TEST_CASE("decoupled sites give a flat two-level ribbon spectrum") {
    for (int width : {3, 10}) {
        const RibbonSpectrum spec = ribbon_spectrum(onsite_z, width, 21);
        CHECK(spec.k_parallel.front() == 0.0);
        CHECK(spec.k_parallel.back() == 1.0);
        for (const auto& e : spec.energies) {
            REQUIRE(e.size() == 2 * width);
            for (Eigen::Index i = 0; i < width; ++i) {
                CHECK(e(i) == doctest::Approx(-1.0));
                CHECK(e(width + i) == doctest::Approx(1.0));
            }
        }
    }
    CHECK(edge_spectral_flow(ribbon_spectrum(onsite_z, 40, 201), 1.0, Edge::left) == 0);
}

TEST_CASE("ribbon spectrum invariants") {
    const HoppingModel model = qwz(1.0);
    const RibbonSpectrum spec = ribbon_spectrum(model, 16, 31);
    const double bound = model.norm_bound() + 1e-9;
    for (std::size_t j = 0; j < spec.energies.size(); ++j) {
        CHECK(spec.energies[j].size() == 16 * 2);
        for (Eigen::Index c = 0; c < spec.energies[j].size(); ++c) {
            CHECK(std::abs(spec.energies[j](c)) <= bound);
            CHECK(spec.left_weights[j](c) >= 0.0);
            CHECK(spec.right_weights[j](c) >= 0.0);
            CHECK(spec.left_weights[j](c) + spec.right_weights[j](c) <= 1.0 + 1e-12);
        }
    }
    CHECK(spec.edge_sites() == 4);
}

TEST_CASE("interior of the compression matches the partial Bloch blocks") {
    const HoppingModel model = direct_sum(qwz(0.7), trivial_atomic(1));
    const int width = 9, b = model.bands(), r = model.range();
    for (long long j : {0LL, 3LL, 7LL}) {
        const Matrix h = ribbon_hamiltonian(model, width, j, 20);
        for (int x = r; x < width - r; ++x)
            for (int s = -r; s <= r; ++s) {
                // Independent sum over the hoppings with a[0] == s.
                Matrix expected = Matrix::Zero(b, b);
                for (const auto& [a, coeff] : model.hoppings())
                    if (a[0] == s)
                        expected += std::polar(1.0, 2.0 * std::numbers::pi * a[1] * static_cast<double>(j) / 20.0) * coeff;
                CHECK(max_abs(h.block(x * b, (x + s) * b, b, b) - expected) < 1e-14);
                if (s > 0) CHECK(h.block(x * b, (x + s) * b, b, b) == partial_bloch_block(model, s, j, 20));
            }
        CHECK(max_abs(h - h.adjoint()) == 0.0);
    }
}

TEST_CASE("qwz m=1 has a chiral branch on the left edge") {
    const RibbonSpectrum spec = ribbon_spectrum(qwz(1.0), 40, 201);
    bool found = false;
    for (std::size_t j = 0; j < spec.energies.size(); ++j)
        for (Eigen::Index c = 0; c < spec.energies[j].size(); ++c)
            found = found || (std::abs(spec.energies[j](c)) < 0.05 && spec.left_weights[j](c) > 0.7);
    CHECK(found);
}

TEST_CASE("qwz m=3 has no in-gap edge branch") {
    const double gap = bulk_gap(qwz(3.0));
    const RibbonSpectrum spec = ribbon_spectrum(qwz(3.0), 40, 201);
    for (std::size_t j = 0; j < spec.energies.size(); ++j)
        for (Eigen::Index c = 0; c < spec.energies[j].size(); ++c)
            if (std::abs(spec.energies[j](c)) < 0.5 * gap) {
                CHECK(spec.left_weights[j](c) < 0.5);
                CHECK(spec.right_weights[j](c) < 0.5);
            }
}

TEST_CASE("trivial ribbon spectra approach the bulk gap from above as the ribbon widens") {
    auto min_abs = [](const RibbonSpectrum& spec) {
        double best = 1e300;
        for (const auto& e : spec.energies) best = std::min(best, e.cwiseAbs().minCoeff());
        return best;
    };
    for (double m : {3.0, -2.5}) {
        const double gap = bulk_gap(qwz(m));
        const double narrow = min_abs(ribbon_spectrum(qwz(m), 20, 101));
        const double wide = min_abs(ribbon_spectrum(qwz(m), 40, 101));
        CHECK(wide >= gap - 1e-9);
        CHECK(narrow >= wide - 1e-9);
        CHECK(wide - gap < 0.05);
    }
}

TEST_CASE("edge spectral flow") {
    CHECK(flow(trivial_atomic(2), Edge::left) == 0);
    CHECK(flow(qwz(3.0), Edge::left) == 0);

    const int c = chern_number(flatten(bloch_transform(qwz(1.0), MomentumGrid(2, 24))), {0, 1}).value;
    const int left = flow(qwz(1.0), Edge::left);
    const int right = flow(qwz(1.0), Edge::right);
    CHECK(std::abs(left) == 1);
    CHECK(left == kEdgeFlowSign * c);
    CHECK(right == -left);
    CHECK(flow(qwz(-1.0), Edge::left) == -left);
    CHECK(flow(qwz(-1.0), Edge::right) == left);

    CHECK(std::abs(flow(direct_sum(qwz(1.0), qwz(1.0)), Edge::left)) == 2);
    CHECK(flow(direct_sum(qwz(1.0), qwz(-1.0)), Edge::left) == 0);
}

TEST_CASE("ambiguous continuations stop the tracker") {
    RibbonSpectrum spec;
    spec.width = 8;
    spec.bands = 1;
    spec.k_parallel = {0.0, 0.5, 1.0};
    RealVector a(2), b(2), weight(2), none(2);
    a << -0.02, 0.9;   // second state outside the window
    b << -0.1, 0.01;
    weight << 1.0, 1.0;
    none << 0.0, 0.0;
    spec.energies = {a, b, a};
    spec.left_weights = {weight, weight, weight};
    spec.right_weights = {none, none, none};
    CHECK_THROWS_AS(edge_spectral_flow(spec, 0.5, Edge::left), TrackingError);
    CHECK(edge_spectral_flow(spec, 0.5, Edge::right) == 0);
    CHECK_THROWS_AS(edge_spectral_flow(spec, 0.0, Edge::left), InputError);
}

TEST_CASE("ribbon preconditions") {
    CHECK_THROWS_AS(ribbon_spectrum(qwz(1.0), 2, 201), InputError);
    CHECK_NOTHROW(ribbon_spectrum(qwz(1.0), 3, 5));
    CHECK_THROWS_AS(ribbon_spectrum(qwz(1.0), 40, 200), InputError);
    CHECK_THROWS_AS(ribbon_spectrum(chain_1d(0.5), 40, 201), InputError);
}

TEST_CASE("bulk_boundary_check") {
    const BulkBoundaryReport one = bulk_boundary_check(qwz(1.0));
    CHECK(one.pass);
    CHECK(std::abs(one.chern) == 1);
    CHECK(std::abs(one.flow_left) == 1);

    const BulkBoundaryReport three = bulk_boundary_check(qwz(3.0));
    CHECK(three.pass);
    CHECK(three.chern == 0);
    CHECK(three.flow_left == 0);

    const BulkBoundaryReport padded = bulk_boundary_check(direct_sum(qwz(1.0), trivial_atomic(2)));
    CHECK(padded.pass);
    CHECK(std::abs(padded.chern) == 1);
    CHECK(std::abs(padded.flow_left) == 1);

    CHECK_THROWS_AS(bulk_boundary_check(qwz(2.0)), NotInsulatorError);
}

TEST_CASE("ribbon CSV export") {
    const RibbonSpectrum spec = ribbon_spectrum(onsite_z, 3, 5);
    std::ostringstream out;
    write_ribbon_csv(out, spec);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "k_parallel,eigenvalue_index,energy,left_weight,right_weight");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 5 * 3 * 2);
}
