#include <doctest.h>

#include "bloch/chern.hpp"
#include "bloch/registry.hpp"
#include "oracles.hpp"

using namespace bloch;

namespace {

// Pinned regression constant: Chern number of the positive-energy projector
// of qwz(m = 1) in plane (0, 1). Agrees with the Berry-curvature sum and the
// degree of d/|d| checked below.
constexpr int kQwzChern = -1;

ProjectorField field_of(const HoppingModel& model, int n) {
    return flatten(bloch_transform(model, MomentumGrid(model.dim(), n)));
}

int chern_of(const HoppingModel& model, int n = 24) { return chern_number(field_of(model, n), {0, 1}).value; }

} // namespace

TEST_CASE("oracles agree on the qwz sign") {
    CHECK(oracle::qwz_degree(1.0) == kQwzChern);
    CHECK(oracle::qwz_degree(-1.0) == -kQwzChern);
    CHECK(oracle::qwz_degree(3.0) == 0);
    CHECK(std::abs(oracle::berry_curvature_chern(qwz(1.0), 256) - kQwzChern) < 0.01);
}

TEST_CASE("constant projector fields have zero Chern number") {
    for (int bands : {1, 2, 3, 4}) {
        const ChernResult r = chern_number(field_of(trivial_atomic(bands), 8), {0, 1});
        CHECK(r.value == 0);
        CHECK(r.residual < 1e-12);
        CHECK(r.grid_n == 8);
        CHECK(r.plane == std::pair{0, 1});
    }
    // rank 0
    const ChernResult r = chern_number(field_of(build_model(2, 2, {{{0, 0}, -Matrix::Identity(2, 2)}}), 6), {0, 1});
    CHECK(r.value == 0);
}

TEST_CASE("qwz Chern numbers") {
    const ChernResult one = chern_number(field_of(qwz(1.0), 24), {0, 1});
    CHECK(one.value == kQwzChern);
    CHECK(one.residual < kChernResidualTol);
    CHECK(chern_of(qwz(3.0)) == 0);
    CHECK(chern_of(qwz(-1.0)) == -kQwzChern);
    // Swapping plane orientation flips the sign.
    CHECK(chern_number(field_of(qwz(1.0), 24), {1, 0}).value == -kQwzChern);
}

TEST_CASE("quantization is stable across grid sizes") {
    for (double m : {0.5, 1.0, 1.5, -1.0, 3.0}) {
        const int reference = chern_of(qwz(m), 8);
        for (int n : {16, 24, 32}) CHECK(chern_of(qwz(m), n) == reference);
    }
}

TEST_CASE("chern_vector") {
    SUBCASE("two dimensions") {
        const auto v = chern_vector(field_of(trivial_atomic(2), 8));
        REQUIRE(v.size() == 1);
        CHECK(v[0].plane == std::pair{0, 1});
        CHECK(v[0].value == 0);
        const auto q = chern_vector(field_of(qwz(1.0), 24));
        REQUIRE(q.size() == 1);
        CHECK(q[0].value == chern_number(field_of(qwz(1.0), 24), {0, 1}).value);
    }
    SUBCASE("qwz extended by a trivial third axis") {
        const ProjectorField f = field_of(extend_dimension(qwz(1.0), 3), 16);
        const auto v = chern_vector(f);
        REQUIRE(v.size() == 3);
        CHECK(v[0].plane == std::pair{0, 1});
        CHECK(v[0].value == kQwzChern);
        CHECK(v[1].plane == std::pair{0, 2});
        CHECK(v[1].value == 0);
        CHECK(v[2].plane == std::pair{1, 2});
        CHECK(v[2].value == 0);
        for (const auto& r : chern_sweep(f, {0, 1}, 2)) CHECK(r.value == kQwzChern);
        CHECK_THROWS_AS(chern_sweep(f, {0, 1}, 1), InputError);
    }
    CHECK_THROWS_AS(chern_vector(field_of(chain_1d(0.5), 8)), InputError);
    CHECK_THROWS_AS(chern_number(field_of(qwz(1.0), 8), {0, 0}), InputError);
    CHECK_THROWS_AS(chern_number(field_of(qwz(1.0), 8), {0, 2}), InputError);
}

TEST_CASE("stably_trivial verdicts") {
    const StableVerdict trivial = stably_trivial(field_of(trivial_atomic(2), 8));
    CHECK(trivial.status == StableStatus::stably_trivial);
    CHECK_FALSE(trivial.necessary_only);

    const StableVerdict obstructed = stably_trivial(field_of(qwz(1.0), 24));
    CHECK(obstructed.status == StableStatus::obstructed);
    REQUIRE(obstructed.evidence.size() == 1);
    CHECK(obstructed.evidence[0].value == kQwzChern);

    const StableVerdict four = stably_trivial(field_of(extend_dimension(qwz(3.0), 4), 6));
    CHECK(four.status == StableStatus::stably_trivial);
    CHECK(four.necessary_only);
    CHECK(four.evidence.size() == 6);

    const StableVerdict circle = stably_trivial(field_of(chain_1d(0.5), 8));
    CHECK(circle.status == StableStatus::stably_trivial);
    CHECK(circle.evidence.empty());
}

TEST_CASE("singular overlaps are reported as unresolved") {
    const MomentumGrid grid(2, 4);
    Matrix up = Matrix::Zero(2, 2), down = Matrix::Zero(2, 2);
    up(0, 0) = 1.0;
    down(1, 1) = 1.0;
    std::vector<Matrix> projectors;
    for (std::size_t i = 0; i < grid.size(); ++i) projectors.push_back(i % 2 ? up : down);
    const ProjectorField field(grid, projectors);
    CHECK_THROWS_AS(chern_number(field, {0, 1}), UnresolvedChernError);
    CHECK(stably_trivial(field).status == StableStatus::unresolved);
}

TEST_CASE("additivity under direct sums") {
    CHECK(chern_of(direct_sum(qwz(1.0), qwz(1.0))) == 2 * kQwzChern);
    CHECK(chern_of(direct_sum(qwz(1.0), qwz(-1.0))) == 0);
    CHECK(chern_of(direct_sum(qwz(1.0), trivial_atomic(3))) == kQwzChern);
}

TEST_CASE("conjugation and complementation negate the Chern number") {
    for (double m : {0.5, 1.0, -1.5}) {
        const int c = chern_of(qwz(m));
        CHECK(c != 0);
        CHECK(chern_of(conjugate(qwz(m))) == -c);
        CHECK(chern_number(field_of(qwz(m), 24).complement(), {0, 1}).value == -c);
    }
}

TEST_CASE("gauge invariance under a fixed unitary") {
    const HoppingModel model = direct_sum(qwz(1.0), qwz(0.5));
    const int reference = chern_of(model);
    for (unsigned seed : {11u, 12u, 13u}) CHECK(chern_of(unitary_conjugate(model, oracle::random_unitary(4, seed))) == reference);
}

TEST_CASE("JSON form") {
    const auto j = to_json(ChernResult{{0, 1}, -1, 0.001, 24});
    CHECK(j.dump() == R"({"plane":[0,1],"value":-1,"residual":0.001,"grid_n":24})");
}
