#include <doctest.h>

#include <random>

#include "bipromethee/bicapacity.hpp"
#include "bipromethee/errors.hpp"
#include "oracles.hpp"

using namespace bipromethee;

namespace {

TwoAdditiveBicapacity example_plus() {
    TwoAdditiveBicapacity b(3);
    const double a[] = {0.4, 0.3, 0.2};
    for (std::size_t j = 0; j < 3; ++j) {
        b.set_a_plus(j, a[j]);
        b.set_a_minus(j, a[j]);
    }
    b.set_pair_plus(0, 1, 0.1);
    b.set_pair_minus(0, 1, 0.1);
    b.set_opp_plus(0, 2, -0.1);
    b.set_opp_minus(2, 0, -0.1);
    return b;
}

SignedCoalition sc(std::vector<std::size_t> c, std::vector<std::size_t> d) {
    return SignedCoalition::from_indices(c, d);
}

bool has_violation(const ValidationReport& r, ConstraintFamily f, const std::string& what) {
    for (const auto& v : r.violations)
        if (v.family == f && v.description == what) return true;
    return false;
}

}  // namespace

TEST_CASE("coalition codes round-trip") {
    for (std::size_t n = 1; n <= 5; ++n)
        for (std::size_t code = 0; code < signed_coalition_count(n); ++code)
            CHECK(coalition_code(coalition_from_code(code, n), n) == code);
    CHECK(signed_coalition_count(3) == 27);
    CHECK_THROWS_AS(sc({0}, {0}).validate(3), LookupError);
    CHECK_THROWS_AS(sc({4}, {}).validate(3), LookupError);
}

TEST_CASE("mu plus and mu minus by direct summation") {
    const auto b = example_plus();
    CHECK(eval_mu_plus(b, sc({0, 1}, {2})) == doctest::Approx(0.7));
    CHECK(eval_mu_minus(b, sc({2}, {0, 1})) == doctest::Approx(0.7));
    CHECK(eval_mu_plus(b, sc({0, 1, 2}, {})) == doctest::Approx(1.0));
    CHECK(eval_mu_minus(b, sc({}, {0, 1, 2})) == doctest::Approx(1.0));
    CHECK(eval_mu_plus(b, sc({}, {1})) == 0.0);
    CHECK(eval_mu_plus(b, sc({}, {0, 1, 2})) == 0.0);
    CHECK(eval_mu_minus(b, sc({0, 2}, {})) == 0.0);
}

TEST_CASE("bicapacity values at the boundary and on singletons") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const auto b = oracle::random_bicapacity(rng, n);
        const std::uint32_t all = (1u << n) - 1;
        CHECK(eval_bicapacity(b, {all, 0}) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(eval_bicapacity(b, {0, all}) == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(eval_bicapacity(b, {0, 0}) == 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(eval_bicapacity(b, sc({j}, {})) == doctest::Approx(b.a_plus(j)));
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                const double want = b.a_plus(j) - b.a_minus(k) + b.opp_plus(j, k) - b.opp_minus(j, k);
                CHECK(eval_bicapacity(b, sc({j}, {k})) == doctest::Approx(want));
            }
        }
    }
}

TEST_CASE("validation of the additive instance and of a violation") {
    const auto additive = TwoAdditiveBicapacity::additive({1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(validate(additive).ok());

    TwoAdditiveBicapacity bad(2);
    bad.set_a_plus(0, 0.1);
    bad.set_a_plus(1, 0.9);
    bad.set_a_minus(0, 0.5);
    bad.set_a_minus(1, 0.5);
    bad.set_opp_plus(0, 1, -0.2);
    const auto report = validate(bad);
    CHECK_FALSE(report.ok());
    CHECK(has_violation(report, ConstraintFamily::MonotonicityPlus, "j=0 C={} D={1}"));
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].slack == doctest::Approx(-0.1));

    TwoAdditiveBicapacity signs(2);
    signs.set_a_plus(0, 1.2);
    signs.set_a_plus(1, -0.2);
    signs.set_a_minus(0, 1.0);
    signs.set_opp_minus(1, 0, 0.1);
    const auto r2 = validate(signs);
    CHECK(has_violation(r2, ConstraintFamily::Sign, "a+_1 >= 0"));
    CHECK(has_violation(r2, ConstraintFamily::Sign, "a-_1|0 <= 0"));
    CHECK(has_violation(r2, ConstraintFamily::MonotonicityPlus, "j=1 C={} D={}"));

    TwoAdditiveBicapacity unnormalized(2);
    unnormalized.set_a_plus(0, 0.5);
    unnormalized.set_a_minus(0, 1.0);
    CHECK(has_violation(validate(unnormalized), ConstraintFamily::Boundary, "mu+(J,{}) = 1"));

    CHECK_THROWS_AS(validate(TwoAdditiveBicapacity(9)), CapacityError);
}

TEST_CASE("symmetry classes") {
    auto base = [] {
        TwoAdditiveBicapacity b(2);
        for (std::size_t j = 0; j < 2; ++j) {
            b.set_a_plus(j, 0.5);
            b.set_a_minus(j, 0.5);
        }
        return b;
    };
    CHECK(symmetry_class(base()) == SymmetryClass::StrongSymmetric);

    auto strong = base();
    strong.set_opp_plus(0, 1, -0.1);
    strong.set_opp_minus(1, 0, -0.1);
    CHECK(symmetry_class(strong) == SymmetryClass::StrongSymmetric);

    // a+_{1|2}=-0.1, a-_{1|2}=-0.05, a-_{2|1}=-0.1, a+_{2|1}=-0.05 also meets the strong conditions
    auto crossed = base();
    crossed.set_opp_plus(0, 1, -0.1);
    crossed.set_opp_minus(0, 1, -0.05);
    crossed.set_opp_minus(1, 0, -0.1);
    crossed.set_opp_plus(1, 0, -0.05);
    CHECK(symmetry_class(crossed) == SymmetryClass::StrongSymmetric);

    auto bipolar = base();
    bipolar.set_opp_plus(0, 1, -0.1);
    bipolar.set_opp_minus(0, 1, -0.1);
    CHECK(symmetry_class(bipolar) == SymmetryClass::BipolarSymmetric);

    auto none = base();
    none.set_opp_plus(0, 1, -0.1);
    CHECK(symmetry_class(none) == SymmetryClass::None);

    auto unequal = base();
    unequal.set_a_plus(0, 0.6);
    unequal.set_a_plus(1, 0.4);
    CHECK(symmetry_class(unequal) == SymmetryClass::None);
}

TEST_CASE("to_general agrees with the coefficients") {
    const auto additive = TwoAdditiveBicapacity::additive({0.4, 0.6});
    const auto g = to_general(additive);
    CHECK(g.table_plus.size() == 9);
    CHECK(g.mu_plus(sc({0}, {1})) == doctest::Approx(0.4));
    CHECK(g.mu_minus(sc({0}, {1})) == doctest::Approx(0.6));
    CHECK(g.mu_plus(sc({0, 1}, {})) == doctest::Approx(1.0));
    CHECK(g.mu_minus(sc({}, {0, 1})) == doctest::Approx(1.0));
    CHECK(validate(g).ok());

    std::mt19937 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto b = oracle::random_bicapacity(rng, 4);
        const auto gt = to_general(b);
        for (std::size_t code = 0; code < signed_coalition_count(4); ++code) {
            const auto cd = coalition_from_code(code, 4);
            CHECK(gt.mu_plus(cd) == eval_mu_plus(b, cd));
            CHECK(gt.mu_minus(cd) == eval_mu_minus(b, cd));
        }
        CHECK(validate(gt).ok());
    }
    CHECK_THROWS_AS(to_general(TwoAdditiveBicapacity(13)), CapacityError);
}

TEST_CASE("property: valid instances are monotone on every comparable pair of coalitions") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const auto b = oracle::random_bicapacity(rng, n);
        const std::size_t count = signed_coalition_count(n);
        for (std::size_t c1 = 0; c1 < count; ++c1)
            for (std::size_t c2 = 0; c2 < count; ++c2) {
                const auto x = coalition_from_code(c1, n), y = coalition_from_code(c2, n);
                // x below y: C grows, D shrinks
                if ((x.positive & ~y.positive) || (y.negative & ~x.negative)) continue;
                CHECK(eval_mu_plus(b, x) <= eval_mu_plus(b, y) + 1e-12);
                CHECK(eval_mu_minus(b, x) >= eval_mu_minus(b, y) - 1e-12);
                CHECK(eval_bicapacity(b, x) <= eval_bicapacity(b, y) + 1e-12);
            }
    }
}

TEST_CASE("property: randomized monotonicity for larger n") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 5 + trial % 4;
        const auto b = oracle::random_bicapacity(rng, n);
        for (int k = 0; k < 200; ++k) {
            const auto x = coalition_from_code(std::uniform_int_distribution<std::size_t>(
                                                   0, signed_coalition_count(n) - 1)(rng), n);
            // move one criterion up: from D to neutral, or from neutral to C
            const std::size_t j = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
            auto y = x;
            if (y.contains_negative(j)) y.negative &= ~(1u << j);
            else if (!y.contains_positive(j)) y.positive |= 1u << j;
            CHECK(eval_bicapacity(b, x) <= eval_bicapacity(b, y) + 1e-12);
        }
    }
}

TEST_CASE("property: symmetric instances satisfy the mirror identities") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const auto strong = oracle::random_strong_symmetric(rng, n);
        const auto bip = oracle::random_bipolar_only(rng, n);
        CHECK(symmetry_class(strong) == SymmetryClass::StrongSymmetric);
        CHECK(symmetry_class(bip) == SymmetryClass::BipolarSymmetric);
        const auto gs = to_general(strong), gb = to_general(bip);
        for (std::size_t code = 0; code < signed_coalition_count(n); ++code) {
            const auto cd = coalition_from_code(code, n);
            const SignedCoalition dc{cd.negative, cd.positive};
            CHECK(gs.mu_plus(cd) == doctest::Approx(gs.mu_minus(dc)).epsilon(1e-12));
            CHECK(eval_bicapacity(gb, cd) == doctest::Approx(-eval_bicapacity(gb, dc)).epsilon(1e-12));
        }
    }
}
