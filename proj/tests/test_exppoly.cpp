#include <doctest.h>

#include <cmath>
#include <random>

#include "opdyn/exppoly.hpp"
#include "opdyn/symbol.hpp"

using namespace opdyn;

namespace {

Complex rand_complex(std::mt19937& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    return {d(rng), d(rng)};
}

ExpPoly iterated_multiply(const ExpPoly& f, int j) {
    ExpPoly acc = f;
    for (int i = 1; i < j; ++i) acc = acc * f;
    return acc;
}

void check_close(const ExpPoly& got, const ExpPoly& want, double rel_tol) {
    REQUIRE(got.size() == want.size());
    double scale = 0.0;
    for (const Term& t : want.terms()) scale = std::max(scale, std::abs(t.coefficient));
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(std::abs(got.terms()[i].exponent - want.terms()[i].exponent) < 1e-9);
        CHECK(std::abs(got.terms()[i].coefficient - want.terms()[i].coefficient) <=
              rel_tol * scale);
    }
}

}  // namespace

TEST_SUITE_BEGIN("exppoly");

TEST_CASE("canonicalize merges, cancels and orders") {
    const ExpPoly merged = ExpPoly::from_terms({{{0, 0}, {1, 0}}, {{0, 0}, {2, 0}}});
    REQUIRE(merged.size() == 1);
    CHECK(merged.terms()[0].coefficient == Complex{3, 0});
    CHECK(merged.terms()[0].exponent == Complex{0, 0});

    const ExpPoly cancelled =
        ExpPoly::from_terms({{{1, 0}, {1, 0}}, {{1 + 1e-15, 0}, {-1, 0}}}, 1e-12);
    CHECK(cancelled.empty());

    const ExpPoly ordered = ExpPoly::from_terms({{{0, 2}, {1, 0}}, {{0.1, 0}, {1, 0}}});
    REQUIRE(ordered.size() == 2);
    CHECK(ordered.terms()[0].exponent == Complex{0.1, 0});
    CHECK(ordered.terms()[1].exponent == Complex{0, 2});
}

TEST_CASE("multiply adds exponents") {
    const ExpPoly one = ExpPoly::exponential({1, 0}) * ExpPoly::exponential({-1, 0});
    REQUIRE(one.size() == 1);
    CHECK(one.terms()[0].exponent == Complex{0, 0});
    CHECK(one.terms()[0].coefficient == Complex{1, 0});

    // (e^z + e^{2z})^2 expanded by hand.
    const ExpPoly f = ExpPoly::exponential({1, 0}) + ExpPoly::exponential({2, 0});
    const ExpPoly sq = f * f;
    const ExpPoly want = ExpPoly::from_terms(
        {{{2, 0}, {1, 0}}, {{3, 0}, {2, 0}}, {{4, 0}, {1, 0}}});
    check_close(sq, want, 1e-15);

    CHECK((f * ExpPoly{}).empty());

    const ExpPoly scaled = f * Complex{0, 2};
    REQUIRE(scaled.size() == 2);
    for (const Term& t : scaled.terms()) CHECK(t.coefficient == Complex{0, 2});
    CHECK((f * Complex{0, 0}).empty());

    CHECK_THROWS_AS((void)ExpPoly::from_terms({{{0, 0}, {1, 0}}}, -1.0),
                    std::invalid_argument);
}

TEST_CASE("power_multinomial single term and two-term expansion") {
    const auto single = power_multinomial(ExpPoly::exponential({1, 0}), 5);
    REQUIRE(single.ledger.size() == 1);
    CHECK(single.ledger[0].coefficient == Complex{1, 0});
    REQUIRE(single.value.size() == 1);
    CHECK(single.value.terms()[0].exponent == Complex{5, 0});

    // (a e^{lam z/2} + c e^{gam z/2})^2 = a^2 e^{lam z} + 2ac e^{(lam+gam)z/2} + c^2 e^{gam z}
    const Complex a{0.7, 0.2}, c{-0.3, 0.5};
    const Complex lam{0.4, 0.1}, gam{0, 1.5};
    std::vector<Term> u_block{{lam / 2.0, a}};
    std::vector<Term> v_block{{gam / 2.0, c}};
    const auto expansion = power_multinomial(u_block, v_block, 2);
    REQUIRE(expansion.ledger.size() == 3);
    const ExpPoly want = ExpPoly::from_terms(
        {{lam, a * a}, {(lam + gam) / 2.0, 2.0 * a * c}, {gam, c * c}});
    check_close(expansion.value, want, 1e-14);
    for (const LedgerEntry& e : expansion.ledger) CHECK(e.index.order() == 2);
}

TEST_CASE("power_multinomial agrees with iterated multiply") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pd(1, 3), jd(1, 4);
    for (int trial = 0; trial < 60; ++trial) {
        const int p = pd(rng), j = jd(rng);
        std::vector<Term> terms;
        for (int k = 0; k < p; ++k) terms.push_back({rand_complex(rng, 2.0), rand_complex(rng)});
        const ExpPoly f = ExpPoly::from_terms(terms);
        if (f.empty()) continue;
        const auto via_ledger = power_multinomial(f, j);
        check_close(via_ledger.value, iterated_multiply(f, j), 1e-12);
    }
}

TEST_CASE("multinomial coefficient overflows loudly") {
    const int parts_small[] = {2, 1};
    CHECK(multinomial_coefficient(parts_small) == 3);
    const int parts_big[] = {50, 50};
    CHECK_THROWS_AS((void)multinomial_coefficient(parts_big), std::overflow_error);
}

TEST_CASE("apply_symbol_power acts on eigenvalues") {
    const ExpPoly constant = ExpPoly::constant({1, 0});
    const ExpPoly fixed = apply_symbol_power(constant, Symbol::cosine(), 7);
    REQUIRE(fixed.size() == 1);
    CHECK(fixed.terms()[0].coefficient == Complex{1, 0});  // cos(0) = 1

    const ExpPoly osc = apply_symbol_power(ExpPoly::exponential({0, 1.5}), Symbol::identity(), 2);
    REQUIRE(osc.size() == 1);
    CHECK(std::abs(osc.terms()[0].coefficient - Complex{-2.25, 0}) < 1e-15);

    const Symbol annihilator = Symbol::exp_minus({1, 0});  // phi(0) = 0
    CHECK(apply_symbol_power(ExpPoly::constant({1, 0}), annihilator, 3).empty());
    CHECK(apply_symbol_power(ExpPoly::constant({1, 0}), annihilator, 0).size() == 1);
}

TEST_CASE("the operator action is not multiplicative") {
    // phi(D)(fg) differs from phi(D)f * phi(D)g already for f = g = e^z.
    const Symbol d = Symbol::identity();
    const ExpPoly f = ExpPoly::exponential({1, 0});
    const ExpPoly joint = apply_symbol_power(f * f, d, 1);       // 2 e^{2z}
    const ExpPoly split = apply_symbol_power(f, d, 1) * apply_symbol_power(f, d, 1);
    REQUIRE(joint.size() == 1);
    REQUIRE(split.size() == 1);
    CHECK(std::abs(joint.terms()[0].coefficient - Complex{2, 0}) < 1e-15);
    CHECK(std::abs(split.terms()[0].coefficient - Complex{1, 0}) < 1e-15);
}

TEST_CASE("operator powers compose exactly") {
    std::mt19937 rng(11);
    const Symbol phi = Symbol::cosine();
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Term> terms;
        for (int k = 0; k < 3; ++k) terms.push_back({rand_complex(rng, 1.5), rand_complex(rng)});
        const ExpPoly f = ExpPoly::from_terms(terms);
        const int q1 = trial % 5, q2 = (trial * 3) % 7;
        const ExpPoly joint = apply_symbol_power(f, phi, q1 + q2);
        const ExpPoly staged = apply_symbol_power(apply_symbol_power(f, phi, q1), phi, q2);
        REQUIRE(joint.size() == staged.size());
        for (std::size_t i = 0; i < joint.size(); ++i) {
            CHECK(joint.terms()[i].exponent == staged.terms()[i].exponent);
            CHECK(joint.terms()[i].coefficient == staged.terms()[i].coefficient);
        }
    }
}

TEST_CASE("ring axioms hold to tolerance") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Term> ta, tb, tc;
        for (int k = 0; k < 4; ++k) {
            ta.push_back({rand_complex(rng), rand_complex(rng)});
            tb.push_back({rand_complex(rng), rand_complex(rng)});
            tc.push_back({rand_complex(rng), rand_complex(rng)});
        }
        const ExpPoly A = ExpPoly::from_terms(ta), B = ExpPoly::from_terms(tb),
                      C = ExpPoly::from_terms(tc);
        check_close(A * B, B * A, 1e-12);
        check_close((A * B) * C, A * (B * C), 1e-12);
    }
}

TEST_CASE("sup norm on disks") {
    const auto constant = sup_norm_on_disk(ExpPoly::constant({3, 0}), 2.0, 16);
    CHECK(constant.sampled_sup == doctest::Approx(3.0));
    CHECK(constant.crude_bound == doctest::Approx(3.0));

    const auto expo = sup_norm_on_disk(ExpPoly::exponential({1, 0}), 1.0, 64);
    CHECK(expo.sampled_sup == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
    CHECK(expo.crude_bound == doctest::Approx(std::exp(1.0)));

    const ExpPoly zero =
        ExpPoly::from_terms({{{1, 0}, {1, 0}}, {{1, 0}, {-1, 0}}});
    const auto z = sup_norm_on_disk(zero, 1.0, 16);
    CHECK(z.sampled_sup == 0.0);
    CHECK(z.crude_bound == 0.0);

    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Term> terms;
        for (int k = 0; k < 4; ++k) terms.push_back({rand_complex(rng, 2.0), rand_complex(rng)});
        const auto norm = sup_norm_on_disk(ExpPoly::from_terms(terms), 1.5, 24);
        CHECK(norm.sampled_sup <= norm.crude_bound);
    }
}

TEST_SUITE_END();
