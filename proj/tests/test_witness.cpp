#include <doctest.h>

#include <cmath>
#include <random>

#include "opdyn/catalog.hpp"
#include "opdyn/errors.hpp"
#include "opdyn/witness.hpp"

using namespace opdyn;

namespace {

// The reference configuration: phi = id, m = 2, lambda = 0.1, gamma = 1.5i.
WitnessProblem reference_problem() {
    WitnessProblem p;
    p.phi = Symbol::identity();
    p.m = 2;
    p.r = 1.5;
    p.lambda = {{0.1, 0}};
    p.gamma = {{0, 1.5}};
    p.a = {{1, 0}};
    p.b = {{1, 0}};
    return p;
}

double ledger_magnitude(const WitnessStep& step, int j, const std::vector<int>& u,
                        const std::vector<int>& v) {
    for (const TermRecord& rec : step.ledger)
        if (rec.j == j && rec.index.u == u && rec.index.v == v) return rec.magnitude;
    FAIL("ledger entry not found");
    return 0.0;
}

void check_poly_close(const ExpPoly& got, const ExpPoly& want, double rel_tol) {
    REQUIRE(got.size() == want.size());
    double scale = 1e-30;
    for (const Term& t : want.terms()) scale = std::max(scale, std::abs(t.coefficient));
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(std::abs(got.terms()[i].exponent - want.terms()[i].exponent) < 1e-9);
        CHECK(std::abs(got.terms()[i].coefficient - want.terms()[i].coefficient) <=
              rel_tol * scale);
    }
}

}  // namespace

TEST_SUITE_BEGIN("witness");

TEST_CASE("build_R solves the m-th root equation") {
    const WitnessProblem p = reference_problem();
    const auto built = build_R(p, 10);
    REQUIRE(built.c.size() == 1);
    CHECK(std::abs(std::abs(built.c[0]) - std::pow(1.5, -5.0)) < 1e-12);

    // c^m phi(gamma)^q = b to high relative accuracy.
    Complex lhs = built.c[0] * built.c[0];
    const Complex eig = p.phi.eval(p.gamma[0]);
    for (int i = 0; i < 10; ++i) lhs *= eig;
    CHECK(std::abs(lhs - p.b[0]) < 1e-10);

    // m = 1 closed form: c = b / phi(gamma)^q.
    WitnessProblem lin = reference_problem();
    lin.m = 1;
    const auto built1 = build_R(lin, 4);
    Complex expect = lin.b[0];
    for (int i = 0; i < 4; ++i) expect /= eig;
    CHECK(std::abs(built1.c[0] - expect) < 1e-12);

    // ||R_q|| strictly decreasing toward zero.
    double prev = std::numeric_limits<double>::infinity();
    for (int q = 1; q <= 40; q += 3) {
        const auto norm = sup_norm_on_disk(build_R(p, q).R, 1.0, 16);
        CHECK(norm.crude_bound < prev);
        prev = norm.crude_bound;
    }
    CHECK(prev < 1e-3);

    WitnessProblem bad = reference_problem();
    bad.gamma = {{0, 0}};  // phi(0) = 0
    CHECK_THROWS_AS((void)build_R(bad, 3), EigenvalueZero);
}

TEST_CASE("push_forward magnitudes match the hand formulas") {
    const WitnessProblem p = reference_problem();
    const WitnessStep step = push_forward(p, 10);

    // j = 1: |a| |phi(lambda/2)|^10 and |c| |phi(gamma/2)|^10.
    CHECK(ledger_magnitude(step, 1, {1}, {0}) ==
          doctest::Approx(std::pow(0.05, 10)).epsilon(1e-10));
    CHECK(ledger_magnitude(step, 1, {0}, {1}) ==
          doctest::Approx(std::pow(1.5, -5.0) * std::pow(0.75, 10)).epsilon(1e-10));

    // j = 2 cross term: 2 a c phi((lambda+gamma)/2)^10.
    const double cross = 2.0 * std::pow(1.5, -5.0) * std::pow(std::abs(Complex{0.05, 0.75}), 10);
    CHECK(ledger_magnitude(step, 2, {1}, {1}) == doctest::Approx(cross).epsilon(1e-10));

    // The leading v = m e_1 term cancels against B.
    for (const Term& t : step.residual.terms())
        if (std::abs(t.exponent - Complex{0, 1.5}) < 1e-9)
            CHECK(std::abs(t.coefficient) <= 1e-10);

    // m = 1 with A = 0: the residual is exactly solved.
    WitnessProblem lin = reference_problem();
    lin.m = 1;
    lin.a = {{0, 0}};
    const WitnessStep lin_step = push_forward(lin, 6);
    CHECK(lin_step.residual_norm.crude_bound <= 1e-12);
}

TEST_CASE("decay rates list the geometric factors") {
    const WitnessProblem p = reference_problem();
    const auto rates = decay_rates(p);
    bool saw_gamma_half = false, saw_cross = false;
    for (const DecayRate& rate : rates) {
        CHECK(rate.factor < 1.0);
        if (rate.j == 1 && rate.index.v == std::vector<int>{1} &&
            rate.index.u == std::vector<int>{0}) {
            CHECK(rate.factor == doctest::Approx(0.75 / std::sqrt(1.5)).epsilon(1e-12));
            saw_gamma_half = true;
        }
        if (rate.j == 2 && rate.index.u == std::vector<int>{1} &&
            rate.index.v == std::vector<int>{1}) {
            // |v| = 1, m = 2: the r-power in the denominator is r^{1/2},
            // matching the actual per-q decay of |c| |phi(w)|^q.
            CHECK(rate.factor ==
                  doctest::Approx(std::abs(Complex{0.05, 0.75}) / std::sqrt(1.5))
                      .epsilon(1e-12));
            saw_cross = true;
        }
        // the cancelled pure power emits no rate
        CHECK_FALSE((rate.j == 2 && rate.index.u == std::vector<int>{0} &&
                     rate.index.v == std::vector<int>{2}));
    }
    CHECK(saw_gamma_half);
    CHECK(saw_cross);
}

TEST_CASE("find_q certifies with crude bounds") {
    const WitnessProblem p = reference_problem();
    const auto outcome = find_q(p, 1e-6, 1.0, 200);
    REQUIRE(outcome.q.has_value());
    CHECK(*outcome.q <= 200);
    CHECK(outcome.trace.size() == static_cast<std::size_t>(*outcome.q));
    const WitnessStep& last = outcome.trace.back();
    CHECK(last.r_norm.crude_bound <= 1e-6);
    CHECK(last.residual_norm.crude_bound <= 1e-6);
    for (const DiskNorm& n : last.power_norms) CHECK(n.crude_bound <= 1e-6);

    // Immediate acceptance for a huge eps.
    const auto immediate = find_q(p, 1e6, 1.0, 50);
    REQUIRE(immediate.q.has_value());
    CHECK(*immediate.q == 1);

    // A frequency with |phi| >= 1 is rejected before any search runs.
    WitnessProblem bad = reference_problem();
    bad.lambda = {{2.5, 0}};  // |phi(lambda/2)| = 1.25 already at order 1
    CHECK_THROWS_AS((void)find_q(bad, 1e-6, 1.0, 10), ConstructionError);
}

TEST_CASE("ledger sums match the direct expansion route") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> amp(-1.0, 1.0), phase(0.25, 0.5), delta(0.6, 0.9),
        mag(0.005, 0.02);
    std::uniform_int_distribution<int> md(1, 3), pd(1, 2), qd(2, 12);
    for (int trial = 0; trial < 40; ++trial) {
        WitnessProblem p;
        p.phi = Symbol::identity();
        p.m = md(rng);
        // r < m/(m-1) keeps the scaled level-arc combinations strictly
        // inside the unit disk for every m used here.
        p.r = 1.2;
        const int np = pd(rng);
        const double th0 = phase(rng);
        for (int k = 0; k < np; ++k) {
            p.gamma.push_back(std::polar(1.2, th0 + k * delta(rng)));
            p.lambda.push_back(std::polar(mag(rng), phase(rng)));
            p.a.push_back({amp(rng), amp(rng)});
            p.b.push_back({amp(rng) + 1.5, amp(rng)});  // keep |b| away from 0
        }
        validate_problem(p);
        const int q = qd(rng);
        const auto built = build_R(p, q);
        const WitnessStep step = push_forward(p, q);

        // Direct route: canonical A + R, iterated multiply, eigenvalue action.
        std::vector<Term> a_terms;
        for (std::size_t k = 0; k < p.p(); ++k)
            a_terms.push_back({p.lambda[k] / static_cast<double>(p.m), p.a[k]});
        const ExpPoly f = ExpPoly::from_terms(a_terms) + built.R;
        for (int j = 1; j <= p.m; ++j) {
            ExpPoly powered = f;
            for (int i = 1; i < j; ++i) powered = powered * f;
            const ExpPoly direct = apply_symbol_power(powered, p.phi, q);
            check_poly_close(step.powers[static_cast<std::size_t>(j - 1)], direct, 1e-12);
        }

        // Cancellation identity at every gamma_k.
        for (std::size_t k = 0; k < p.p(); ++k) {
            double coeff_at_gamma = 0.0;
            for (const Term& t : step.residual.terms())
                if (std::abs(t.exponent - p.gamma[k]) < 1e-9)
                    coeff_at_gamma = std::abs(t.coefficient);
            CHECK(coeff_at_gamma <= 1e-10 * std::abs(p.b[k]));
        }
    }
}

TEST_CASE("per-index decay is geometric in q") {
    const WitnessProblem p = reference_problem();
    const auto rates = decay_rates(p);
    // log |U(q)| regression slope vs ln(factor) over q in [10, 60].
    for (const DecayRate& rate : rates) {
        std::vector<double> qs, logs;
        for (int q = 10; q <= 60; q += 5) {
            const WitnessStep step = push_forward(p, q);
            for (const TermRecord& rec : step.ledger)
                if (rec.j == rate.j && rec.index == rate.index && rec.magnitude > 0) {
                    qs.push_back(q);
                    logs.push_back(std::log(rec.magnitude));
                }
        }
        REQUIRE(qs.size() >= 5);
        const double n = static_cast<double>(qs.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < qs.size(); ++i) {
            sx += qs[i];
            sy += logs[i];
            sxx += qs[i] * qs[i];
            sxy += qs[i] * logs[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CHECK(slope == doctest::Approx(std::log(rate.factor)).epsilon(0.02));
    }
}

TEST_CASE("region-backed problem from the criterion pipeline certifies") {
    const SectorRegion base = validate_arc(cos_level_one_arc(1.45, 2.6, 400));
    const auto search = inflate_arc(Symbol::cosine(), base, 2);
    REQUIRE(search.found.has_value());

    WitnessProblem p;
    p.phi = Symbol::cosine();
    p.m = 2;
    p.r = search.found->r;
    const auto& pts = search.found->arc.points;
    p.gamma = {pts[pts.size() / 2]};
    const double theta =
        0.5 * (search.found->region_r.arg_min + search.found->region_r.arg_max);
    p.lambda = {std::polar(0.8 * search.found->eps, theta)};
    p.a = {{1, 0}};
    p.b = {{1, 0}};
    p.region = base;
    p.lambda_eps = search.found->eps;
    p.lambda_cone = {search.found->region_r.arg_min, search.found->region_r.arg_max};

    CHECK(std::abs(std::abs(p.phi.eval(p.gamma[0])) - p.r) <= 1e-8);
    const auto outcome = find_q(p, 1e-2, 1.0, 4000);
    REQUIRE(outcome.q.has_value());
    const WitnessStep& last = outcome.trace.back();
    CHECK(last.r_norm.crude_bound <= 1e-2);
    CHECK(last.residual_norm.crude_bound <= 1e-2);
    for (const DiskNorm& n : last.power_norms) CHECK(n.crude_bound <= 1e-2);
    for (const DecayRate& rate : decay_rates(p)) CHECK(rate.factor < 1.0);

    // Forcing a frequency out of the region is rejected up front.
    WitnessProblem forced = p;
    forced.lambda = {std::polar(2.0, theta)};
    CHECK_THROWS_AS((void)find_q(forced, 1e-2, 1.0, 10), ConstructionError);
}

TEST_CASE("root branch changes phases but not certification") {
    const WitnessProblem p = reference_problem();
    const auto base = find_q(p, 1e-6, 1.0, 200, 0);
    const auto other = find_q(p, 1e-6, 1.0, 200, 1);
    REQUIRE(base.q.has_value());
    REQUIRE(other.q.has_value());
    CHECK(*base.q == *other.q);

    const WitnessStep s0 = push_forward(p, 12, 0);
    const WitnessStep s1 = push_forward(p, 12, 1);
    REQUIRE(s0.ledger.size() == s1.ledger.size());
    for (std::size_t i = 0; i < s0.ledger.size(); ++i)
        CHECK(s0.ledger[i].magnitude == doctest::Approx(s1.ledger[i].magnitude).epsilon(1e-12));

    const auto b0 = build_R(p, 12, 0);
    const auto b1 = build_R(p, 12, 1);
    // branches differ by an m-th root of unity
    const Complex ratio = b1.c[0] / b0.c[0];
    CHECK(std::abs(ratio + Complex{1, 0}) < 1e-12);  // m = 2: the other square root
}

TEST_SUITE_END();
