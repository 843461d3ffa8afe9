#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "opdyn/exppoly.hpp"
#include "opdyn/errors.hpp"
#include "opdyn/symbol.hpp"

using namespace opdyn;

TEST_SUITE_BEGIN("symbol");

TEST_CASE("catalog evaluation") {
    const Symbol c = Symbol::cosine();
    CHECK(std::abs(c.eval({0, std::numbers::pi}) - Complex{std::cosh(std::numbers::pi), 0}) <
          1e-12);
    // |cos(x+iy)|^2 = cos^2 x + sinh^2 y
    for (double x : {0.3, 1.1, 2.7})
        for (double y : {-0.8, 0.2, 1.4}) {
            const double direct = std::norm(c.eval({x, y}));
            const double closed = std::cos(x) * std::cos(x) + std::sinh(y) * std::sinh(y);
            CHECK(direct == doctest::Approx(closed).epsilon(1e-12));
        }

    const Symbol ze = Symbol::z_exp();
    CHECK(ze.eval({0, 0}) == Complex{0, 0});
    CHECK(std::abs(ze.eval_derivative({0, 0}) - Complex{1, 0}) < 1e-15);

    CHECK(Symbol::rose().eval({0, 0}) == Complex{0, 0});
    const double rose_c = std::pow(9.0, 9.0 / 8.0) / 8.0;
    CHECK(std::abs(Symbol::rose().taylor_coeff(9) - Complex{rose_c, 0}) < 1e-15);
    CHECK(std::abs(Symbol::rose().taylor_coeff(1) - Complex{-rose_c, 0}) < 1e-15);
}

TEST_CASE("homothety conjugation") {
    const Symbol c = Symbol::cosine();
    const Symbol c1 = c.homothety_conjugate({1, 0});
    for (double t : {0.0, 0.7, 2.3})
        CHECK(std::abs(c1.eval({t, -t}) - c.eval({t, -t})) < 1e-15);

    const Symbol e2 = Symbol::exp().homothety_conjugate({2, 0});
    CHECK(std::abs(e2.eval({1, 0}) - Complex{std::exp(2.0), 0}) < 1e-12);
    CHECK(std::abs(e2.eval_derivative({1, 0}) - 2.0 * Complex{std::exp(2.0), 0}) < 1e-11);

    CHECK_THROWS_AS((void)c.homothety_conjugate({0, 0}), ConstructionError);

    // phi_a(z) = phi(a z) pointwise for a complex scale.
    const Complex a{1.3, -0.4};
    const Symbol ca = c.homothety_conjugate(a);
    for (double t : {0.2, 1.0})
        CHECK(std::abs(ca.eval({t, 0.1}) - c.eval(a * Complex{t, 0.1})) < 1e-14);
}

TEST_CASE("apply_to_taylor on polynomials") {
    const Symbol d = Symbol::identity();  // the bare derivative
    const std::vector<Complex> cubic{{0, 0}, {0, 0}, {0, 0}, {1, 0}};  // z^3
    const auto dcubic = d.apply_to_taylor(cubic, 10);
    REQUIRE(dcubic.size() == 4);
    CHECK(std::abs(dcubic[2] - Complex{3, 0}) < 1e-15);
    CHECK(std::abs(dcubic[0]) < 1e-15);
    CHECK(std::abs(dcubic[3]) < 1e-15);

    // exp shifts by one: p(z) -> p(z+1) on z^2 gives (z+1)^2.
    const std::vector<Complex> sq{{0, 0}, {0, 0}, {1, 0}};
    const auto shifted = Symbol::exp().apply_to_taylor(sq, 10);
    CHECK(std::abs(shifted[0] - Complex{1, 0}) < 1e-15);
    CHECK(std::abs(shifted[1] - Complex{2, 0}) < 1e-15);
    CHECK(std::abs(shifted[2] - Complex{1, 0}) < 1e-15);

    const auto cos_sq = Symbol::cosine().apply_to_taylor(sq, 10);
    CHECK(std::abs(cos_sq[0] - Complex{-1, 0}) < 1e-15);
    CHECK(std::abs(cos_sq[1]) < 1e-15);
    CHECK(std::abs(cos_sq[2] - Complex{1, 0}) < 1e-15);
}

TEST_CASE("taylor coefficients in closed form") {
    CHECK(std::abs(Symbol::sine().taylor_coeff(3) - Complex{-1.0 / 6.0, 0}) < 1e-16);
    CHECK(std::abs(Symbol::exp_minus({0.25, 0}).taylor_coeff(0) - Complex{0.75, 0}) < 1e-16);
    CHECK(std::abs(Symbol::z_exp().taylor_coeff(4) - Complex{1.0 / 6.0, 0}) < 1e-16);
}

TEST_CASE("type bounds hold for the catalog") {
    const Symbol symbols[] = {Symbol::cosine(), Symbol::sine(), Symbol::z_exp(), Symbol::exp(),
                              Symbol::exp_minus({0.5, 0}), Symbol::rose(),
                              Symbol::cosine().homothety_conjugate({2, 1})};
    for (const Symbol& s : symbols) {
        const auto [m, r] = s.type_bound();
        double fact = 1.0;
        for (int n = 0; n <= 50; ++n) {
            if (n > 0) fact *= n;
            const double bound = m * std::pow(r, n) / fact;
            CHECK(std::abs(s.taylor_coeff(n)) <= bound * (1.0 + 1e-12) + 1e-300);
        }
    }
}

TEST_CASE("taylor partial sums converge to closed-form eval") {
    const Symbol symbols[] = {Symbol::cosine(), Symbol::sine(), Symbol::z_exp(), Symbol::exp(),
                              Symbol::exp_minus({1, 0})};
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (const Symbol& s : symbols) {
        for (int trial = 0; trial < 10; ++trial) {
            Complex z{d(rng), d(rng)};
            if (std::abs(z) > 2.0) z *= 2.0 / std::abs(z);
            Complex sum{0, 0}, zn{1, 0};
            for (int n = 0; n <= 40; ++n) {
                sum += s.taylor_coeff(n) * zn;
                zn *= z;
            }
            CHECK(std::abs(sum - s.eval(z)) < 1e-10);
        }
    }
}

TEST_CASE("operator action on truncations matches eigenvalues") {
    // For f = e^{lambda z}: q applications of the Taylor action agree with
    // phi(lambda)^q e^{lambda z} on low-degree coefficients.
    const Symbol symbols[] = {Symbol::cosine(), Symbol::exp(), Symbol::z_exp()};
    const Complex lambdas[] = {{0.8, 0.4}, {-1.2, 1.0}, {0.1, -1.7}};
    constexpr int kTrunc = 30;
    for (const Symbol& s : symbols) {
        for (Complex lambda : lambdas) {
            std::vector<Complex> p(kTrunc + 1);
            Complex ln{1, 0};
            double fact = 1.0;
            for (int n = 0; n <= kTrunc; ++n) {
                if (n > 0) fact *= n;
                p[static_cast<std::size_t>(n)] = ln / fact;
                ln *= lambda;
            }
            for (int q = 1; q <= 3; ++q) {
                std::vector<Complex> acted = p;
                for (int i = 0; i < q; ++i) acted = s.apply_to_taylor(acted, kTrunc);
                Complex eig{1, 0};
                for (int i = 0; i < q; ++i) eig *= s.eval(lambda);
                for (int n = 0; n <= 12; ++n)
                    CHECK(std::abs(acted[static_cast<std::size_t>(n)] -
                                   eig * p[static_cast<std::size_t>(n)]) < 1e-6);
            }
        }
    }
}

TEST_CASE("polynomial powers by convolution") {
    const std::vector<Complex> p{{1, 0}, {1, 0}};  // 1 + z
    const auto sq = polynomial_power(p, 2);
    REQUIRE(sq.size() == 3);
    CHECK(sq[0] == Complex{1, 0});
    CHECK(sq[1] == Complex{2, 0});
    CHECK(sq[2] == Complex{1, 0});
}

TEST_SUITE_END();
