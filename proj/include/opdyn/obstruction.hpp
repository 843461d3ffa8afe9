#pragma once

#include <functional>
#include <span>
#include <vector>

#include "opdyn/exppoly.hpp"

namespace opdyn {

// phi(z) = scale * z + shift; n-fold composition stays affine.
struct AffineMap {
    Complex scale{1.0, 0.0};
    Complex shift{0.0, 0.0};

    Complex operator()(Complex z) const { return scale * z + shift; }
    AffineMap iterate(int n) const;
    AffineMap inverse() const;
};

struct AnalyticFn {
    std::function<Complex(Complex)> value;
    std::function<Complex(Complex)> derivative;
};

// Zero count of f inside |z - center| = radius via the argument principle,
// trapezoidal quadrature of f'/f with node doubling until the integral
// sits within 0.1 of an integer.  Throws ContourHitsZero when |f| drops
// under 1e-8 on the contour, QuadratureInconclusive when doubling fails.
int count_zeros(const AnalyticFn& f, Complex center, double radius, int n_quad = 1024);

// Zero-free weight exp(Q) for a polynomial Q.
struct ZeroFreeWeight {
    std::vector<Complex> q_coeffs;  // Q, degree order; empty means Q = 0

    Complex eval(Complex z) const;
    Complex log_derivative(Complex z) const;  // Q'(z)
};

struct DiskSpec {
    Complex center;
    double radius;
};

// Orbit element (prod_{j<n} w(phi^j z)) * (f(phi^n z))^power of the
// weighted composition operator, counted on each disk.  Every count is a
// multiple of `power`: the weight contributes no zeros and each zero of
// f o phi^n carries multiplicity times power.
std::vector<int> orbit_power_zero_parity(std::span<const Complex> f_coeffs,
                                         const ZeroFreeWeight& weight,
                                         const AffineMap& phi, int power, int n,
                                         std::span<const DiskSpec> disks,
                                         int n_quad = 1024);

// Certified lower bound |c| for inf over real g of sup |g^2 - c| on the
// interval: squares are pointwise nonnegative, so no search is needed.
double square_range_gap(double c, std::pair<double, double> interval);

}  // namespace opdyn
