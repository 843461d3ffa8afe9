#include "opdyn/obstruction.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "opdyn/errors.hpp"

namespace opdyn {

namespace {

Complex horner(std::span<const Complex> coeffs, Complex z) {
    Complex acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Complex horner_derivative(std::span<const Complex> coeffs, Complex z) {
    Complex acc{0.0, 0.0};
    for (std::size_t n = coeffs.size(); n-- > 1;)
        acc = acc * z + static_cast<double>(n) * coeffs[n];
    return acc;
}

Complex winding_integral(const AnalyticFn& f, Complex center, double radius, int n,
                         double& min_abs_f) {
    const double two_pi = 2.0 * std::numbers::pi;
    Complex acc{0.0, 0.0};
    min_abs_f = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        const Complex e = std::polar(1.0, two_pi * static_cast<double>(j) / n);
        const Complex z = center + radius * e;
        const Complex fz = f.value(z);
        min_abs_f = std::min(min_abs_f, std::abs(fz));
        if (min_abs_f < 1e-8) return acc;
        acc += e * f.derivative(z) / fz;
    }
    return acc * (radius / static_cast<double>(n));
}

}  // namespace

AffineMap AffineMap::iterate(int n) const {
    if (n < 0) throw std::invalid_argument("iteration count must be >= 0");
    // a^n z + b (a^{n-1} + ... + 1), geometric sum in closed form.
    Complex an{1.0, 0.0};
    Complex sum{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        sum += an;
        an *= scale;
    }
    return {an, shift * sum};
}

AffineMap AffineMap::inverse() const {
    if (scale == Complex{0.0, 0.0}) throw std::invalid_argument("affine map must have scale != 0");
    return {Complex{1.0, 0.0} / scale, -shift / scale};
}

int count_zeros(const AnalyticFn& f, Complex center, double radius, int n_quad) {
    if (radius <= 0.0) throw std::invalid_argument("disk radius must be positive");
    if (n_quad < 8) throw std::invalid_argument("need at least 8 quadrature nodes");
    constexpr int kMaxNodes = 1 << 17;
    for (int n = n_quad; n <= kMaxNodes; n *= 2) {
        double min_abs = 0.0;
        const Complex integral = winding_integral(f, center, radius, n, min_abs);
        if (min_abs < 1e-8)
            throw ContourHitsZero("f vanishes (numerically) on the counting contour");
        const double count = integral.real();
        const double nearest = std::round(count);
        const double residual = std::hypot(count - nearest, integral.imag());
        if (residual <= 0.1) return static_cast<int>(nearest);
    }
    throw QuadratureInconclusive("winding integral did not settle near an integer");
}

Complex ZeroFreeWeight::eval(Complex z) const {
    return std::exp(horner(q_coeffs, z));
}

Complex ZeroFreeWeight::log_derivative(Complex z) const {
    return horner_derivative(q_coeffs, z);
}

std::vector<int> orbit_power_zero_parity(std::span<const Complex> f_coeffs,
                                         const ZeroFreeWeight& weight,
                                         const AffineMap& phi, int power, int n,
                                         std::span<const DiskSpec> disks, int n_quad) {
    if (power < 1) throw std::invalid_argument("power must be >= 1");
    if (n < 0) throw std::invalid_argument("iteration count must be >= 0");
    if (phi.scale == Complex{0.0, 0.0})
        throw std::invalid_argument("affine map must have scale != 0");

    std::vector<AffineMap> iterates;
    for (int j = 0; j <= n; ++j) iterates.push_back(phi.iterate(j));

    // h = (prod_{j<n} w(phi^j z)) (f(phi^n z))^p evaluated directly; the
    // logarithmic derivative gives h' without differentiating the product.
    AnalyticFn h;
    h.value = [=](Complex z) {
        Complex acc{1.0, 0.0};
        for (int j = 0; j < n; ++j) acc *= weight.eval(iterates[static_cast<std::size_t>(j)](z));
        const Complex fz = horner(f_coeffs, iterates[static_cast<std::size_t>(n)](z));
        Complex fp{1.0, 0.0};
        for (int i = 0; i < power; ++i) fp *= fz;
        return acc * fp;
    };
    h.derivative = [=](Complex z) {
        Complex logd{0.0, 0.0};
        Complex an{1.0, 0.0};
        for (int j = 0; j < n; ++j) {
            logd += weight.log_derivative(iterates[static_cast<std::size_t>(j)](z)) * an;
            an *= phi.scale;
        }
        const Complex zn = iterates[static_cast<std::size_t>(n)](z);
        logd += static_cast<double>(power) * an * horner_derivative(f_coeffs, zn) /
                horner(f_coeffs, zn);
        return h.value(z) * logd;
    };

    std::vector<int> counts;
    counts.reserve(disks.size());
    for (const DiskSpec& d : disks) counts.push_back(count_zeros(h, d.center, d.radius, n_quad));
    return counts;
}

double square_range_gap(double c, std::pair<double, double> interval) {
    if (!(c < 0.0)) throw std::invalid_argument("target constant must be negative");
    if (!(interval.second > interval.first)) throw std::invalid_argument("empty interval");
    // For real g, g(x)^2 - c >= -c = |c| pointwise, so the sup distance of
    // g^2 to the constant c is at least |c| no matter the g.
    return -c;
}

}  // namespace opdyn
