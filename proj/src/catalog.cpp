#include "opdyn/catalog.hpp"

#include <cmath>
#include <stdexcept>

namespace opdyn {

namespace {

std::vector<Complex> graph_samples_desc_x(double x_lo, double x_hi, int n,
                                          double (*f)(double)) {
    if (!(x_hi > x_lo) || n < 4) throw std::invalid_argument("bad arc window");
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = x_hi + (x_lo - x_hi) * static_cast<double>(i) / (n - 1);
        pts.emplace_back(x, f(x));
    }
    return pts;
}

}  // namespace

LevelArc cos_level_one_arc(double x_lo, double x_hi, int n) {
    const Symbol phi = Symbol::cosine();
    auto pts = graph_samples_desc_x(x_lo, x_hi, n,
                                    +[](double x) { return std::asinh(std::sin(x)); });
    return arc_from_points(std::move(pts), 1.0, &phi);
}

LevelArc sin_level_one_arc(double x_lo, double x_hi, int n) {
    const Symbol phi = Symbol::sine();
    auto pts = graph_samples_desc_x(x_lo, x_hi, n,
                                    +[](double x) { return std::asinh(std::cos(x)); });
    return arc_from_points(std::move(pts), 1.0, &phi);
}

LevelArc zexp_level_one_arc(double x_lo, double x_hi, int n) {
    const Symbol phi = Symbol::z_exp();
    auto pts = graph_samples_desc_x(x_lo, x_hi, n, +[](double x) {
        return std::sqrt(std::max(0.0, std::exp(-2.0 * x) - x * x));
    });
    return arc_from_points(std::move(pts), 1.0, &phi);
}

LevelArc exp_minus_level_one_arc(double a, double y_lo, double y_hi, int n) {
    if (!(y_hi > y_lo) || n < 4) throw std::invalid_argument("bad arc window");
    const Symbol phi = Symbol::exp_minus({a, 0.0});
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double y = y_lo + (y_hi - y_lo) * static_cast<double>(i) / (n - 1);
        const double x = std::log(a * std::cos(y) + std::sqrt(1.0 - a * a * std::sin(y) * std::sin(y)));
        pts.emplace_back(x, y);
    }
    return arc_from_points(std::move(pts), 1.0, &phi);
}

}  // namespace opdyn
