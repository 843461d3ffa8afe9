#include "opdyn/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opdyn/criterion.hpp"
#include "opdyn/levelset.hpp"

namespace opdyn {

SvgCanvas::SvgCanvas(int width_px, int height_px, double pad_frac)
    : width_(width_px), height_(height_px), pad_(pad_frac) {}

void SvgCanvas::grow_bounds(Complex z, double margin) {
    if (!any_) {
        min_x_ = z.real() - margin;
        max_x_ = z.real() + margin;
        min_y_ = z.imag() - margin;
        max_y_ = z.imag() + margin;
        any_ = true;
        return;
    }
    min_x_ = std::min(min_x_, z.real() - margin);
    max_x_ = std::max(max_x_, z.real() + margin);
    min_y_ = std::min(min_y_, z.imag() - margin);
    max_y_ = std::max(max_y_, z.imag() + margin);
}

void SvgCanvas::polyline(const std::vector<Complex>& pts, const std::string& color,
                         double width, bool dashed) {
    for (Complex z : pts) grow_bounds(z);
    polys_.push_back({pts, color, width, dashed});
}

void SvgCanvas::circle_outline(Complex center, double radius, const std::string& color,
                               bool dashed) {
    grow_bounds(center, radius);
    circles_.push_back({center, radius, color, dashed});
}

void SvgCanvas::dots(const std::vector<Complex>& pts, const std::string& color, double r) {
    for (Complex z : pts) grow_bounds(z);
    dots_.push_back({pts, color, r});
}

void SvgCanvas::segment(Complex a, Complex b, const std::string& color, double width,
                        bool dashed) {
    polyline({a, b}, color, width, dashed);
}

std::string SvgCanvas::render() const {
    double min_x = min_x_, max_x = max_x_, min_y = min_y_, max_y = max_y_;
    if (!any_) {
        min_x = min_y = -1;
        max_x = max_y = 1;
    }
    const double span_x = std::max(max_x - min_x, 1e-9);
    const double span_y = std::max(max_y - min_y, 1e-9);
    const double span = std::max(span_x, span_y) * (1.0 + 2.0 * pad_);
    const double cx = 0.5 * (min_x + max_x);
    const double cy = 0.5 * (min_y + max_y);
    const double scale = static_cast<double>(std::min(width_, height_)) / span;
    // SVG y grows downward.
    const auto px = [&](Complex z) {
        return std::pair<double, double>{(z.real() - cx) * scale + width_ / 2.0,
                                         (cy - z.imag()) * scale + height_ / 2.0};
    };

    std::ostringstream os;
    os.precision(8);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
       << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const Circle& c : circles_) {
        const auto [x, y] = px(c.center);
        os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << c.radius * scale
           << "\" fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1\"";
        if (c.dashed) os << " stroke-dasharray=\"4 3\"";
        os << "/>\n";
    }
    for (const Poly& p : polys_) {
        os << "<polyline fill=\"none\" stroke=\"" << p.color << "\" stroke-width=\"" << p.width
           << "\"";
        if (p.dashed) os << " stroke-dasharray=\"4 3\"";
        os << " points=\"";
        for (Complex z : p.pts) {
            const auto [x, y] = px(z);
            os << x << "," << y << " ";
        }
        os << "\"/>\n";
    }
    for (const Dots& d : dots_) {
        for (Complex z : d.pts) {
            const auto [x, y] = px(z);
            os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << d.r << "\" fill=\""
               << d.color << "\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_arcs_svg(const std::vector<LevelArc>& arcs, bool unit_circle) {
    SvgCanvas canvas;
    if (unit_circle) canvas.circle_outline({0.0, 0.0}, 1.0, "#999999");
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf"};
    for (std::size_t i = 0; i < arcs.size(); ++i)
        canvas.polyline(arcs[i].points, palette[i % 7]);
    return canvas.render();
}

std::string render_region_svg(const SectorRegion& region,
                              const std::vector<Complex>& minkowski_samples,
                              double lambda_eps) {
    SvgCanvas canvas;
    canvas.circle_outline({0.0, 0.0}, 1.0, "#bbbbbb");
    canvas.polyline(region.arc.points, "#1f77b4", 2.0);
    canvas.segment({0.0, 0.0}, region.z1, "#1f77b4", 1.0, true);
    canvas.segment({0.0, 0.0}, region.z2, "#1f77b4", 1.0, true);
    if (lambda_eps > 0.0) {
        std::vector<Complex> lam_arc;
        for (int i = 0; i <= 32; ++i) {
            const double th = region.arg_min +
                              (region.arg_max - region.arg_min) * static_cast<double>(i) / 32.0;
            lam_arc.push_back(std::polar(lambda_eps, th));
        }
        canvas.polyline(lam_arc, "#2ca02c", 1.0, true);
    }
    canvas.dots(minkowski_samples, "#d62728", 1.4);
    return canvas.render();
}

}  // namespace opdyn
