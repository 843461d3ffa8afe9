#pragma once

#include <string>
#include <vector>

#include "opdyn/exppoly.hpp"

namespace opdyn {

struct LevelArc;
struct SectorRegion;

// Minimal SVG writer for arcs, region boundaries and point clouds.
class SvgCanvas {
public:
    SvgCanvas(int width_px = 640, int height_px = 640, double pad_frac = 0.08);

    void polyline(const std::vector<Complex>& pts, const std::string& color,
                  double width = 1.5, bool dashed = false);
    void circle_outline(Complex center, double radius, const std::string& color,
                        bool dashed = true);
    void dots(const std::vector<Complex>& pts, const std::string& color, double r = 1.6);
    void segment(Complex a, Complex b, const std::string& color, double width = 1.0,
                 bool dashed = false);

    std::string render() const;  // computes the viewport from accumulated data

private:
    struct Poly { std::vector<Complex> pts; std::string color; double width; bool dashed; };
    struct Circle { Complex center; double radius; std::string color; bool dashed; };
    struct Dots { std::vector<Complex> pts; std::string color; double r; };

    void grow_bounds(Complex z, double margin = 0.0);

    int width_, height_;
    double pad_;
    double min_x_ = 0, max_x_ = 0, min_y_ = 0, max_y_ = 0;
    bool any_ = false;
    std::vector<Poly> polys_;
    std::vector<Circle> circles_;
    std::vector<Dots> dots_;
};

// Arcs with an optional |z| = 1 reference circle.
std::string render_arcs_svg(const std::vector<LevelArc>& arcs, bool unit_circle);

// The region figure: level arc, radial boundary segments, the subsector
// near the origin and Minkowski-sum samples.
std::string render_region_svg(const SectorRegion& region,
                              const std::vector<Complex>& minkowski_samples,
                              double lambda_eps);

}  // namespace opdyn
