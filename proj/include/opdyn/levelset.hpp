#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "opdyn/symbol.hpp"

namespace opdyn {

struct ConvexityCertificate {
    enum class Verdict { strictly_convex, not_convex, inconclusive };
    Verdict verdict = Verdict::inconclusive;
    bool strictly_convex = false;   // verdict == strictly_convex
    double min_abs_curvature = 0.0; // over interior samples
    int orientation_sign = 0;       // common curvature sign when certified
};

enum class TraceEnd { closed, stopped, max_points, critical_point, step_fault, exhausted };

// An ordered polyline on |phi(z)| = r with per-sample tangent and signed
// curvature data and a strict-convexity certificate.
struct LevelArc {
    double level = 0.0;
    std::vector<Complex> points;
    std::vector<Complex> tangents;    // unit, aligned with traversal
    std::vector<double> curvatures;   // signed; endpoints copy neighbours
    ConvexityCertificate certificate;
    TraceEnd end_reason = TraceEnd::exhausted;
    double max_level_residual = 0.0;  // max | |phi(z_i)| - r |
    double step_max = 0.0;            // bound honoured by consecutive samples

    std::size_t size() const noexcept { return points.size(); }
    LevelArc reversed() const;
    double length() const;
};

struct TraceOptions {
    double step = 1e-2;
    int max_points = 20000;
    int direction = +1;              // initial tangent sign
    double step_max = 0.0;           // 0 -> 2 * step
    std::function<bool(Complex)> stop;  // terminate when true (point not added)
    bool normalize_ccw = true;       // reorder so arg increases around 0
    double residual_tol = 1e-10;     // accepted per-sample level residual
    double newton_tol = 1e-12;       // corrector target
};

// Locates a point of the level set |phi| = r on the ray arg z = theta by
// grid scan + bisection + Newton polish.  Throws NoRootOnRay when |phi| - r
// does not change sign on the range, CriticalPoint when phi' vanishes at
// the root.
Complex find_seed(const Symbol& phi, double r, double theta,
                  std::pair<double, double> t_range);

// Predictor-corrector continuation of |phi(x+iy)|^2 = r^2 from a seed on
// the curve.  Terminates at the stop predicate, closure, or max_points;
// a vanishing gradient truncates the trace with end_reason critical_point.
LevelArc trace(const Symbol& phi, Complex seed, double r, const TraceOptions& opt = {});

// Signed curvature at an interior sample by centered differences on the
// arclength parametrization: (x'y'' - y'x'') / |gamma'|^3.
double curvature(const LevelArc& arc, std::size_t i);

// Certifies constant-sign discrete curvature bounded away from zero plus
// the chord property (sampled chords meet the polyline only at their
// endpoints).  Curvature magnitudes below the floor give an inconclusive
// certificate rather than a refutation.
ConvexityCertificate certify_strict_convexity(const LevelArc& arc,
                                              double curvature_floor = 1e-6);

// Builds a LevelArc from explicit samples (closed-form arcs, test shapes).
// Tangents/curvatures/certificate are derived from the polyline; when phi
// is given the level residuals are computed against it.
LevelArc arc_from_points(std::vector<Complex> pts, double level,
                         const Symbol* phi = nullptr);

// Traces from the seed in both directions and merges the halves into one
// ordered arc (counterclockwise around the origin when applicable).
LevelArc trace_bidirectional(const Symbol& phi, Complex seed, double r,
                             const TraceOptions& opt = {});

struct InverseResult {
    Complex value;
    double residual;  // |phi(g(w)) - w|
};

// Local inverse of phi near z0 via the contour integral
//   g(w) = (1/2 pi i) \oint z phi'(z) / (phi(z) - w) dz
// over |z - z0| = rho, by n_quad-node trapezoidal quadrature.
InverseResult local_inverse(const Symbol& phi, Complex z0, double rho, Complex w,
                            int n_quad);

}  // namespace opdyn
