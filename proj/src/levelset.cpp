#include "opdyn/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "opdyn/errors.hpp"

namespace opdyn {

namespace {

constexpr double kGradFloor = 1e-8;

double cross2(Complex a, Complex b) {
    return a.real() * b.imag() - a.imag() * b.real();
}

// Gradient of F = |phi|^2 as a complex vector Fx + i Fy.  With
// g0 = conj(phi) phi' the components are (2 Re g0, -2 Im g0), i.e.
// G = 2 phi conj(phi').
Complex level_gradient(const Symbol& phi, Complex z) {
    return 2.0 * phi.eval(z) * std::conj(phi.eval_derivative(z));
}

double level_residual(const Symbol& phi, Complex z, double r) {
    return std::abs(std::abs(phi.eval(z)) - r);
}

struct CorrectorResult {
    Complex z;
    bool critical = false;
    bool converged = false;
};

// Newton on F = |phi|^2 - r^2 along the gradient direction.  Iterates
// toward `target_tol`; the step is accepted if it at least reaches
// `accept_tol`.
CorrectorResult correct_onto_level(const Symbol& phi, Complex z, double r,
                                   double target_tol, double accept_tol,
                                   int max_iter = 20) {
    CorrectorResult res;
    for (int it = 0; it < max_iter; ++it) {
        if (level_residual(phi, z, r) <= target_tol) {
            res.z = z;
            res.converged = true;
            return res;
        }
        const Complex g = level_gradient(phi, z);
        const double gn = std::abs(g);
        if (gn < kGradFloor) {
            res.z = z;
            res.critical = true;
            return res;
        }
        const double f = std::norm(phi.eval(z)) - r * r;
        z -= f * g / (gn * gn);
    }
    res.z = z;
    res.converged = level_residual(phi, z, r) <= accept_tol;
    return res;
}

Complex unit_tangent(const Symbol& phi, Complex z) {
    const Complex g = level_gradient(phi, z);
    const double gn = std::abs(g);
    if (gn < kGradFloor) throw CriticalPoint("gradient vanishes on the level curve");
    return Complex{0.0, 1.0} * g / gn;
}

double wrap_angle(double a) {
    const double pi = std::numbers::pi;
    while (a > pi) a -= 2.0 * pi;
    while (a <= -pi) a += 2.0 * pi;
    return a;
}

void fill_derived_data(LevelArc& arc, const Symbol* phi) {
    const std::size_t n = arc.points.size();
    arc.tangents.assign(n, Complex{0.0, 0.0});
    arc.curvatures.assign(n, 0.0);
    if (n >= 2) {
        for (std::size_t i = 0; i < n; ++i) {
            Complex chord;
            if (i == 0)
                chord = arc.points[1] - arc.points[0];
            else if (i + 1 == n)
                chord = arc.points[n - 1] - arc.points[n - 2];
            else
                chord = arc.points[i + 1] - arc.points[i - 1];
            Complex t = chord;
            if (phi != nullptr) {
                // Exact tangent from the gradient where available, aligned
                // with the traversal direction.
                const Complex g = level_gradient(*phi, arc.points[i]);
                if (std::abs(g) >= kGradFloor) t = Complex{0.0, 1.0} * g;
            }
            const double tn = std::abs(t);
            if (tn > 0.0) t /= tn;
            if (t.real() * chord.real() + t.imag() * chord.imag() < 0.0) t = -t;
            arc.tangents[i] = t;
        }
        for (std::size_t i = 1; i + 1 < n; ++i) arc.curvatures[i] = curvature(arc, i);
        if (n >= 3) {
            arc.curvatures[0] = arc.curvatures[1];
            arc.curvatures[n - 1] = arc.curvatures[n - 2];
        }
    }
    arc.max_level_residual = 0.0;
    if (phi != nullptr)
        for (const Complex& z : arc.points)
            arc.max_level_residual =
                std::max(arc.max_level_residual, level_residual(*phi, z, arc.level));
    arc.certificate = certify_strict_convexity(arc);
    double gap = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        gap = std::max(gap, std::abs(arc.points[i + 1] - arc.points[i]));
    if (arc.step_max == 0.0) arc.step_max = gap;
}

}  // namespace

LevelArc LevelArc::reversed() const {
    LevelArc out = *this;
    std::reverse(out.points.begin(), out.points.end());
    std::reverse(out.tangents.begin(), out.tangents.end());
    for (Complex& t : out.tangents) t = -t;
    std::reverse(out.curvatures.begin(), out.curvatures.end());
    for (double& k : out.curvatures) k = -k;
    out.certificate.orientation_sign = -out.certificate.orientation_sign;
    return out;
}

double LevelArc::length() const {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) s += std::abs(points[i + 1] - points[i]);
    return s;
}

Complex find_seed(const Symbol& phi, double r, double theta,
                  std::pair<double, double> t_range) {
    if (r <= 0.0) throw std::invalid_argument("level must be positive");
    const auto [t_lo, t_hi] = t_range;
    if (!(t_hi > t_lo)) throw std::invalid_argument("empty ray range");
    const Complex dir = std::polar(1.0, theta);
    const auto h = [&](double t) { return std::abs(phi.eval(t * dir)) - r; };

    constexpr int kGrid = 1024;
    double best_t = t_lo, best_h = std::abs(h(t_lo));
    double a = t_lo, b = t_lo, ha = h(t_lo);
    bool bracketed = false;
    for (int i = 1; i <= kGrid; ++i) {
        const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / kGrid;
        const double ht = h(t);
        if (std::abs(ht) < best_h) {
            best_h = std::abs(ht);
            best_t = t;
        }
        if (ha == 0.0 || (ha < 0.0) != (ht < 0.0)) {
            a = t_lo + (t_hi - t_lo) * static_cast<double>(i - 1) / kGrid;
            b = t;
            bracketed = true;
            break;
        }
        ha = ht;
    }

    double t_root;
    if (bracketed) {
        double fa = h(a);
        if (fa == 0.0) {
            t_root = a;
        } else {
            for (int it = 0; it < 200 && (b - a) > 1e-16 * std::max(1.0, std::abs(b)); ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = h(mid);
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            t_root = 0.5 * (a + b);
        }
    } else if (best_h <= 1e-9) {
        // Degenerate touch: the level is attained without a sign change.
        t_root = best_t;
    } else {
        throw NoRootOnRay("no |phi| = r crossing on the ray");
    }

    // Newton polish on s(t) = |phi(t dir)|^2 - r^2.
    for (int it = 0; it < 50; ++it) {
        const Complex z = t_root * dir;
        if (level_residual(phi, z, r) <= 1e-13 * std::max(1.0, r)) break;
        const Complex w = phi.eval(z);
        const double sp = 2.0 * std::real(std::conj(w) * phi.eval_derivative(z) * dir);
        if (std::abs(sp) < 1e-14) break;
        t_root -= (std::norm(w) - r * r) / sp;
    }

    const Complex z = t_root * dir;
    if (std::abs(phi.eval_derivative(z)) < kGradFloor)
        throw CriticalPoint("phi' vanishes at the located level-set point");
    if (level_residual(phi, z, r) > 1e-12 * std::max(1.0, r))
        throw NoRootOnRay("ray root did not converge to the level set");
    return z;
}

LevelArc trace(const Symbol& phi, Complex seed, double r, const TraceOptions& opt) {
    if (r <= 0.0) throw std::invalid_argument("level must be positive");
    if (opt.step <= 0.0) throw std::invalid_argument("step must be positive");
    const double step_max = opt.step_max > 0.0 ? opt.step_max : 2.0 * opt.step;

    LevelArc arc;
    arc.level = r;
    arc.step_max = step_max;

    auto start = correct_onto_level(phi, seed, r, opt.newton_tol, opt.residual_tol);
    if (start.critical || std::abs(phi.eval_derivative(start.z)) < kGradFloor)
        throw CriticalPoint("cannot start a trace at a critical point of |phi|");
    if (!start.converged) throw InvalidArc("seed did not converge onto the level set");

    Complex z = start.z;
    Complex t_prev = unit_tangent(phi, z) * static_cast<double>(opt.direction >= 0 ? 1 : -1);
    arc.points.push_back(z);
    arc.end_reason = TraceEnd::exhausted;

    while (static_cast<int>(arc.points.size()) < opt.max_points) {
        double step = opt.step;
        CorrectorResult next;
        bool accepted = false;
        for (int attempt = 0; attempt < 4; ++attempt) {
            next = correct_onto_level(phi, z + step * t_prev, r, opt.newton_tol, opt.residual_tol);
            if (next.critical) break;
            if (next.converged && std::abs(next.z - z) <= step_max &&
                std::abs(next.z - z) > 0.05 * opt.step) {
                accepted = true;
                break;
            }
            step *= 0.5;  // retreat near sharp turns before giving up
        }
        if (next.critical) {
            arc.end_reason = TraceEnd::critical_point;
            break;
        }
        if (!accepted) {
            arc.end_reason = TraceEnd::step_fault;
            break;
        }
        if (arc.points.size() >= 8 && std::abs(next.z - arc.points.front()) < 0.75 * opt.step) {
            arc.end_reason = TraceEnd::closed;
            break;
        }
        if (opt.stop && opt.stop(next.z)) {
            arc.end_reason = TraceEnd::stopped;
            break;
        }
        Complex t_new;
        try {
            t_new = unit_tangent(phi, next.z);
        } catch (const CriticalPoint&) {
            arc.end_reason = TraceEnd::critical_point;
            break;
        }
        if (t_new.real() * t_prev.real() + t_new.imag() * t_prev.imag() < 0.0) t_new = -t_new;
        arc.points.push_back(next.z);
        z = next.z;
        t_prev = t_new;
    }
    if (static_cast<int>(arc.points.size()) >= opt.max_points)
        arc.end_reason = TraceEnd::max_points;

    if (opt.normalize_ccw && arc.points.size() >= 2) {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < arc.points.size(); ++i)
            total += wrap_angle(std::arg(arc.points[i + 1]) - std::arg(arc.points[i]));
        if (total < 0.0) std::reverse(arc.points.begin(), arc.points.end());
    }

    fill_derived_data(arc, &phi);
    arc.step_max = step_max;
    return arc;
}

double curvature(const LevelArc& arc, std::size_t i) {
    if (i == 0 || i + 1 >= arc.points.size())
        throw std::invalid_argument("curvature needs an interior sample");
    const Complex p0 = arc.points[i - 1], p1 = arc.points[i], p2 = arc.points[i + 1];
    const double h1 = std::abs(p1 - p0);
    const double h2 = std::abs(p2 - p1);
    if (h1 == 0.0 || h2 == 0.0) return 0.0;
    // Non-uniform centered differences on the chordal arclength.
    const double w0 = -h2 / (h1 * (h1 + h2));
    const double w1 = (h2 - h1) / (h1 * h2);
    const double w2 = h1 / (h2 * (h1 + h2));
    const double xp = w0 * p0.real() + w1 * p1.real() + w2 * p2.real();
    const double yp = w0 * p0.imag() + w1 * p1.imag() + w2 * p2.imag();
    const double u0 = 2.0 / (h1 * (h1 + h2));
    const double u1 = -2.0 / (h1 * h2);
    const double u2 = 2.0 / (h2 * (h1 + h2));
    const double xpp = u0 * p0.real() + u1 * p1.real() + u2 * p2.real();
    const double ypp = u0 * p0.imag() + u1 * p1.imag() + u2 * p2.imag();
    const double speed2 = xp * xp + yp * yp;
    if (speed2 == 0.0) return 0.0;
    return (xp * ypp - yp * xpp) / std::pow(speed2, 1.5);
}

ConvexityCertificate certify_strict_convexity(const LevelArc& arc, double curvature_floor) {
    ConvexityCertificate cert;
    const std::size_t n = arc.points.size();
    if (n < 4) return cert;

    double min_abs = std::numeric_limits<double>::infinity();
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double k = arc.curvatures[i];
        min_abs = std::min(min_abs, std::abs(k));
        if (k >= curvature_floor) has_pos = true;
        if (k <= -curvature_floor) has_neg = true;
    }
    cert.min_abs_curvature = min_abs;
    if (has_pos && has_neg) {
        cert.verdict = ConvexityCertificate::Verdict::not_convex;
        return cert;
    }
    if (min_abs < curvature_floor) {
        cert.verdict = ConvexityCertificate::Verdict::inconclusive;
        return cert;
    }

    // Chord property on a subsample: the open chord between two samples
    // must not properly cross any polyline edge.
    const std::size_t sub = std::min<std::size_t>(n, 24);
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < sub; ++k) idx.push_back(k * (n - 1) / (sub - 1));
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            const std::size_t ia = idx[a], ib = idx[b];
            if (ib <= ia + 1) continue;
            const Complex A = arc.points[ia], B = arc.points[ib];
            for (std::size_t e = 0; e + 1 < n; ++e) {
                if (e + 1 >= ia && e <= ia + 1) continue;  // edges touching A
                if (e + 1 >= ib && e <= ib + 1) continue;  // edges touching B
                const Complex C = arc.points[e], D = arc.points[e + 1];
                const double d1 = cross2(B - A, C - A);
                const double d2 = cross2(B - A, D - A);
                const double d3 = cross2(D - C, A - C);
                const double d4 = cross2(D - C, B - C);
                if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) &&
                    d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0) {
                    cert.verdict = ConvexityCertificate::Verdict::not_convex;
                    return cert;
                }
            }
        }
    }

    cert.verdict = ConvexityCertificate::Verdict::strictly_convex;
    cert.strictly_convex = true;
    cert.orientation_sign = has_neg ? -1 : +1;
    return cert;
}

LevelArc arc_from_points(std::vector<Complex> pts, double level, const Symbol* phi) {
    LevelArc arc;
    arc.level = level;
    arc.points = std::move(pts);
    fill_derived_data(arc, phi);
    return arc;
}

LevelArc trace_bidirectional(const Symbol& phi, Complex seed, double r,
                             const TraceOptions& opt) {
    TraceOptions half = opt;
    half.normalize_ccw = false;
    half.direction = +1;
    LevelArc fwd = trace(phi, seed, r, half);
    if (fwd.end_reason == TraceEnd::closed) {
        if (opt.normalize_ccw) {
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < fwd.points.size(); ++i)
                total += wrap_angle(std::arg(fwd.points[i + 1]) - std::arg(fwd.points[i]));
            if (total < 0.0) std::reverse(fwd.points.begin(), fwd.points.end());
            fill_derived_data(fwd, &phi);
        }
        return fwd;
    }
    half.direction = -1;
    LevelArc bwd = trace(phi, seed, r, half);

    std::vector<Complex> merged;
    merged.reserve(fwd.points.size() + bwd.points.size());
    for (std::size_t i = bwd.points.size(); i-- > 1;) merged.push_back(bwd.points[i]);
    merged.insert(merged.end(), fwd.points.begin(), fwd.points.end());

    if (opt.normalize_ccw && merged.size() >= 2) {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < merged.size(); ++i)
            total += wrap_angle(std::arg(merged[i + 1]) - std::arg(merged[i]));
        if (total < 0.0) std::reverse(merged.begin(), merged.end());
    }
    LevelArc arc = arc_from_points(std::move(merged), r, &phi);
    if (fwd.end_reason == TraceEnd::critical_point || bwd.end_reason == TraceEnd::critical_point)
        arc.end_reason = TraceEnd::critical_point;
    else
        arc.end_reason = TraceEnd::stopped;
    arc.step_max = fwd.step_max;
    return arc;
}

InverseResult local_inverse(const Symbol& phi, Complex z0, double rho, Complex w,
                            int n_quad) {
    if (rho <= 0.0) throw std::invalid_argument("contour radius must be positive");
    if (n_quad < 8) throw std::invalid_argument("need at least 8 quadrature nodes");
    const double two_pi = 2.0 * std::numbers::pi;
    Complex acc{0.0, 0.0};
    double min_den = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n_quad; ++j) {
        const double th = two_pi * static_cast<double>(j) / n_quad;
        const Complex e = std::polar(1.0, th);
        const Complex z = z0 + rho * e;
        const Complex den = phi.eval(z) - w;
        min_den = std::min(min_den, std::abs(den));
        acc += e * z * phi.eval_derivative(z) / den;
    }
    if (min_den < 1e-6)
        throw ContourTooClose("phi - w nearly vanishes on the quadrature contour");
    const Complex g = acc * (rho / static_cast<double>(n_quad));
    return {g, std::abs(phi.eval(g) - w)};
}

}  // namespace opdyn
