#include "opdyn/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "opdyn/errors.hpp"

namespace opdyn {

namespace {

double cross2(Complex a, Complex b) {
    return a.real() * b.imag() - a.imag() * b.real();
}

// Andrew monotone chain; returns the hull counterclockwise.
std::vector<Complex> convex_hull(std::vector<Complex> pts) {
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Complex> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

bool hull_contains(const std::vector<Complex>& hull, Complex p) {
    if (hull.size() < 3) return false;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Complex a = hull[i];
        const Complex b = hull[(i + 1) % hull.size()];
        if (cross2(b - a, p - a) < 0) return false;
    }
    return true;
}

// Radius at which the ray arg = theta crosses the segment p -> q, or
// nothing when it misses.
std::optional<double> ray_segment_radius(double theta, Complex p, Complex q) {
    const Complex d = std::polar(1.0, theta);
    const double denom = cross2(d, q - p);
    if (denom == 0.0) {
        // Segment parallel to the ray; report the closer endpoint if it
        // lies on the ray.
        if (std::abs(cross2(d, p)) < 1e-15 * std::abs(p)) return std::min(std::abs(p), std::abs(q));
        return std::nullopt;
    }
    const double t = -cross2(d, p) / denom;
    if (t < -1e-9 || t > 1.0 + 1e-9) return std::nullopt;
    const Complex hit = p + t * (q - p);
    const double rho = hit.real() * d.real() + hit.imag() * d.imag();
    if (rho <= 0.0) return std::nullopt;
    return rho;
}

double interp_profile(const std::vector<double>& thetas, const std::vector<double>& rho,
                      double theta) {
    if (thetas.empty()) throw InvalidArc("empty radial profile");
    if (theta <= thetas.front()) return rho.front();
    if (theta >= thetas.back()) return rho.back();
    const auto it = std::upper_bound(thetas.begin(), thetas.end(), theta);
    const std::size_t hi = static_cast<std::size_t>(it - thetas.begin());
    const std::size_t lo = hi - 1;
    const double w = (theta - thetas[lo]) / (thetas[hi] - thetas[lo]);
    return rho[lo] * (1.0 - w) + rho[hi] * w;
}

}  // namespace

double SectorRegion::rho_arc_at(double theta) const {
    return interp_profile(thetas, rho_arc, theta);
}

double SectorRegion::rho_hull_at(double theta) const {
    return interp_profile(thetas, rho_hull, theta);
}

bool SectorRegion::contains(Complex w, double radial_slack) const {
    const double a = std::abs(w);
    if (a == 0.0) return false;
    const double th = std::arg(w);
    if (!(th > arg_min && th < arg_max)) return false;
    return a < rho_arc_at(th) * (1.0 - radial_slack);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

SectorRegion validate_arc(const LevelArc& input, int profile_size) {
    if (input.points.size() < 4) throw InvalidArc("arc needs at least 4 samples");
    if (!input.certificate.strictly_convex)
        throw InvalidArc("arc is not certified strictly convex");

    auto hull = convex_hull(input.points);
    if (hull_contains(hull, Complex{0.0, 0.0}))
        throw OriginInHull("origin lies in the convex hull of the arc");

    // Normalize to arg-increasing order.
    LevelArc arc = input;
    {
        const double a0 = std::arg(arc.points.front());
        const double a1 = std::arg(arc.points.back());
        if (a0 > a1) arc = arc.reversed();
    }

    std::vector<double> args(arc.points.size());
    for (std::size_t i = 0; i < args.size(); ++i) args[i] = std::arg(arc.points[i]);
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (!(args[i + 1] > args[i]))
            throw RayMultiHit("polyline argument is not strictly monotone");

    const Complex z1 = arc.points.front();
    const Complex z2 = arc.points.back();
    if (!(args.front() > 0.0 && args.back() < std::numbers::pi))
        throw InvalidArc("endpoint arguments must satisfy 0 < arg(z1) <= arg(z2) < pi");
    if (z1.real() == z2.real()) throw InvalidArc("endpoints share a real part");

    SectorRegion region;
    region.level = arc.level;
    region.z1 = z1;
    region.z2 = z2;
    region.arg_min = args.front();
    region.arg_max = args.back();

    if (profile_size < 2) throw std::invalid_argument("profile needs at least 2 rays");
    region.thetas.resize(static_cast<std::size_t>(profile_size));
    region.rho_arc.resize(region.thetas.size());
    region.rho_hull.resize(region.thetas.size());
    for (std::size_t i = 0; i < region.thetas.size(); ++i) {
        const double th = region.arg_min + (region.arg_max - region.arg_min) *
                                               static_cast<double>(i) /
                                               static_cast<double>(profile_size - 1);
        region.thetas[i] = th;
        // Bracket the crossing segment by binary search on the monotone args.
        const auto it = std::lower_bound(args.begin(), args.end(), th);
        std::size_t hi = static_cast<std::size_t>(it - args.begin());
        hi = std::min(std::max<std::size_t>(hi, 1), args.size() - 1);
        auto on_arc = ray_segment_radius(th, arc.points[hi - 1], arc.points[hi]);
        if (!on_arc) {
            // Retry the neighbouring segments; rounding can push the
            // bracket off by one.
            for (std::size_t d = 1; d <= 2 && !on_arc; ++d) {
                if (hi >= d + 1)
                    on_arc = ray_segment_radius(th, arc.points[hi - d - 1], arc.points[hi - d]);
                if (!on_arc && hi + d < arc.points.size())
                    on_arc = ray_segment_radius(th, arc.points[hi + d - 1], arc.points[hi + d]);
            }
        }
        if (!on_arc) throw RayMultiHit("a profile ray misses the arc polyline");
        auto on_chord = ray_segment_radius(th, z1, z2);
        region.rho_arc[i] = *on_arc;
        region.rho_hull[i] = std::max(*on_arc, on_chord.value_or(0.0));
    }
    region.arc = std::move(arc);
    return region;
}

CriterionReport check_hypothesis(const Symbol& phi, const SectorRegion& region,
                                 double level, std::pair<int, int> grid,
                                 double margin_floor) {
    const auto [n_theta, n_t] = grid;
    if (n_theta < 2 || n_t < 2) throw std::invalid_argument("grid too small");

    CriterionReport rep;
    rep.level = level;
    rep.grid_theta = n_theta;
    rep.grid_t = n_t;
    rep.margin_floor = margin_floor;

    const double span = region.arg_max - region.arg_min;
    double max_abs = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        // Cell-centred rays keep samples off the radial boundary segments.
        const double th = region.arg_min + span * (static_cast<double>(i) + 0.5) /
                                               static_cast<double>(n_theta);
        const double rho_a = region.rho_arc_at(th);
        const double rho_h = region.rho_hull_at(th);
        // Exclusion band around the arc itself; the outermost sample of an
        // outward arc sits exactly on the lower bound and stays included.
        const double band_lo = rho_a * (1.0 - kEdgeClearance);
        const double band_hi = rho_a * (1.0 + kEdgeClearance);
        const Complex dir = std::polar(1.0, th);
        for (int k = 1; k <= n_t; ++k) {
            const double s = rho_h * (1.0 - kEdgeClearance) * static_cast<double>(k) /
                             static_cast<double>(n_t);
            if (s > band_lo && s < band_hi) continue;
            const Complex z = s * dir;
            const double a = std::abs(phi.eval(z));
            if (a >= level) {
                rep.verdict = Verdict::fail;
                rep.violation_point = z;
                rep.min_margin = level - a;
                return rep;
            }
            max_abs = std::max(max_abs, a);
        }
    }
    rep.min_margin = level - max_abs;
    rep.verdict = rep.min_margin >= margin_floor ? Verdict::pass : Verdict::inconclusive;
    return rep;
}

namespace {

// The maximal stretch around `center` whose curvature keeps one sign and
// stays above the floor.  The re-traced level-r curve can pick up a bend
// of the other sign near a saddle of |phi|; only the convex stretch is
// usable downstream, so trim to it.
LevelArc trim_to_convex_core(const LevelArc& arc, double floor, const Symbol& phi,
                             Complex center) {
    const std::size_t n = arc.points.size();
    if (n < 4) return arc;
    std::size_t mid = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(arc.points[i] - center) < std::abs(arc.points[mid] - center)) mid = i;
    mid = std::clamp<std::size_t>(mid, 1, n - 2);
    if (std::abs(arc.curvatures[mid]) < floor) return arc;
    const bool pos = arc.curvatures[mid] > 0;
    std::size_t lo = mid, hi = mid;
    while (lo > 0 && std::abs(arc.curvatures[lo - 1]) >= floor &&
           (arc.curvatures[lo - 1] > 0) == pos)
        --lo;
    while (hi + 1 < n && std::abs(arc.curvatures[hi + 1]) >= floor &&
           (arc.curvatures[hi + 1] > 0) == pos)
        ++hi;
    if (lo == 0 && hi == n - 1) return arc;
    std::vector<Complex> pts(arc.points.begin() + static_cast<long>(lo),
                             arc.points.begin() + static_cast<long>(hi + 1));
    return arc_from_points(std::move(pts), arc.level, &phi);
}

// Boundary samples of (scale * conv(arc)): the scaled arc plus the scaled
// chord between its endpoints.
std::vector<Complex> scaled_hull_samples(const LevelArc& arc, double scale,
                                         int arc_samples, int chord_samples) {
    std::vector<Complex> out;
    const std::size_t n = arc.points.size();
    const std::size_t stride = std::max<std::size_t>(1, n / static_cast<std::size_t>(arc_samples));
    for (std::size_t i = 0; i < n; i += stride) out.push_back(scale * arc.points[i]);
    out.push_back(scale * arc.points.back());
    const Complex a = scale * arc.points.front();
    const Complex b = scale * arc.points.back();
    for (int i = 1; i < chord_samples; ++i) {
        const double t = static_cast<double>(i) / chord_samples;
        out.push_back(a + t * (b - a));
    }
    return out;
}

}  // namespace

InflateSearch inflate_arc(const Symbol& phi, const SectorRegion& base, int m,
                          const InflateOptions& opt) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    InflateSearch search;

    const std::size_t mid = base.arc.points.size() / 2;
    const Complex z_mid = base.arc.points[mid];
    const double theta_mid = std::arg(z_mid);
    const double span = base.arg_max - base.arg_min;
    const double lo = base.arg_min + 0.02 * span;
    const double hi = base.arg_max - 0.02 * span;
    double rho_lo = std::numeric_limits<double>::infinity(), rho_hi = 0.0;
    for (const Complex& z : base.arc.points) {
        rho_lo = std::min(rho_lo, std::abs(z));
        rho_hi = std::max(rho_hi, std::abs(z));
    }

    for (int k = opt.r_k_min; k <= opt.r_k_max; ++k) {
        const double r = base.level * (1.0 + std::ldexp(1.0, -k));
        std::ostringstream why;
        why.precision(6);
        try {
            const Complex seed =
                find_seed(phi, r, theta_mid, {0.25 * std::abs(z_mid), 2.5 * std::abs(z_mid)});
            TraceOptions topt;
            topt.step = opt.trace_step;
            // Keep the level-r trace in the cone over the base arc and
            // radially near it; the far reaches of the cone are useless
            // for the sum conditions anyway.
            topt.stop = [lo, hi, rho_lo, rho_hi](Complex z) {
                const double a = std::arg(z);
                const double m = std::abs(z);
                return a < lo || a > hi || m > 1.6 * rho_hi || m < 0.4 * rho_lo;
            };
            LevelArc gamma = trim_to_convex_core(trace_bidirectional(phi, seed, r, topt),
                                                 1e-6, phi, seed);
            if (gamma.points.size() < 8 || !gamma.certificate.strictly_convex) {
                search.log.push_back("r=" + std::to_string(r) + ": arc not strictly convex");
                continue;
            }
            SectorRegion region_r = validate_arc(gamma);
            CriterionReport rep = check_hypothesis(phi, region_r, r, opt.grid, opt.margin_floor);
            if (rep.verdict != Verdict::pass) {
                search.log.push_back("r=" + std::to_string(r) + ": level-r hypothesis " +
                                     to_string(rep.verdict));
                continue;
            }

            // Sum conditions: Minkowski sums of j copies of (1/m) Gamma equal
            // (j/m) conv(Gamma), so testing the scaled hull boundary suffices.
            std::vector<bool> sums_ok;
            bool all_sums = true;
            std::vector<std::vector<Complex>> hull_samples;
            for (int j = 1; j < m; ++j) {
                const double scale = static_cast<double>(j) / m;
                auto samples =
                    scaled_hull_samples(gamma, scale, opt.arc_samples, opt.chord_samples);
                bool ok = true;
                for (const Complex& w : samples)
                    if (!base.contains(w)) {
                        ok = false;
                        break;
                    }
                sums_ok.push_back(ok);
                all_sums = all_sums && ok;
                hull_samples.push_back(std::move(samples));
            }
            if (!all_sums) {
                search.log.push_back("r=" + std::to_string(r) + ": sum condition failed");
                continue;
            }

            // Subsector radius: the translates Lambda + sums must stay inside.
            const double g_lo = region_r.arg_min;
            const double g_hi = region_r.arg_max;
            for (int ke = opt.eps_k_min; ke <= opt.eps_k_max; ++ke) {
                const double eps = std::ldexp(1.0, -ke);
                std::vector<Complex> lambda_samples;
                for (double s : {0.25, 0.6, 0.95}) {
                    for (int i = 0; i < 8; ++i) {
                        const double th = g_lo + (g_hi - g_lo) * (static_cast<double>(i) + 0.5) / 8.0;
                        const Complex lam = std::polar(s * eps, th);
                        if (base.contains(lam)) lambda_samples.push_back(lam);
                    }
                }
                if (lambda_samples.empty()) continue;
                bool ok = true;
                for (const auto& samples : hull_samples) {
                    for (const Complex& w : samples) {
                        for (const Complex& lam : lambda_samples) {
                            if (!base.contains(lam + w)) {
                                ok = false;
                                break;
                            }
                        }
                        if (!ok) break;
                    }
                    if (!ok) break;
                }
                if (!ok) {
                    search.log.push_back("r=" + std::to_string(r) +
                                         " eps=" + std::to_string(eps) +
                                         ": translated sum left the region");
                    continue;
                }
                InflationResult result;
                result.r = r;
                result.eps = eps;
                result.arc = std::move(gamma);
                result.region_r = std::move(region_r);
                result.minkowski_ok = std::move(sums_ok);
                result.lambda_note = std::to_string(lambda_samples.size()) +
                                     " subsector samples at radii {0.25,0.6,0.95} eps";
                search.found = std::move(result);
                return search;
            }
            search.log.push_back("r=" + std::to_string(r) + ": no eps on the grid worked");
        } catch (const Error& e) {
            search.log.push_back("r=" + std::to_string(r) + ": " + e.what());
        }
    }
    return search;
}

std::vector<std::pair<LevelArc, CriterionReport>> scan_for_arcs(const Symbol& phi,
                                                                double level,
                                                                const ScanOptions& opt) {
    std::vector<std::pair<LevelArc, CriterionReport>> out;
    std::vector<Complex> covered;  // points of already-traced branches

    for (double theta : opt.rays) {
        Complex seed;
        try {
            seed = find_seed(phi, level, theta, {opt.seed_t_min, opt.seed_t_max});
        } catch (const Error&) {
            continue;  // no usable crossing on this ray
        }
        bool seen = false;
        for (const Complex& p : covered)
            if (std::abs(p - seed) < 3.0 * opt.trace_step) {
                seen = true;
                break;
            }
        if (seen) continue;

        TraceOptions topt;
        topt.step = opt.trace_step;
        topt.max_points = opt.max_points;
        const double radius = 0.5 * opt.arc_len;
        topt.stop = [seed, radius](Complex z) { return std::abs(z - seed) > radius; };
        LevelArc branch;
        try {
            branch = trace_bidirectional(phi, seed, level, topt);
        } catch (const Error&) {
            continue;
        }
        const std::size_t stride = std::max<std::size_t>(1, branch.points.size() / 64);
        for (std::size_t i = 0; i < branch.points.size(); i += stride)
            covered.push_back(branch.points[i]);

        // Maximal constant-curvature-sign stretches become the candidates;
        // magnitudes under the floor break a stretch, and each stretch is
        // clipped to the admissible cone 0 < arg z < pi.
        const auto& ks = branch.curvatures;
        std::size_t i = 1;
        const std::size_t n = branch.points.size();
        while (n >= 3 && i + 1 < n) {
            while (i + 1 < n && std::abs(ks[i]) < opt.curvature_floor) ++i;
            if (i + 1 >= n) break;
            const bool pos = ks[i] > 0;
            std::size_t j = i;
            while (j + 1 < n && std::abs(ks[j + 1]) >= opt.curvature_floor &&
                   (ks[j + 1] > 0) == pos)
                ++j;
            std::size_t a = i;
            while (a <= j) {
                const auto admissible = [&](std::size_t k) {
                    const double th = std::arg(branch.points[k]);
                    return th > 1e-9 && th < std::numbers::pi - 1e-9;
                };
                while (a <= j && !admissible(a)) ++a;
                if (a > j) break;
                std::size_t b = a;
                while (b + 1 <= j && admissible(b + 1)) ++b;
                if (b - a + 1 >= opt.min_subarc_points) {
                    std::vector<Complex> pts(branch.points.begin() + static_cast<long>(a),
                                             branch.points.begin() + static_cast<long>(b + 1));
                    LevelArc cand = arc_from_points(std::move(pts), level, &phi);
                    CriterionReport rep;
                    rep.level = level;
                    try {
                        SectorRegion region = validate_arc(cand);
                        rep = check_hypothesis(phi, region, level, opt.grid, opt.margin_floor);
                    } catch (const Error& e) {
                        rep.verdict = Verdict::inconclusive;
                        rep.note = e.what();
                    }
                    out.emplace_back(std::move(cand), std::move(rep));
                }
                a = b + 1;
            }
            i = j + 1;
        }
    }
    return out;
}

}  // namespace opdyn
