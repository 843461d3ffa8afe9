#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opdyn/levelset.hpp"

namespace opdyn {

// Samples on the level curve stay excluded from the tested region by this
// relative radial clearance.
inline constexpr double kEdgeClearance = 1e-3;
// Verdicts with less sampled margin than this are inconclusive, never pass.
inline constexpr double kDefaultMarginFloor = 1e-3;

// A validated strictly convex arc together with the star-shaped region it
// cuts out: rays from the origin meet the arc exactly once, so the region
// between origin and arc is described by a radial profile theta -> rho.
struct SectorRegion {
    LevelArc arc;              // arg-increasing orientation
    double level = 0.0;
    Complex z1, z2;            // endpoints, 0 < arg(z1) < arg(z2) < pi
    double arg_min = 0.0, arg_max = 0.0;
    std::vector<double> thetas;
    std::vector<double> rho_arc;   // radius of the arc along each ray
    std::vector<double> rho_hull;  // outer radius of conv(arc) along each ray

    double rho_arc_at(double theta) const;
    double rho_hull_at(double theta) const;
    // Membership in the open region (origin and arc excluded).
    bool contains(Complex w, double radial_slack = 1e-9) const;
};

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

struct CriterionReport {
    Verdict verdict = Verdict::inconclusive;
    double level = 0.0;
    double min_margin = 0.0;                 // level - max sampled |phi|
    std::optional<Complex> violation_point;  // sample with |phi| >= level
    int grid_theta = 0, grid_t = 0;
    double margin_floor = kDefaultMarginFloor;
    double edge_clearance = kEdgeClearance;
    std::vector<bool> minkowski_ok;          // per j = 1..m-1, when inflation ran
    std::optional<double> chosen_r, chosen_eps;
    std::string note;
};

// Checks the arc's qualifying geometry and builds the radial profiles.
// Throws OriginInHull / RayMultiHit / InvalidArc when the arc does not
// qualify.
SectorRegion validate_arc(const LevelArc& arc, int profile_size = 512);

// Samples the region between origin and arc (the full convex hull star,
// with an exclusion tube around the arc itself) and decides whether
// |phi| stays below `level`:
//   pass          max |phi| <= level - margin_floor
//   fail          some sample reaches the level (witness recorded)
//   inconclusive  everything else
CriterionReport check_hypothesis(const Symbol& phi, const SectorRegion& region,
                                 double level, std::pair<int, int> grid,
                                 double margin_floor = kDefaultMarginFloor);

struct InflateOptions {
    int r_k_min = 4, r_k_max = 12;        // r = level (1 + 2^-k)
    int eps_k_min = 2, eps_k_max = 10;    // eps = 2^-k
    std::pair<int, int> grid{200, 200};   // level-r hypothesis re-check
    double margin_floor = 1e-6;
    double trace_step = 4e-3;
    int arc_samples = 160;                // per scaled copy in sum checks
    int chord_samples = 64;
};

struct InflationResult {
    double r = 0.0;
    double eps = 0.0;
    LevelArc arc;             // the arc traced at level r
    SectorRegion region_r;    // validated region of that arc
    std::vector<bool> minkowski_ok;  // per j = 1..m-1
    std::string lambda_note;  // how the accepted subsector was sampled
};

struct InflateSearch {
    std::optional<InflationResult> found;
    std::vector<std::string> log;  // per-(r, eps) failure records
};

// Searches for a level r slightly above the base level and a subsector
// radius eps such that the re-traced arc stays strictly convex, satisfies
// the hypothesis at level r, and the scaled Minkowski sums (plus their
// eps-subsector translates) stay inside the base region.
InflateSearch inflate_arc(const Symbol& phi, const SectorRegion& base, int m,
                          const InflateOptions& opt = {});

struct ScanOptions {
    std::vector<double> rays;             // seed ray angles
    double arc_len = 2.0;                 // trace budget per seed (total)
    std::pair<int, int> grid{200, 200};
    double margin_floor = kDefaultMarginFloor;
    double trace_step = 4e-3;
    int max_points = 4000;
    double seed_t_max = 8.0;              // rays searched on (t_min, t_max)
    double seed_t_min = 1e-3;
    double curvature_floor = 1e-6;
    std::size_t min_subarc_points = 8;
};

// Seeds traces on each ray, splits them into maximal constant-curvature-
// sign subarcs, and validates + checks each candidate.  Candidates that
// fail validation are reported inconclusive with a note; an empty result
// is a valid outcome.
std::vector<std::pair<LevelArc, CriterionReport>> scan_for_arcs(
    const Symbol& phi, double level, const ScanOptions& opt);

}  // namespace opdyn
