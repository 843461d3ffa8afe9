#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "opdyn/criterion.hpp"
#include "opdyn/exppoly.hpp"
#include "opdyn/symbol.hpp"

namespace opdyn {

// Data for one run of the constructive transitivity argument: target
// exponential sums A = sum a_k exp(lambda_k z / m) and B = sum b_k
// exp(gamma_k z), with the gamma_k on a level-r curve, r > 1, and the
// lambda_k in a small subsector near the origin.
struct WitnessProblem {
    Symbol phi = Symbol::identity();
    int m = 2;
    double r = 0.0;
    std::vector<Complex> lambda;  // interior frequencies
    std::vector<Complex> gamma;   // level-curve frequencies, pairwise distinct
    std::vector<Complex> a;       // amplitudes of A
    std::vector<Complex> b;       // amplitudes of B
    double rho = 1.0;             // norms are sups over D(0, rho)

    // Optional geometric backing from the criterion pipeline.  When present,
    // frequency membership is additionally checked against the region; the
    // eigenvalue inequalities are always checked analytically.
    std::optional<SectorRegion> region;
    std::optional<double> lambda_eps;                      // radius of the subsector
    std::optional<std::pair<double, double>> lambda_cone;  // arg range of the level-r arc

    std::size_t p() const noexcept { return gamma.size(); }
};

// Rejects problems whose frequencies violate the construction's
// inequalities: |phi(gamma_k)| must sit on the level r > 1 (within 1e-8),
// every mixed frequency of order j < m (and those with |u| != 0 at j = m)
// must have |phi| < 1, and the order-m combinations of the gamma block
// must have |phi| < r.  Throws ConstructionError.
void validate_problem(const WitnessProblem& problem);

struct BuildResult {
    ExpPoly R;                    // sum c_k exp(gamma_k z / m)
    std::vector<Complex> c;
    std::vector<Complex> log_c;   // kept for overflow-free powering
};

// Solves c_k^m phi(gamma_k)^q = b_k (principal m-th root by default;
// root_branch shifts by exp(2 pi i branch / m)).
BuildResult build_R(const WitnessProblem& problem, int q, int root_branch = 0);

struct TermRecord {
    int j;
    MultiIndex index;
    Complex frequency;
    double magnitude;  // coefficient magnitude of the pushed-forward term
};

struct WitnessStep {
    int q = 0;
    DiskNorm r_norm;                    // of R_q
    std::vector<DiskNorm> power_norms;  // of phi(D)^q (A+R)^j, j = 1..m-1
    DiskNorm residual_norm;             // of phi(D)^q (A+R)^m - B
    std::vector<ExpPoly> powers;        // phi(D)^q (A+R)^j for j = 1..m
    ExpPoly residual;
    std::vector<TermRecord> ledger;
};

// Expands (A + R_q)^j for j = 1..m with exponents keyed by multiindex,
// applies phi(D)^q eigenvalue-wise (coefficients computed in the log
// domain so large q neither overflows nor produces 0 * inf), and records
// sup norms on D(0, rho).  For j = m the exact B is subtracted before
// measuring.
WitnessStep push_forward(const WitnessProblem& problem, int q, int root_branch = 0,
                         int sup_samples = 24);

struct DecayRate {
    int j;
    MultiIndex index;
    Complex frequency;
    double factor;  // |phi(freq)| / r^{|v|/m}; < 1 for a sound construction
};

// Geometric decay factor of every contributing multiindex (the exactly
// cancelled order-m pure powers emit no rate).
std::vector<DecayRate> decay_rates(const WitnessProblem& problem);

struct FindQOutcome {
    std::optional<int> q;            // smallest certified q, when reached
    std::vector<WitnessStep> trace;  // steps for q = 1.. (found q or q_max)
    std::optional<DecayRate> slowest;  // populated when q_max is exhausted
};

// Smallest q <= q_max whose crude bounds certify ||R_q|| <= eps,
// ||phi(D)^q (A+R)^j|| <= eps for j < m and ||phi(D)^q (A+R)^m - B|| <= eps.
// Runs validate_problem first; the trace always starts at q = 1.
FindQOutcome find_q(const WitnessProblem& problem, double eps, double rho, int q_max,
                    int root_branch = 0);

}  // namespace opdyn
