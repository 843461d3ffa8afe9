#include "opdyn/witness.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "opdyn/errors.hpp"

namespace opdyn {

namespace {

struct FrequencyTable {
    std::vector<Complex> lam_over_m;
    std::vector<Complex> gam_over_m;
};

FrequencyTable frequency_table(const WitnessProblem& p) {
    FrequencyTable t;
    const double m = static_cast<double>(p.m);
    for (Complex l : p.lambda) t.lam_over_m.push_back(l / m);
    for (Complex g : p.gamma) t.gam_over_m.push_back(g / m);
    return t;
}

// One fixed arithmetic expression per multiindex: u-block first, then
// v-block, both in slot order.
Complex combined_frequency(const FrequencyTable& t, const MultiIndex& idx) {
    Complex freq{0.0, 0.0};
    for (std::size_t k = 0; k < idx.u.size(); ++k)
        freq += static_cast<double>(idx.u[k]) * t.lam_over_m[k];
    for (std::size_t k = 0; k < idx.v.size(); ++k)
        freq += static_cast<double>(idx.v[k]) * t.gam_over_m[k];
    return freq;
}

bool index_vanishes(const WitnessProblem& p, const MultiIndex& idx) {
    for (std::size_t k = 0; k < idx.u.size(); ++k)
        if (idx.u[k] > 0 && p.a[k] == Complex{0.0, 0.0}) return true;
    for (std::size_t k = 0; k < idx.v.size(); ++k)
        if (idx.v[k] > 0 && p.b[k] == Complex{0.0, 0.0}) return true;
    return false;
}

int v_order(const MultiIndex& idx) {
    int s = 0;
    for (int x : idx.v) s += x;
    return s;
}

bool is_cancelled_leading_term(const WitnessProblem& p, const MultiIndex& idx, int j) {
    if (j != p.m) return false;
    for (std::size_t k = 0; k < p.p(); ++k)
        if (idx.is_pure_mth_power(k, p.m)) return true;
    return false;
}

}  // namespace

void validate_problem(const WitnessProblem& p) {
    const std::size_t n = p.p();
    if (n == 0) throw ConstructionError("empty frequency set");
    if (p.lambda.size() != n || p.a.size() != n || p.b.size() != n)
        throw ConstructionError("lambda/gamma/a/b must share one length");
    if (p.m < 1) throw ConstructionError("m must be >= 1");
    if (!(p.r > 1.0)) throw ConstructionError("level r must exceed 1");

    for (std::size_t k = 0; k < n; ++k) {
        const double a = std::abs(p.phi.eval(p.gamma[k]));
        if (std::abs(a - p.r) > 1e-8) {
            std::ostringstream os;
            os << "gamma[" << k << "] misses the level: |phi| = " << a << " vs r = " << p.r;
            throw ConstructionError(os.str());
        }
        for (std::size_t i = 0; i < k; ++i)
            if (std::abs(p.gamma[k] - p.gamma[i]) <= ExpPoly::kMergeTol)
                throw ConstructionError("gamma frequencies collide");
    }

    if (p.region) {
        for (std::size_t k = 0; k < n; ++k) {
            if (!p.region->contains(p.lambda[k]))
                throw ConstructionError("lambda frequency lies outside the region");
            if (p.lambda_eps && std::abs(p.lambda[k]) > *p.lambda_eps)
                throw ConstructionError("lambda frequency leaves the eps-subsector");
            if (p.lambda_cone) {
                const double th = std::arg(p.lambda[k]);
                if (th < p.lambda_cone->first || th > p.lambda_cone->second)
                    throw ConstructionError("lambda frequency leaves the subsector cone");
            }
        }
    }

    const FrequencyTable table = frequency_table(p);
    for (int j = 1; j <= p.m; ++j) {
        for (const MultiIndex& idx : enumerate_multiindices(n, n, j)) {
            if (index_vanishes(p, idx)) continue;
            if (is_cancelled_leading_term(p, idx, j)) continue;
            const Complex freq = combined_frequency(table, idx);
            const double mag = std::abs(p.phi.eval(freq));
            const int vo = v_order(idx);
            const bool interior_class = (j < p.m) || (vo < p.m);
            if (interior_class) {
                if (!(mag < 1.0)) {
                    std::ostringstream os;
                    os << "mixed frequency at order " << j << " has |phi| = " << mag
                       << " >= 1 (outside the interior region)";
                    throw ConstructionError(os.str());
                }
                if (p.region && !p.region->contains(freq))
                    throw ConstructionError("mixed frequency lies outside the region");
            } else if (!(mag < p.r)) {
                std::ostringstream os;
                os << "order-m gamma combination has |phi| = " << mag << " >= r = " << p.r;
                throw ConstructionError(os.str());
            }
        }
    }
}

BuildResult build_R(const WitnessProblem& p, int q, int root_branch) {
    if (q < 0) throw std::invalid_argument("q must be >= 0");
    BuildResult out;
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<Term> terms;
    for (std::size_t k = 0; k < p.p(); ++k) {
        const Complex eig = p.phi.eval(p.gamma[k]);
        if (eig == Complex{0.0, 0.0})
            throw EigenvalueZero("phi vanishes at a gamma frequency");
        if (p.b[k] == Complex{0.0, 0.0}) {
            out.c.push_back({0.0, 0.0});
            out.log_c.push_back({-std::numeric_limits<double>::infinity(), 0.0});
            continue;
        }
        // Principal m-th root in the log domain: reduce the argument of
        // b / phi(gamma)^q into (-pi, pi] before dividing by m, so no
        // intermediate power can overflow.
        const double log_mag = (std::log(std::abs(p.b[k])) -
                                static_cast<double>(q) * std::log(std::abs(eig))) /
                               p.m;
        double phase = std::remainder(std::arg(p.b[k]) - static_cast<double>(q) * std::arg(eig),
                                      two_pi);
        phase = phase / p.m + two_pi * static_cast<double>(root_branch) / p.m;
        const Complex log_c{log_mag, phase};
        const Complex c = std::exp(log_c);
        out.c.push_back(c);
        out.log_c.push_back(log_c);
        terms.push_back({p.gamma[k] / static_cast<double>(p.m), c});
    }
    out.R = ExpPoly::from_terms(std::move(terms));
    return out;
}

WitnessStep push_forward(const WitnessProblem& p, int q, int root_branch, int sup_samples) {
    const std::size_t n = p.p();
    const FrequencyTable table = frequency_table(p);
    const BuildResult built = build_R(p, q, root_branch);

    std::vector<Complex> log_a(n), log_b_terms;
    std::vector<bool> a_zero(n, false);
    for (std::size_t k = 0; k < n; ++k) {
        a_zero[k] = p.a[k] == Complex{0.0, 0.0};
        log_a[k] = a_zero[k] ? Complex{0.0, 0.0} : std::log(p.a[k]);
    }

    WitnessStep step;
    step.q = q;
    step.r_norm = sup_norm_on_disk(built.R, p.rho, sup_samples);

    for (int j = 1; j <= p.m; ++j) {
        std::vector<Term> terms;
        for (const MultiIndex& idx : enumerate_multiindices(n, n, j)) {
            if (index_vanishes(p, idx)) continue;
            const Complex freq = combined_frequency(table, idx);

            std::vector<int> parts(2 * n);
            std::copy(idx.u.begin(), idx.u.end(), parts.begin());
            std::copy(idx.v.begin(), idx.v.end(), parts.begin() + static_cast<long>(n));
            const double log_mult =
                std::log(static_cast<double>(multinomial_coefficient(parts)));

            Complex log_coef{log_mult, 0.0};
            for (std::size_t k = 0; k < n; ++k)
                if (idx.u[k] > 0) log_coef += static_cast<double>(idx.u[k]) * log_a[k];
            for (std::size_t k = 0; k < n; ++k)
                if (idx.v[k] > 0) log_coef += static_cast<double>(idx.v[k]) * built.log_c[k];

            Complex coef;
            const Complex eig = p.phi.eval(freq);
            if (q > 0 && eig == Complex{0.0, 0.0}) {
                coef = {0.0, 0.0};
            } else {
                if (q > 0) log_coef += static_cast<double>(q) * std::log(eig);
                coef = std::exp(log_coef);
            }
            terms.push_back({freq, coef});
            step.ledger.push_back({j, idx, freq, std::abs(coef)});
        }
        ExpPoly pushed = ExpPoly::from_terms(std::move(terms));
        if (j < p.m) {
            step.power_norms.push_back(sup_norm_on_disk(pushed, p.rho, sup_samples));
        } else {
            std::vector<Term> b_terms;
            for (std::size_t k = 0; k < n; ++k) b_terms.push_back({p.gamma[k], p.b[k]});
            step.residual = pushed - ExpPoly::from_terms(std::move(b_terms));
            step.residual_norm = sup_norm_on_disk(step.residual, p.rho, sup_samples);
        }
        step.powers.push_back(std::move(pushed));
    }
    return step;
}

std::vector<DecayRate> decay_rates(const WitnessProblem& p) {
    const std::size_t n = p.p();
    const FrequencyTable table = frequency_table(p);
    std::vector<DecayRate> rates;
    for (int j = 1; j <= p.m; ++j) {
        for (const MultiIndex& idx : enumerate_multiindices(n, n, j)) {
            if (index_vanishes(p, idx)) continue;
            if (is_cancelled_leading_term(p, idx, j)) continue;
            const Complex freq = combined_frequency(table, idx);
            const double factor = std::abs(p.phi.eval(freq)) /
                                  std::pow(p.r, static_cast<double>(v_order(idx)) / p.m);
            rates.push_back({j, idx, freq, factor});
        }
    }
    return rates;
}

FindQOutcome find_q(const WitnessProblem& p, double eps, double rho, int q_max,
                    int root_branch) {
    if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
    WitnessProblem problem = p;
    problem.rho = rho;
    validate_problem(problem);

    FindQOutcome outcome;
    for (int q = 1; q <= q_max; ++q) {
        WitnessStep step = push_forward(problem, q, root_branch);
        bool ok = step.r_norm.crude_bound <= eps && step.residual_norm.crude_bound <= eps;
        for (const DiskNorm& norm : step.power_norms) ok = ok && norm.crude_bound <= eps;
        outcome.trace.push_back(std::move(step));
        if (ok) {
            outcome.q = q;
            return outcome;
        }
    }
    const auto rates = decay_rates(problem);
    for (const DecayRate& rate : rates)
        if (!outcome.slowest || rate.factor > outcome.slowest->factor) outcome.slowest = rate;
    return outcome;
}

}  // namespace opdyn
