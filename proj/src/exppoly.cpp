#include "opdyn/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "opdyn/symbol.hpp"

namespace opdyn {

namespace {

// Deterministic term order: descending by real part, then by imaginary
// part.  Any total order works; this one is fixed so serialized output is
// reproducible.
bool term_before(const Term& a, const Term& b) {
    if (a.exponent.real() != b.exponent.real())
        return a.exponent.real() > b.exponent.real();
    return a.exponent.imag() > b.exponent.imag();
}

}  // namespace

ExpPoly ExpPoly::from_terms(std::vector<Term> raw, double tol) {
    if (tol < 0.0) throw std::invalid_argument("merge tolerance must be >= 0");
    std::sort(raw.begin(), raw.end(), term_before);
    ExpPoly out;
    auto& terms = out.terms_;
    for (const Term& t : raw) {
        bool merged = false;
        // Candidates for merging sit at the tail: the sort puts nearby real
        // parts next to each other, so scan back while the real parts are
        // still within tolerance.
        for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
            if (std::abs(it->exponent.real() - t.exponent.real()) > tol) break;
            if (std::abs(it->exponent - t.exponent) <= tol) {
                it->coefficient += t.coefficient;
                merged = true;
                break;
            }
        }
        if (!merged) terms.push_back(t);
    }
    std::erase_if(terms, [](const Term& t) { return t.coefficient == Complex{0.0, 0.0}; });
    return out;
}

ExpPoly ExpPoly::exponential(Complex mu, Complex c) {
    return from_terms({{mu, c}});
}

ExpPoly ExpPoly::constant(Complex c) {
    return from_terms({{Complex{0.0, 0.0}, c}});
}

Complex ExpPoly::eval(Complex z) const {
    Complex acc{0.0, 0.0};
    for (const Term& t : terms_) acc += t.coefficient * std::exp(t.exponent * z);
    return acc;
}

ExpPoly ExpPoly::operator+(const ExpPoly& rhs) const {
    std::vector<Term> all = terms_;
    all.insert(all.end(), rhs.terms_.begin(), rhs.terms_.end());
    return from_terms(std::move(all));
}

ExpPoly ExpPoly::operator-(const ExpPoly& rhs) const {
    return *this + rhs * Complex{-1.0, 0.0};
}

ExpPoly ExpPoly::operator*(const ExpPoly& rhs) const {
    std::vector<Term> prod;
    prod.reserve(terms_.size() * rhs.terms_.size());
    for (const Term& a : terms_)
        for (const Term& b : rhs.terms_)
            prod.push_back({a.exponent + b.exponent, a.coefficient * b.coefficient});
    return from_terms(std::move(prod));
}

ExpPoly ExpPoly::operator*(Complex scalar) const {
    std::vector<Term> scaled = terms_;
    for (Term& t : scaled) t.coefficient *= scalar;
    return from_terms(std::move(scaled));
}

int MultiIndex::order() const {
    return std::accumulate(u.begin(), u.end(), 0) + std::accumulate(v.begin(), v.end(), 0);
}

bool MultiIndex::is_pure_mth_power(std::size_t k, int m) const {
    for (int x : u)
        if (x != 0) return false;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != (i == k ? m : 0)) return false;
    return true;
}

std::uint64_t multinomial_coefficient(std::span<const int> parts) {
    // Product of binomials over running totals; each binomial is built by
    // stepwise exact multiply/divide with an overflow check.
    unsigned __int128 result = 1;
    long long total = 0;
    for (int part : parts) {
        if (part < 0) throw std::invalid_argument("negative multiindex entry");
        for (int i = 1; i <= part; ++i) {
            ++total;
            result *= static_cast<unsigned __int128>(total);
            result /= static_cast<unsigned __int128>(i);
            if (result > std::numeric_limits<std::uint64_t>::max())
                throw std::overflow_error("multinomial coefficient exceeds exact integer range");
        }
    }
    return static_cast<std::uint64_t>(result);
}

namespace {

void enumerate_rec(std::vector<int>& slots, std::size_t pos, int remaining,
                   std::size_t p_u, std::vector<MultiIndex>& out) {
    if (pos + 1 == slots.size()) {
        slots[pos] = remaining;
        MultiIndex idx;
        idx.u.assign(slots.begin(), slots.begin() + static_cast<long>(p_u));
        idx.v.assign(slots.begin() + static_cast<long>(p_u), slots.end());
        out.push_back(std::move(idx));
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        slots[pos] = k;
        enumerate_rec(slots, pos + 1, remaining - k, p_u, out);
    }
}

}  // namespace

std::vector<MultiIndex> enumerate_multiindices(std::size_t p_u, std::size_t p_v, int j) {
    std::vector<MultiIndex> out;
    if (p_u + p_v == 0) return out;
    std::vector<int> slots(p_u + p_v, 0);
    enumerate_rec(slots, 0, j, p_u, out);
    return out;
}

PowerExpansion power_multinomial(std::span<const Term> u_terms,
                                 std::span<const Term> v_terms, int j, double tol) {
    if (j < 1) throw std::invalid_argument("power must be >= 1");
    PowerExpansion out;
    std::vector<Term> expanded;
    std::vector<int> parts(u_terms.size() + v_terms.size());
    for (MultiIndex& idx : enumerate_multiindices(u_terms.size(), v_terms.size(), j)) {
        std::copy(idx.u.begin(), idx.u.end(), parts.begin());
        std::copy(idx.v.begin(), idx.v.end(), parts.begin() + static_cast<long>(u_terms.size()));
        const auto mult = multinomial_coefficient(parts);

        // One fixed arithmetic expression per multiindex: frequencies and
        // coefficient products are accumulated in slot order, so identical
        // index combinations reproduce bitwise.
        Complex freq{0.0, 0.0};
        Complex coef{static_cast<double>(mult), 0.0};
        for (std::size_t k = 0; k < u_terms.size(); ++k) {
            freq += static_cast<double>(idx.u[k]) * u_terms[k].exponent;
            for (int i = 0; i < idx.u[k]; ++i) coef *= u_terms[k].coefficient;
        }
        for (std::size_t k = 0; k < v_terms.size(); ++k) {
            freq += static_cast<double>(idx.v[k]) * v_terms[k].exponent;
            for (int i = 0; i < idx.v[k]; ++i) coef *= v_terms[k].coefficient;
        }
        expanded.push_back({freq, coef});
        out.ledger.push_back({std::move(idx), freq, coef});
    }
    out.value = ExpPoly::from_terms(std::move(expanded), tol);
    return out;
}

PowerExpansion power_multinomial(const ExpPoly& f, int j) {
    return power_multinomial(std::span<const Term>{}, std::span<const Term>{f.terms()}, j);
}

ExpPoly apply_symbol_power(const ExpPoly& f, const Symbol& phi, int q) {
    if (q < 0) throw std::invalid_argument("operator power must be >= 0");
    std::vector<Term> out;
    out.reserve(f.size());
    for (const Term& t : f.terms()) {
        const Complex eigen = phi.eval(t.exponent);
        Complex coef = t.coefficient;
        for (int i = 0; i < q; ++i) coef *= eigen;
        out.push_back({t.exponent, coef});
    }
    return ExpPoly::from_terms(std::move(out));
}

DiskNorm sup_norm_on_disk(const ExpPoly& f, double rho, int n_samples) {
    if (rho <= 0.0) throw std::invalid_argument("disk radius must be positive");
    if (n_samples < 8) throw std::invalid_argument("need at least 8 samples per axis");
    DiskNorm norm;
    for (const Term& t : f.terms())
        norm.crude_bound += std::abs(t.coefficient) * std::exp(std::abs(t.exponent) * rho);
    const double two_pi = 2.0 * std::acos(-1.0);
    for (int i = 0; i < n_samples; ++i) {
        const double r = rho * static_cast<double>(i) / static_cast<double>(n_samples - 1);
        for (int k = 0; k < n_samples; ++k) {
            const double th = two_pi * static_cast<double>(k) / static_cast<double>(n_samples);
            const Complex z = std::polar(r, th);
            norm.sampled_sup = std::max(norm.sampled_sup, std::abs(f.eval(z)));
        }
    }
    // The analytic bound can only be violated by rounding; clamp so the
    // documented inequality holds exactly.
    norm.sampled_sup = std::min(norm.sampled_sup, norm.crude_bound);
    return norm;
}

}  // namespace opdyn
