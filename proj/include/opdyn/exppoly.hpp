#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace opdyn {

using Complex = std::complex<double>;

class Symbol;

// One summand c * exp(mu * z).
struct Term {
    Complex exponent;     // frequency mu
    Complex coefficient;  // amplitude c
};

// Finite sum of complex exponentials, kept canonical: exponents merged
// within a tolerance, exact-zero coefficients dropped, terms in a fixed
// deterministic order so equal values have identical representations.
class ExpPoly {
public:
    static constexpr double kMergeTol = 1e-12;

    ExpPoly() = default;

    // Canonicalizes an arbitrary term list: exponents within `tol` of each
    // other are merged by coefficient addition, zero coefficients dropped.
    static ExpPoly from_terms(std::vector<Term> raw, double tol = kMergeTol);

    static ExpPoly exponential(Complex mu, Complex c = {1.0, 0.0});
    static ExpPoly constant(Complex c);

    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    Complex eval(Complex z) const;

    ExpPoly operator+(const ExpPoly& rhs) const;
    ExpPoly operator-(const ExpPoly& rhs) const;
    ExpPoly operator*(const ExpPoly& rhs) const;  // exponents add pairwise
    ExpPoly operator*(Complex scalar) const;

private:
    std::vector<Term> terms_;
};

// Expansion index for a power of a two-block exponential sum: `u` indexes
// the first block of terms, `v` the second.  |u| + |v| equals the power.
struct MultiIndex {
    std::vector<int> u;
    std::vector<int> v;

    int order() const;
    // True when u = 0 and v = m * e_k (the exactly-cancelled leading terms).
    bool is_pure_mth_power(std::size_t k, int m) const;
    bool operator==(const MultiIndex&) const = default;
};

struct LedgerEntry {
    MultiIndex index;
    Complex exponent;     // combined frequency of the expanded term
    Complex coefficient;  // multinomial * product of term coefficients
};

struct PowerExpansion {
    ExpPoly value;
    std::vector<LedgerEntry> ledger;
};

// Exact integer multinomial j! / (parts[0]! * ... * parts[n-1]!) where
// j = sum(parts).  Throws std::overflow_error past the uint64 range.
std::uint64_t multinomial_coefficient(std::span<const int> parts);

// All (u, v) with u of length p_u, v of length p_v, |u| + |v| = j, in a
// fixed deterministic order.
std::vector<MultiIndex> enumerate_multiindices(std::size_t p_u, std::size_t p_v, int j);

// j-th power of the sum of both blocks, with the per-multiindex ledger.
// Ledger entries grouped by exponent sum to the returned polynomial.
PowerExpansion power_multinomial(std::span<const Term> u_terms,
                                 std::span<const Term> v_terms, int j,
                                 double tol = ExpPoly::kMergeTol);

// Single-block convenience form: all of f's terms land in the v block.
PowerExpansion power_multinomial(const ExpPoly& f, int j);

// q-th power of the convolution operator with symbol `phi` acting on f:
// each coefficient c_k becomes c_k * phi(mu_k)^q, exponents unchanged.
// The eigenvalue power is applied by repeated in-place multiplication so
// that applying q1 then q2 is bitwise identical to applying q1 + q2.
ExpPoly apply_symbol_power(const ExpPoly& f, const Symbol& phi, int q);

struct DiskNorm {
    double sampled_sup = 0.0;  // max |f| over an n x n polar grid
    double crude_bound = 0.0;  // sum |c_k| exp(|mu_k| rho), always an upper bound
};

DiskNorm sup_norm_on_disk(const ExpPoly& f, double rho, int n_samples);

}  // namespace opdyn
