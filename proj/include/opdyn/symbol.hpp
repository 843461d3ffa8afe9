#pragma once

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace opdyn {

using Complex = std::complex<double>;

// An entire function of exponential type used as an operator symbol.
// The representable family is a closed catalog (cos, sin, z e^z, e^z,
// e^z - a) plus polynomials and homothety rescalings phi(a z); each entry
// carries a trustworthy coefficient growth bound |a_n| <= M R^n / n!.
class Symbol {
public:
    enum class Kind { polynomial, cosine, sine, z_exp, exp, exp_minus_a, scaled };

    static Symbol cosine();
    static Symbol sine();
    static Symbol z_exp();
    static Symbol exp();
    static Symbol exp_minus(Complex a);
    static Symbol polynomial(std::vector<Complex> coeffs);
    static Symbol identity();  // the polynomial z
    // The degree-9 polynomial (9^{9/8}/8) z (z^8 - 1) whose unit level set
    // draws an eight-petalled rose; the constant is computed from the exact
    // expression, never from a decimal literal.
    static Symbol rose();

    Kind kind() const noexcept { return kind_; }

    Complex eval(Complex z) const;
    Complex eval_derivative(Complex z) const;

    // Exact n-th Taylor coefficient at 0 (closed form per catalog entry).
    Complex taylor_coeff(int n) const;

    // (M, R) with |a_n| <= M R^n / n! for all n.
    std::pair<double, double> type_bound() const noexcept { return {bound_m_, bound_r_}; }

    // The conjugated symbol phi_a with phi_a(z) = phi(a z).  a must be nonzero.
    Symbol homothety_conjugate(Complex a) const;

    // Action of the operator on a polynomial: sum_{n<=min(deg,n_trunc)}
    // a_n p^(n), returned as coefficients.  Exact and finite.
    std::vector<Complex> apply_to_taylor(std::span<const Complex> p, int n_trunc) const;

    // Human-readable description, usable as a CLI literal.
    std::string describe() const;

private:
    Symbol(Kind kind, double m, double r) : kind_(kind), bound_m_(m), bound_r_(r) {}

    Kind kind_;
    std::vector<Complex> coeffs_;          // polynomial coefficients, degree order
    Complex param_{0.0, 0.0};              // a of exp-a, or the scale factor
    std::shared_ptr<const Symbol> base_;   // scaled: underlying symbol
    double bound_m_ = 1.0;
    double bound_r_ = 1.0;
};

// Coefficients of p(z)^n by repeated convolution.
std::vector<Complex> polynomial_power(std::span<const Complex> coeffs, int n);

}  // namespace opdyn
