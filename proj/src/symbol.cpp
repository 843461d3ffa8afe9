#include "opdyn/symbol.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "opdyn/errors.hpp"

namespace opdyn {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return f;
}

Complex ipow(Complex z, int n) {
    Complex r{1.0, 0.0};
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

Complex horner(std::span<const Complex> coeffs, Complex z) {
    Complex acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

}  // namespace

Symbol Symbol::cosine() { return Symbol(Kind::cosine, 1.0, 1.0); }
Symbol Symbol::sine() { return Symbol(Kind::sine, 1.0, 1.0); }
Symbol Symbol::z_exp() { return Symbol(Kind::z_exp, 1.0, 2.0); }
Symbol Symbol::exp() { return Symbol(Kind::exp, 1.0, 1.0); }

Symbol Symbol::exp_minus(Complex a) {
    Symbol s(Kind::exp_minus_a, std::max(1.0, std::abs(Complex{1.0, 0.0} - a)), 1.0);
    s.param_ = a;
    return s;
}

Symbol Symbol::polynomial(std::vector<Complex> coeffs) {
    while (!coeffs.empty() && coeffs.back() == Complex{0.0, 0.0}) coeffs.pop_back();
    if (coeffs.empty())
        throw ConstructionError("zero polynomial is not a usable operator symbol");
    double m = 0.0;  // exact bound with R = 1: M = max |c_n| n!
    for (std::size_t n = 0; n < coeffs.size(); ++n)
        m = std::max(m, std::abs(coeffs[n]) * factorial(static_cast<int>(n)));
    Symbol s(Kind::polynomial, m, 1.0);
    s.coeffs_ = std::move(coeffs);
    return s;
}

Symbol Symbol::identity() { return polynomial({{0.0, 0.0}, {1.0, 0.0}}); }

Symbol Symbol::rose() {
    const double c = std::pow(9.0, 9.0 / 8.0) / 8.0;
    std::vector<Complex> coeffs(10, Complex{0.0, 0.0});
    coeffs[1] = Complex{-c, 0.0};
    coeffs[9] = Complex{c, 0.0};
    return polynomial(std::move(coeffs));
}

Symbol Symbol::homothety_conjugate(Complex a) const {
    if (a == Complex{0.0, 0.0})
        throw ConstructionError("homothety factor must be nonzero");
    Symbol s(Kind::scaled, bound_m_, bound_r_ * std::abs(a));
    s.param_ = a;
    s.base_ = std::make_shared<Symbol>(*this);
    return s;
}

Complex Symbol::eval(Complex z) const {
    switch (kind_) {
        case Kind::polynomial: return horner(coeffs_, z);
        case Kind::cosine: return std::cos(z);
        case Kind::sine: return std::sin(z);
        case Kind::z_exp: return z * std::exp(z);
        case Kind::exp: return std::exp(z);
        case Kind::exp_minus_a: return std::exp(z) - param_;
        case Kind::scaled: return base_->eval(param_ * z);
    }
    return {};
}

Complex Symbol::eval_derivative(Complex z) const {
    switch (kind_) {
        case Kind::polynomial: {
            Complex acc{0.0, 0.0};
            for (std::size_t n = coeffs_.size(); n-- > 1;)
                acc = acc * z + static_cast<double>(n) * coeffs_[n];
            return acc;
        }
        case Kind::cosine: return -std::sin(z);
        case Kind::sine: return std::cos(z);
        case Kind::z_exp: return (Complex{1.0, 0.0} + z) * std::exp(z);
        case Kind::exp: return std::exp(z);
        case Kind::exp_minus_a: return std::exp(z);
        case Kind::scaled: return param_ * base_->eval_derivative(param_ * z);
    }
    return {};
}

Complex Symbol::taylor_coeff(int n) const {
    if (n < 0) throw std::invalid_argument("coefficient index must be >= 0");
    switch (kind_) {
        case Kind::polynomial:
            return n < static_cast<int>(coeffs_.size()) ? coeffs_[static_cast<std::size_t>(n)]
                                                        : Complex{0.0, 0.0};
        case Kind::cosine:
            if (n % 2 != 0) return {0.0, 0.0};
            return {(n / 2 % 2 == 0 ? 1.0 : -1.0) / factorial(n), 0.0};
        case Kind::sine:
            if (n % 2 == 0) return {0.0, 0.0};
            return {((n - 1) / 2 % 2 == 0 ? 1.0 : -1.0) / factorial(n), 0.0};
        case Kind::z_exp:
            return n == 0 ? Complex{0.0, 0.0} : Complex{1.0 / factorial(n - 1), 0.0};
        case Kind::exp:
            return {1.0 / factorial(n), 0.0};
        case Kind::exp_minus_a:
            return n == 0 ? Complex{1.0, 0.0} - param_ : Complex{1.0 / factorial(n), 0.0};
        case Kind::scaled:
            return ipow(param_, n) * base_->taylor_coeff(n);
    }
    return {};
}

std::vector<Complex> Symbol::apply_to_taylor(std::span<const Complex> p, int n_trunc) const {
    if (p.empty()) return {};
    const int degree = static_cast<int>(p.size()) - 1;
    if (n_trunc < degree)
        throw std::invalid_argument("truncation order below polynomial degree");
    std::vector<Complex> out(p.size(), Complex{0.0, 0.0});
    for (int n = 0; n <= degree; ++n) {
        const Complex a_n = taylor_coeff(n);
        if (a_n == Complex{0.0, 0.0}) continue;
        // n-th derivative: coefficient k picks up p_{k+n} (k+n)!/k!.
        for (int k = 0; k + n <= degree; ++k) {
            double falling = 1.0;
            for (int i = 1; i <= n; ++i) falling *= static_cast<double>(k + i);
            out[static_cast<std::size_t>(k)] += a_n * falling * p[static_cast<std::size_t>(k + n)];
        }
    }
    return out;
}

std::string Symbol::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
        case Kind::cosine: return "cos";
        case Kind::sine: return "sin";
        case Kind::z_exp: return "zexp";
        case Kind::exp: return "exp";
        case Kind::exp_minus_a:
            os << "exp-a:" << param_.real();
            if (param_.imag() != 0.0) os << (param_.imag() < 0 ? "" : "+") << param_.imag() << "i";
            return os.str();
        case Kind::polynomial: {
            os << "poly:[";
            for (std::size_t i = 0; i < coeffs_.size(); ++i) {
                if (i) os << ",";
                os << coeffs_[i].real();
                if (coeffs_[i].imag() != 0.0)
                    os << (coeffs_[i].imag() < 0 ? "" : "+") << coeffs_[i].imag() << "i";
            }
            os << "]";
            return os.str();
        }
        case Kind::scaled:
            os << "scaled:" << base_->describe() << ":" << param_.real();
            if (param_.imag() != 0.0) os << (param_.imag() < 0 ? "" : "+") << param_.imag() << "i";
            return os.str();
    }
    return "?";
}

std::vector<Complex> polynomial_power(std::span<const Complex> coeffs, int n) {
    if (n < 0) throw std::invalid_argument("power must be >= 0");
    std::vector<Complex> acc{Complex{1.0, 0.0}};
    for (int step = 0; step < n; ++step) {
        std::vector<Complex> next(acc.size() + coeffs.size() - 1, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < acc.size(); ++i)
            for (std::size_t k = 0; k < coeffs.size(); ++k) next[i + k] += acc[i] * coeffs[k];
        acc = std::move(next);
    }
    return acc;
}

}  // namespace opdyn
