#pragma once

#include "osc/scalar.hpp"

#include <algorithm>
#include <complex>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace osc {

/**
 * Dense polynomial with coefficients in ascending degree.
 *
 * Trailing zeros are trimmed on construction, so the zero polynomial is the
 * empty coefficient list and degree() returns -1 for it.
 */
template <Scalar S>
class Polynomial {
public:
    using traits = scalar_traits<S>;

    Polynomial() = default;
    explicit Polynomial(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<S> coeffs) : c_(coeffs) { trim(); }

    static Polynomial constant(const S& v) { return Polynomial(std::vector<S>{v}); }
    static Polynomial monomial(const S& v, int degree) {
        std::vector<S> c(static_cast<std::size_t>(degree) + 1, traits::from_int(0));
        c.back() = v;
        return Polynomial(std::move(c));
    }
    /// The polynomial z.
    static Polynomial identity() { return monomial(traits::from_int(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<S>& coeffs() const { return c_; }
    S coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : traits::from_int(0);
    }
    S leading() const { return c_.empty() ? traits::from_int(0) : c_.back(); }

    S operator()(const S& z) const {
        S acc = traits::from_int(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    cdouble eval(cdouble z) const {
        cdouble acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + traits::to_complex(*it);
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<S> d;
        d.reserve(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * traits::from_int(static_cast<long>(k)));
        return Polynomial(std::move(d));
    }

    /// p(w z) for a scalar w.
    Polynomial scaled_argument(const S& w) const {
        std::vector<S> d = c_;
        S p = traits::from_int(1);
        for (auto& c : d) {
            c = c * p;
            p = p * w;
        }
        return Polynomial(std::move(d));
    }

    Polynomial operator-() const {
        std::vector<S> d = c_;
        for (auto& c : d) c = -c;
        return Polynomial(std::move(d));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<S> d(std::max(a.c_.size(), b.c_.size()), traits::from_int(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) d[k] = d[k] + a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) d[k] = d[k] + b.c_[k];
        return Polynomial(std::move(d));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<S> d(a.c_.size() + b.c_.size() - 1, traits::from_int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] = d[i + j] + a.c_[i] * b.c_[j];
        return Polynomial(std::move(d));
    }
    friend Polynomial operator*(const S& s, const Polynomial& p) { return Polynomial::constant(s) * p; }

    /// Quotient and remainder by a nonzero divisor.
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) throw std::domain_error("Division by zero polynomial");
        std::vector<S> rem = a.c_;
        int db = b.degree();
        if (a.degree() < db) return {Polynomial{}, a};
        std::vector<S> q(static_cast<std::size_t>(a.degree() - db + 1), traits::from_int(0));
        for (int k = a.degree(); k >= db; --k) {
            S f = rem[static_cast<std::size_t>(k)] / b.leading();
            q[static_cast<std::size_t>(k - db)] = f;
            for (int j = 0; j <= db; ++j)
                rem[static_cast<std::size_t>(k - db + j)] = rem[static_cast<std::size_t>(k - db + j)] - f * b.c_[static_cast<std::size_t>(j)];
        }
        return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t k = 0; k < a.c_.size(); ++k)
            if (!traits::equal(a.c_[k], b.c_[k])) return false;
        return true;
    }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
        if (p.is_zero()) return os << "0";
        bool first = true;
        for (std::size_t k = 0; k < p.c_.size(); ++k) {
            if (traits::is_zero(p.c_[k])) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << p.c_[k] << ")";
            if (k >= 1) os << "z";
            if (k >= 2) os << "^" << k;
        }
        return os;
    }

private:
    void trim() {
        while (!c_.empty() && traits::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<S> c_;
};

template <Scalar S>
Polynomial<cdouble> to_complex_polynomial(const Polynomial<S>& p) {
    std::vector<cdouble> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.push_back(scalar_traits<S>::to_complex(v));
    return Polynomial<cdouble>(std::move(c));
}

}  // namespace osc
