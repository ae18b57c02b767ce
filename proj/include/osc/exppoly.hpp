#pragma once

#include "osc/polynomial.hpp"

#include <algorithm>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace osc {

template <Scalar S>
class ExpPoly;

template <Scalar S>
struct ExpTerm;

/**
 * Normalized exponential polynomial H0 + sum_j H_j exp(zeta_j z^n).
 *
 * Order 0 is an ordinary polynomial. For order n >= 1 every coefficient
 * (including H0) has order < n, the frequencies are nonzero and distinct,
 * and terms are sorted by (|zeta|, arg zeta). A value whose exponential
 * terms all cancel collapses to its H0, so the representation is canonical.
 */
template <Scalar S>
class ExpPoly {
public:
    using traits = scalar_traits<S>;
    using Poly = Polynomial<S>;

    ExpPoly() = default;
    ExpPoly(Poly p) : poly_(std::move(p)) {}  // NOLINT(google-explicit-constructor)

    static ExpPoly zero() { return {}; }
    static ExpPoly constant(const S& v) { return ExpPoly(Poly::constant(v)); }

    /// coefficient * exp(frequency * z^order); coefficient must have lower order.
    static ExpPoly term(int order, const S& frequency, const ExpPoly& coefficient) {
        if (order < 1) throw std::domain_error("exponential term needs order >= 1");
        if (coefficient.order() >= order) throw std::domain_error("coefficient order must be below the term order");
        return assemble(order, zero(), {ExpTerm<S>{frequency, coefficient}});
    }

    int order() const { return order_; }
    bool is_polynomial() const { return order_ == 0; }
    bool is_zero() const { return order_ == 0 && poly_.is_zero(); }

    /// Only meaningful when is_polynomial().
    const Poly& polynomial() const { return poly_; }
    ExpPoly h0() const { return order_ == 0 ? *this : (h0_ ? *h0_ : zero()); }
    const std::vector<ExpTerm<S>>& terms() const { return terms_; }

    std::vector<S> frequencies() const {
        std::vector<S> out;
        for (const auto& t : terms_) out.push_back(t.frequency);
        return out;
    }

    /// Build a canonical value from raw parts: merges equal frequencies,
    /// drops zero coefficients, sorts, and collapses when no terms remain.
    static ExpPoly assemble(int order, ExpPoly h0, std::vector<ExpTerm<S>> raw) {
        if (order == 0) {
            if (!raw.empty()) throw std::domain_error("order 0 cannot carry exponential terms");
            return h0;
        }
        std::sort(raw.begin(), raw.end(), [](const ExpTerm<S>& a, const ExpTerm<S>& b) {
            return traits::compare(a.frequency, b.frequency) < 0;
        });
        std::vector<ExpTerm<S>> merged;
        for (auto& t : raw) {
            if (traits::is_zero(t.frequency)) {
                h0 = h0 + t.coefficient;
                continue;
            }
            if (!merged.empty() && traits::compare(merged.back().frequency, t.frequency) == 0)
                merged.back().coefficient = merged.back().coefficient + t.coefficient;
            else
                merged.push_back(std::move(t));
        }
        std::erase_if(merged, [](const ExpTerm<S>& t) { return t.coefficient.is_zero(); });
        if (merged.empty()) return h0;
        if (h0.order() >= order) throw std::domain_error("H0 order must be below the term order");
        ExpPoly out;
        out.order_ = order;
        out.terms_ = std::move(merged);
        if (!h0.is_zero()) out.h0_ = std::make_shared<const ExpPoly>(std::move(h0));
        return out;
    }

    ExpPoly operator-() const { return *this * constant(traits::from_int(-1)); }

    friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) {
        if (a.order_ < b.order_) return b + a;
        if (a.order_ == 0) return ExpPoly(a.poly_ + b.poly_);
        if (b.order_ < a.order_) return assemble(a.order_, a.h0() + b, a.terms_);
        std::vector<ExpTerm<S>> raw = a.terms_;
        raw.insert(raw.end(), b.terms_.begin(), b.terms_.end());
        return assemble(a.order_, a.h0() + b.h0(), std::move(raw));
    }
    friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) { return a + (-b); }

    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
        if (a.order_ < b.order_) return b * a;
        if (a.order_ == 0) return ExpPoly(a.poly_ * b.poly_);
        std::vector<ExpTerm<S>> raw;
        if (b.order_ < a.order_) {
            for (const auto& t : a.terms_) raw.push_back({t.frequency, t.coefficient * b});
            return assemble(a.order_, a.h0() * b, std::move(raw));
        }
        ExpPoly ah = a.h0(), bh = b.h0();
        for (const auto& t : a.terms_) raw.push_back({t.frequency, t.coefficient * bh});
        for (const auto& t : b.terms_) raw.push_back({t.frequency, ah * t.coefficient});
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) raw.push_back({s.frequency + t.frequency, s.coefficient * t.coefficient});
        return assemble(a.order_, ah * bh, std::move(raw));
    }

    friend bool operator==(const ExpPoly& a, const ExpPoly& b) {
        if (a.order_ != b.order_) return false;
        if (a.order_ == 0) return a.poly_ == b.poly_;
        if (a.terms_.size() != b.terms_.size()) return false;
        if (!(a.h0() == b.h0())) return false;
        for (std::size_t k = 0; k < a.terms_.size(); ++k) {
            if (!traits::equal(a.terms_[k].frequency, b.terms_[k].frequency)) return false;
            if (!(a.terms_[k].coefficient == b.terms_[k].coefficient)) return false;
        }
        return true;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExpPoly& a) {
        if (a.order_ == 0) return os << a.poly_;
        bool first = true;
        if (!a.h0().is_zero()) {
            os << "[" << a.h0() << "]";
            first = false;
        }
        for (const auto& t : a.terms_) {
            if (!first) os << " + ";
            first = false;
            os << "[" << t.coefficient << "]*exp((" << t.frequency << ")z";
            if (a.order_ > 1) os << "^" << a.order_;
            os << ")";
        }
        return os;
    }

private:
    int order_ = 0;
    Poly poly_;
    std::shared_ptr<const ExpPoly> h0_;
    std::vector<ExpTerm<S>> terms_;
};

template <Scalar S>
struct ExpTerm {
    S frequency;
    ExpPoly<S> coefficient;
};

/// Termwise product rule: d/dz[H exp(zeta z^n)] = (H' + n zeta z^(n-1) H) exp(zeta z^n).
template <Scalar S>
ExpPoly<S> differentiate(const ExpPoly<S>& a) {
    using T = scalar_traits<S>;
    if (a.is_polynomial()) return ExpPoly<S>(a.polynomial().derivative());
    const int n = a.order();
    std::vector<ExpTerm<S>> raw;
    for (const auto& t : a.terms()) {
        auto chain = Polynomial<S>::monomial(t.frequency * T::from_int(n), n - 1);
        raw.push_back({t.frequency, differentiate(t.coefficient) + ExpPoly<S>(chain) * t.coefficient});
    }
    return ExpPoly<S>::assemble(n, differentiate(a.h0()), std::move(raw));
}

template <Scalar S>
bool equals_zero(const ExpPoly<S>& a) {
    return a.is_zero();
}

/// exp(Q) as a tower: split off the leading monomial and recurse on the rest.
template <Scalar S>
ExpPoly<S> exp_of_polynomial(const Polynomial<S>& q) {
    using T = scalar_traits<S>;
    if (q.degree() <= 0) {
        S c = q.coeff(0);
        if (T::is_zero(c)) return ExpPoly<S>::constant(T::from_int(1));
        if constexpr (T::exact) {
            throw std::domain_error("exp of a nonzero constant is not an exact Gaussian rational");
        } else {
            return ExpPoly<S>::constant(std::exp(c));
        }
    }
    const int n = q.degree();
    auto rest = q - Polynomial<S>::monomial(q.leading(), n);
    return ExpPoly<S>::term(n, q.leading(), exp_of_polynomial(rest));
}

/// One summand P(z) exp(Q(z)) of the general (unnormalized) form.
template <Scalar S>
struct GeneralTerm {
    Polynomial<S> poly;
    Polynomial<S> exponent;
};

template <Scalar S>
ExpPoly<S> normalize(const std::vector<GeneralTerm<S>>& terms) {
    if (terms.empty()) throw std::domain_error("normalize needs at least one term");
    ExpPoly<S> acc;
    for (const auto& t : terms) {
        if (t.poly.is_zero()) throw std::domain_error("normalize: term with zero polynomial factor");
        acc = acc + ExpPoly<S>(t.poly) * exp_of_polynomial(t.exponent);
    }
    return acc;
}

/// Expand a tower back into general-form summands (one per root-to-leaf path).
template <Scalar S>
std::vector<GeneralTerm<S>> to_general_form(const ExpPoly<S>& a) {
    if (a.is_polynomial()) {
        if (a.is_zero()) return {};
        return {{a.polynomial(), Polynomial<S>{}}};
    }
    std::vector<GeneralTerm<S>> out = to_general_form(a.h0());
    for (const auto& t : a.terms()) {
        auto lead = Polynomial<S>::monomial(t.frequency, a.order());
        for (auto g : to_general_form(t.coefficient)) {
            g.exponent = g.exponent + lead;
            out.push_back(std::move(g));
        }
    }
    return out;
}

/// a(w z) for a scalar w; frequencies scale by w^n at each level.
template <Scalar S>
ExpPoly<S> scale_argument(const ExpPoly<S>& a, const S& w) {
    if (a.is_polynomial()) return ExpPoly<S>(a.polynomial().scaled_argument(w));
    S wn = scalar_traits<S>::from_int(1);
    for (int k = 0; k < a.order(); ++k) wn = wn * w;
    std::vector<ExpTerm<S>> raw;
    for (const auto& t : a.terms()) raw.push_back({t.frequency * wn, scale_argument(t.coefficient, w)});
    return ExpPoly<S>::assemble(a.order(), scale_argument(a.h0(), w), std::move(raw));
}

template <Scalar S>
ExpPoly<cdouble> to_complex_exppoly(const ExpPoly<S>& a) {
    if (a.is_polynomial()) return ExpPoly<cdouble>(to_complex_polynomial(a.polynomial()));
    std::vector<ExpTerm<cdouble>> raw;
    for (const auto& t : a.terms())
        raw.push_back({scalar_traits<S>::to_complex(t.frequency), to_complex_exppoly(t.coefficient)});
    return ExpPoly<cdouble>::assemble(a.order(), to_complex_exppoly(a.h0()), std::move(raw));
}

using ExactExpPoly = ExpPoly<GaussianRational>;
using ExactPolynomial = Polynomial<GaussianRational>;

}  // namespace osc
