#pragma once

#include "osc/exppoly.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

namespace osc {

/// A complex value stored as exp(logmag) * exp(i phase); phase in [-pi, pi).
struct LogValue {
    double logmag = -std::numeric_limits<double>::infinity();
    double phase = 0.0;

    cdouble value() const { return std::polar(std::exp(logmag), phase); }
    bool is_zero() const { return std::isinf(logmag) && logmag < 0; }
};

inline double wrap_phase(double p) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(p + std::numbers::pi, two_pi);
    if (w < 0) w += two_pi;
    return w - std::numbers::pi;
}

/**
 * Floating view of an exponential polynomial as a flat sum P_k(z) exp(E_k(z)).
 *
 * Every root-to-leaf path of the tower contributes one summand, so
 * evaluation never builds large intermediate values.
 */
class FlatExpPoly {
public:
    struct Summand {
        std::vector<cdouble> poly;      // ascending
        std::vector<cdouble> exponent;  // ascending, constant term zero
    };

    FlatExpPoly() = default;

    template <Scalar S>
    explicit FlatExpPoly(const ExpPoly<S>& a) {
        for (const auto& g : to_general_form(a)) {
            Summand s;
            for (const auto& c : g.poly.coeffs()) s.poly.push_back(scalar_traits<S>::to_complex(c));
            for (const auto& c : g.exponent.coeffs()) s.exponent.push_back(scalar_traits<S>::to_complex(c));
            terms_.push_back(std::move(s));
        }
    }

    const std::vector<Summand>& summands() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Largest |E_k'(z)|; bounds how fast the phase of any summand turns.
    double max_exponent_speed(cdouble z) const {
        double best = 0.0;
        for (const auto& s : terms_) best = std::max(best, std::abs(horner_derivative(s.exponent, z)));
        return best;
    }

    /// log of the largest summand magnitude; cancellation is measured against it.
    double dominant_logmag(cdouble z) const {
        double top = -std::numeric_limits<double>::infinity();
        for (const auto& s : terms_) {
            double ap = std::abs(horner(s.poly, z));
            if (ap > 0.0) top = std::max(top, horner(s.exponent, z).real() + std::log(ap));
        }
        return top;
    }

    cdouble eval(cdouble z) const {
        cdouble acc = 0.0;
        for (const auto& s : terms_) acc += horner(s.poly, z) * std::exp(horner(s.exponent, z));
        return acc;
    }

    /// Log-sum-exp evaluation: the dominant summand's magnitude is factored out first.
    LogValue log_eval(cdouble z) const {
        thread_local std::vector<double> lm;
        thread_local std::vector<double> ph;
        lm.clear();
        ph.clear();
        double top = -std::numeric_limits<double>::infinity();
        for (const auto& s : terms_) {
            cdouble p = horner(s.poly, z);
            double ap = std::abs(p);
            if (ap == 0.0) continue;
            cdouble e = horner(s.exponent, z);
            lm.push_back(e.real() + std::log(ap));
            ph.push_back(e.imag() + std::arg(p));
            top = std::max(top, lm.back());
        }
        if (lm.empty()) return {};
        cdouble sum = 0.0;
        for (std::size_t k = 0; k < lm.size(); ++k) sum += std::polar(std::exp(lm[k] - top), ph[k]);
        double as = std::abs(sum);
        if (as == 0.0) return {};
        return {top + std::log(as), wrap_phase(std::arg(sum))};
    }

private:
    static cdouble horner(const std::vector<cdouble>& c, cdouble z) {
        cdouble acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
        return acc;
    }
    static cdouble horner_derivative(const std::vector<cdouble>& c, cdouble z) {
        cdouble acc = 0.0;
        for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
        return acc;
    }

    std::vector<Summand> terms_;
};

template <Scalar S>
LogValue log_eval(const ExpPoly<S>& a, cdouble z) {
    return FlatExpPoly(a).log_eval(z);
}

template <Scalar S>
cdouble evaluate(const ExpPoly<S>& a, cdouble z) {
    return FlatExpPoly(a).eval(z);
}

}  // namespace osc
