#pragma once

#include "osc/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace osc {

struct HullReport {
    std::vector<cdouble> points;
    std::vector<cdouble> vertices;  // counterclockwise
    double circumference = 0.0;
    bool degenerate = false;        // all points collinear (segment or single point)
};

namespace detail {

inline int sign_of(const Rational& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
inline int sign_of(double v, double tol) { return v > tol ? 1 : (v < -tol ? -1 : 0); }

template <class Coord, class Sign>
std::vector<std::size_t> monotone_chain(const std::vector<std::pair<Coord, Coord>>& p, Sign sign) {
    std::vector<std::size_t> idx(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) idx[k] = k;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        int sx = sign(p[a].first - p[b].first);
        if (sx != 0) return sx < 0;
        return sign(p[a].second - p[b].second) < 0;
    });
    idx.erase(std::unique(idx.begin(), idx.end(),
                          [&](std::size_t a, std::size_t b) {
                              return sign(p[a].first - p[b].first) == 0 && sign(p[a].second - p[b].second) == 0;
                          }),
              idx.end());
    if (idx.size() <= 2) return idx;
    auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
        return sign((p[a].first - p[o].first) * (p[b].second - p[o].second) -
                    (p[a].second - p[o].second) * (p[b].first - p[o].first));
    };
    std::vector<std::size_t> h(2 * idx.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], idx[i]) <= 0) --k;
        h[k++] = idx[i];
    }
    for (std::size_t i = idx.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], idx[i]) <= 0) --k;
        h[k++] = idx[i];
    }
    h.resize(k - 1);
    return h;
}

inline HullReport finish_hull(std::vector<cdouble> pts, const std::vector<std::size_t>& ids) {
    HullReport r;
    r.points = std::move(pts);
    for (auto i : ids) r.vertices.push_back(r.points[i]);
    if (r.vertices.size() <= 2) {
        r.degenerate = true;
        r.circumference = r.vertices.size() == 2 ? 2.0 * std::abs(r.vertices[1] - r.vertices[0]) : 0.0;
        return r;
    }
    for (std::size_t k = 0; k < r.vertices.size(); ++k)
        r.circumference += std::abs(r.vertices[(k + 1) % r.vertices.size()] - r.vertices[k]);
    return r;
}

}  // namespace detail

/// Convex hull with exact orientation tests. A segment counts both of its sides.
inline HullReport hull(const std::vector<GaussianRational>& points) {
    if (points.empty()) throw std::domain_error("hull of an empty point set");
    std::vector<std::pair<Rational, Rational>> p;
    std::vector<cdouble> pts;
    for (const auto& z : points) {
        p.emplace_back(z.re(), z.im());
        pts.push_back(z.to_complex());
    }
    auto ids = detail::monotone_chain(p, [](const Rational& v) { return detail::sign_of(v); });
    return detail::finish_hull(std::move(pts), ids);
}

inline HullReport hull(const std::vector<cdouble>& points) {
    if (points.empty()) throw std::domain_error("hull of an empty point set");
    std::vector<std::pair<double, double>> p;
    for (const auto& z : points) p.emplace_back(z.real(), z.imag());
    auto ids = detail::monotone_chain(p, [](double v) { return detail::sign_of(v, 1e-12); });
    return detail::finish_hull(points, ids);
}

/// Conjugated frequencies W of a tower, optionally with the origin added (W0).
template <Scalar S>
std::vector<S> conjugated_frequencies(const ExpPoly<S>& a, bool with_origin) {
    std::vector<S> w;
    for (const auto& t : a.terms()) w.push_back(scalar_traits<S>::conj(t.frequency));
    if (with_origin) w.push_back(scalar_traits<S>::from_int(0));
    return w;
}

/// C(co W) or C(co W0) for a coefficient; an empty W has circumference 0.
template <Scalar S>
double hull_circumference(const ExpPoly<S>& a, bool with_origin) {
    auto w = conjugated_frequencies(a, with_origin);
    if (w.empty()) return 0.0;
    return hull(w).circumference;
}

/// h(theta) = max_j Re(mu_j e^{i n theta}).
struct Indicator {
    int degree = 1;
    std::vector<cdouble> atoms;
    double lipschitz = 0.0;

    Indicator() = default;
    Indicator(int n, std::vector<cdouble> mu) : degree(n), atoms(std::move(mu)) {
        if (atoms.empty()) throw std::domain_error("indicator needs at least one atom");
        double m = 0.0;
        for (auto a : atoms) m = std::max(m, std::abs(a));
        lipschitz = n * m;
    }

    double operator()(double theta) const {
        cdouble rot = std::polar(1.0, degree * theta);
        double best = -HUGE_VAL;
        for (auto a : atoms) best = std::max(best, (a * rot).real());
        return best;
    }

    /// Index of the atom attaining the maximum.
    std::size_t active(double theta) const {
        cdouble rot = std::polar(1.0, degree * theta);
        std::size_t arg = 0;
        for (std::size_t k = 1; k < atoms.size(); ++k)
            if ((atoms[k] * rot).real() > (atoms[arg] * rot).real()) arg = k;
        return arg;
    }
};

inline double indicator_eval(const Indicator& h, double theta) { return h(theta); }

/// Indicator on the r^n scale. A nonzero tower of lower order than n has h = 0.
template <Scalar S>
Indicator indicator_at_order(const ExpPoly<S>& a, int n) {
    if (a.is_zero()) throw std::domain_error("indicator of the zero function");
    if (a.order() < n) return Indicator(n, {cdouble(0.0)});
    if (a.order() > n) throw std::domain_error("indicator requested below the tower order");
    std::vector<cdouble> atoms;
    if (!a.h0().is_zero()) atoms.emplace_back(0.0);
    for (const auto& t : a.terms()) atoms.push_back(scalar_traits<S>::to_complex(t.frequency));
    return Indicator(n, std::move(atoms));
}

template <Scalar S>
Indicator indicator_of(const ExpPoly<S>& a) {
    if (a.is_zero()) throw std::domain_error("indicator of the zero function");
    return indicator_at_order(a, std::max(1, a.order()));
}

/// Affine combination constant + sum c_k h_k(theta).
struct IndicatorExpr {
    std::vector<std::pair<double, Indicator>> parts;
    double constant = 0.0;

    double operator()(double theta) const {
        double v = constant;
        for (const auto& [c, h] : parts) v += c * h(theta);
        return v;
    }
    double lipschitz() const {
        double l = 0.0;
        for (const auto& [c, h] : parts) l += std::abs(c) * h.lipschitz;
        return l;
    }
};

enum class CertStatus { proven, disproven, undecided };

inline const char* to_string(CertStatus s) {
    switch (s) {
        case CertStatus::proven: return "proven";
        case CertStatus::disproven: return "disproven";
        default: return "undecided";
    }
}

struct CertifiedComparison {
    CertStatus status = CertStatus::undecided;
    double margin = 0.0;          // smallest in-domain value observed
    int samples = 0;
    std::optional<double> witness;
    std::string method;           // "sampling" or "piecewise"
};

struct CertifyOptions {
    int samples = 4096;
    int refinement_rounds = 1;
    int refinement_factor = 8;
    double zero_tolerance = 1e-12;
};

namespace detail {

inline double wrap_angle(double t) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(t + std::numbers::pi, two_pi);
    if (w < 0) w += two_pi;
    return w - std::numbers::pi;
}

// All theta in [-pi, pi) with Re(d e^{i n theta}) = 0.
inline void sinusoid_zeros(cdouble d, int n, std::vector<double>& out) {
    if (std::abs(d) == 0.0) return;
    double base = (std::numbers::pi / 2 - std::arg(d)) / n;
    for (int k = -2 * n - 2; k <= 2 * n + 2; ++k) out.push_back(wrap_angle(base + k * std::numbers::pi / n));
}

// On a piece where every indicator uses one atom, expr = Re(M e^{i n theta}) + constant.
inline CertifiedComparison piecewise_certify(const IndicatorExpr& expr, const std::optional<Indicator>& domain,
                                             double tol) {
    CertifiedComparison out;
    out.method = "piecewise";
    int n = expr.parts.empty() ? (domain ? domain->degree : 1) : expr.parts.front().second.degree;
    for (const auto& [c, h] : expr.parts)
        if (h.degree != n) return out;
    if (domain && domain->degree != n) return out;

    std::vector<double> cuts = {-std::numbers::pi};
    auto add_pairs = [&](const Indicator& h, bool zeros_too) {
        for (std::size_t i = 0; i < h.atoms.size(); ++i) {
            if (zeros_too) sinusoid_zeros(h.atoms[i], n, cuts);
            for (std::size_t j = i + 1; j < h.atoms.size(); ++j) sinusoid_zeros(h.atoms[i] - h.atoms[j], n, cuts);
        }
    };
    for (const auto& [c, h] : expr.parts) add_pairs(h, false);
    if (domain) add_pairs(*domain, true);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return std::abs(a - b) < 1e-14; }),
               cuts.end());
    cuts.push_back(std::numbers::pi);

    auto in_domain = [&](double t) { return !domain || (*domain)(t) > tol; };
    double worst = HUGE_VAL;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        double a = cuts[k], b = cuts[k + 1];
        if (b - a < 1e-15) continue;
        double mid = 0.5 * (a + b);
        if (!in_domain(mid)) continue;
        cdouble m = 0.0;
        for (const auto& [c, h] : expr.parts) m += c * h.atoms[h.active(mid)];
        auto value = [&](double t) { return (m * std::polar(1.0, n * t)).real() + expr.constant; };
        // interior critical points: n t + arg m = k pi
        std::vector<double> probe = {mid};
        if (std::abs(m) > 0.0) {
            double base = -std::arg(m) / n;
            for (int j = -2 * n - 2; j <= 2 * n + 2; ++j) {
                double t = base + j * std::numbers::pi / n;
                if (t > a && t < b) probe.push_back(t);
            }
        }
        for (double t : probe) {
            double v = value(t);
            worst = std::min(worst, v);
            if (v <= tol) {
                out.status = CertStatus::disproven;
                out.witness = t;
                out.margin = v;
                return out;
            }
        }
        for (double t : {a, b}) {
            double v = value(t);
            if (v > tol) {
                worst = std::min(worst, v);
                continue;
            }
            // A zero at the endpoint is allowed only where the domain itself ends.
            bool boundary = domain && (*domain)(t) <= tol * 10 + 1e-12 * domain->lipschitz;
            if (!boundary || v < -tol) {
                out.status = CertStatus::disproven;
                out.witness = t;
                out.margin = v;
                return out;
            }
            worst = std::min(worst, 0.0);
        }
    }
    out.status = CertStatus::proven;
    out.margin = worst == HUGE_VAL ? 0.0 : worst;
    return out;
}

}  // namespace detail

/**
 * Certify expr(theta) > 0 on {theta : domain(theta) > 0} (or everywhere).
 *
 * Lipschitz sampling first; if that cannot decide (typically because the
 * margin shrinks to zero where the domain ends) the indicators are split
 * into pieces on which each is a single sinusoid and checked exactly.
 */
inline CertifiedComparison certify_strict(const IndicatorExpr& expr, const std::optional<Indicator>& domain,
                                          const CertifyOptions& opt = {}) {
    const double lip = expr.lipschitz();
    const double tol = opt.zero_tolerance;
    int n = opt.samples;
    CertifiedComparison out;
    out.method = "sampling";
    for (int round = 0; round <= opt.refinement_rounds; ++round, n *= opt.refinement_factor) {
        const double delta = 2.0 * std::numbers::pi / n;
        double min_in = HUGE_VAL, min_edge = HUGE_VAL;
        // Out-of-domain samples can sit next to domain points only if h_D > -L_D delta there.
        const double reach = domain ? domain->lipschitz * delta : 0.0;
        for (int k = 0; k < n; ++k) {
            double t = -std::numbers::pi + k * delta;
            double v = expr(t);
            double d = domain ? (*domain)(t) : 1.0;
            if (d > 0.0) {
                min_in = std::min(min_in, v);
                if (v < -tol) {
                    out.status = CertStatus::disproven;
                    out.witness = t;
                    out.margin = v;
                    out.samples = n;
                    return out;
                }
            } else if (d > -reach) {
                min_edge = std::min(min_edge, v);
            }
        }
        out.samples = n;
        out.margin = min_in == HUGE_VAL ? 0.0 : min_in;
        if (min_in == HUGE_VAL) {
            out.status = CertStatus::proven;  // empty domain: vacuous
            return out;
        }
        if (min_in > lip * delta && min_edge > lip * delta) {
            out.status = CertStatus::proven;
            return out;
        }
    }
    auto exact = detail::piecewise_certify(expr, domain, tol);
    if (exact.status != CertStatus::undecided) {
        exact.samples = out.samples;
        return exact;
    }
    return out;
}

enum class ProximityClass { log_r, little_o, not_applicable };

inline const char* to_string(ProximityClass c) {
    switch (c) {
        case ProximityClass::log_r: return "O(log r)";
        case ProximityClass::little_o: return "o(r^n)";
        default: return "n/a";
    }
}

struct CharacteristicPrediction {
    int order = 0;
    double t_coeff = 0.0;                // T(r,A) ~ t_coeff r^n
    std::optional<double> n_coeff;       // N(r,1/A) ~ n_coeff r^n when H0 = 0
    ProximityClass m_inverse = ProximityClass::not_applicable;
    double hull_w = 0.0;
    double hull_w0 = 0.0;
};

template <Scalar S>
CharacteristicPrediction characteristic_prediction(const ExpPoly<S>& a) {
    if (a.is_zero()) throw std::domain_error("characteristic of the zero function");
    CharacteristicPrediction p;
    p.order = a.order();
    p.hull_w = hull_circumference(a, false);
    p.hull_w0 = hull_circumference(a, true);
    p.t_coeff = p.hull_w0 / (2.0 * std::numbers::pi);
    ExpPoly<S> h0 = a.h0();
    if (h0.is_zero()) {
        p.n_coeff = p.hull_w / (2.0 * std::numbers::pi);
        p.m_inverse = ProximityClass::not_applicable;
    } else {
        p.m_inverse = h0.is_polynomial() ? ProximityClass::log_r : ProximityClass::little_o;
    }
    return p;
}

}  // namespace osc
