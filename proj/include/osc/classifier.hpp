#pragma once

#include "osc/geometry.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace osc {

enum class Conclusion {
    LambdaAtLeastN,
    LambdaInfinite,
    LambdaBarAtLeastRho,
    MaxLambdaBarFFprimeAtLeastRho,
    ZeroFreeBasePossible,
    ZeroFreeBaseExists,
    Inconclusive,
};

inline const char* to_string(Conclusion c) {
    switch (c) {
        case Conclusion::LambdaAtLeastN: return "LambdaAtLeastN";
        case Conclusion::LambdaInfinite: return "LambdaInfinite";
        case Conclusion::LambdaBarAtLeastRho: return "LambdaBarAtLeastRho";
        case Conclusion::MaxLambdaBarFFprimeAtLeastRho: return "MaxLambdaBarFFprimeAtLeastRho";
        case Conclusion::ZeroFreeBasePossible: return "ZeroFreeBasePossible";
        case Conclusion::ZeroFreeBaseExists: return "ZeroFreeBaseExists";
        default: return "Inconclusive";
    }
}

struct TraceEntry {
    std::string hypothesis;
    std::string value;
    bool pass = false;
};

struct Verdict {
    Conclusion conclusion = Conclusion::Inconclusive;
    std::string check;                 // registry key of the check that produced it
    std::vector<std::string> theorem;  // citations, never empty
    std::vector<TraceEntry> trace;
    int n = 0;
    std::vector<std::string> advisory;
};

/// Citation strings keyed by check; override entries to follow a different numbering.
struct Citations {
    std::map<std::string, std::string> label = {
        {"ez_minus_k", "e^z - K theorem: finite exponent of convergence iff K = q^2/16 with q odd"},
        {"one_sixteenth", "1/16 theorem for A = e^P + Q"},
        {"two_term", "two exponential terms theorem, cases (a)-(d) and unequal degrees"},
        {"ratio_half_example", "zero-free solutions exist at zeta1/zeta2 = 1/2"},
        {"ratio_three_quarters_example", "zero-free solutions exist at zeta1/zeta2 = 3/4 with Q nonzero"},
        {"opposite_sides", "opposite-sides corollary: zeta1 > 0 > zeta2 with polynomial coefficients"},
        {"collinear_examples", "collinear examples: exp(e^-z + e^z) and exp(e^-z + e^2z) are zero-free solutions"},
        {"perimeter", "perimeter corollary: C(co W0) > 4 C(co W)"},
        {"ramification", "ramification criterion: Theta(0,A) > 1 - 1/K with K > 4"},
        {"critical_points_1", "zeros or critical points theorem, part (1)"},
        {"critical_points_2", "zeros or critical points theorem, part (2)"},
        {"indicator_domination", "indicator domination theorem: h_A > 2 h_B on {h_B > 0}, C(co W0^A) > 2 C(co W0^B)"},
        {"zero_free_base", "zero-free base criterion: -4A = e^{2P} + P'^2 - 2P''"},
        {"pair_perturbation", "perturbation theorem for solution pairs"},
    };

    std::string operator()(const std::string& key) const {
        auto it = label.find(key);
        return it == label.end() ? key : it->second;
    }
};

inline const Citations& default_citations() {
    static const Citations c;
    return c;
}

namespace detail {

inline std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

template <class T>
std::string show(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

inline Verdict make_verdict(Conclusion c, const std::string& key, int n, const Citations& cite) {
    Verdict v;
    v.conclusion = c;
    v.check = key;
    v.theorem.push_back(cite(key));
    v.n = n;
    return v;
}

// Downgrade to Inconclusive if any recorded hypothesis failed.
inline Verdict settle(Verdict v, Conclusion on_pass) {
    bool ok = !v.trace.empty();
    for (const auto& t : v.trace) ok = ok && t.pass;
    v.conclusion = ok ? on_pass : Conclusion::Inconclusive;
    return v;
}

}  // namespace detail

/// c * exp(R(z)) with constant c, if the tower has that shape.
struct PureExponential {
    GaussianRational c;
    ExactPolynomial exponent;
};

inline std::optional<PureExponential> as_pure_exponential(const ExactExpPoly& h) {
    auto g = to_general_form(h);
    if (g.size() != 1 || g[0].poly.degree() != 0) return std::nullopt;
    return PureExponential{g[0].poly.coeff(0), g[0].exponent};
}

/// Tower minus its H0 part (the order-n exponential terms only).
inline ExactExpPoly exponential_part(const ExactExpPoly& a) { return a - a.h0(); }

/**
 * Two exponential terms of equal degree n with leading coefficients zeta1, zeta2.
 * Labels are symmetric in the theorem, so the pair is ordered to make |ratio| <= 1.
 */
inline Verdict check_two_term(const GaussianRational& zeta1, const GaussianRational& zeta2, int n, bool q_nonzero,
                              const Citations& cite = default_citations()) {
    using detail::show;
    if (zeta1.is_zero() || zeta2.is_zero()) throw std::domain_error("two-term check needs nonzero frequencies");
    GaussianRational a = zeta1, b = zeta2;
    if (a.norm() > b.norm()) std::swap(a, b);
    Verdict v = detail::make_verdict(Conclusion::Inconclusive, "two_term", n, cite);
    if (a == b) {
        v.trace.push_back({"(a) zeta1 = zeta2", show(a), true});
        return detail::settle(v, Conclusion::LambdaAtLeastN);
    }
    GaussianRational ratio = a / b;
    v.trace.push_back({"zeta1/zeta2", show(ratio), true});
    if (!ratio.is_real()) {
        v.trace.push_back({"(b) ratio non-real", "true", true});
        return detail::settle(v, Conclusion::LambdaInfinite);
    }
    const Rational& r = ratio.re();
    if (r < 0) {
        v.theorem = {cite("opposite_sides")};
        v.trace.push_back({"ratio real negative (opposite sides of 0)", show(r), true});
        return detail::settle(v, Conclusion::LambdaInfinite);
    }
    if (r < Rational(1, 2)) {
        v.trace.push_back({"(c) 0 < ratio < 1/2", show(r), true});
        return detail::settle(v, Conclusion::LambdaAtLeastN);
    }
    if (r > Rational(3, 4)) {
        v.trace.push_back({"(d) 3/4 < ratio < 1", show(r), true});
        v.trace.push_back({"(d) Q == 0", q_nonzero ? "Q nonzero" : "Q == 0", !q_nonzero});
        if (q_nonzero) v.theorem.push_back(cite("ratio_three_quarters_example"));
        return detail::settle(v, Conclusion::LambdaAtLeastN);
    }
    // 1/2 <= ratio <= 3/4: no case applies; both ends have zero-free examples.
    v.trace.push_back({"ratio outside (0,1/2) and (3/4,1)", show(r), false});
    v.theorem.push_back(cite("ratio_half_example"));
    v.theorem.push_back(cite("ratio_three_quarters_example"));
    return v;
}

inline Verdict check_perimeter(const ExactExpPoly& a, const Citations& cite = default_citations()) {
    Verdict v = detail::make_verdict(Conclusion::Inconclusive, "perimeter", a.order(), cite);
    bool h0_zero = a.h0().is_zero() && a.order() >= 1;
    v.trace.push_back({"H0 == 0", h0_zero ? "true" : "false", h0_zero});
    if (a.order() == 0) return v;
    double c0 = hull_circumference(a, true), c = hull_circumference(a, false);
    v.trace.push_back({"C(co W0) > 4 C(co W)", detail::fmt_double(c0) + " vs " + detail::fmt_double(4 * c),
                       c0 > 4 * c * (1 + 1e-12) + 1e-15});
    return detail::settle(v, Conclusion::LambdaAtLeastN);
}

/// Every ramification-type verdict: part (1), the K > 4 criterion, part (2).
inline std::vector<Verdict> ramification_verdicts(const ExactExpPoly& a, double K,
                                                  const Citations& cite = default_citations()) {
    using detail::fmt_double;
    if (!(K > 0)) throw std::domain_error("ramification check needs K > 0");
    std::vector<Verdict> out;
    int n = a.order();
    bool h0_zero = n >= 1 && a.h0().is_zero();
    double c0 = n >= 1 ? hull_circumference(a, true) : 0.0;
    double c = n >= 1 ? hull_circumference(a, false) : 0.0;
    double theta = c0 > 0 ? 1.0 - c / c0 : 0.0;
    TraceEntry h0{"H0 == 0", h0_zero ? "true" : "false", h0_zero};

    Verdict p1 = detail::make_verdict(Conclusion::Inconclusive, "critical_points_1", n, cite);
    p1.trace = {h0, {"single exponential term (counting function of 1/A is S(r,A))",
                     std::to_string(a.terms().size()), a.terms().size() == 1}};
    out.push_back(detail::settle(p1, Conclusion::LambdaBarAtLeastRho));

    Verdict d = detail::make_verdict(Conclusion::Inconclusive, "ramification", n, cite);
    d.trace = {h0,
               {"K > 4", fmt_double(K), K > 4},
               {"Theta = 1 - C(co W)/C(co W0) > 1 - 1/K", fmt_double(theta) + " vs " + fmt_double(1 - 1 / K),
                theta > 1 - 1 / K + 1e-12}};
    out.push_back(detail::settle(d, Conclusion::LambdaAtLeastN));

    Verdict p2 = detail::make_verdict(Conclusion::Inconclusive, "critical_points_2", n, cite);
    p2.trace = {h0,
                {"more than one exponential term", std::to_string(a.terms().size()), a.terms().size() > 1},
                {"K > 2", fmt_double(K), K > 2},
                {"C(co W0) > K C(co W)", fmt_double(c0) + " vs " + fmt_double(K * c), c0 > K * c * (1 + 1e-12)}};
    out.push_back(detail::settle(p2, Conclusion::MaxLambdaBarFFprimeAtLeastRho));
    return out;
}

inline Verdict check_theta_ramification(const ExactExpPoly& a, double K, const Citations& cite = default_citations()) {
    auto all = ramification_verdicts(a, K, cite);
    for (const auto& v : all)
        if (v.conclusion != Conclusion::Inconclusive) return v;
    return all[1];
}

/// Largest safe K for the ramification checks: strictly inside (bound, C(W0)/C(W)).
inline double choose_ramification_k(const ExactExpPoly& a) {
    if (a.order() == 0) return 8.0;
    double c0 = hull_circumference(a, true), c = hull_circumference(a, false);
    double ratio = c > 0 ? c0 / c : HUGE_VAL;
    if (ratio > 4) return std::min(0.5 * (4 + ratio), 8.0);
    if (ratio > 2) return 0.5 * (2 + ratio);
    return 4.5;
}

inline Verdict check_indicator_domination(const ExactExpPoly& a, std::size_t removed_index,
                                          const Citations& cite = default_citations(),
                                          const CertifyOptions& opt = {}) {
    using detail::fmt_double;
    if (a.terms().size() < 2) throw std::domain_error("indicator domination needs at least two exponential terms");
    if (removed_index >= a.terms().size()) throw std::out_of_range("removed_index out of range");
    const int n = a.order();
    const auto& t = a.terms()[removed_index];
    ExactExpPoly b = a - ExactExpPoly::term(n, t.frequency, t.coefficient);
    Indicator ha = indicator_at_order(a, n), hb = indicator_at_order(b, n);
    IndicatorExpr expr{{{1.0, ha}, {-2.0, hb}}, 0.0};
    CertifiedComparison cmp = certify_strict(expr, hb, opt);
    double ca = hull_circumference(a, true), cb = hull_circumference(b, true);

    Verdict v = detail::make_verdict(Conclusion::Inconclusive, "indicator_domination", n, cite);
    v.trace.push_back({"removed term frequency", detail::show(t.frequency), true});
    v.trace.push_back({"h_A > 2 h_B on {h_B > 0}",
                       std::string(to_string(cmp.status)) + " (" + cmp.method + ", margin " + fmt_double(cmp.margin) + ")",
                       cmp.status == CertStatus::proven});
    v.trace.push_back({"C(co W0^A) > 2 C(co W0^B)", fmt_double(ca) + " vs " + fmt_double(2 * cb),
                       ca > 2 * cb * (1 + 1e-12)});
    return detail::settle(v, Conclusion::LambdaAtLeastN);
}

/// Tries every removal index and keeps the first that passes (canonical order).
inline Verdict best_indicator_domination(const ExactExpPoly& a, const Citations& cite = default_citations(),
                                         const CertifyOptions& opt = {}) {
    Verdict agg = detail::make_verdict(Conclusion::Inconclusive, "indicator_domination", a.order(), cite);
    if (a.terms().size() < 2) {
        agg.trace.push_back({"at least two exponential terms", std::to_string(a.terms().size()), false});
        return agg;
    }
    for (std::size_t k = 0; k < a.terms().size(); ++k) {
        Verdict v = check_indicator_domination(a, k, cite, opt);
        if (v.conclusion != Conclusion::Inconclusive) return v;
        for (auto& e : v.trace) {
            e.hypothesis = "[index " + std::to_string(k) + "] " + e.hypothesis;
            agg.trace.push_back(e);
        }
    }
    return agg;
}

inline Verdict check_opposite_collinear(const ExactExpPoly& a, const Citations& cite = default_citations()) {
    Verdict v = detail::make_verdict(Conclusion::Inconclusive, "opposite_sides", a.order(), cite);
    const auto& ts = a.terms();
    if (ts.size() < 2) {
        v.trace.push_back({"at least two exponential terms", std::to_string(ts.size()), false});
        return v;
    }
    bool collinear = true, negative = false;
    for (std::size_t k = 1; k < ts.size(); ++k) {
        GaussianRational r = ts[k].frequency / ts[0].frequency;
        collinear = collinear && r.is_real();
        negative = negative || (r.is_real() && r.re() < 0);
    }
    v.trace.push_back({"frequencies collinear with 0 on both sides", collinear && negative ? "true" : "false",
                       collinear && negative});
    if (!(collinear && negative)) return v;
    if (ts.size() > 2) {
        v.trace.push_back({"exactly two frequencies", std::to_string(ts.size()), false});
        v.theorem.push_back(cite("collinear_examples"));
        return v;
    }
    bool poly = ts[0].coefficient.is_polynomial() && ts[1].coefficient.is_polynomial() && a.h0().is_polynomial();
    v.trace.push_back({"exactly two frequencies", "2", true});
    v.trace.push_back({"polynomial coefficients and H0", poly ? "true" : "false", poly});
    return detail::settle(v, Conclusion::LambdaInfinite);
}

// ---- synthesis of special coefficients ----

struct SixteenthSynthesis {
    ExactPolynomial Q;
    ExactExpPoly A;
    Conclusion conclusion = Conclusion::ZeroFreeBaseExists;
};

/// Q = -P'^2/16 + P''/4 and A = e^P + Q.
inline SixteenthSynthesis synth_sixteenth(const ExactPolynomial& P) {
    if (P.degree() < 1) throw std::domain_error("synth_sixteenth needs a nonconstant P");
    auto d1 = P.derivative(), d2 = d1.derivative();
    ExactPolynomial Q = GaussianRational(Rational(-1, 16)) * (d1 * d1) + GaussianRational(Rational(1, 4)) * d2;
    ExactPolynomial P0 = P - ExactPolynomial::constant(P.coeff(0));
    ExactExpPoly A = exp_of_polynomial(P0) + ExactExpPoly(Q);
    return {Q, A};
}

/// A = -1/4 (e^{2P} + P'^2 - 2P'').
inline ExactExpPoly synth_zero_free_base(const ExactPolynomial& P) {
    if (P.degree() < 1) throw std::domain_error("synth_zero_free_base needs a nonconstant P");
    auto d1 = P.derivative(), d2 = d1.derivative();
    ExactPolynomial P0 = P - ExactPolynomial::constant(P.coeff(0));
    GaussianRational quarter(Rational(-1, 4));
    ExactExpPoly e2p = exp_of_polynomial(GaussianRational(2) * P0);
    return ExactExpPoly::constant(quarter) * (e2p + ExactExpPoly(d1 * d1 - GaussianRational(2) * d2));
}

/**
 * Inverse of synth_zero_free_base: one exponential term kappa*(-1/4) e^{2P} with a
 * polynomial rest equal to -1/4 (P'^2 - 2P''). The constant kappa only shifts P by a
 * constant, which P' and P'' do not see. Returns P with zero constant term.
 */
inline std::optional<ExactPolynomial> match_zero_free_base(const ExactExpPoly& a) {
    if (a.order() == 0 || a.terms().size() != 1) return std::nullopt;
    auto pe = as_pure_exponential(exponential_part(a));
    if (!pe) return std::nullopt;
    ExactExpPoly h0 = a.h0();
    if (!h0.is_polynomial()) return std::nullopt;
    ExactPolynomial P = GaussianRational(Rational(1, 2)) * pe->exponent;
    auto d1 = P.derivative(), d2 = d1.derivative();
    ExactPolynomial rest = GaussianRational(Rational(-1, 4)) * (d1 * d1 - GaussianRational(2) * d2);
    if (!(rest == h0.polynomial())) return std::nullopt;
    if (pe->c.is_zero()) return std::nullopt;
    return P;
}

struct RefereeSynthesis {
    ExactPolynomial t;  // T'/T
    ExactPolynomial B;
    ExactExpPoly A;     // T + B
};

/// B = -t^2/16 + t'/4 for T = c e^{P} (so t = P' is a polynomial).
inline RefereeSynthesis synth_referee_B(const ExactExpPoly& T) {
    if (T.order() == 0 || T.terms().size() != 1 || !T.h0().is_zero())
        throw std::domain_error("synth_referee_B needs a single term H e^{zeta z^n}");
    auto pe = as_pure_exponential(T);
    if (!pe) {
        const auto& H = T.terms()[0].coefficient;
        if (H.is_polynomial() && H.polynomial().degree() >= 1)
            throw std::domain_error("H has zeros; the zero-free solution hypothesis fails");
        throw std::domain_error("H must be a constant or a zero-free exponential (general entire H unsupported)");
    }
    const int n = T.order();
    const GaussianRational zeta = T.terms()[0].frequency;
    ExactPolynomial t = pe->exponent.derivative();
    ExactPolynomial B = GaussianRational(Rational(-1, 16)) * (t * t) + GaussianRational(Rational(1, 4)) * t.derivative();
    GaussianRational lead = GaussianRational(Rational(-n * n, 16)) * zeta * zeta;
    if (B.degree() != 2 * (n - 1) || !(B.leading() == lead))
        throw std::logic_error("B does not have the expected leading term -n^2 zeta^2 z^{2(n-1)}/16");
    return {t, B, T + ExactExpPoly(B)};
}

// ---- dispatcher ----

namespace detail {

// 16 K = q^2 with q an odd positive integer.
inline std::optional<long> sixteenth_square(const GaussianRational& K) {
    if (!K.is_real() || K.re() <= 0) return std::nullopt;
    Rational s = K.re() * 16;
    if (denominator(s) != 1) return std::nullopt;
    boost::multiprecision::mpz_int num = numerator(s);
    boost::multiprecision::mpz_int root = boost::multiprecision::sqrt(num);
    if (root * root != num || (root % 2) == 0) return std::nullopt;
    return root.convert_to<long>();
}

}  // namespace detail

/// A = c e^{zeta z} - K, reduced to e^u - K/zeta^2 by z -> (u + const)/zeta.
inline Verdict check_ez_minus_k(const ExactExpPoly& a, const Citations& cite = default_citations()) {
    Verdict v = detail::make_verdict(Conclusion::Inconclusive, "ez_minus_k", a.order(), cite);
    bool shape = a.order() == 1 && a.terms().size() == 1 && a.terms()[0].coefficient.is_polynomial() &&
                 a.terms()[0].coefficient.polynomial().degree() == 0 && a.h0().is_polynomial() &&
                 a.h0().polynomial().degree() <= 0;
    v.trace.push_back({"A = c e^{zeta z} - K", shape ? "true" : "false", shape});
    if (!shape) return v;
    GaussianRational zeta = a.terms()[0].frequency;
    GaussianRational K = -(a.h0().polynomial().coeff(0)) / (zeta * zeta);
    v.trace.push_back({"normalized K", detail::show(K), true});
    auto q = detail::sixteenth_square(K);
    if (!q) {
        v.trace.push_back({"K = q^2/16, q odd", "no", true});
        return detail::settle(v, Conclusion::LambdaInfinite);
    }
    v.trace.push_back({"K = q^2/16, q odd", "q = " + std::to_string(*q), true});
    if (*q == 1) return detail::settle(v, Conclusion::ZeroFreeBasePossible);
    v.trace.push_back({"q = 1 (zero-free pair)", "q = " + std::to_string(*q) + ": two solutions with lambda = 1",
                       false});
    return v;
}

/// A = c e^{P} + Q with ord Q < deg P: zero-free base iff Q = -P'^2/16 + P''/4, else lambda >= n.
inline Verdict check_one_sixteenth(const ExactExpPoly& a, const Citations& cite = default_citations()) {
    Verdict v = detail::make_verdict(Conclusion::Inconclusive, "one_sixteenth", a.order(), cite);
    std::optional<PureExponential> pe;
    if (a.order() >= 1 && a.terms().size() == 1) pe = as_pure_exponential(exponential_part(a));
    v.trace.push_back({"A = c e^P + Q, ord Q < deg P", pe ? "true" : "false", pe.has_value()});
    if (!pe) return v;
    auto d1 = pe->exponent.derivative();
    ExactPolynomial target =
        GaussianRational(Rational(-1, 16)) * (d1 * d1) + GaussianRational(Rational(1, 4)) * d1.derivative();
    ExactExpPoly q = a.h0();
    bool match = q.is_polynomial() && q.polynomial() == target;
    v.trace.push_back({"Q = -P'^2/16 + P''/4", match ? "equal" : "differs", true});
    return detail::settle(v, match ? Conclusion::ZeroFreeBaseExists : Conclusion::LambdaAtLeastN);
}

/// Two pure exponential terms e^{P1} + e^{P2} + Q, either of unequal degree or equal degree.
inline Verdict check_two_exponentials(const ExactExpPoly& a, const Citations& cite = default_citations()) {
    Verdict v = detail::make_verdict(Conclusion::Inconclusive, "two_term", a.order(), cite);
    const int n = a.order();
    if (n >= 1 && a.terms().size() == 1 && as_pure_exponential(exponential_part(a))) {
        ExactExpPoly h0 = a.h0();
        bool second = false;
        if (h0.order() >= 1)
            for (const auto& t : h0.terms())
                second = second || as_pure_exponential(ExactExpPoly::term(h0.order(), t.frequency, t.coefficient));
        v.trace.push_back({"e^{P1} + e^{P2} + Q with deg P1 != deg P2",
                           second ? "degrees " + std::to_string(n) + ", " + std::to_string(h0.order()) : "false",
                           second});
        return detail::settle(v, Conclusion::LambdaInfinite);
    }
    bool two = n >= 1 && a.terms().size() == 2;
    for (std::size_t k = 0; two && k < 2; ++k)
        two = as_pure_exponential(ExactExpPoly::term(n, a.terms()[k].frequency, a.terms()[k].coefficient)).has_value();
    v.trace.push_back({"e^{P1} + e^{P2} + Q with deg P1 = deg P2", two ? "true" : "false", two});
    if (!two) return v;
    GaussianRational ratio = a.terms()[0].frequency / a.terms()[1].frequency;
    if (ratio.is_real() && ratio.re() < 0) {
        v.trace.push_back({"not on opposite sides of 0 (handled by the opposite-sides check)", "opposite", false});
        return v;
    }
    return check_two_term(a.terms()[0].frequency, a.terms()[1].frequency, n, !a.h0().is_zero(), cite);
}

inline Verdict check_zero_free_base(const ExactExpPoly& a, const Citations& cite = default_citations()) {
    Verdict v = detail::make_verdict(Conclusion::Inconclusive, "zero_free_base", a.order(), cite);
    auto P = match_zero_free_base(a);
    v.trace.push_back({"-4A = e^{2P} + P'^2 - 2P''", P ? "P = " + detail::show(*P) : "no match", P.has_value()});
    return detail::settle(v, Conclusion::ZeroFreeBaseExists);
}

/// Runs every check in a fixed registry order and returns all verdicts.
inline std::vector<Verdict> classify(const ExactExpPoly& a, const Citations& cite = default_citations(),
                                     const CertifyOptions& opt = {}) {
    if (a.is_zero()) throw std::domain_error("classify: zero coefficient");
    std::vector<Verdict> out;
    out.push_back(check_ez_minus_k(a, cite));
    out.push_back(check_one_sixteenth(a, cite));
    out.push_back(check_two_exponentials(a, cite));
    out.push_back(check_opposite_collinear(a, cite));
    out.push_back(check_perimeter(a, cite));
    for (auto& v : ramification_verdicts(a, choose_ramification_k(a), cite)) out.push_back(std::move(v));
    out.push_back(best_indicator_domination(a, cite, opt));
    out.push_back(check_zero_free_base(a, cite));
    const std::string perturb =
        "advisory (" + cite("pair_perturbation") +
        "): if this equation has a solution pair with max lambda < n, adding any B != 0 of order < n "
        "to A forces max lambda >= n for every pair of the perturbed equation";
    for (auto& v : out)
        if (v.conclusion == Conclusion::ZeroFreeBaseExists || v.conclusion == Conclusion::ZeroFreeBasePossible)
            v.advisory.push_back(perturb);
    return out;
}

}  // namespace osc
