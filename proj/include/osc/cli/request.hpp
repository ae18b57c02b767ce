#pragma once

#include "osc/exppoly.hpp"
#include "osc/fixtures.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace osc::cli {

using json = nlohmann::json;

/// Schema violation at a JSON pointer.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string pointer, const std::string& message)
        : std::runtime_error(pointer + ": " + message), pointer_(std::move(pointer)) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

inline const std::vector<std::string>& analysis_order() {
    static const std::vector<std::string> order = {"classify", "characteristic", "sectors", "zeros", "audits",
                                                   "schwarzian"};
    return order;
}

/// Sum of P(z) exp(Q(z)) terms, kept exactly or as doubles (escape hatch).
struct ExpPolySource {
    bool exact = true;
    std::vector<GeneralTerm<GaussianRational>> q;
    std::vector<GeneralTerm<cdouble>> f;

    ExactExpPoly to_exact() const {
        if (!exact) throw std::domain_error("inexact input has no exact form");
        return q.empty() ? ExactExpPoly::zero() : normalize(q);
    }
    ExpPoly<cdouble> to_complex() const {
        if (exact) return to_complex_exppoly(to_exact());
        return f.empty() ? ExpPoly<cdouble>::zero() : normalize(f);
    }
    bool operator==(const ExpPolySource& o) const {
        if (exact != o.exact) return false;
        auto same = [](const auto& x, const auto& y) {
            if (x.size() != y.size()) return false;
            for (std::size_t k = 0; k < x.size(); ++k)
                if (!(x[k].poly.coeffs() == y[k].poly.coeffs()) || !(x[k].exponent.coeffs() == y[k].exponent.coeffs()))
                    return false;
            return true;
        };
        return exact ? same(q, o.q) : same(f, o.f);
    }

    static ExpPolySource from(const ExactExpPoly& a) {
        ExpPolySource s;
        s.q = to_general_form(a);
        return s;
    }
};

struct NumericsConfig {
    double rmax = 30;
    std::vector<double> radii = {20, 30};
    int theta_samples = 4096;
    double ode_tol = 1e-10;
    int quadrature_points = 2048;
    long zero_budget = 1'000'000;
    bool operator==(const NumericsConfig&) const = default;
};

struct AuditConfig {
    std::optional<ExpPolySource> split_b;
    std::array<GaussianRational, 2> targets{GaussianRational(0), GaussianRational(1)};
    bool operator==(const AuditConfig&) const = default;
};

struct SolutionSource {
    ExpPolySource pi;
    ExpPolySource g;
    bool operator==(const SolutionSource&) const = default;
};

struct AnalysisRequest {
    std::string name;
    ExpPolySource coefficient;
    std::optional<SolutionSource> solution;
    std::vector<std::string> analyses;  // canonical order, no duplicates
    NumericsConfig numerics;
    AuditConfig audit;
    bool operator==(const AnalysisRequest&) const = default;
};

namespace detail {

inline std::string ptr(const std::string& base, const std::string& key) { return base + "/" + key; }
inline std::string ptr(const std::string& base, std::size_t index) { return base + "/" + std::to_string(index); }

inline const json& member(const json& obj, const std::string& key, const std::string& at) {
    if (!obj.is_object()) throw ParseError(at.empty() ? "/" : at, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(ptr(at, key), "missing required member");
    return *it;
}

inline std::string inexact_hint() { return "; pass --allow-inexact to accept floating-point values"; }

inline GaussianRational exact_pair(const json& v, const std::string& at) {
    if (!v.is_array() || v.size() != 2) throw ParseError(at, "expected [re, im] as two rational strings");
    std::array<Rational, 2> parts;
    for (std::size_t k = 0; k < 2; ++k) {
        if (!v[k].is_string()) throw ParseError(ptr(at, k), "expected a rational string such as \"-3/4\"" + inexact_hint());
        try {
            parts[k] = parse_rational(v[k].get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ParseError(ptr(at, k), std::string(e.what()) + inexact_hint());
        }
    }
    return {parts[0], parts[1]};
}

inline cdouble float_pair(const json& v, const std::string& at) {
    if (!v.is_array() || v.size() != 2) throw ParseError(at, "expected [re, im]");
    std::array<double, 2> parts{};
    for (std::size_t k = 0; k < 2; ++k) {
        if (v[k].is_number()) {
            parts[k] = v[k].get<double>();
        } else if (v[k].is_string()) {
            std::string s = v[k].get<std::string>();
            try {
                parts[k] = static_cast<double>(parse_rational(s));
            } catch (const std::invalid_argument&) {
                std::size_t used = 0;
                try {
                    parts[k] = std::stod(s, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used == 0 || used != s.size()) throw ParseError(ptr(at, k), "not a number: " + s);
            }
        } else {
            throw ParseError(ptr(at, k), "expected a number or numeric string");
        }
    }
    return {parts[0], parts[1]};
}

template <class S>
Polynomial<S> parse_poly(const json& v, const std::string& at, bool allow_inexact) {
    if (!v.is_array() || v.empty()) throw ParseError(at, "expected a nonempty list of coefficients, ascending degree");
    std::vector<S> cs;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if constexpr (std::is_same_v<S, GaussianRational>)
            cs.push_back(exact_pair(v[k], ptr(at, k)));
        else
            cs.push_back(allow_inexact ? float_pair(v[k], ptr(at, k)) : cdouble{});
    }
    return Polynomial<S>(cs);
}

inline bool all_rational_strings(const json& v) {
    if (v.is_string()) {
        try {
            parse_rational(v.get<std::string>());
            return true;
        } catch (const std::invalid_argument&) {
            return false;
        }
    }
    if (v.is_array() || v.is_object()) {
        for (const auto& x : v)
            if (!all_rational_strings(x)) return false;
        return true;
    }
    return !v.is_number();
}

inline ExpPolySource parse_exppoly(const json& v, const std::string& at, bool allow_inexact, bool allow_zero) {
    const json& terms = member(v, "terms", at);
    const std::string tat = ptr(at, "terms");
    if (!terms.is_array()) throw ParseError(tat, "expected a list of terms");
    if (terms.empty() && !allow_zero) throw ParseError(tat, "the coefficient needs at least one term");
    ExpPolySource out;
    out.exact = !allow_inexact || all_rational_strings(terms);
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const std::string at_k = ptr(tat, k);
        const json& poly = member(terms[k], "poly", at_k);
        const json& expo = member(terms[k], "exponent", at_k);
        if (out.exact) {
            auto p = parse_poly<GaussianRational>(poly, ptr(at_k, "poly"), false);
            auto e = parse_poly<GaussianRational>(expo, ptr(at_k, "exponent"), false);
            if (p.is_zero()) throw ParseError(ptr(at_k, "poly"), "polynomial factor is zero");
            if (!e.coeff(0).is_zero())
                throw ParseError(ptr(ptr(at_k, "exponent"), 0),
                                 "exp of a nonzero constant is not exact; fold it into poly" + inexact_hint());
            out.q.push_back({p, e});
        } else {
            auto p = parse_poly<cdouble>(poly, ptr(at_k, "poly"), true);
            auto e = parse_poly<cdouble>(expo, ptr(at_k, "exponent"), true);
            if (p.is_zero()) throw ParseError(ptr(at_k, "poly"), "polynomial factor is zero");
            out.f.push_back({p, e});
        }
    }
    return out;
}

inline double number(const json& v, const std::string& at) {
    if (!v.is_number()) throw ParseError(at, "expected a number");
    return v.get<double>();
}

inline long integer(const json& v, const std::string& at) {
    if (!v.is_number_integer()) throw ParseError(at, "expected an integer");
    return v.get<long>();
}

template <class S>
json poly_json(const Polynomial<S>& p) {
    json out = json::array();
    const auto& cs = p.coeffs();
    if (cs.empty()) out.push_back(json::array({"0", "0"}));
    for (const auto& c : cs) {
        if constexpr (std::is_same_v<S, GaussianRational>)
            out.push_back(json::array({rational_to_string(c.re()), rational_to_string(c.im())}));
        else
            out.push_back(json::array({c.real(), c.imag()}));
    }
    return out;
}

inline json exppoly_json(const ExpPolySource& s) {
    json terms = json::array();
    auto emit = [&](const auto& list) {
        for (const auto& t : list) terms.push_back({{"poly", poly_json(t.poly)}, {"exponent", poly_json(t.exponent)}});
    };
    if (s.exact)
        emit(s.q);
    else
        emit(s.f);
    return {{"terms", terms}};
}

}  // namespace detail

/**
 * Reads an analysis request. Rationals are strings "p/q"; polynomial coefficient lists run in
 * ascending degree as [re, im] pairs. Floating-point values are rejected unless allow_inexact.
 */
inline AnalysisRequest parse_request(const json& doc, bool allow_inexact = false) {
    using namespace detail;
    if (!doc.is_object()) throw ParseError("/", "expected an object");
    AnalysisRequest req;
    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) throw ParseError("/name", "expected a string");
        req.name = it->get<std::string>();
    }
    req.coefficient = parse_exppoly(member(doc, "coefficient", ""), "/coefficient", allow_inexact, false);

    if (auto it = doc.find("solution"); it != doc.end() && !it->is_null()) {
        SolutionSource s;
        s.pi = parse_exppoly(member(*it, "pi", "/solution"), "/solution/pi", allow_inexact, false);
        s.g = parse_exppoly(member(*it, "g", "/solution"), "/solution/g", allow_inexact, true);
        req.solution = s;
    }

    const json& an = member(doc, "analyses", "");
    if (!an.is_array() || an.empty()) throw ParseError("/analyses", "expected a nonempty list of analyses");
    std::vector<std::string> asked;
    for (std::size_t k = 0; k < an.size(); ++k) {
        if (!an[k].is_string()) throw ParseError(ptr("/analyses", k), "expected a string");
        auto name = an[k].get<std::string>();
        const auto& order = analysis_order();
        if (std::find(order.begin(), order.end(), name) == order.end())
            throw ParseError(ptr("/analyses", k), "unknown analysis '" + name + "'");
        asked.push_back(name);
    }
    for (const auto& name : analysis_order())
        if (std::find(asked.begin(), asked.end(), name) != asked.end()) req.analyses.push_back(name);

    auto& nc = req.numerics;
    bool radii_given = false;
    if (auto it = doc.find("numerics"); it != doc.end()) {
        const json& n = *it;
        if (!n.is_object()) throw ParseError("/numerics", "expected an object");
        for (auto m = n.begin(); m != n.end(); ++m) {
            const std::string at = "/numerics/" + m.key();
            if (m.key() == "rmax") {
                nc.rmax = number(*m, at);
                if (!(nc.rmax > 0)) throw ParseError(at, "must be positive");
            } else if (m.key() == "radii") {
                if (!m->is_array() || m->size() < 2) throw ParseError(at, "expected at least two radii");
                nc.radii.clear();
                for (std::size_t k = 0; k < m->size(); ++k) {
                    double r = number((*m)[k], ptr(at, k));
                    if (!(r > 0)) throw ParseError(ptr(at, k), "must be positive");
                    nc.radii.push_back(r);
                }
                std::sort(nc.radii.begin(), nc.radii.end());
                if (std::adjacent_find(nc.radii.begin(), nc.radii.end()) != nc.radii.end())
                    throw ParseError(at, "radii must be distinct");
                radii_given = true;
            } else if (m.key() == "theta_samples") {
                nc.theta_samples = static_cast<int>(integer(*m, at));
                if (nc.theta_samples < 16 || nc.theta_samples > (1 << 22)) throw ParseError(at, "out of range [16, 2^22]");
            } else if (m.key() == "ode_tol") {
                nc.ode_tol = number(*m, at);
                if (!(nc.ode_tol > 0 && nc.ode_tol <= 1e-2)) throw ParseError(at, "out of range (0, 1e-2]");
            } else if (m.key() == "quadrature_points") {
                nc.quadrature_points = static_cast<int>(integer(*m, at));
                if (nc.quadrature_points < 64 || nc.quadrature_points > (1 << 22))
                    throw ParseError(at, "out of range [64, 2^22]");
            } else if (m.key() == "zero_budget") {
                nc.zero_budget = integer(*m, at);
                if (nc.zero_budget < 1000) throw ParseError(at, "must be at least 1000");
            } else {
                throw ParseError(at, "unknown member");
            }
        }
    }
    if (!radii_given) nc.radii = {nc.rmax * 2 / 3, nc.rmax};
    if (nc.radii.back() > nc.rmax) throw ParseError("/numerics/radii", "radii must not exceed rmax");

    if (auto it = doc.find("audit"); it != doc.end()) {
        if (!it->is_object()) throw ParseError("/audit", "expected an object");
        if (auto b = it->find("split_b"); b != it->end())
            req.audit.split_b = parse_exppoly(*b, "/audit/split_b", allow_inexact, true);
        if (auto t = it->find("targets"); t != it->end()) {
            if (!t->is_array() || t->size() != 2) throw ParseError("/audit/targets", "expected two [re, im] targets");
            for (std::size_t k = 0; k < 2; ++k) req.audit.targets[k] = exact_pair((*t)[k], ptr("/audit/targets", k));
            if (req.audit.targets[0] == req.audit.targets[1]) throw ParseError("/audit/targets", "targets must differ");
        }
    }
    return req;
}

inline AnalysisRequest parse_request(const std::string& text, bool allow_inexact = false) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("/", std::string("malformed JSON: ") + e.what());
    }
    return parse_request(doc, allow_inexact);
}

inline json serialize(const AnalysisRequest& req) {
    using namespace detail;
    json out;
    if (!req.name.empty()) out["name"] = req.name;
    out["coefficient"] = exppoly_json(req.coefficient);
    if (req.solution) out["solution"] = {{"pi", exppoly_json(req.solution->pi)}, {"g", exppoly_json(req.solution->g)}};
    out["analyses"] = req.analyses;
    const auto& n = req.numerics;
    out["numerics"] = {{"rmax", n.rmax},
                       {"radii", n.radii},
                       {"theta_samples", n.theta_samples},
                       {"ode_tol", n.ode_tol},
                       {"quadrature_points", n.quadrature_points},
                       {"zero_budget", n.zero_budget}};
    json audit = json::object();
    if (req.audit.split_b) audit["split_b"] = exppoly_json(*req.audit.split_b);
    audit["targets"] = json::array();
    for (const auto& t : req.audit.targets)
        audit["targets"].push_back(json::array({rational_to_string(t.re()), rational_to_string(t.im())}));
    out["audit"] = audit;
    return out;
}

/// Built-in worked examples as requests.
inline std::vector<AnalysisRequest> fixture_requests() {
    std::vector<AnalysisRequest> out;
    for (const auto& fx : fixtures()) {
        AnalysisRequest req;
        req.name = fx.name;
        req.coefficient = ExpPolySource::from(fx.a);
        if (fx.solution) req.solution = SolutionSource{ExpPolySource::from(fx.solution->pi), ExpPolySource::from(fx.solution->g)};
        for (const auto& name : analysis_order())
            if (std::find(fx.analyses.begin(), fx.analyses.end(), name) != fx.analyses.end()) req.analyses.push_back(name);
        if (fx.split_b) req.audit.split_b = ExpPolySource::from(*fx.split_b);
        req.audit.targets = {fx.target1, fx.target2};
        out.push_back(std::move(req));
    }
    return out;
}

}  // namespace osc::cli
