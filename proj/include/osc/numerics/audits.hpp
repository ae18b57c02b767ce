#pragma once

#include "osc/geometry.hpp"
#include "osc/numerics/nevanlinna.hpp"
#include "osc/numerics/solution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace osc::numerics {

/// One inequality LHS <= RHS + S(r) at one radius.
struct AuditRow {
    std::string inequality;
    double r = 0;
    double lhs = 0;
    double rhs = 0;
    double error_term = 0;  // fitted bounded part of RHS - LHS
    double slack = 0;       // RHS - LHS - error_term, the part growing like r^n
    bool equality = false;  // |slack| <= band * RHS
    bool strict = false;    // slack > band * RHS
    bool heuristic = true;  // error terms are fitted, not computed
    std::string error;
};

struct AuditTable {
    std::vector<double> radii;
    std::vector<AuditRow> rows;
    std::vector<std::string> notes;

    const AuditRow* find(const std::string& inequality, double r) const {
        for (const auto& row : rows)
            if (row.inequality == inequality && std::abs(row.r - r) < 1e-9) return &row;
        return nullptr;
    }
    /// True when every listed radius has the row and it is flagged equal.
    bool equal_at_all(const std::string& inequality) const {
        for (double r : radii) {
            auto* row = find(inequality, r);
            if (!row || !row->error.empty() || !row->equality) return false;
        }
        return true;
    }
    bool strict_at_all(const std::string& inequality) const {
        for (double r : radii) {
            auto* row = find(inequality, r);
            if (!row || !row->error.empty() || !row->strict) return false;
        }
        return true;
    }
};

template <Scalar S>
struct AuditOptions {
    ExpPoly<S> target1 = ExpPoly<S>::zero();
    ExpPoly<S> target2 = ExpPoly<S>::constant(scalar_traits<S>::from_int(1));
    double band = 0.05;
    NevanlinnaOptions nevanlinna{};
};

namespace detail {

/// Distinct zero locations pooled from several censuses.
class DistinctZeros {
public:
    void add(const ZeroCensus& c) {
        for (const auto& z : c.zeros) {
            bool seen = false;
            for (auto w : points_) seen = seen || std::abs(w - z.z) <= std::max(1e-5, 2 * z.radius);
            if (!seen) points_.push_back(z.z);
        }
        complete_ = complete_ && c.complete;
    }
    /// Reduced counting function: each location counted once.
    double counting(double r) const {
        double n = 0;
        for (auto z : points_) {
            double m = std::abs(z);
            if (m <= r) n += m < 1e-9 ? std::log(r) : std::log(r / m);
        }
        return n;
    }
    bool complete() const { return complete_; }

private:
    std::vector<cdouble> points_;
    bool complete_ = true;
};

/// Least squares D(r) ~ a r^n + b over the radii.
inline std::pair<double, double> fit_growth(const std::vector<double>& radii, const std::vector<double>& d, int n) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, k = static_cast<double>(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        double x = std::pow(radii[i], n);
        sx += x, sy += d[i], sxx += x * x, sxy += x * d[i];
    }
    double den = k * sxx - sx * sx;
    double a = (k * sxy - sx * sy) / den;
    return {a, (sy - a * sx) / k};
}

}  // namespace detail

/**
 * Evaluates both sides of the zero-distribution inequalities for f = pi e^g at each radius.
 * f'/f has numerator pi' + pi g' over pi, so zeros of f' come from that numerator.
 * RHS - LHS is fitted as a r^n + b; b stands in for the error terms and the rest is the slack.
 */
template <Scalar S>
AuditTable audit_inequalities(const SolutionForm<S>& sol, const ExpPoly<S>& a,
                              const std::optional<ExpPoly<S>>& split_b, std::vector<double> radii,
                              const AuditOptions<S>& opt = {}) {
    if (!verify_solution(sol, a).exact) throw std::domain_error("audit_inequalities: solution does not verify");
    if (radii.size() < 2) throw std::invalid_argument("audit_inequalities: need at least two radii");
    if (equals_zero(opt.target1 - opt.target2)) throw std::invalid_argument("audit_inequalities: targets coincide");
    std::sort(radii.begin(), radii.end());
    if (!(radii.front() > 0)) throw std::invalid_argument("audit_inequalities: radii must be positive");

    AuditTable table;
    table.radii = radii;
    const double rmax = radii.back() + 0.01;
    const int n = std::max(1, a.order());
    const auto& census_opt = opt.nevanlinna.census;
    auto census = [&](const ExpPoly<S>& h) {
        if (equals_zero(h)) throw std::domain_error("audit_inequalities: function vanishes identically");
        return count_zeros_region(FlatExpPoly(h), Region::disc(0.0, rmax), census_opt);
    };

    ExpPoly<S> fp_num = derivative_numerator(sol);
    Target log_derivative{FlatExpPoly(fp_num), FlatExpPoly(sol.pi)};
    Target coefficient{FlatExpPoly(a), std::nullopt};

    struct Side {
        std::string name;
        std::function<std::pair<double, double>(double)> eval;  // (lhs, rhs)
    };
    std::vector<Side> sides;

    try {
        auto zf = census(sol.pi);
        auto zfp = census(fp_num);
        auto za = census(a);
        auto zt1 = census(a - opt.target1);
        auto zt2 = census(a - opt.target2);
        detail::DistinctZeros f, fa, ffa, t1, t2;
        f.add(zf);
        fa.add(zf), fa.add(za);
        ffa.add(zf), ffa.add(zfp), ffa.add(za);
        t1.add(zt1);
        t2.add(zt2);
        for (const auto* d : {&f, &fa, &ffa, &t1, &t2})
            if (!d->complete()) table.notes.push_back("a zero census was incomplete");

        auto m_ld = [&](double r) { return nevanlinna_sample(log_derivative, r, opt.nevanlinna).m; };
        auto m_a = [&](double r) { return nevanlinna_sample(coefficient, r, opt.nevanlinna).m; };

        sides.push_back({"second_derivative_zeros", [=](double r) {
                             return std::pair{m_ld(r), 2 * f.counting(r) + 2 * fa.counting(r)};
                         }});
        sides.push_back({"product_zeros", [=](double r) { return std::pair{m_ld(r), ffa.counting(r)}; }});
        if (split_b) {
            ExpPoly<S> c = a - *split_b;
            Target c_target{FlatExpPoly(c), std::nullopt};
            detail::DistinctZeros ffb;
            ffb.add(zf), ffb.add(zfp), ffb.add(census(*split_b));
            bool c_zero = equals_zero(c);
            auto nevo = opt.nevanlinna;
            sides.push_back({"split_zeros_plus_proximity", [=](double r) {
                                 double mc = c_zero ? 0.0 : nevanlinna_sample(c_target, r, nevo).m;
                                 return std::pair{m_ld(r), ffb.counting(r) + mc};
                             }});
            sides.push_back({"split_zeros", [=](double r) { return std::pair{m_ld(r), ffb.counting(r)}; }});
        }
        sides.push_back({"two_targets", [=](double r) {
                             return std::pair{m_ld(r), 0.5 * t1.counting(r) + 0.5 * t2.counting(r)};
                         }});
        sides.push_back({"half_proximity", [=](double r) { return std::pair{m_ld(r), 0.5 * m_a(r)}; }});
        sides.push_back({"coefficient_proximity", [=](double r) { return std::pair{m_a(r), 2 * m_ld(r)}; }});
    } catch (const std::exception& e) {
        table.notes.push_back(std::string("census failed: ") + e.what());
    }

    for (const auto& side : sides) {
        std::vector<AuditRow> rows;
        std::vector<double> d;
        bool ok = true;
        for (double r : radii) {
            AuditRow row;
            row.inequality = side.name;
            row.r = r;
            try {
                auto [l, rh] = side.eval(r);
                row.lhs = l, row.rhs = rh;
                d.push_back(rh - l);
            } catch (const std::exception& e) {
                row.error = e.what();
                ok = false;
            }
            rows.push_back(row);
        }
        if (ok) {
            auto [slope, offset] = detail::fit_growth(radii, d, n);
            for (auto& row : rows) {
                row.error_term = offset;
                row.slack = slope * std::pow(row.r, n);
                double band = opt.band * std::abs(row.rhs);
                row.equality = std::abs(row.slack) <= band;
                row.strict = row.slack > band;
            }
        }
        for (auto& row : rows) table.rows.push_back(std::move(row));
    }
    return table;
}

/// Per-radius characteristic comparison for the coefficient and g'.
struct GrowthComparison {
    double r = 0;
    double t_a = 0;
    double t_gp = 0;
};

struct GprimeComparison {
    int order_a = 0;
    int order_gp = 0;
    bool order_mismatch = false;
    int positive_samples = 0;
    double max_indicator_deviation = 0;  // on {h_A > 0}; NaN when orders differ
    double sampled_ratio_deviation = std::numeric_limits<double>::quiet_NaN();  // fallback only
    std::vector<GrowthComparison> characteristic;
    double off_support_ratio = 0;  // max of log+|g'| / (r^{n-1} + log r) over rays with h_A <= 0, largest radius
    bool part1_ok = false;
    bool part2_ok = false;
    bool part3_ok = false;
    std::vector<std::string> notes;
};

/// Median of |log+|A| / (2 log+|g'|) - 1| at radius r over angles where h_A > 0.
inline double sampled_indicator_ratio(const FlatExpPoly& a, const FlatExpPoly& gp, const std::vector<double>& thetas,
                                      double r) {
    std::vector<double> dev;
    for (double t : thetas) {
        cdouble z = std::polar(r, t);
        double la = std::max(0.0, a.log_eval(z).logmag), lg = std::max(0.0, gp.log_eval(z).logmag);
        if (lg > 0) dev.push_back(std::abs(la / (2 * lg) - 1));
    }
    if (dev.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::nth_element(dev.begin(), dev.begin() + dev.size() / 2, dev.end());
    return dev[dev.size() / 2];
}

/**
 * Compares the coefficient with g' for f = pi e^g: indicators on {h_A > 0}, characteristics at
 * three radii, and the size of g' on rays where h_A <= 0.
 */
template <Scalar S>
GprimeComparison audit_gprime_comparison(const SolutionForm<S>& sol, const ExpPoly<S>& a, int theta_grid,
                          std::vector<double> radii = {10.0, 20.0, 30.0}, const NevanlinnaOptions& nev = {}) {
    if (!verify_solution(sol, a).exact) throw std::domain_error("audit_gprime_comparison: solution does not verify");
    if (theta_grid < 8) throw std::invalid_argument("audit_gprime_comparison: theta grid too small");
    if (a.is_zero()) throw std::domain_error("audit_gprime_comparison: zero coefficient");
    ExpPoly<S> gp = differentiate(sol.g);
    GprimeComparison rep;
    rep.order_a = a.order();
    rep.order_gp = gp.order();
    const int n = std::max(1, a.order());
    FlatExpPoly fa(a), fg(gp);
    Indicator ha = indicator_at_order(a, n);

    std::vector<double> positive, nonpositive;
    for (int j = 0; j < theta_grid; ++j) {
        double t = -std::numbers::pi + 2 * std::numbers::pi * (j + 0.5) / theta_grid;
        (ha(t) > 1e-9 ? positive : nonpositive).push_back(t);
    }
    rep.positive_samples = static_cast<int>(positive.size());
    std::sort(radii.begin(), radii.end());

    if (gp.is_zero()) {
        rep.notes.push_back("g' vanishes identically");
        rep.part2_ok = positive.empty();
    } else if (gp.order() != a.order()) {
        rep.order_mismatch = true;
        rep.max_indicator_deviation = std::numeric_limits<double>::quiet_NaN();
        rep.sampled_ratio_deviation = sampled_indicator_ratio(fa, fg, positive, radii.back());
        rep.notes.push_back("orders differ (" + std::to_string(a.order()) + " vs " + std::to_string(gp.order()) +
                            "); compared r-sampled log ratios instead of indicators");
        rep.part2_ok = !std::isnan(rep.sampled_ratio_deviation) && rep.sampled_ratio_deviation < 0.1;
    } else {
        Indicator hg = indicator_at_order(gp, n);
        for (double t : positive) rep.max_indicator_deviation = std::max(rep.max_indicator_deviation, std::abs(ha(t) - 2 * hg(t)));
        rep.part2_ok = rep.max_indicator_deviation < 1e-9;
    }

    rep.part1_ok = !gp.is_zero();
    if (!gp.is_zero()) {
        Target ta{fa, std::nullopt}, tg{fg, std::nullopt};
        for (double r : radii) {
            GrowthComparison g{r, nevanlinna_sample(ta, r, nev).T, nevanlinna_sample(tg, r, nev).T};
            double allowance = 2 * std::log(r) + 1;
            rep.part1_ok = rep.part1_ok && g.t_a <= 2 * g.t_gp + allowance && g.t_gp <= g.t_a + allowance;
            rep.characteristic.push_back(g);
        }
        double r = radii.back();
        double scale = std::pow(r, n - 1) + std::log(r);
        for (double t : nonpositive)
            rep.off_support_ratio =
                std::max(rep.off_support_ratio, std::max(0.0, fg.log_eval(std::polar(r, t)).logmag) / scale);
        rep.part3_ok = rep.off_support_ratio <= 2.0;
    }
    return rep;
}

struct RefereeRay {
    double theta = 0;
    double support = 0;  // Re(zeta e^{i n theta})
    double log_b = 0;    // log+|B(rmax e^{i theta})|
    std::optional<double> s_hat;
    bool ok = true;
};

struct RefereeReport {
    std::vector<RefereeRay> rays;
    double max_s_hat = 0;
    bool pass = false;
};

/**
 * Estimates s(theta) in log+|B(r e^{i theta})| <= s(theta) max(Re(zeta e^{i n theta}), 0) r^n + r^alpha
 * at r = rmax. Passes when every estimate stays below 1/2 - 0.01 and rays with nonpositive support
 * have log+|B| <= 2 r^alpha.
 */
template <Scalar S>
RefereeReport audit_referee_condition(const ExpPoly<S>& b, cdouble zeta, int n, double alpha, int rays, double rmax) {
    if (!(alpha > 0 && alpha < n)) throw std::invalid_argument("audit_referee_condition: need 0 < alpha < n");
    if (rays < 1 || !(rmax > 0)) throw std::invalid_argument("audit_referee_condition: bad sampling");
    FlatExpPoly fb(b);
    RefereeReport rep;
    rep.pass = true;
    double ra = std::pow(rmax, alpha), rn = std::pow(rmax, n);
    for (int j = 0; j < rays; ++j) {
        RefereeRay ray;
        ray.theta = -std::numbers::pi + 2 * std::numbers::pi * (j + 0.5) / rays;
        ray.support = (zeta * std::polar(1.0, n * ray.theta)).real();
        ray.log_b = b.is_zero() ? 0.0 : std::max(0.0, fb.log_eval(std::polar(rmax, ray.theta)).logmag);
        if (ray.support > 1e-9) {
            ray.s_hat = (ray.log_b - ra) / (ray.support * rn);
            rep.max_s_hat = std::max(rep.max_s_hat, *ray.s_hat);
            ray.ok = *ray.s_hat < 0.49;
        } else {
            ray.ok = ray.log_b <= 2 * ra;
        }
        rep.pass = rep.pass && ray.ok;
        rep.rays.push_back(ray);
    }
    return rep;
}

}  // namespace osc::numerics
