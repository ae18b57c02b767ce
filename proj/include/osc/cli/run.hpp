#pragma once

#include "osc/classifier.hpp"
#include "osc/cli/request.hpp"
#include "osc/geometry.hpp"
#include "osc/numerics/audits.hpp"
#include "osc/numerics/nevanlinna.hpp"
#include "osc/numerics/schwarzian.hpp"
#include "osc/numerics/sectors.hpp"
#include "osc/numerics/solution.hpp"
#include "osc/numerics/zeros.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace osc::cli {

/// A failure with a machine-readable code, stored in the analysis slot.
class AnalysisError : public std::runtime_error {
public:
    AnalysisError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

/// Broken report invariant; maps to exit code 4.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    bool operator==(const Table&) const = default;
};

struct AnalysisSlot {
    std::string name;
    bool ok = false;
    std::string error_code;
    std::string error_message;
    json result = json::object();
    std::vector<Verdict> verdicts;
    std::map<std::string, Table> tables;
    double seconds = 0;
};

struct Report {
    AnalysisRequest request;
    std::vector<AnalysisSlot> analyses;  // one per requested analysis, in canonical order
    std::vector<std::string> artifacts;

    bool all_ok() const {
        return std::all_of(analyses.begin(), analyses.end(), [](const auto& s) { return s.ok; });
    }
};

struct RunOptions {
    int jobs = 1;
    std::string plot_dir;  // empty: no CSV output
    std::function<void(const std::string&)> progress;
};

/// Tunables of the analyses that the request does not expose.
struct AnalysisConstants {
    static constexpr double sector_eps = 0.2;          // half-width of the dominant sector, squeeze of negative ones
    static constexpr double sector_rmax = 12;          // cap for negative-sector censuses
    static constexpr double dominant_log_target = 2 * 5.298317366548036;  // 2 log 200: sets the dominant census radius
    static constexpr double ray_oscillations = 2000;   // cap on expected sign changes along a real ray
    static constexpr double zeros_rmax = 30;           // cap for the disc census of A
    static constexpr double schwarzian_s = 0.95;
    static constexpr double schwarzian_x0 = 0.9;
};

namespace detail {

using numerics::SolutionForm;

template <Scalar S>
ExpPoly<S> as(const ExpPolySource& src) {
    if constexpr (std::is_same_v<S, GaussianRational>)
        return src.to_exact();
    else
        return src.to_complex();
}

template <Scalar S>
S from_exact(const GaussianRational& v) {
    if constexpr (std::is_same_v<S, GaussianRational>)
        return v;
    else
        return scalar_traits<GaussianRational>::to_complex(v);
}

inline json complex_json(cdouble z) { return json::array({z.real(), z.imag()}); }

inline json verdict_json(const Verdict& v) {
    json trace = json::array();
    for (const auto& t : v.trace) trace.push_back({{"hypothesis", t.hypothesis}, {"value", t.value}, {"pass", t.pass}});
    return {{"conclusion", to_string(v.conclusion)},
            {"check", v.check},
            {"theorem", v.theorem},
            {"trace", trace},
            {"n", v.n},
            {"advisory", v.advisory}};
}

inline json census_json(const numerics::ZeroCensus& c) {
    json zs = json::array();
    for (const auto& z : c.zeros) zs.push_back({{"z", complex_json(z.z)}, {"radius", z.radius}, {"multiplicity", z.multiplicity}});
    return {{"region", c.region}, {"count", c.count}, {"method", c.method}, {"complete", c.complete},
            {"winding", c.winding}, {"notes", c.notes}, {"zeros", zs}};
}

inline json interval_json(const numerics::AngularInterval& s) { return json::array({s.alpha, s.beta}); }

struct Context {
    const AnalysisRequest& req;
    numerics::NevanlinnaOptions nevanlinna() const {
        numerics::NevanlinnaOptions o;
        o.quadrature_points = req.numerics.quadrature_points;
        o.census.budget = req.numerics.zero_budget;
        return o;
    }
    numerics::OdeOptions ode() const {
        numerics::OdeOptions o;
        o.tol = req.numerics.ode_tol;
        return o;
    }
};

template <Scalar S>
SolutionForm<S> require_solution(const Context& ctx, const ExpPoly<S>& a) {
    if (!ctx.req.solution) throw AnalysisError("missing_solution", "this analysis needs a solution pi e^g");
    SolutionForm<S> sol{as<S>(ctx.req.solution->pi), as<S>(ctx.req.solution->g)};
    if (!numerics::verify_solution(sol, a).exact)
        throw AnalysisError("solution_mismatch", "pi e^g does not solve f'' + A f = 0");
    return sol;
}

template <Scalar S>
void run_classify(const Context&, const ExpPoly<S>& a, AnalysisSlot& slot) {
    if constexpr (!std::is_same_v<S, GaussianRational>) {
        (void)a;
        throw AnalysisError("inexact_unsupported", "classification needs exact coefficients");
    } else {
        slot.verdicts = classify(a);
        json conclusions = json::array();
        for (const auto& v : slot.verdicts) conclusions.push_back({{"check", v.check}, {"conclusion", to_string(v.conclusion)}});
        slot.result = {{"verdicts", conclusions}};
    }
}

template <Scalar S>
void run_characteristic(const Context& ctx, const ExpPoly<S>& a, AnalysisSlot& slot) {
    auto pred = characteristic_prediction(a);
    const int n = std::max(1, pred.order);
    numerics::Target target{FlatExpPoly(a), std::nullopt};
    FlatExpPoly fa(a);
    Table t{{"r", "m", "N", "T", "T_predicted", "T_relative_deviation", "N_zeros", "N_zeros_predicted"}, {}};
    json flags = json::array();
    for (double r : ctx.req.numerics.radii) {
        auto s = numerics::nevanlinna_sample(target, r, ctx.nevanlinna());
        double tp = pred.t_coeff * std::pow(r, n);
        double nz = numerics::jensen_counting(fa, r, ctx.req.numerics.quadrature_points);
        double np = pred.n_coeff ? *pred.n_coeff * std::pow(r, n) : std::nan("");
        t.rows.push_back({r, s.m, s.N, s.T, tp, tp > 0 ? (s.T - tp) / tp : std::nan(""), nz, np});
        if (s.flagged) flags.push_back(r);
    }
    slot.tables["characteristic"] = t;

    Indicator h = indicator_of(a);
    Table ind{{"theta", "h"}, {}};
    const int m = ctx.req.numerics.theta_samples;
    for (int j = 0; j < m; ++j) {
        double th = -std::numbers::pi + 2 * std::numbers::pi * j / m;
        ind.rows.push_back({th, h(th)});
    }
    slot.tables["indicator"] = ind;
    slot.result = {{"order", pred.order},
                   {"t_coeff", pred.t_coeff},
                   {"n_coeff", pred.n_coeff ? json(*pred.n_coeff) : json(nullptr)},
                   {"m_inverse", to_string(pred.m_inverse)},
                   {"hull_w", pred.hull_w},
                   {"hull_w0", pred.hull_w0},
                   {"unsettled_radii", flags}};
}

template <Scalar S>
void run_sectors(const Context& ctx, const ExpPoly<S>& a, AnalysisSlot& slot) {
    using C = AnalysisConstants;
    auto rep = numerics::sector_report(a, C::sector_eps);
    FlatExpPoly fa(a);
    numerics::SectorCensusOptions opt;
    opt.ode = ctx.ode();
    const double rmax_neg = std::min(ctx.req.numerics.rmax, C::sector_rmax);

    Table rings{{"sector", "r", "basis", "cumulative"}, {}};
    json censuses = json::array();
    auto census = [&](numerics::AngularInterval sec, double rmax, const std::string& kind) {
        auto c = numerics::sector_zero_census(fa, sec, rmax, {{1.0, 0.0}, {0.0, 1.0}, {1.0, -1.0}}, opt);
        json counts = json::array(), complete = json::array();
        for (const auto& z : c.censuses) counts.push_back(z.count), complete.push_back(z.complete);
        double index = static_cast<double>(censuses.size());
        for (std::size_t b = 0; b < c.cumulative.size(); ++b)
            for (std::size_t k = 0; k < c.cumulative[b].size(); ++k)
                rings.rows.push_back({index, c.ring_radii[k + 1], static_cast<double>(b), static_cast<double>(c.cumulative[b][k])});
        censuses.push_back({{"kind", kind},
                            {"sector", interval_json(sec)},
                            {"rmax", rmax},
                            {"counts", counts},
                            {"complete", complete},
                            {"arc_mismatch", c.arc_mismatch},
                            {"wronskian_deviation", c.wronskian_deviation},
                            {"note", "counts are relative to the initial values f(0), f'(0) = (1, 0), (0, 1), (1, -1)"}});
    };
    for (const auto& s : rep.negative_sectors) {
        if (s.beta - s.alpha <= 2 * C::sector_eps) continue;
        census({s.alpha + C::sector_eps, s.beta - C::sector_eps}, rmax_neg, "negative");
    }
    if (rep.dominant_value > 0) {
        double r_dom = std::pow(C::dominant_log_target / rep.dominant_value, 1.0 / rep.order);
        r_dom = std::min(r_dom, ctx.req.numerics.rmax);
        if (r_dom > 2 * opt.r_min) census(rep.dominant_sector, r_dom, "dominant");
    }
    json neg = json::array();
    for (const auto& s : rep.negative_sectors) neg.push_back(interval_json(s));
    slot.tables["sector_rings"] = rings;
    slot.result = {{"order", rep.order},
                   {"negative_sectors", neg},
                   {"wraparound", rep.wraparound},
                   {"widths_ok", rep.widths_ok},
                   {"dominant", rep.dominant},
                   {"dominant_value", rep.dominant_value},
                   {"dominant_sector", interval_json(rep.dominant_sector)},
                   {"cone", interval_json(rep.cone)},
                   {"cone_bound_holds", rep.cone_bound_holds},
                   {"censuses", censuses}};
}

/// Largest radius on the ray (grid step 1/16) where the sign-change count stays near the cap.
inline double real_ray_extent(const FlatExpPoly& a, double theta, double rmax, double cap) {
    const double h = 1.0 / 16;
    double w = 0, r = 0;
    while (r + h <= rmax + 1e-12) {
        double mid = r + h / 2;
        w += std::sqrt(std::abs(a.eval(std::polar(mid, theta)))) * h / std::numbers::pi;
        if (w > cap) break;
        r += h;
    }
    return r;
}

inline bool real_on_ray(const FlatExpPoly& a, double theta, double r1) {
    for (int k = 0; k <= 64; ++k) {
        cdouble v = a.eval(std::polar(r1 * k / 64.0, theta));
        if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v))) return false;
    }
    return true;
}

template <Scalar S>
void run_zeros(const Context& ctx, const ExpPoly<S>& a, AnalysisSlot& slot) {
    using C = AnalysisConstants;
    FlatExpPoly fa(a);
    numerics::CensusOptions copt;
    copt.budget = ctx.req.numerics.zero_budget;
    const double rz = std::min(ctx.req.numerics.rmax, C::zeros_rmax);

    Table zt{{"source", "re", "im", "multiplicity", "radius"}, {}};
    auto add = [&](double source, const numerics::ZeroCensus& c) {
        for (const auto& z : c.zeros) zt.rows.push_back({source, z.z.real(), z.z.imag(), double(z.multiplicity), z.radius});
    };
    json out;
    if (a.is_polynomial() && a.polynomial().degree() == 0) {
        out["coefficient"] = {{"count", 0}, {"note", "nonzero constant"}};
    } else {
        auto ca = numerics::count_zeros_region(fa, numerics::Region::disc(0.0, rz), copt);
        out["coefficient"] = census_json(ca);
        add(0, ca);
    }
    if (ctx.req.solution) {
        auto sol = require_solution(ctx, a);
        if (sol.pi.is_polynomial() && sol.pi.polynomial().degree() == 0) {
            out["solution"] = {{"count", 0}, {"note", "pi is a nonzero constant: the solution is zero-free"}};
        } else {
            auto cf = numerics::count_zeros_region(FlatExpPoly(sol.pi), numerics::Region::disc(0.0, rz), copt);
            out["solution"] = census_json(cf);
            add(1, cf);
        }
    }
    json rays = json::array();
    for (double theta : {0.0, std::numbers::pi}) {
        double r1 = real_ray_extent(fa, theta, ctx.req.numerics.rmax, C::ray_oscillations);
        if (r1 <= 0 || !real_on_ray(fa, theta, r1)) continue;
        auto c = numerics::count_zeros_real_ray(fa, theta, r1, {1.0, 0.0}, ctx.ode());
        rays.push_back({{"theta", theta}, {"r1", r1}, {"initial", json::array({1.0, 0.0})}, {"count", c.count},
                        {"complete", c.complete}, {"notes", c.notes}});
    }
    out["real_rays"] = rays;
    slot.tables["zeros"] = zt;
    slot.result = out;
}

template <Scalar S>
void run_audits(const Context& ctx, const ExpPoly<S>& a, AnalysisSlot& slot) {
    auto sol = require_solution(ctx, a);
    numerics::AuditOptions<S> opt;
    opt.target1 = ExpPoly<S>::constant(from_exact<S>(ctx.req.audit.targets[0]));
    opt.target2 = ExpPoly<S>::constant(from_exact<S>(ctx.req.audit.targets[1]));
    opt.nevanlinna = ctx.nevanlinna();
    std::optional<ExpPoly<S>> split;
    if (ctx.req.audit.split_b) split = as<S>(*ctx.req.audit.split_b);
    auto table = numerics::audit_inequalities(sol, a, split, ctx.req.numerics.radii, opt);

    std::vector<std::string> names;
    Table t{{"inequality", "r", "lhs", "rhs", "error_term", "slack", "equality", "strict"}, {}};
    json rows = json::array();
    for (const auto& row : table.rows) {
        auto it = std::find(names.begin(), names.end(), row.inequality);
        if (it == names.end()) names.push_back(row.inequality), it = names.end() - 1;
        t.rows.push_back({double(it - names.begin()), row.r, row.lhs, row.rhs, row.error_term, row.slack,
                          double(row.equality), double(row.strict)});
        rows.push_back({{"inequality", row.inequality}, {"r", row.r}, {"lhs", row.lhs}, {"rhs", row.rhs},
                        {"error_term", row.error_term}, {"slack", row.slack}, {"equality", row.equality},
                        {"strict", row.strict}, {"heuristic", row.heuristic}, {"error", row.error}});
    }
    slot.tables["audit"] = t;

    auto cmp = numerics::audit_gprime_comparison(sol, a, 720, {10.0, 20.0, 30.0}, ctx.nevanlinna());
    json growth = json::array();
    for (const auto& g : cmp.characteristic) growth.push_back({{"r", g.r}, {"t_a", g.t_a}, {"t_gp", g.t_gp}});
    slot.result = {{"inequality_index", names},
                   {"rows", rows},
                   {"notes", table.notes},
                   {"coefficient_vs_gprime",
                    {{"order_a", cmp.order_a},
                     {"order_gp", cmp.order_gp},
                     {"order_mismatch", cmp.order_mismatch},
                     {"max_indicator_deviation", cmp.max_indicator_deviation},
                     {"sampled_ratio_deviation", cmp.sampled_ratio_deviation},
                     {"characteristic", growth},
                     {"off_support_ratio", cmp.off_support_ratio},
                     {"indicators_ok", cmp.part2_ok},
                     {"characteristics_ok", cmp.part1_ok},
                     {"off_support_ok", cmp.part3_ok},
                     {"notes", cmp.notes}}}};
}

template <Scalar S>
void run_schwarzian(const Context& ctx, const ExpPoly<S>& a, AnalysisSlot& slot) {
    using C = AnalysisConstants;
    auto rep = numerics::sector_report(a, C::sector_eps);
    std::vector<double> gammas;
    for (const auto& s : rep.negative_sectors) gammas.push_back(std::min(1.0, (s.beta - s.alpha) / std::numbers::pi));
    json note = nullptr;
    if (gammas.empty()) {
        gammas.push_back(1.0 / rep.order);
        note = "no negative sectors; used the opening pi / n";
    }
    json scans = json::array();
    for (double g : gammas) {
        double b = numerics::phi_bound_scan(C::schwarzian_s, g, C::schwarzian_x0, ctx.req.numerics.theta_samples);
        scans.push_back({{"gamma", g}, {"s", C::schwarzian_s}, {"x0", C::schwarzian_x0}, {"bound", b}, {"below_two", b < 2}});
    }
    slot.result = {{"scans", scans}, {"note", note}};
}

template <Scalar S>
void run_one(const Context& ctx, const std::string& name, const ExpPoly<S>& a, AnalysisSlot& slot) {
    if (name == "classify") return run_classify(ctx, a, slot);
    if (name == "characteristic") return run_characteristic(ctx, a, slot);
    if (name == "sectors") return run_sectors(ctx, a, slot);
    if (name == "zeros") return run_zeros(ctx, a, slot);
    if (name == "audits") return run_audits(ctx, a, slot);
    if (name == "schwarzian") return run_schwarzian(ctx, a, slot);
    throw InternalError("unknown analysis " + name);
}

inline AnalysisSlot execute(const AnalysisRequest& req, const std::string& name) {
    AnalysisSlot slot;
    slot.name = name;
    Context ctx{req};
    auto t0 = std::chrono::steady_clock::now();
    try {
        if (req.coefficient.exact)
            run_one(ctx, name, req.coefficient.to_exact(), slot);
        else
            run_one(ctx, name, req.coefficient.to_complex(), slot);
        slot.ok = true;
    } catch (const InternalError&) {
        throw;
    } catch (const AnalysisError& e) {
        slot.error_code = e.code(), slot.error_message = e.what();
    } catch (const numerics::NearZeroOnBoundary& e) {
        slot.error_code = "near_zero_on_boundary", slot.error_message = e.what();
    } catch (const numerics::BudgetExhausted& e) {
        slot.error_code = "budget_exhausted", slot.error_message = e.what();
    } catch (const numerics::NumericError& e) {
        slot.error_code = "numeric_error", slot.error_message = e.what();
    } catch (const std::domain_error& e) {
        slot.error_code = "domain_error", slot.error_message = e.what();
    } catch (const std::invalid_argument& e) {
        slot.error_code = "invalid_argument", slot.error_message = e.what();
    } catch (const std::exception& e) {
        slot.error_code = "failed", slot.error_message = e.what();
    }
    if (!slot.ok) slot.result = json::object(), slot.verdicts.clear(), slot.tables.clear();
    slot.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return slot;
}

inline std::string csv_number(double v) {
    if (std::isnan(v)) return "nan";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline void write_csv(const std::filesystem::path& file, const Table& t) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    for (std::size_t k = 0; k < t.columns.size(); ++k) out << (k ? "," : "") << t.columns[k];
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_number(row[k]);
        out << "\n";
    }
}

/// Runs tasks on up to `jobs` threads; results land at their own index.
template <class T>
std::vector<T> run_parallel(std::vector<std::function<T()>> tasks, int jobs) {
    std::vector<T> out(tasks.size());
    if (jobs <= 1) {
        for (std::size_t k = 0; k < tasks.size(); ++k) out[k] = tasks[k]();
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> workers;
    for (int w = 0; w < jobs; ++w)
        workers.push_back(std::async(std::launch::async, [&] {
            for (std::size_t k; (k = next++) < tasks.size();) out[k] = tasks[k]();
        }));
    for (auto& w : workers) w.get();
    return out;
}

}  // namespace detail

/**
 * Runs the requested analyses. A failing analysis records its error code and the others
 * still run. Slots come back in canonical order whatever the number of jobs.
 */
inline Report run(const AnalysisRequest& req, const RunOptions& opt = {}) {
    if (req.analyses.empty()) throw InternalError("request without analyses");
    std::vector<std::function<AnalysisSlot()>> tasks;
    for (const auto& name : req.analyses)
        tasks.push_back([&req, &opt, name] {
            if (opt.progress) opt.progress("start " + name);
            auto s = detail::execute(req, name);
            if (opt.progress)
                opt.progress(name + (s.ok ? " ok" : " failed: " + s.error_code) + " in " + std::to_string(s.seconds) + " s");
            return s;
        });
    Report rep;
    rep.request = req;
    rep.analyses = detail::run_parallel(std::move(tasks), opt.jobs);
    if (rep.analyses.size() != req.analyses.size()) throw InternalError("analysis slot count mismatch");
    for (std::size_t k = 0; k < req.analyses.size(); ++k)
        if (rep.analyses[k].name != req.analyses[k]) throw InternalError("analysis slots out of order");

    if (!opt.plot_dir.empty()) {
        std::filesystem::path dir(opt.plot_dir);
        std::filesystem::create_directories(dir);
        for (const auto& slot : rep.analyses)
            for (const auto& [name, table] : slot.tables) {
                auto file = dir / (name + ".csv");
                detail::write_csv(file, table);
                rep.artifacts.push_back(file.string());
            }
    }
    return rep;
}

/// Report as JSON. Timing sits under "timing" only, so reports compare equal without it.
inline json report_json(const Report& rep, bool with_timing = true) {
    json analyses = json::array(), verdicts = json::array(), tables = json::object(), timing = json::object();
    for (const auto& s : rep.analyses) {
        json slot = {{"name", s.name}, {"status", s.ok ? "ok" : "error"}, {"result", s.result}};
        if (!s.ok) slot["error"] = {{"code", s.error_code}, {"message", s.error_message}};
        analyses.push_back(slot);
        for (const auto& v : s.verdicts) verdicts.push_back(detail::verdict_json(v));
        for (const auto& [name, t] : s.tables) {
            json rows = json::array();
            for (const auto& row : t.rows) {
                json r = json::array();
                for (double v : row) r.push_back(std::isnan(v) ? json(nullptr) : json(v));
                rows.push_back(r);
            }
            tables[name] = {{"columns", t.columns}, {"rows", rows}};
        }
        timing[s.name] = s.seconds;
    }
    json out = {{"request", serialize(rep.request)},
                {"analyses", analyses},
                {"verdicts", verdicts},
                {"tables", tables},
                {"artifacts", rep.artifacts}};
    if (with_timing) out["timing"] = timing;
    return out;
}

}  // namespace osc::cli
