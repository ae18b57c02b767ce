#pragma once

#include "osc/geometry.hpp"
#include "osc/numerics/zeros.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace osc::numerics {

/// Angular intervals use the [-pi, pi) convention; a sector crossing pi is split in two.
struct AngularInterval {
    double alpha = 0;
    double beta = 0;
};

struct SectorReport {
    int order = 1;
    std::vector<AngularInterval> negative_sectors;
    bool wraparound = false;        // one negative sector crosses pi and was split
    bool widths_ok = true;          // every negative sector has width <= pi / n
    double dominant = 0;            // argmax of h_A
    double dominant_value = 0;
    AngularInterval dominant_sector;
    AngularInterval cone;           // |theta - dominant| <= pi / n, unwrapped
    bool cone_bound_holds = true;   // h(theta) >= h(dominant) cos(n (theta - dominant)) on the cone
};

namespace detail {

inline double to_half_open(double t) {
    t = std::fmod(t + std::numbers::pi, 2 * std::numbers::pi);
    if (t < 0) t += 2 * std::numbers::pi;
    return t - std::numbers::pi;
}

}  // namespace detail

/**
 * Sectors where h_A < 0 (finitely many zeros expected there), the direction of maximal growth,
 * and the lower cone bound around it. Ties for the maximum go to the smallest angle in [0, 2 pi).
 */
template <Scalar S>
SectorReport sector_report(const ExpPoly<S>& a, double eps, int samples = 1 << 14) {
    if (!(eps > 0)) throw std::invalid_argument("sector_report: eps must be positive");
    Indicator h = indicator_of(a);
    const int n = h.degree;
    SectorReport rep;
    rep.order = n;
    constexpr double pi = std::numbers::pi;

    // scan from the grid maximum so every negative sector is entered before it is left
    double start = -pi, top = -HUGE_VAL;
    for (int j = 0; j < samples; ++j) {
        double t = -pi + 2 * pi * j / samples;
        if (h(t) > top) top = h(t), start = t;
    }
    auto refine = [&](double lo, double hi) {
        bool lo_neg = h(lo) < 0;
        for (int k = 0; k < 80; ++k) {
            double mid = 0.5 * (lo + hi);
            ((h(mid) < 0) == lo_neg ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    double entered = 0;
    bool inside = false;
    std::vector<AngularInterval> unwrapped;
    for (int j = 1; j <= samples; ++j) {
        double t0 = start + 2 * pi * (j - 1) / samples, t1 = start + 2 * pi * j / samples;
        bool n0 = h(t0) < 0, n1 = h(t1) < 0;
        if (!n0 && n1) entered = refine(t0, t1), inside = true;
        if (n0 && !n1 && inside) unwrapped.push_back({entered, refine(t0, t1)}), inside = false;
    }
    for (const auto& s : unwrapped) {
        rep.widths_ok = rep.widths_ok && (s.beta - s.alpha) <= pi / n + 1e-9;
        double a0 = detail::to_half_open(s.alpha), b0 = a0 + (s.beta - s.alpha);
        if (b0 > pi) {
            rep.wraparound = true;
            rep.negative_sectors.push_back({a0, pi});
            rep.negative_sectors.push_back({-pi, b0 - 2 * pi});
        } else {
            rep.negative_sectors.push_back({a0, b0});
        }
    }
    std::sort(rep.negative_sectors.begin(), rep.negative_sectors.end(),
              [](const auto& x, const auto& y) { return x.alpha < y.alpha; });

    // maxima of Re(mu e^{i n theta}) sit at n theta = -arg mu mod 2 pi
    double best = -HUGE_VAL, arg_best = 0;
    for (auto mu : h.atoms) {
        if (std::abs(mu) == 0) continue;
        for (int k = 0; k < n; ++k) {
            double t = std::fmod((-std::arg(mu) + 2 * pi * k) / n + 4 * pi, 2 * pi);
            if (2 * pi - t < 1e-12) t = 0;
            double v = h(t);
            if (v > best + 1e-12 || (std::abs(v - best) <= 1e-12 && t < arg_best)) best = v, arg_best = t;
        }
    }
    if (best == -HUGE_VAL) best = h(0.0), arg_best = 0;  // h identically zero
    rep.dominant = detail::to_half_open(arg_best);
    rep.dominant_value = best;
    rep.dominant_sector = {rep.dominant - eps, rep.dominant + eps};
    rep.cone = {rep.dominant - pi / n, rep.dominant + pi / n};
    for (int j = 0; j <= 2048; ++j) {
        double t = rep.cone.alpha + (rep.cone.beta - rep.cone.alpha) * j / 2048;
        if (h(t) < best * std::cos(n * (t - rep.dominant)) - 1e-9) rep.cone_bound_holds = false;
    }
    return rep;
}

struct SectorCensus {
    AngularInterval sector;
    std::vector<std::array<cdouble, 2>> bases;
    std::vector<double> ring_radii;                 // r_0 = r_min < r_1 < ... < r_K = rmax
    std::vector<ZeroCensus> censuses;               // one per basis
    std::vector<std::vector<long>> cumulative;      // per basis, zeros with r_min < |z| < r_k
    std::vector<double> arc_mismatch;               // per basis, worst arc endpoint vs ray disagreement
    std::vector<double> wronskian_deviation;        // first two bases, at rmax on ray alpha
};

struct SectorCensusOptions {
    double r_min = 0.1;
    double ring_width = 0.5;
    double fan_spacing = 0.05;  // angle between neighbouring rays
    OdeOptions ode{};
};

namespace detail {

struct TrackedState {
    std::array<cdouble, 2> y;
    double log_scale = 0;
};

/// Integrates a path piece with phase tracking; returns the end state and the change of arg f.
inline std::pair<TrackedState, double> tracked_piece(const FlatExpPoly& a, const Path& path, double t0, double t1,
                                                     const TrackedState& s, OdeOptions opt) {
    opt.track_phase = true;
    auto sol = integrate_path(a, path, t0, t1, s.y, opt, s.log_scale);
    return {{{sol.f.back(), sol.fp.back()}, sol.log_scale.back()}, sol.total_phase_change()};
}

}  // namespace detail

namespace detail {

/// Relative disagreement of two states of the same solution.
inline double state_mismatch(const TrackedState& x, const TrackedState& ref) {
    double shift = std::exp(x.log_scale - ref.log_scale);
    double scale = std::max(std::abs(ref.y[0]), std::abs(ref.y[1]));
    return std::abs(x.y[0] * shift - ref.y[0]) / scale;
}

/// Arc |z| = r from angle t0 to t1 > t0, traversed from the t1 end.
inline Path reversed_arc(double r, double t1) {
    return {[r, t1](double t) { return std::polar(r, t1 - t); },
            [r, t1](double t) { return cdouble(0.0, -1.0) * std::polar(r, t1 - t); }};
}

}  // namespace detail

/**
 * Zero counts of solutions with the given initial values at 0 inside the annular sector
 * r_min < |z| < rmax, alpha < arg z < beta. The change of arg f around each ring boundary
 * counts the zeros in that ring. Solutions are integrated outward along a fan of rays, which is
 * stable; each sub-arc between neighbouring rays is integrated from both ends and the direction
 * that reproduces the other end is kept, since across a Stokes region one direction loses all
 * relative accuracy.
 */
inline SectorCensus sector_zero_census(const FlatExpPoly& a, AngularInterval sector, double rmax,
                                       std::vector<std::array<cdouble, 2>> bases = {{1.0, 0.0}, {0.0, 1.0}, {1.0, -1.0}},
                                       const SectorCensusOptions& opt = {}) {
    if (!(sector.alpha < sector.beta && sector.beta - sector.alpha < 2 * std::numbers::pi))
        throw std::invalid_argument("sector_zero_census: need alpha < beta < alpha + 2 pi");
    if (!(rmax > opt.r_min && opt.r_min > 0)) throw std::invalid_argument("sector_zero_census: need 0 < r_min < rmax");
    if (bases.empty()) throw std::invalid_argument("sector_zero_census: no initial values");

    SectorCensus out;
    out.sector = sector;
    out.bases = bases;
    int rings = std::max(1, static_cast<int>(std::ceil((rmax - opt.r_min) / opt.ring_width)));
    for (int k = 0; k <= rings; ++k) out.ring_radii.push_back(opt.r_min + (rmax - opt.r_min) * k / rings);
    const auto& radii = out.ring_radii;
    int fans = std::max(1, static_cast<int>(std::ceil((sector.beta - sector.alpha) / opt.fan_spacing)));
    std::vector<double> angles;
    for (int j = 0; j <= fans; ++j) angles.push_back(sector.alpha + (sector.beta - sector.alpha) * j / fans);

    std::vector<detail::TrackedState> final_alpha;
    for (const auto& init : bases) {
        ZeroCensus c;
        c.method = "argument_principle";
        std::ostringstream os;
        os.precision(17);
        os << "annular sector " << opt.r_min << " < |z| < " << rmax << ", " << sector.alpha << " < arg z < "
           << sector.beta;
        c.region = os.str();
        std::vector<long> cum{0};
        double worst = 0;
        try {
            // states[j][k]: ray j at radius r_k; turn[j][k]: change of arg f on an edge ray from r_k to r_{k+1}
            std::vector<std::vector<detail::TrackedState>> states(angles.size());
            std::vector<std::vector<double>> turn(angles.size());
            for (std::size_t j = 0; j < angles.size(); ++j) {
                Path ray = ray_path(angles[j]);
                auto start = integrate_path(a, ray, 0.0, radii[0], init, opt.ode);
                detail::TrackedState st{{start.f.back(), start.fp.back()}, start.log_scale.back()};
                states[j].push_back(st);
                bool edge = j == 0 || j + 1 == angles.size();
                for (int k = 0; k < rings; ++k) {
                    if (edge) {
                        auto [next, d] = detail::tracked_piece(a, ray, radii[k], radii[k + 1], st, opt.ode);
                        turn[j].push_back(d);
                        st = next;
                    } else {
                        // interior rays only supply states and may run through zeros
                        auto sol = integrate_path(a, ray, radii[k], radii[k + 1], st.y, opt.ode, st.log_scale);
                        st = {{sol.f.back(), sol.fp.back()}, sol.log_scale.back()};
                    }
                    states[j].push_back(st);
                }
            }
            auto arc_turn = [&](int k) {
                double total = 0;
                for (std::size_t j = 0; j + 1 < angles.size(); ++j) {
                    double r = radii[k];
                    auto [fwd, df] = detail::tracked_piece(a, arc_path(r), angles[j], angles[j + 1], states[j][k], opt.ode);
                    auto [bwd, db] = detail::tracked_piece(a, detail::reversed_arc(r, angles[j + 1]), 0.0,
                                                           angles[j + 1] - angles[j], states[j + 1][k], opt.ode);
                    double mf = detail::state_mismatch(fwd, states[j + 1][k]);
                    double mb = detail::state_mismatch(bwd, states[j][k]);
                    total += mf <= mb ? df : -db;
                    worst = std::max(worst, std::min(mf, mb));
                }
                return total;
            };
            const std::size_t last = angles.size() - 1;
            double inner = arc_turn(0), total = 0;
            for (int k = 0; k < rings; ++k) {
                double outer = arc_turn(k + 1);
                double w = (turn[0][k] + outer - turn[last][k] - inner) / (2 * std::numbers::pi);
                long kw = detail::rounded_winding(w, c, "ring " + std::to_string(k));
                total += w;
                c.count += kw;
                cum.push_back(c.count);
                inner = outer;
            }
            c.winding = total;
            final_alpha.push_back(states[0].back());
        } catch (const std::exception& e) {
            c.complete = false;
            c.notes.push_back(std::string("integration failed: ") + e.what());
            final_alpha.push_back({});
        }
        if (worst > 1e-6) {
            c.complete = false;
            c.notes.push_back("arc integration disagrees with the rays by " + std::to_string(worst));
        }
        c.notes.push_back("counts are relative to the initial values f(0), f'(0)");
        out.arc_mismatch.push_back(worst);
        out.cumulative.push_back(std::move(cum));
        out.censuses.push_back(std::move(c));
    }
    // f1 f2' - f1' f2 is constant; compare it at rmax on ray alpha with its value at the origin
    if (bases.size() >= 2 && out.censuses[0].complete && out.censuses[1].complete) {
        const auto& u = final_alpha[0];
        const auto& v = final_alpha[1];
        cdouble w0 = bases[0][0] * bases[1][1] - bases[0][1] * bases[1][0];
        cdouble w = u.y[0] * v.y[1] - u.y[1] * v.y[0];
        double ls = u.log_scale + v.log_scale;
        double size = std::abs(u.y[0] * v.y[1]) + std::abs(u.y[1] * v.y[0]);
        out.wronskian_deviation.push_back(std::abs(w - w0 * std::exp(-ls)) / size);
    }
    return out;
}

}  // namespace osc::numerics
