#pragma once

#include "osc/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace osc::numerics {

/// Integration failure; carries the last parameter value reached.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double last_t) : std::runtime_error(what), last_t_(last_t) {}
    double last_t() const { return last_t_; }

private:
    double last_t_;
};

/// z(t) and dz/dt for a parametrized path.
struct Path {
    std::function<cdouble(double)> z;
    std::function<cdouble(double)> dz;
};

inline Path ray_path(double theta) {
    cdouble u = std::polar(1.0, theta);
    return {[u](double t) { return t * u; }, [u](double) { return u; }};
}

/// Circle |z| = r traversed in the angle parameter t.
inline Path arc_path(double r) {
    return {[r](double t) { return std::polar(r, t); }, [r](double t) { return cdouble(0.0, 1.0) * std::polar(r, t); }};
}

/// Straight segment z0 + t (z1 - z0), t in [0, 1].
inline Path segment_path(cdouble z0, cdouble z1) {
    return {[z0, z1](double t) { return z0 + t * (z1 - z0); }, [z0, z1](double) { return z1 - z0; }};
}

struct OdeOptions {
    double tol = 1e-10;
    double h_init = 1e-3;
    double h_max = 0.25;
    // steps per local oscillation: h |z'| sqrt|A| <= oscillation_step
    double oscillation_step = 1.0;
    double rescale_threshold = 1e100;
    long max_steps = 5'000'000;
    bool track_phase = false;  // enforce |delta arg f| < pi/2 per step
    double fixed_step = 0;     // > 0: constant steps, no error control (order studies)
};

/// One accepted step: Hermite-type dense output of the DOPRI5 pair.
struct DenseSegment {
    double t0 = 0, h = 0;
    double log_scale = 0;  // state values below are exp(-log_scale) times the true ones
    std::array<std::array<cdouble, 2>, 5> rc{};

    std::array<cdouble, 2> at(double t) const {
        double s = (t - t0) / h, s1 = 1 - s;
        std::array<cdouble, 2> y;
        for (int i = 0; i < 2; ++i)
            y[i] = rc[0][i] + s * (rc[1][i] + s1 * (rc[2][i] + s * (rc[3][i] + s1 * rc[4][i])));
        return y;
    }
};

/// Solution of f'' + A f = 0 along a path, stored in rescaled form.
struct PathSolution {
    std::vector<double> t;
    std::vector<cdouble> f, fp;       // rescaled values
    std::vector<double> log_scale;     // true value = exp(log_scale) * rescaled
    std::vector<double> phase;         // unwrapped arg f (when tracked)
    std::vector<DenseSegment> segments;

    std::size_t segment_index(double tq) const {
        auto it = std::upper_bound(t.begin(), t.end(), tq);
        std::size_t k = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
        return std::min(k, segments.size() - 1);
    }
    /// f and f' at tq, relative to the scale of the containing step.
    std::array<cdouble, 2> dense(double tq) const { return segments[segment_index(tq)].at(tq); }
    double logmag(double tq) const {
        const auto& s = segments[segment_index(tq)];
        return std::log(std::abs(s.at(tq)[0])) + s.log_scale;
    }
    /// Unscaled f(tq); overflows for large solutions, so meant for moderate ranges.
    cdouble value(double tq) const {
        const auto& s = segments[segment_index(tq)];
        return s.at(tq)[0] * std::exp(s.log_scale);
    }
    double final_logmag() const { return std::log(std::abs(f.back())) + log_scale.back(); }
    double total_phase_change() const { return phase.back() - phase.front(); }
};

/**
 * Dormand-Prince 5(4) for y = (f, f') with dy/dt = (f' z'(t), -A(z(t)) f z'(t)).
 * The pair is renormalized by a common positive factor when it exceeds the threshold.
 */
inline PathSolution integrate_path(const FlatExpPoly& a, const Path& path, double t0, double t1,
                                   std::array<cdouble, 2> init, const OdeOptions& opt = {},
                                   double init_log_scale = 0.0) {
    if (!(t1 > t0)) throw std::invalid_argument("integrate_path: need t0 < t1");
    if (!(opt.tol > 0)) throw std::invalid_argument("integrate_path: tol must be positive");
    using Y = std::array<cdouble, 2>;
    auto rhs = [&](double t, const Y& y) -> Y {
        cdouble dz = path.dz(t);
        return {y[1] * dz, -a.eval(path.z(t)) * y[0] * dz};
    };
    auto osc_limit = [&](double t) {
        double w = std::sqrt(std::abs(a.eval(path.z(t)))) * std::abs(path.dz(t));
        return w > 0 ? opt.oscillation_step / w : opt.h_max;
    };

    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                            a76 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
    static constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                            d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                            d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

    PathSolution sol;
    Y y = init;
    double t = t0, ls = init_log_scale;
    double ph = std::arg(y[0]);
    sol.t.push_back(t);
    sol.f.push_back(y[0]);
    sol.fp.push_back(y[1]);
    sol.log_scale.push_back(ls);
    sol.phase.push_back(ph);

    double h = std::min({opt.h_init, opt.h_max, t1 - t0});
    Y k1 = rhs(t, y);
    long steps = 0;
    while (t < t1) {
        if (++steps > opt.max_steps) throw NumericError("integrate_path: step budget exhausted", t);
        h = opt.fixed_step > 0 ? std::min(opt.fixed_step, t1 - t) : std::min({h, opt.h_max, osc_limit(t), t1 - t});
        if (h < 1e-14 * std::max(1.0, std::abs(t))) throw NumericError("integrate_path: step size underflow", t);
        auto comb = [&](std::initializer_list<std::pair<double, const Y*>> terms) {
            Y r = y;
            for (auto [c, k] : terms)
                for (int i = 0; i < 2; ++i) r[i] += h * c * (*k)[i];
            return r;
        };
        Y k2 = rhs(t + c2 * h, comb({{a21, &k1}}));
        Y k3 = rhs(t + c3 * h, comb({{a31, &k1}, {a32, &k2}}));
        Y k4 = rhs(t + c4 * h, comb({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        Y k5 = rhs(t + c5 * h, comb({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        Y k6 = rhs(t + h, comb({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        Y y1 = comb({{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
        Y k7 = rhs(t + h, y1);

        double norm = std::max(std::abs(y[0]) + std::abs(y[1]), std::abs(y1[0]) + std::abs(y1[1]));
        double sc = opt.tol * std::max(norm, 1e-300);
        double err = 0;
        for (int i = 0; i < 2; ++i) {
            cdouble e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            err = std::max(err, std::abs(e) / sc);
        }
        if (!std::isfinite(err)) {
            h *= 0.25;
            continue;
        }
        if (err > 1.0 && opt.fixed_step <= 0) {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            continue;
        }

        DenseSegment seg;
        seg.t0 = t;
        seg.h = h;
        seg.log_scale = ls;
        for (int i = 0; i < 2; ++i) {
            cdouble ydiff = y1[i] - y[i];
            cdouble bspl = h * k1[i] - ydiff;
            seg.rc[0][i] = y[i];
            seg.rc[1][i] = ydiff;
            seg.rc[2][i] = bspl;
            seg.rc[3][i] = ydiff - h * k7[i] - bspl;
            seg.rc[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
        }

        double dph = 0;
        if (opt.track_phase) {
            // phase increments on a 4-point sub-grid, each below pi/4
            double prev = std::arg(y[0]);
            bool ok = true;
            for (int j = 1; j <= 4 && ok; ++j) {
                double cur = std::arg(seg.at(t + h * j / 4.0)[0]);
                double d = wrap_phase(cur - prev);
                ok = std::abs(d) < std::numbers::pi / 4;
                dph += d;
                prev = cur;
            }
            if (!ok) {
                h *= 0.5;
                continue;
            }
        } else {
            dph = wrap_phase(std::arg(y1[0]) - std::arg(y[0]));
        }

        t = (t1 - (t + h) < 1e-15 * std::max(1.0, std::abs(t1))) ? t1 : t + h;
        y = y1;
        k1 = k7;
        ph += dph;
        double mag = std::max(std::abs(y[0]), std::abs(y[1]));
        if (mag > opt.rescale_threshold) {
            for (auto& v : y) v /= mag;
            for (auto& v : k1) v /= mag;
            ls += std::log(mag);
        }
        sol.segments.push_back(seg);
        sol.t.push_back(t);
        sol.f.push_back(y[0]);
        sol.fp.push_back(y[1]);
        sol.log_scale.push_back(ls);
        sol.phase.push_back(ph);
        h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
    }
    return sol;
}

/// Solution along z = t e^{i theta} for t in [r0, r1].
struct RaySolution {
    double theta = 0;
    PathSolution path;
};

inline RaySolution integrate_ray(const FlatExpPoly& a, double theta, double r0, double r1,
                                 std::array<cdouble, 2> init, const OdeOptions& opt = {}) {
    if (!(r0 < r1)) throw std::invalid_argument("integrate_ray: need r0 < r1");
    return {theta, integrate_path(a, ray_path(theta), r0, r1, init, opt)};
}

}  // namespace osc::numerics
