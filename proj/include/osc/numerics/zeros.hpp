#pragma once

#include "osc/numerics/ode.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace osc::numerics {

struct Zero {
    cdouble z;
    double radius = 0;  // location is known to within this distance
    int multiplicity = 1;
};

struct ZeroCensus {
    std::string region;
    std::vector<Zero> zeros;
    long count = 0;       // with multiplicity
    double winding = 0;   // raw winding before rounding (argument principle only)
    std::string method;   // "argument_principle" or "sign_change"
    bool complete = true;
    std::vector<std::string> notes;
};

/// A box [x0, x1] x [y0, y1] or a disc |z - center| < radius.
struct Region {
    enum class Kind { box, disc } kind = Kind::box;
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    cdouble center{};
    double radius = 0;

    static Region box(double x0, double x1, double y0, double y1) {
        if (!(x0 < x1 && y0 < y1)) throw std::invalid_argument("empty box");
        Region r;
        r.x0 = x0, r.x1 = x1, r.y0 = y0, r.y1 = y1;
        return r;
    }
    static Region disc(cdouble c, double radius) {
        if (!(radius > 0)) throw std::invalid_argument("disc radius must be positive");
        Region r;
        r.kind = Kind::disc;
        r.center = c;
        r.radius = radius;
        return r;
    }
    std::string describe() const {
        std::ostringstream os;
        os.precision(17);
        if (kind == Kind::disc)
            os << "disc center (" << center.real() << ", " << center.imag() << ") radius " << radius;
        else
            os << "box [" << x0 << ", " << x1 << "] x [" << y0 << ", " << y1 << "]";
        return os.str();
    }
};

/// The boundary passes (numerically) through a zero.
class NearZeroOnBoundary : public std::runtime_error {
public:
    explicit NearZeroOnBoundary(cdouble z) : std::runtime_error("boundary too close to a zero"), z(z) {}
    cdouble z;
};

class BudgetExhausted : public std::runtime_error {
public:
    BudgetExhausted() : std::runtime_error("zero census budget exhausted") {}
};

/// Counts function evaluations against a fixed allowance.
struct Budget {
    long remaining = 1'000'000;
    void spend(long k = 1) {
        remaining -= k;
        if (remaining < 0) throw BudgetExhausted();
    }
};

struct WindingOptions {
    // summands cancelling below exp(-floor) of the dominant one count as a boundary zero
    double cancellation_floor = 30.0;
    double min_step = 1e-12;
};

/**
 * Continuous change of arg F along a path. Each half step must move log F by less than pi/4 in both
 * log|F| and arg F: a path grazing a multiple zero turns by nearly 2 pi per step, which the phase
 * test alone would alias to a small turn, while log|F| still jumps between the samples.
 */
inline double phase_change(const FlatExpPoly& a, const Path& path, double t0, double t1, Budget& budget,
                           const WindingOptions& opt = {}) {
    auto sample = [&](double t) {
        budget.spend();
        cdouble z = path.z(t);
        LogValue v = a.log_eval(z);
        if (v.is_zero() || v.logmag < a.dominant_logmag(z) - opt.cancellation_floor) throw NearZeroOnBoundary(z);
        return v;
    };
    constexpr double quarter = std::numbers::pi / 4;
    LogValue v0 = sample(t0);
    double t = t0, p = v0.phase, l = v0.logmag, total = 0.0;
    double h = (t1 - t0) / 16;
    while (t < t1) {
        double speed = (a.max_exponent_speed(path.z(t)) + 1.0) * std::abs(path.dz(t));
        h = std::min({2 * h, (std::numbers::pi / 8) / speed, t1 - t});
        for (;;) {
            if (h < opt.min_step) throw NearZeroOnBoundary(path.z(t));
            double tm = t + h / 2, te = (t1 - (t + h) < 1e-15) ? t1 : t + h;
            LogValue vm = sample(tm), ve = sample(te);
            double d1 = wrap_phase(vm.phase - p), d2 = wrap_phase(ve.phase - vm.phase);
            double g1 = vm.logmag - l, g2 = ve.logmag - vm.logmag;
            if (std::abs(d1) < quarter && std::abs(d2) < quarter && std::abs(g1) < quarter && std::abs(g2) < quarter) {
                total += d1 + d2;
                t = te;
                p = ve.phase;
                l = ve.logmag;
                break;
            }
            h /= 2;
        }
    }
    return total;
}

/// Winding number (in turns) of F along the positively oriented boundary of the region.
inline double winding(const FlatExpPoly& a, const Region& r, Budget& budget, const WindingOptions& opt = {}) {
    double total = 0;
    if (r.kind == Region::Kind::disc) {
        Path circle{[&](double t) { return r.center + std::polar(r.radius, t); },
                    [&](double t) { return cdouble(0.0, 1.0) * std::polar(r.radius, t); }};
        total = phase_change(a, circle, 0.0, 2 * std::numbers::pi, budget, opt);
    } else {
        cdouble c[4] = {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
        for (int k = 0; k < 4; ++k) total += phase_change(a, segment_path(c[k], c[(k + 1) % 4]), 0.0, 1.0, budget, opt);
    }
    return total / (2 * std::numbers::pi);
}

struct CensusOptions {
    long budget = 1'000'000;
    double min_size = 1e-6;       // boxes below this size are reported as one location
    double max_perturbation = 1e-6;
    WindingOptions winding{};
};

namespace detail {

inline long rounded_winding(double w, ZeroCensus& census, const std::string& where) {
    long k = std::lround(w);
    if (std::abs(w - static_cast<double>(k)) > 1e-3) {
        census.complete = false;
        census.notes.push_back("non-integral winding " + std::to_string(w) + " on " + where);
    }
    return k;
}

// Winding of a box, nudging its edges outward (up to max_perturbation) when they hit a zero.
inline std::pair<Region, double> stable_box(const FlatExpPoly& a, Region b, Budget& budget, const CensusOptions& opt) {
    for (int attempt = 0; attempt < 10; ++attempt) {
        double d = opt.max_perturbation * attempt / 9.0;
        Region t = Region::box(b.x0 - d, b.x1 + d * 0.73, b.y0 - d * 0.61, b.y1 + d * 0.89);
        try {
            return {t, winding(a, t, budget, opt.winding)};
        } catch (const NearZeroOnBoundary&) {
        }
    }
    throw NearZeroOnBoundary(cdouble(b.x0, b.y0));
}

inline void subdivide(const FlatExpPoly& a, const Region& b, long w, Budget& budget, const CensusOptions& opt,
                      ZeroCensus& census, int depth) {
    if (w == 0) return;
    double wx = b.x1 - b.x0, wy = b.y1 - b.y0;
    if (std::max(wx, wy) < opt.min_size) {
        census.zeros.push_back({cdouble(0.5 * (b.x0 + b.x1), 0.5 * (b.y0 + b.y1)), 0.5 * std::hypot(wx, wy),
                                static_cast<int>(w)});
        return;
    }
    // off-centre splits keep the cut lines off symmetric zero sets such as i*pi*(2k+1)
    static constexpr double fractions[] = {0.5137, 0.4711, 0.5419, 0.4423, 0.5773};
    for (double f : fractions) {
        double fx = (depth % 2 == 0) ? f : 1 - f, fy = 1 - fx + 0.0071;
        double xm = b.x0 + fx * wx, ym = b.y0 + fy * wy;
        Region kids[4] = {Region::box(b.x0, xm, b.y0, ym), Region::box(xm, b.x1, b.y0, ym),
                          Region::box(b.x0, xm, ym, b.y1), Region::box(xm, b.x1, ym, b.y1)};
        long kw[4];
        long sum = 0;
        try {
            for (int k = 0; k < 4; ++k) {
                kw[k] = rounded_winding(winding(a, kids[k], budget, opt.winding), census, kids[k].describe());
                sum += kw[k];
            }
        } catch (const NearZeroOnBoundary&) {
            continue;
        }
        if (sum != w) {
            census.notes.push_back("child windings " + std::to_string(sum) + " != parent " + std::to_string(w) +
                                   " at " + b.describe());
            continue;
        }
        for (int k = 0; k < 4; ++k) subdivide(a, kids[k], kw[k], budget, opt, census, depth + 1);
        return;
    }
    // every split hits the zero set numerically: report the box as one location
    census.notes.push_back("location resolved only to " + b.describe());
    census.zeros.push_back({cdouble(0.5 * (b.x0 + b.x1), 0.5 * (b.y0 + b.y1)), 0.5 * std::hypot(wx, wy),
                            static_cast<int>(w)});
}

}  // namespace detail

/**
 * Argument-principle census of an exponential polynomial: total from the boundary winding,
 * then off-centre box subdivision down to min_size to locate zeros and multiplicities.
 */
inline ZeroCensus count_zeros_region(const FlatExpPoly& a, const Region& region, const CensusOptions& opt = {}) {
    if (a.is_zero()) throw std::domain_error("count_zeros_region: target is identically zero");
    ZeroCensus census;
    census.method = "argument_principle";
    census.region = region.describe();
    Budget budget{opt.budget};

    Region used = region;
    bool found = false;
    for (int attempt = 0; attempt < 10 && !found; ++attempt) {
        double d = opt.max_perturbation * attempt / 9.0;
        used = region;
        if (region.kind == Region::Kind::disc)
            used.radius += d;
        else
            used = Region::box(region.x0 - d, region.x1 + d, region.y0 - d, region.y1 + d);
        try {
            census.winding = winding(a, used, budget, opt.winding);
            found = true;
        } catch (const NearZeroOnBoundary&) {
        } catch (const BudgetExhausted&) {
            census.complete = false;
            census.notes.push_back("budget exhausted on the outer boundary");
            return census;
        }
    }
    if (!found) throw NearZeroOnBoundary(region.center);
    if (used.kind != region.kind || used.radius != region.radius || used.x0 != region.x0)
        census.notes.push_back("boundary perturbed to " + used.describe());
    census.count = detail::rounded_winding(census.winding, census, used.describe());
    if (census.count == 0) return census;

    try {
        Region box = used;
        if (used.kind == Region::Kind::disc) {
            double s = used.radius * 1.0001;
            box = Region::box(used.center.real() - s, used.center.real() + s, used.center.imag() - s,
                              used.center.imag() + s);
        }
        auto [b, w] = detail::stable_box(a, box, budget, opt);
        long bw = detail::rounded_winding(w, census, b.describe());
        detail::subdivide(a, b, bw, budget, opt, census, 0);
    } catch (const BudgetExhausted&) {
        census.complete = false;
        census.notes.push_back("budget exhausted during subdivision");
    }
    if (used.kind == Region::Kind::disc) {
        std::vector<Zero> inside;
        for (const auto& z : census.zeros)
            if (std::abs(z.z - used.center) < used.radius) inside.push_back(z);
        census.zeros = std::move(inside);
    }
    long located = 0;
    for (const auto& z : census.zeros) located += z.multiplicity;
    if (located != census.count) {
        census.complete = false;
        census.notes.push_back("located " + std::to_string(located) + " of " + std::to_string(census.count));
    }
    return census;
}

/// N(r) = sum over zeros with |z_k| <= r of log(r/|z_k|), zeros at the origin counted as n(0) log r.
inline double counting_function(const ZeroCensus& census, double r) {
    double n = 0;
    for (const auto& z : census.zeros) {
        double m = std::abs(z.z);
        if (m > r) continue;
        n += z.multiplicity * (m < 1e-9 ? std::log(r) : std::log(r / m));
    }
    return n;
}

/**
 * Sign changes of a real solution on the ray theta in {0, pi}, bracketed on the dense output
 * and refined by bisection to 1e-9.
 */
inline ZeroCensus count_zeros_real_ray(const FlatExpPoly& a, double theta, double r1, std::array<double, 2> init,
                                       const OdeOptions& ode = {}) {
    if (!(std::abs(theta) < 1e-15 || std::abs(std::abs(theta) - std::numbers::pi) < 1e-15))
        throw std::domain_error("count_zeros_real_ray: theta must be 0 or pi");
    if (!(r1 > 0)) throw std::invalid_argument("count_zeros_real_ray: r1 must be positive");
    cdouble u = std::polar(1.0, theta);
    for (int k = 0; k <= 256; ++k) {
        cdouble v = a.eval(u * (r1 * k / 256.0));
        if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v)))
            throw std::domain_error("count_zeros_real_ray: coefficient is not real on the ray");
    }
    auto ray = integrate_ray(a, theta, 0.0, r1, {init[0], init[1]}, ode);
    const auto& p = ray.path;

    ZeroCensus census;
    census.method = "sign_change";
    std::ostringstream os;
    os.precision(17);
    os << "interval [0, " << r1 << ") on ray theta = " << theta;
    census.region = os.str();

    auto sign_of = [](double v) { return (v > 0) - (v < 0); };
    int prev_sign = sign_of(init[0]);
    double prev_t = 0;
    constexpr int sub = 8;
    for (const auto& seg : p.segments) {
        for (int j = 1; j <= sub; ++j) {
            double t = seg.t0 + seg.h * j / sub;
            int s = sign_of(seg.at(t)[0].real());
            if (s == 0) continue;
            if (prev_sign != 0 && s != prev_sign) {
                double lo = prev_t, hi = t;
                int slo = prev_sign;
                while (hi - lo > 1e-9) {
                    double mid = 0.5 * (lo + hi);
                    int sm = sign_of(p.dense(mid)[0].real());
                    if (sm == slo) lo = mid;
                    else hi = mid;
                }
                double tz = 0.5 * (lo + hi);
                if (tz < r1) census.zeros.push_back({u * tz, 1e-9, 1});
            }
            prev_sign = s;
            prev_t = t;
        }
    }
    census.count = static_cast<long>(census.zeros.size());
    return census;
}

}  // namespace osc::numerics
