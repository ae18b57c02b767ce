#pragma once

#include "osc/numerics/zeros.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace osc::numerics {

struct NevanlinnaSample {
    double r = 0;  // radius actually used (may be nudged off denominator zeros)
    double m = 0;
    double N = 0;
    double T = 0;
    int quadrature_points = 0;
    bool flagged = false;  // quadrature did not settle within 0.5%
    std::vector<std::string> notes;
};

/// num/den, or num alone when den is absent.
struct Target {
    FlatExpPoly num;
    std::optional<FlatExpPoly> den;

    double log_abs(cdouble z) const {
        double v = num.log_eval(z).logmag;
        if (den) v -= den->log_eval(z).logmag;
        return v;
    }
};

struct NevanlinnaOptions {
    int quadrature_points = 2048;
    int max_doublings = 3;
    double relative_settle = 0.005;
    double pole_clearance = 1e-4;
    CensusOptions census{};
};

/// Periodic trapezoid mean of log+|target| on |z| = r.
inline double proximity(const Target& t, double r, int points) {
    double acc = 0;
    for (int j = 0; j < points; ++j) {
        double v = t.log_abs(std::polar(r, -std::numbers::pi + 2 * std::numbers::pi * (j + 0.5) / points));
        if (v > 0) acc += v;
    }
    return acc / points;
}

/**
 * m(r), N(r) and T = m + N. Quadrature points double (up to max_doublings) until m settles
 * within relative_settle; N counts denominator zeros from an argument-principle census.
 */
inline NevanlinnaSample nevanlinna_sample(const Target& target, double r, const NevanlinnaOptions& opt = {}) {
    if (!(r > 0)) throw std::invalid_argument("nevanlinna_sample: r must be positive");
    NevanlinnaSample s;
    s.r = r;

    std::optional<ZeroCensus> poles;
    if (target.den) {
        auto census = count_zeros_region(*target.den, Region::disc(0.0, r + 0.01), opt.census);
        bool ok = false;
        for (int attempt = 0; attempt < 10 && !ok; ++attempt) {
            ok = true;
            for (const auto& z : census.zeros)
                ok = ok && std::abs(std::abs(z.z) - s.r) >= opt.pole_clearance;
            if (!ok) s.r += 2 * opt.pole_clearance;
        }
        if (!ok) throw NumericError("nevanlinna_sample: could not move the circle off denominator zeros", s.r);
        if (s.r != r) s.notes.push_back("radius nudged off a denominator zero");
        if (!census.complete) s.notes.push_back("denominator census incomplete");
        poles = std::move(census);
    }

    int q = opt.quadrature_points;
    double m = proximity(target, s.r, q);
    for (int k = 0; k < opt.max_doublings; ++k) {
        double m2 = proximity(target, s.r, 2 * q);
        double change = std::abs(m2 - m) / std::max(std::abs(m2), 1e-12);
        q *= 2;
        m = m2;
        if (change < opt.relative_settle) {
            s.flagged = false;
            break;
        }
        s.flagged = true;
    }
    s.m = m;
    s.quadrature_points = q;
    if (s.flagged) s.notes.push_back("quadrature did not settle");
    s.N = poles ? counting_function(*poles, s.r) : 0.0;
    s.T = s.m + s.N;
    return s;
}

/// Jensen: N(r, 1/F) = mean of log|F| on |z| = r minus log|F(0)| (F(0) != 0).
inline double jensen_counting(const FlatExpPoly& f, double r, int points = 8192) {
    double acc = 0;
    for (int j = 0; j < points; ++j)
        acc += f.log_eval(std::polar(r, -std::numbers::pi + 2 * std::numbers::pi * (j + 0.5) / points)).logmag;
    return acc / points - f.log_eval(0.0).logmag;
}

}  // namespace osc::numerics
