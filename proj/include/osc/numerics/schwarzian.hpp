#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace osc::numerics {

/// Lens map of the unit disc: the part of the disc cut off by a hyperbolic line through s in (0, 1).
struct LensMap {
    double s = 0.5;

    double u() const { return (1 + s) / 2; }
    double t() const { return (1 + std::numbers::sqrt2) * (1 - s) / 2; }

    template <class F>
    std::complex<F> operator()(std::complex<F> z) const {
        auto p = std::sqrt(F(1) + z), q = std::sqrt(F(1) - z);
        return F(u()) + std::complex<F>(0, F(t())) * (p - q) / (p + q);
    }
    template <class F>
    std::complex<F> derivative(std::complex<F> z) const {
        auto p = std::sqrt(F(1) + z), q = std::sqrt(F(1) - z);
        return std::complex<F>(0, 2 * F(t())) / (p * q * (p + q) * (p + q));
    }
};

/// Map ((1 + z) / (1 - z))^gamma rotated by phi, from the lens onto a sector of opening gamma pi.
struct SectorMap {
    double gamma = 0.5;
    double phi = 0;

    template <class F>
    std::complex<F> operator()(std::complex<F> z) const {
        return std::polar(F(1), F(phi)) * std::pow((F(1) + z) / (F(1) - z), F(gamma));
    }
};

inline void check_disc(std::complex<double> z) {
    if (!(std::abs(z) < 1)) throw std::domain_error("schwarzian: argument outside the unit disc");
}

/// Schwarzian of the lens map; it does not depend on s.
inline std::complex<double> schwarzian_T(std::complex<double> z) {
    check_disc(z);
    auto d = 1.0 - z * z;
    return 1.5 / (d * d);
}

/// Schwarzian of the sector map; zero for gamma = 1, where the map is Mobius.
inline std::complex<double> schwarzian_L(std::complex<double> z, double gamma) {
    check_disc(z);
    auto d = 1.0 - z * z;
    return 2 * (1 - gamma * gamma) / (d * d);
}

/// S_Phi = S_L(T) T'^2 + S_T for the composite Phi = L o T.
inline std::complex<double> schwarzian_composite(std::complex<double> z, double s, double gamma) {
    LensMap lens{s};
    auto w = lens(z), dw = lens.derivative(z);
    return schwarzian_L(w, gamma) * dw * dw + schwarzian_T(z);
}

/**
 * Max of (1 - |z|^2)^2 |S_Phi(z)| over a polar grid of about `samples` points in x0 < |z| < 1.
 * Below 2 the composite satisfies the Nehari-type bound on that annulus.
 */
inline double phi_bound_scan(double s, double gamma, double x0, int samples) {
    if (!(s > 0 && s < 1)) throw std::invalid_argument("phi_bound_scan: need 0 < s < 1");
    if (!(gamma > 0 && gamma <= 1)) throw std::invalid_argument("phi_bound_scan: need 0 < gamma <= 1");
    if (!(x0 >= 0 && x0 < 1)) throw std::invalid_argument("phi_bound_scan: need 0 <= x0 < 1");
    if (samples < 4) throw std::invalid_argument("phi_bound_scan: too few samples");
    int radial = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(samples))));
    int angular = std::max(2, samples / radial);
    double best = 0;
    for (int i = 0; i < radial; ++i) {
        double r = x0 + (1 - x0) * (i + 0.5) / radial;
        for (int j = 0; j < angular; ++j) {
            auto z = std::polar(r, 2 * std::numbers::pi * (j + 0.5) / angular);
            double w = (1 - r * r) * (1 - r * r);
            best = std::max(best, w * std::abs(schwarzian_composite(z, s, gamma)));
        }
    }
    return best;
}

/// Five-point central differences of an analytic map, in the precision of F.
template <class F, class Map>
std::complex<F> finite_difference_schwarzian(const Map& f, std::complex<F> z, F h) {
    auto fp2 = f(z + F(2) * h), fp1 = f(z + h), f0 = f(z), fm1 = f(z - h), fm2 = f(z - F(2) * h);
    auto d1 = (-fp2 + F(8) * fp1 - F(8) * fm1 + fm2) / (F(12) * h);
    auto d2 = (-fp2 + F(16) * fp1 - F(30) * f0 + F(16) * fm1 - fm2) / (F(12) * h * h);
    auto d3 = (fp2 - F(2) * fp1 + F(2) * fm1 - fm2) / (F(2) * h * h * h);
    auto r = d2 / d1;
    return d3 / d1 - F(1.5) * r * r;
}

/// The five-point estimate at h and h/2 combined to cancel the h^2 error term.
template <class F, class Map>
std::complex<F> extrapolated_schwarzian(const Map& f, std::complex<F> z, F h) {
    auto coarse = finite_difference_schwarzian(f, z, h), fine = finite_difference_schwarzian(f, z, h / 2);
    return (F(4) * fine - coarse) / F(3);
}

}  // namespace osc::numerics
