#pragma once

#include "osc/gaussian_rational.hpp"

#include <cmath>
#include <complex>
#include <concepts>
#include <stdexcept>

namespace osc {

using cdouble = std::complex<double>;

template <class S>
struct scalar_traits;

// Exact coefficients: identity testing is exact.
template <>
struct scalar_traits<GaussianRational> {
    static constexpr bool exact = true;
    static bool is_zero(const GaussianRational& a) { return a.is_zero(); }
    static bool equal(const GaussianRational& a, const GaussianRational& b) { return a == b; }
    static cdouble to_complex(const GaussianRational& a) { return a.to_complex(); }
    static GaussianRational conj(const GaussianRational& a) { return a.conj(); }
    static GaussianRational from_int(long v) { return GaussianRational(v); }

    /// Orders by modulus, then by argument in (-pi, pi]. Returns <0, 0, >0.
    static int compare(const GaussianRational& a, const GaussianRational& b) {
        Rational na = a.norm(), nb = b.norm();
        if (na != nb) return na < nb ? -1 : 1;
        int ha = half(a), hb = half(b);
        if (ha != hb) return ha < hb ? -1 : 1;
        Rational cross = a.re() * b.im() - a.im() * b.re();
        if (cross == 0) return 0;
        return cross > 0 ? -1 : 1;
    }

    // 0: zero, 1: arg in (-pi, 0), 2: arg = 0, 3: arg in (0, pi]
    static int half(const GaussianRational& a) {
        if (a.is_zero()) return 0;
        if (a.im() < 0) return 1;
        if (a.im() == 0 && a.re() > 0) return 2;
        return 3;
    }
};

// Floating coefficients behind the inexact escape hatch: identity tests use a 1e-12 tolerance.
template <>
struct scalar_traits<cdouble> {
    static constexpr bool exact = false;
    static constexpr double tolerance = 1e-12;
    static bool is_zero(const cdouble& a) { return std::abs(a) <= tolerance; }
    static bool equal(const cdouble& a, const cdouble& b) {
        return std::abs(a - b) <= tolerance * std::max(1.0, std::max(std::abs(a), std::abs(b)));
    }
    static cdouble to_complex(const cdouble& a) { return a; }
    static cdouble conj(const cdouble& a) { return std::conj(a); }
    static cdouble from_int(long v) { return cdouble(static_cast<double>(v), 0.0); }

    static int compare(const cdouble& a, const cdouble& b) {
        if (equal(a, b)) return 0;
        double ma = std::abs(a), mb = std::abs(b);
        if (std::abs(ma - mb) > tolerance * std::max(1.0, std::max(ma, mb))) return ma < mb ? -1 : 1;
        double pa = std::arg(a), pb = std::arg(b);
        if (pa == -M_PI) pa = M_PI;
        if (pb == -M_PI) pb = M_PI;
        return pa < pb ? -1 : 1;
    }
};

template <class S>
concept Scalar = requires(S a, S b) {
    { a + b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { a / b } -> std::convertible_to<S>;
    { scalar_traits<S>::is_zero(a) } -> std::convertible_to<bool>;
    { scalar_traits<S>::to_complex(a) } -> std::convertible_to<cdouble>;
};

}  // namespace osc
