#pragma once

#include "osc/exppoly.hpp"

#include <random>

namespace osc::testing {

using GR = GaussianRational;
using EP = ExactExpPoly;
using Poly = ExactPolynomial;

inline GR q(long num, long den = 1) { return GR(Rational(num, den)); }
inline GR cq(long re_num, long re_den, long im_num, long im_den) {
    return GR(Rational(re_num, re_den), Rational(im_num, im_den));
}
inline EP c(const GR& v) { return EP::constant(v); }
inline EP z_poly() { return EP(Poly::identity()); }
/// exp(zeta z^n) with unit coefficient.
inline EP ex(const GR& zeta, int n = 1) { return EP::term(n, zeta, c(q(1))); }

/// Small random towers: orders 1..2, frequencies with small rational parts,
/// polynomial coefficients of degree <= 2.
class TowerGenerator {
public:
    explicit TowerGenerator(std::uint64_t seed) : rng_(seed) {}

    GR small_rational(int range = 3) {
        std::uniform_int_distribution<long> num(-range, range), den(1, 3);
        return GR(Rational(num(rng_), den(rng_)));
    }
    GR small_gaussian(int range = 3) {
        std::bernoulli_distribution complex_part(0.3);
        GR v = small_rational(range);
        if (complex_part(rng_)) v += GR(Rational(0), small_rational(range).re());
        return v;
    }
    Poly polynomial(int max_degree = 2) {
        std::uniform_int_distribution<int> deg(0, max_degree);
        std::vector<GR> cs;
        int d = deg(rng_);
        for (int k = 0; k <= d; ++k) cs.push_back(small_gaussian());
        return Poly(cs);
    }
    EP tower(int order) {
        if (order == 0) return EP(polynomial());
        std::uniform_int_distribution<int> count(1, 3);
        std::bernoulli_distribution with_h0(0.6);
        EP acc = with_h0(rng_) ? tower(order - 1) : EP::zero();
        int m = count(rng_);
        for (int j = 0; j < m; ++j) {
            GR zeta = small_gaussian();
            if (zeta.is_zero()) zeta = q(1);
            EP coeff = tower(order - 1);
            if (coeff.is_zero()) coeff = c(q(1));
            acc = acc + EP::term(order, zeta, coeff);
        }
        return acc;
    }
    EP random_tower() {
        std::uniform_int_distribution<int> ord(0, 2);
        return tower(ord(rng_));
    }
    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace osc::testing
