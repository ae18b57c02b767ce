#pragma once

#include "osc/exppoly.hpp"

#include <stdexcept>

namespace osc::numerics {

/// f = pi * exp(g) with exponential-polynomial pi and g.
template <Scalar S>
struct SolutionForm {
    ExpPoly<S> pi;
    ExpPoly<S> g;
};

template <Scalar S>
struct VerifyResult {
    bool exact = false;
    ExpPoly<S> residual;
};

/// Residual pi'' + 2 g' pi' + (g'' + g'^2 + a) pi, which vanishes iff pi e^g solves f'' + a f = 0.
template <Scalar S>
VerifyResult<S> verify_solution(const SolutionForm<S>& sol, const ExpPoly<S>& a) {
    if (sol.pi.is_zero()) throw std::domain_error("verify_solution: pi is identically zero");
    ExpPoly<S> p1 = differentiate(sol.pi), p2 = differentiate(p1);
    ExpPoly<S> g1 = differentiate(sol.g), g2 = differentiate(g1);
    ExpPoly<S> two = ExpPoly<S>::constant(scalar_traits<S>::from_int(2));
    ExpPoly<S> r = p2 + two * g1 * p1 + (g2 + g1 * g1 + a) * sol.pi;
    return {equals_zero(r), r};
}

/// f'/f = pi'/pi + g' as a numerator over pi.
template <Scalar S>
ExpPoly<S> derivative_numerator(const SolutionForm<S>& sol) {
    return differentiate(sol.pi) + sol.pi * differentiate(sol.g);
}

}  // namespace osc::numerics
