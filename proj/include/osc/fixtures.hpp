#pragma once

#include "osc/numerics/solution.hpp"

#include <optional>
#include <string>
#include <vector>

namespace osc {

/// A worked coefficient, optionally with a closed-form solution pi e^g.
struct Fixture {
    std::string name;
    std::string description;
    ExactExpPoly a;
    std::optional<numerics::SolutionForm<GaussianRational>> solution;
    std::optional<ExactExpPoly> split_b;  // audit split a = B + C
    GaussianRational target1{0}, target2{0};
    std::vector<std::string> analyses;
};

namespace fixture_detail {

inline GaussianRational q(long num, long den = 1) { return GaussianRational(Rational(num, den)); }
inline GaussianRational qi(long num, long den = 1) { return GaussianRational(Rational(0), Rational(num, den)); }
inline ExactExpPoly k(const GaussianRational& v) { return ExactExpPoly::constant(v); }
inline ExactExpPoly z() { return ExactExpPoly(ExactPolynomial::identity()); }
inline ExactExpPoly e(const GaussianRational& zeta, int n = 1) { return ExactExpPoly::term(n, zeta, k(q(1))); }

}  // namespace fixture_detail

inline std::vector<Fixture> fixtures() {
    using namespace fixture_detail;
    const std::vector<std::string> all = {"classify", "characteristic", "sectors", "zeros", "audits", "schwarzian"};
    const std::vector<std::string> no_audit = {"classify", "characteristic", "sectors", "zeros", "schwarzian"};
    std::vector<Fixture> out;

    // solutions exp(2i e^{z/2} - z/4) and its q = 3 companion
    ExactExpPoly g_sixteenth = k(qi(2)) * e(q(1, 2)) - k(q(1, 4)) * z();
    out.push_back({"ez-minus-1-16", "e^z - 1/16 with zero-free solution exp(2i e^{z/2} - z/4)", e(q(1)) - k(q(1, 16)),
                   numerics::SolutionForm<GaussianRational>{k(q(1)), g_sixteenth}, std::nullopt, q(0), q(1), all});
    out.push_back({"ez-minus-9-16", "e^z - 9/16 with solution ((i/2) e^{-z/2} + 1) exp(2i e^{z/2} - z/4)",
                   e(q(1)) - k(q(9, 16)),
                   numerics::SolutionForm<GaussianRational>{k(qi(1, 2)) * e(q(-1, 2)) + k(q(1)), g_sixteenth},
                   std::nullopt, q(0), q(1), all});

    ExactExpPoly half = k(q(-1, 4)) * (e(q(2)) - k(q(2)) * e(q(1)) + k(q(4)));
    ExactExpPoly g_half = k(q(1, 2)) * e(q(1)) - z();
    out.push_back({"half-exp-ez", "-(e^{2z} - 2e^z + 4)/4 with f = exp(e^z/2 - z), B = -e^z(e^z - 2)/4", half,
                   numerics::SolutionForm<GaussianRational>{k(q(1)), g_half},
                   k(q(-1, 4)) * e(q(1)) * (e(q(1)) - k(q(2))), q(0), q(1), all});
    // g = f'/f = (e^z - 2)/2; B = -g^2, C = -g'
    ExactExpPoly gg = k(q(1, 2)) * (e(q(1)) - k(q(2)));
    out.push_back({"half-exp-ez-split", "the same equation split as B = -(f'/f)^2, C = -(f'/f)'", half,
                   numerics::SolutionForm<GaussianRational>{k(q(1)), g_half}, -(gg * gg), q(0), q(1), all});

    ExactExpPoly squared = k(q(-1, 16)) * (e(q(1)) + k(q(1))) * (e(q(1)) + k(q(1)));
    out.push_back({"ez-plus-one-squared", "-(e^z + 1)^2/16 with f = exp((e^z - z)/4)", squared,
                   numerics::SolutionForm<GaussianRational>{k(q(1)), k(q(1, 4)) * (e(q(1)) - z())}, std::nullopt,
                   q(0), q(-1, 16), all});

    ExactExpPoly rn = k(q(-49, 4)) - k(q(36)) * e(q(-1)) - k(q(9)) * e(q(-2));
    out.push_back({"two-factor-product", "-49/4 - 36e^{-z} - 9e^{-2z} with f = (e^z+1)(e^z+1/2) exp(3e^{-z} - 11z/2)",
                   rn,
                   numerics::SolutionForm<GaussianRational>{(e(q(1)) + k(q(1))) * (e(q(1)) + k(q(1, 2))),
                                                            k(q(3)) * e(q(-1)) - k(q(11, 2)) * z()},
                   std::nullopt, q(0), q(-49, 4), all});

    ExactExpPoly unnamed =
        k(q(-1, 4)) * (e(q(2)) - k(q(4)) * e(q(1)) + k(q(3)) - k(q(4)) * e(q(-1)) + e(q(-2)));
    out.push_back({"ez-plus-one-factor", "-e^{-2z}(e^{4z} - 4e^{3z} + 3e^{2z} - 4e^z + 1)/4 with f = (e^z + 1) exp(-e^{-z}/2 - e^z/2 - z/2)",
                   unnamed,
                   numerics::SolutionForm<GaussianRational>{
                       e(q(1)) + k(q(1)), k(q(-1, 2)) * (e(q(-1)) + e(q(1)) + z())},
                   std::nullopt, q(0), q(1), all});

    out.push_back({"exp-exp-z", "-e^z - e^{2z} with f = exp(e^z); also P(e^z) with P(w) = -w^2 - w",
                   -(e(q(1)) + e(q(2))), numerics::SolutionForm<GaussianRational>{k(q(1)), e(q(1))},
                   std::nullopt, q(0), q(1), all});
    ExactExpPoly z2 = z() * z();
    out.push_back({"exp-exp-z-squared", "-(2 + 4z^2) e^{z^2} - 4z^2 e^{2z^2} with f = exp(e^{z^2})",
                   -(k(q(2)) + k(q(4)) * z2) * e(q(1), 2) - k(q(4)) * z2 * e(q(2), 2),
                   numerics::SolutionForm<GaussianRational>{k(q(1)), e(q(1), 2)}, std::nullopt, q(0), q(1), all});

    out.push_back({"collinear-pair", "-e^{-z} - e^{-2z} - e^z - e^{2z} + 2 with f = exp(e^{-z} + e^z)",
                   k(q(2)) - e(q(-1)) - e(q(-2)) - e(q(1)) - e(q(2)),
                   numerics::SolutionForm<GaussianRational>{k(q(1)), e(q(-1)) + e(q(1))}, std::nullopt, q(0), q(2),
                   all});
    out.push_back({"collinear-pair2", "-e^{-z} - e^{-2z} + 4e^z - 4e^{2z} - 4e^{4z} with f = exp(e^{-z} + e^{2z})",
                   -e(q(-1)) - e(q(-2)) + k(q(4)) * (e(q(1)) - e(q(2)) - e(q(4))),
                   numerics::SolutionForm<GaussianRational>{k(q(1)), e(q(-1)) + e(q(2))}, std::nullopt, q(0), q(1),
                   all});

    ExactExpPoly square = e(qi(1)) + e(qi(-1)) - e(q(1)) - e(q(-1)) + e(qi(2)) + e(qi(-2)) - e(q(2)) - e(q(-2)) +
                          k(qi(2)) * (e(GaussianRational(1, -1)) + e(GaussianRational(-1, 1))) -
                          k(qi(2)) * (e(GaussianRational(1, 1)) + e(GaussianRational(-1, -1)));
    out.push_back({"square-hull", "zero-free solution exp(e^z + e^{-z} + e^{iz} + e^{-iz}); hull circumference 8 sqrt 2",
                   square,
                   numerics::SolutionForm<GaussianRational>{k(q(1)), e(q(1)) + e(q(-1)) + e(qi(1)) + e(qi(-1))},
                   std::nullopt, q(0), q(1), all});

    out.push_back({"three-exponentials", "e^z + e^{2z} + e^{3z}: few zeros in the left half-plane",
                   e(q(1)) + e(q(2)) + e(q(3)), std::nullopt, std::nullopt, q(0), q(1), no_audit});
    return out;
}

inline std::optional<Fixture> find_fixture(const std::string& name) {
    for (auto& f : fixtures())
        if (f.name == name) return f;
    return std::nullopt;
}

}  // namespace osc
