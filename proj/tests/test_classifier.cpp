#include "osc/classifier.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace osc;
using namespace osc::testing;

namespace {

bool has(const std::vector<Verdict>& vs, Conclusion c) {
    return std::any_of(vs.begin(), vs.end(), [&](const Verdict& v) { return v.conclusion == c; });
}

GR unit_rotation(const Rational& t) {
    Rational d = 1 + t * t;
    return GR((1 - t * t) / d, (2 * t) / d);
}

// A = e^z + e^{rho z}
EP rho_pair(long num, long den) { return ex(q(1)) + ex(q(num, den)); }

struct KnownSolution {
    std::string name;
    EP a;
    int lambda;  // exponent of convergence of some nontrivial solution; -1 if only known finite
};

std::vector<KnownSolution> known_solutions() {
    std::vector<KnownSolution> out;
    out.push_back({"e^z - 1/16", ex(q(1)) - c(q(1, 16)), 0});
    out.push_back({"e^z - 9/16", ex(q(1)) - c(q(9, 16)), 1});
    out.push_back({"collinear, exp(e^-z + e^z)",
                   c(q(2)) - ex(q(-1)) - ex(q(-2)) - ex(q(1)) - ex(q(2)), 0});
    out.push_back({"collinear, exp(e^-z + e^2z)",
                   c(q(4)) * (ex(q(1)) - ex(q(2)) - ex(q(4))) - ex(q(-1)) - ex(q(-2)), 0});
    out.push_back({"(e^z + 1) exp(...)",
                   c(q(-1, 4)) * (ex(q(2)) - c(q(4)) * ex(q(1)) + c(q(3)) - c(q(4)) * ex(q(-1)) + ex(q(-2))), 1});
    out.push_back({"exp(e^z/2 - z)", c(q(-1, 4)) * (ex(q(2)) - c(q(2)) * ex(q(1)) + c(q(4))), 0});
    out.push_back({"exp(-e^z)", -(ex(q(1)) + ex(q(2))), 0});
    out.push_back({"exp(e^{z^2})", -(c(q(2)) + c(q(4)) * z_poly() * z_poly()) * ex(q(1), 2) -
                                        c(q(4)) * z_poly() * z_poly() * ex(q(2), 2),
                   0});
    out.push_back({"sixteenth, P = z^2", synth_sixteenth(Poly{q(0), q(0), q(1)}).A, 0});
    out.push_back({"zero-free base, P = z^2 + z", synth_zero_free_base(Poly{q(0), q(1), q(1)}), 0});
    out.push_back({"referee, T = e^{z^2}", synth_referee_B(ex(q(1), 2)).A, 0});
    return out;
}

}  // namespace

TEST(TwoTerm, CaseExamples) {
    EXPECT_EQ(check_two_term(q(1), q(4), 1, true).conclusion, Conclusion::LambdaAtLeastN);
    EXPECT_EQ(check_two_term(q(1), GR::i(), 1, false).conclusion, Conclusion::LambdaInfinite);
    EXPECT_EQ(check_two_term(q(1), q(-2), 1, false).conclusion, Conclusion::LambdaInfinite);
    EXPECT_EQ(check_two_term(q(4), q(4), 2, true).conclusion, Conclusion::LambdaAtLeastN);
    EXPECT_EQ(check_two_term(q(9), q(10), 1, false).conclusion, Conclusion::LambdaAtLeastN);
    EXPECT_EQ(check_two_term(q(9), q(10), 1, true).conclusion, Conclusion::Inconclusive);
    // label order does not matter
    EXPECT_EQ(check_two_term(q(4), q(1), 1, true).conclusion, Conclusion::LambdaAtLeastN);
}

TEST(TwoTerm, BoundaryWindowCitesZeroFreeExamples) {
    for (long k = 50; k <= 75; ++k) {
        Verdict v = check_two_term(q(k, 100), q(1), 1, false);
        EXPECT_EQ(v.conclusion, Conclusion::Inconclusive) << k;
        EXPECT_GE(v.theorem.size(), 2u);
    }
    Verdict v = check_two_term(q(3), q(4), 1, true);
    EXPECT_EQ(v.conclusion, Conclusion::Inconclusive);
    EXPECT_THROW(check_two_term(q(0), q(1), 1, false), std::domain_error);
}

TEST(TwoTerm, UnequalDegreesGiveInfiniteExponent) {
    auto vs = classify(ex(q(1), 2) + ex(q(3)));
    EXPECT_TRUE(has(vs, Conclusion::LambdaInfinite));
    EXPECT_TRUE(has(classify(ex(q(1), 2) + ex(q(3)) + ex(q(5)) + c(q(2))), Conclusion::LambdaInfinite));
}

TEST(Perimeter, Examples) {
    EXPECT_EQ(check_perimeter(ex(q(1), 3)).conclusion, Conclusion::LambdaAtLeastN);
    EXPECT_EQ(check_perimeter(rho_pair(9, 10)).conclusion, Conclusion::LambdaAtLeastN);
    EXPECT_EQ(check_perimeter(rho_pair(1, 2)).conclusion, Conclusion::Inconclusive);
    EXPECT_EQ(check_perimeter(ex(q(1)) - c(q(1, 16))).conclusion, Conclusion::Inconclusive);
}

// Threshold from N(r,1/A) ~ (1 - rho) r / pi against T(r,A) ~ r / pi: ratio > 4 iff rho > 3/4.
TEST(Perimeter, ScanOverRho) {
    for (long k = 1; k <= 99; ++k) {
        Verdict v = check_perimeter(rho_pair(k, 100));
        bool pass = v.conclusion == Conclusion::LambdaAtLeastN;
        EXPECT_EQ(pass, k > 75) << "rho = " << k << "/100";
    }
}

TEST(Ramification, Examples) {
    EXPECT_EQ(check_theta_ramification(ex(q(1)), 4.5).conclusion, Conclusion::LambdaBarAtLeastRho);
    EXPECT_EQ(check_theta_ramification(rho_pair(9, 10), 4.5).conclusion, Conclusion::LambdaAtLeastN);
    // rho = 0.6: Theta = 1 - 0.8/2 = 0.6, too small for K = 4.5; part (2) needs C(W0) > K C(W)
    Verdict mid = check_theta_ramification(rho_pair(6, 10), 4.5);
    EXPECT_EQ(mid.conclusion, Conclusion::Inconclusive);
    EXPECT_EQ(mid.trace[2].value.rfind("0.59999999999999998", 0), 0u) << mid.trace[2].value;
    EXPECT_EQ(check_theta_ramification(rho_pair(6, 10), 2.2).conclusion, Conclusion::MaxLambdaBarFFprimeAtLeastRho);
    EXPECT_EQ(check_theta_ramification(rho_pair(1, 10), 4.5).conclusion, Conclusion::Inconclusive);
    EXPECT_THROW(check_theta_ramification(ex(q(1)), 0.0), std::domain_error);
    EXPECT_THROW(check_theta_ramification(ex(q(1)), -1.0), std::domain_error);
}

TEST(IndicatorDomination, Examples) {
    EXPECT_EQ(check_indicator_domination(rho_pair(2, 5), 1).conclusion, Conclusion::LambdaAtLeastN);
    // the equality case: A = -e^z - e^{2z}, removing e^{2z} leaves h_A = 2 h_B
    EXPECT_EQ(check_indicator_domination(-(ex(q(1)) + ex(q(2))), 1).conclusion, Conclusion::Inconclusive);
    EXPECT_THROW(check_indicator_domination(ex(q(1)), 0), std::domain_error);
    EXPECT_THROW(check_indicator_domination(rho_pair(2, 5), 2), std::out_of_range);
    // dispatcher keeps the first passing index
    Verdict v = best_indicator_domination(rho_pair(2, 5));
    EXPECT_EQ(v.conclusion, Conclusion::LambdaAtLeastN);
}

TEST(OppositeCollinear, Examples) {
    EXPECT_EQ(check_opposite_collinear(ex(q(1)) + ex(q(-1)) + c(q(1))).conclusion, Conclusion::LambdaInfinite);
    Verdict v = check_opposite_collinear(c(q(2)) - ex(q(-1)) - ex(q(-2)) - ex(q(1)) - ex(q(2)));
    EXPECT_EQ(v.conclusion, Conclusion::Inconclusive);
    EXPECT_EQ(v.theorem.size(), 2u);
    EXPECT_EQ(check_opposite_collinear(ex(q(1)) + ex(q(-1)) + ex(q(1), 2) * ex(q(-1))).conclusion,
              Conclusion::Inconclusive);
}

TEST(Synthesis, Sixteenth) {
    auto s = synth_sixteenth(Poly{q(0), q(1)});
    EXPECT_EQ(s.Q, Poly{q(-1, 16)});
    EXPECT_EQ(s.A, ex(q(1)) - c(q(1, 16)));
    auto s2 = synth_sixteenth(Poly{q(0), q(0), q(1)});
    EXPECT_EQ(s2.Q, (Poly{q(1, 2), q(0), q(-1, 4)}));
    EXPECT_THROW(synth_sixteenth(Poly{q(3)}), std::domain_error);
}

TEST(Synthesis, ZeroFreeBaseRoundTrip) {
    TowerGenerator gen(41);
    for (int k = 0; k < 60; ++k) {
        Poly p = gen.polynomial(3);
        if (p.degree() < 1) continue;
        Poly p0 = p - Poly::constant(p.coeff(0));
        EP a = synth_zero_free_base(p);
        auto back = match_zero_free_base(a);
        ASSERT_TRUE(back.has_value()) << a;
        EXPECT_EQ(*back, p0);
    }
    EP a = c(q(-1, 4)) * ex(q(2), 2) - c(q(1)) * EP(Poly{q(-1), q(0), q(1)});
    auto p = match_zero_free_base(a);
    ASSERT_TRUE(p.has_value());
    EXPECT_EQ(*p, (Poly{q(0), q(0), q(1)}));
    EXPECT_FALSE(match_zero_free_base(a + c(q(1))).has_value());
}

TEST(Synthesis, RefereeB) {
    auto r = synth_referee_B(ex(q(1), 2));
    EXPECT_EQ(r.B, (Poly{q(1, 2), q(0), q(-1, 4)}));
    auto r3 = synth_referee_B(c(q(5)) * ex(cq(1, 1, 1, 1), 3));
    EXPECT_EQ(r3.B.degree(), 4);
    EXPECT_THROW(synth_referee_B(z_poly() * ex(q(1), 2)), std::domain_error);
    EXPECT_THROW(synth_referee_B((ex(q(1)) + c(q(1))) * ex(q(1), 2)), std::domain_error);
}

TEST(Classify, Examples) {
    auto q1 = classify(ex(q(1)) - c(q(1, 16)));
    EXPECT_TRUE(has(q1, Conclusion::ZeroFreeBasePossible));
    EXPECT_TRUE(has(q1, Conclusion::ZeroFreeBaseExists));
    for (const auto& v : q1)
        if (v.conclusion == Conclusion::ZeroFreeBasePossible) {
            EXPECT_FALSE(v.advisory.empty());
        }
    EXPECT_TRUE(has(classify(ex(q(1)) - c(q(1, 4))), Conclusion::LambdaInfinite));
    EXPECT_TRUE(has(classify(ex(q(1))), Conclusion::LambdaAtLeastN));
    EXPECT_TRUE(has(classify(ex(q(1))), Conclusion::LambdaBarAtLeastRho));
    EXPECT_THROW(classify(EP::zero()), std::domain_error);
    for (const auto& v : classify(rho_pair(1, 3) + c(q(7))))
        EXPECT_FALSE(v.theorem.empty()) << v.check;
}

TEST(Classify, SoundOnKnownSolutions) {
    for (const auto& k : known_solutions()) {
        ASSERT_FALSE(k.a.is_zero()) << k.name;
        for (const auto& v : classify(k.a)) {
            EXPECT_NE(v.conclusion, Conclusion::LambdaInfinite) << k.name << " via " << v.check;
            if (k.lambda >= 0 && k.lambda < k.a.order()) {
                EXPECT_NE(v.conclusion, Conclusion::LambdaAtLeastN) << k.name << " via " << v.check;
                if (k.lambda == 0) {
                    EXPECT_NE(v.conclusion, Conclusion::LambdaBarAtLeastRho) << k.name << " via " << v.check;
                }
            }
        }
    }
}

// z -> w z turns f'' + A f = 0 into g'' + w^2 A(w z) g = 0.
TEST(Properties, ClassifyInvariantUnderRotation) {
    TowerGenerator gen(43);
    std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
    std::vector<EP> pool;
    for (const auto& k : known_solutions()) pool.push_back(k.a);
    for (long k : {10, 40, 60, 80, 90}) pool.push_back(rho_pair(k, 100));
    pool.push_back(ex(q(1), 2) + ex(q(3)));
    int cases = 0;
    for (int trial = 0; cases < 120 && trial < 600; ++trial) {
        EP a = trial < 200 ? pool[trial % pool.size()] : gen.random_tower();
        if (a.is_zero()) continue;
        GR w = unit_rotation(Rational(num(gen.rng()), den(gen.rng())));
        EP b = c(w * w) * scale_argument(a, w);
        auto va = classify(a), vb = classify(b);
        ASSERT_EQ(va.size(), vb.size());
        for (std::size_t j = 0; j < va.size(); ++j) {
            EXPECT_EQ(va[j].check, vb[j].check);
            EXPECT_EQ(va[j].conclusion, vb[j].conclusion) << a << " rotated by " << w << " check " << va[j].check;
        }
        ++cases;
    }
    EXPECT_GE(cases, 100);
}
