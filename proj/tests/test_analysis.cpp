#include "osc/fixtures.hpp"
#include "osc/numerics/audits.hpp"
#include "osc/numerics/schwarzian.hpp"
#include "osc/numerics/sectors.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace osc;
using namespace osc::numerics;
using namespace osc::testing;

namespace {

constexpr double pi = std::numbers::pi;

AuditTable audit_fixture(const std::string& name) {
    auto fx = *find_fixture(name);
    AuditOptions<GR> opt;
    opt.target1 = c(fx.target1);
    opt.target2 = c(fx.target2);
    return audit_inequalities(*fx.solution, fx.a, fx.split_b, {20.0, 30.0}, opt);
}

}  // namespace

TEST(Audits, HalfExampleSplitIsSharp) {
    auto t = audit_fixture("half-exp-ez");
    EXPECT_TRUE(t.equal_at_all("split_zeros"));
    // C = -1 has no proximity, so adding m(r, C) changes nothing
    EXPECT_TRUE(t.equal_at_all("split_zeros_plus_proximity"));
    // counting zeros of f'' as well doubles the right side
    EXPECT_TRUE(t.strict_at_all("second_derivative_zeros"));
    for (const auto& row : t.rows) EXPECT_TRUE(row.heuristic);
}

TEST(Audits, PowerExampleTwoTargetsIsSharp) {
    auto t = audit_fixture("ez-plus-one-squared");
    EXPECT_TRUE(t.equal_at_all("two_targets"));
    EXPECT_TRUE(t.equal_at_all("half_proximity"));
}

TEST(Audits, RationalExampleHalfProximitySharpTwoTargetsStrict) {
    auto t = audit_fixture("two-factor-product");
    EXPECT_TRUE(t.equal_at_all("half_proximity"));
    EXPECT_TRUE(t.strict_at_all("two_targets"));
    // m(r, f'/f) ~ r/pi against reduced counts 3r/(2 pi) for the targets 0 and -49/4
    auto* lo = t.find("two_targets", 20.0);
    auto* hi = t.find("two_targets", 30.0);
    ASSERT_TRUE(lo && hi);
    EXPECT_NEAR((hi->rhs - lo->rhs) / (hi->lhs - lo->lhs), 1.5, 0.1);
}

TEST(Audits, Preconditions) {
    auto fx = *find_fixture("half-exp-ez");
    EXPECT_THROW(audit_inequalities(*fx.solution, fx.a + c(q(1)), fx.split_b, {20.0, 30.0}), std::domain_error);
    EXPECT_THROW(audit_inequalities(*fx.solution, fx.a, fx.split_b, {20.0}), std::invalid_argument);
    AuditOptions<GR> same;
    same.target2 = same.target1;
    EXPECT_THROW(audit_inequalities(*fx.solution, fx.a, fx.split_b, {20.0, 30.0}, same), std::invalid_argument);
}

TEST(Audits, CoefficientIndicatorIsTwiceDerivativeIndicator) {
    auto fx = *find_fixture("half-exp-ez");
    auto rep = audit_gprime_comparison(*fx.solution, fx.a, 720);
    EXPECT_FALSE(rep.order_mismatch);
    EXPECT_LT(rep.max_indicator_deviation, 1e-9);
    EXPECT_GT(rep.positive_samples, 300);
    EXPECT_TRUE(rep.part1_ok);
    EXPECT_TRUE(rep.part2_ok);
    EXPECT_TRUE(rep.part3_ok);
    ASSERT_EQ(rep.characteristic.size(), 3u);
    // T(r, A) = 2 T(r, g') + O(1): both are multiples of r/pi
    EXPECT_NEAR(rep.characteristic.back().t_a / rep.characteristic.back().t_gp, 2.0, 0.05);
}

TEST(Audits, ZeroFreeBaseFixtureHasMatchingOrders) {
    // g' = i e^{z/2} - 1/4 is a first-order tower like A = e^z - 1/16, so no fallback is needed
    auto fx = *find_fixture("ez-minus-1-16");
    auto rep = audit_gprime_comparison(*fx.solution, fx.a, 720);
    EXPECT_EQ(rep.order_a, 1);
    EXPECT_EQ(rep.order_gp, 1);
    EXPECT_FALSE(rep.order_mismatch);
    EXPECT_LT(rep.max_indicator_deviation, 1e-9);
    EXPECT_TRUE(rep.part1_ok && rep.part2_ok && rep.part3_ok);
}

TEST(Audits, SampledRatioFallback) {
    std::vector<double> thetas;
    for (int j = 0; j < 64; ++j) thetas.push_back(-1.4 + 2.8 * j / 63);
    // log|e^{2z}| = 2 log|e^z| on the right half-plane
    EXPECT_LT(sampled_indicator_ratio(FlatExpPoly(ex(q(2))), FlatExpPoly(ex(q(1))), thetas, 30.0), 1e-12);
    EXPECT_NEAR(sampled_indicator_ratio(FlatExpPoly(ex(q(3))), FlatExpPoly(ex(q(1))), thetas, 30.0), 0.5, 1e-12);
}

TEST(Audits, RefereeCondition) {
    auto constant = audit_referee_condition(c(q(-1, 16)), 1.0, 1, 0.5, 256, 30.0);
    EXPECT_TRUE(constant.pass);
    EXPECT_LE(constant.max_s_hat, 0.0);

    // e^{0.4 z}: s(theta) = 0.4 up to r^alpha / r
    auto below = audit_referee_condition(ex(q(2, 5)), 1.0, 1, 0.1, 256, 1000.0);
    EXPECT_TRUE(below.pass);
    EXPECT_NEAR(below.max_s_hat, 0.4, 0.005);

    // e^{z/2} sits on the excluded boundary s = 1/2
    auto boundary = audit_referee_condition(ex(q(1, 2)), 1.0, 1, 0.1, 256, 1000.0);
    EXPECT_FALSE(boundary.pass);
    EXPECT_NEAR(boundary.max_s_hat, 0.5, 0.005);

    EXPECT_THROW(audit_referee_condition(ex(q(1)), 1.0, 1, 1.0, 16, 10.0), std::invalid_argument);
}

TEST(Sectors, ThreeExponentialsNegativeHalfPlane) {
    auto rep = sector_report(ex(q(1)) + ex(q(2)) + ex(q(3)), 0.1);
    ASSERT_EQ(rep.negative_sectors.size(), 2u);
    EXPECT_TRUE(rep.wraparound);
    EXPECT_NEAR(rep.negative_sectors[0].alpha, -pi, 1e-12);
    EXPECT_NEAR(rep.negative_sectors[0].beta, -pi / 2, 1e-9);
    EXPECT_NEAR(rep.negative_sectors[1].alpha, pi / 2, 1e-9);
    EXPECT_NEAR(rep.negative_sectors[1].beta, pi, 1e-12);
    EXPECT_TRUE(rep.widths_ok);
    EXPECT_NEAR(rep.dominant, 0.0, 1e-12);
    EXPECT_NEAR(rep.dominant_value, 3.0, 1e-12);
    EXPECT_NEAR(rep.dominant_sector.alpha, -0.1, 1e-12);
    EXPECT_TRUE(rep.cone_bound_holds);
}

TEST(Sectors, NoNegativeSectors) {
    auto shifted = sector_report(ex(q(1)) - c(q(1, 16)), 0.1);
    EXPECT_TRUE(shifted.negative_sectors.empty());
    EXPECT_NEAR(shifted.dominant, 0.0, 1e-12);
    // maxima at 0 and pi tie; the smaller angle wins
    auto pair = sector_report(ex(q(1)) + ex(q(-1)), 0.1);
    EXPECT_TRUE(pair.negative_sectors.empty());
    EXPECT_NEAR(pair.dominant, 0.0, 1e-12);
    // a single rotated frequency peaks at -arg(zeta)
    auto rotated = sector_report(ex(GR::i()), 0.1);
    EXPECT_NEAR(rotated.dominant, -pi / 2, 1e-12);
    ASSERT_EQ(rotated.negative_sectors.size(), 1u);
    EXPECT_NEAR(rotated.negative_sectors[0].alpha, 0.0, 1e-9);
    EXPECT_NEAR(rotated.negative_sectors[0].beta, pi, 1e-9);
    EXPECT_FALSE(rotated.wraparound);
}

TEST(Sectors, ConstantCoefficientCensus) {
    // sin, cos and cos - sin each vanish three times on (0.1, 10); no other zeros in the sector
    auto census = sector_zero_census(FlatExpPoly(c(q(1))), {-pi / 4, pi / 4}, 10.0);
    ASSERT_EQ(census.censuses.size(), 3u);
    for (const auto& cz : census.censuses) {
        EXPECT_TRUE(cz.complete);
        EXPECT_EQ(cz.count, 3);
    }
    EXPECT_LT(census.wronskian_deviation.at(0), 1e-8);
}

TEST(Sectors, FewZerosLeftManyRight) {
    FlatExpPoly a(ex(q(1)) + ex(q(2)) + ex(q(3)));
    auto left = sector_zero_census(a, {pi / 2 + 0.2, pi - 0.2}, 12.0);
    long total = 0;
    for (const auto& cz : left.censuses) {
        EXPECT_TRUE(cz.complete);
        total += cz.count;
    }
    EXPECT_LE(total, 3);

    auto right = sector_zero_census(a, {-0.3, 0.3}, 4.0);
    for (const auto& cz : right.censuses) {
        EXPECT_TRUE(cz.complete);
        EXPECT_GT(cz.count, 20);
    }
    // the real solution with f(0) = 1, f'(0) = 0 has its sector zeros on the real axis
    auto ray = count_zeros_real_ray(a, 0.0, 4.0, {1.0, 0.0});
    long beyond = 0;
    for (const auto& z : ray.zeros) beyond += z.z.real() > 0.1;
    EXPECT_EQ(right.censuses[0].count, beyond);
}

TEST(Sectors, ExponentialCountGrowth) {
    // J0-type solutions: zeros up to r grow like e^{r/2}
    auto census = sector_zero_census(FlatExpPoly(ex(q(1))), {-0.3, 0.3}, 8.0);
    const auto& cum = census.cumulative[0];
    const auto& r = census.ring_radii;
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < cum.size(); ++k)
        if (cum[k] >= 5) xs.push_back(r[k]), ys.push_back(std::log(static_cast<double>(cum[k])));
    ASSERT_GE(xs.size(), 4u);
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) mx += xs[k], my += ys[k];
    mx /= xs.size(), my /= ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) sxy += (xs[k] - mx) * (ys[k] - my), sxx += (xs[k] - mx) * (xs[k] - mx);
    EXPECT_NEAR(sxy / sxx, 0.5, 0.1);
}

TEST(Schwarzian, ClosedFormsAgainstFiniteDifferences) {
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> u(-0.8, 0.8), g(0.1, 0.9), s(0.05, 0.95);
    for (int k = 0; k < 100; ++k) {
        std::complex<double> z;
        do z = {u(rng), u(rng)};
        while (std::abs(z) > 0.8);
        double gamma = g(rng);
        LensMap lens{s(rng)};
        SectorMap sector{gamma, 0.3};
        std::complex<long double> zl(z.real(), z.imag());
        auto fd_t = std::complex<double>(extrapolated_schwarzian(lens, zl, 1e-3L));
        auto fd_l = std::complex<double>(extrapolated_schwarzian(sector, zl, 1e-3L));
        EXPECT_LT(std::abs(fd_t - schwarzian_T(z)) / std::abs(schwarzian_T(z)), 1e-6) << z;
        EXPECT_LT(std::abs(fd_l - schwarzian_L(z, gamma)) / std::abs(schwarzian_L(z, gamma)), 1e-6) << z;
        auto d = (lens(z + 1e-6) - lens(z - 1e-6)) / 2e-6;
        EXPECT_LT(std::abs(d - lens.derivative(z)) / std::abs(d), 1e-7);
    }
}

TEST(Schwarzian, SpecialValuesAndScan) {
    EXPECT_DOUBLE_EQ(schwarzian_T(0.0).real(), 1.5);
    EXPECT_EQ(schwarzian_L({0.3, -0.4}, 1.0), std::complex<double>(0.0));
    // the lens boundary meets the unit circle at 1 = T(-i)
    LensMap lens{0.95};
    EXPECT_LT(std::abs(lens(std::complex<double>(0, -1)) - 1.0), 1e-12);
    EXPECT_LT(phi_bound_scan(0.95, 0.5, 0.9, 10000), 2.0);
    EXPECT_THROW(schwarzian_T({1.0, 0.0}), std::domain_error);
}

namespace {

// Zeros of J0 from McMahon's expansion polished by Newton steps.
double bessel_j0_zero(int k) {
    double b = (k - 0.25) * pi;
    double x = b + 1 / (8 * b) - 31 / (384 * b * b * b);
    for (int it = 0; it < 4; ++it) x += std::cyl_bessel_j(0.0, x) / std::cyl_bessel_j(1.0, x);
    return x;
}

}  // namespace

TEST(Properties, SturmOrdering) {
    // A = P(e^x) >= (a_n/2) e^{nx} on [x1, 10]; y = J0((2 sqrt(c)/n) e^{nx/2}) solves
    // y'' + c e^{nx} y = 0 with c = a_n/2, so f vanishes between consecutive zeros of y there
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> degree(1, 2), coef(-4, 4), lead(1, 4);
    std::uniform_real_distribution<double> init(-1, 1);
    for (int trial = 0; trial < 20; ++trial) {
        int n = degree(rng);
        long an = lead(rng);
        EP a = c(q(an)) * ex(q(n));
        for (int k = 0; k < n; ++k) a = a + c(q(coef(rng), 2)) * (k == 0 ? c(q(1)) : ex(q(k)));
        FlatExpPoly fa(a);
        double cc = an / 2.0;
        double x1 = 0;
        for (double x = 10; x >= 0; x -= 1e-3)
            if (fa.eval(x).real() < cc * std::exp(n * x)) {
                x1 = x + 1e-3;
                break;
            }
        auto census = count_zeros_real_ray(fa, 0.0, 10.0, {init(rng), init(rng)});
        ASSERT_TRUE(census.complete);
        std::vector<double> fz;
        for (const auto& z : census.zeros) fz.push_back(z.z.real());

        double scale = 2 * std::sqrt(cc) / n;
        auto to_x = [&](double t) { return 2.0 / n * std::log(t / scale); };
        std::vector<double> yz;
        for (int k = 1;; ++k) {
            double x = to_x(bessel_j0_zero(k));
            if (x > 10) break;
            if (x >= x1) yz.push_back(x);
        }
        int gaps = 0;
        for (std::size_t k = 0; k + 1 < yz.size(); ++k) {
            auto it = std::lower_bound(fz.begin(), fz.end(), yz[k] - 1e-7);
            EXPECT_TRUE(it != fz.end() && *it <= yz[k + 1] + 1e-7)
                << "no zero of f in [" << yz[k] << ", " << yz[k + 1] << "] for " << a;
            ++gaps;
        }
        EXPECT_GT(gaps, 10);
    }
}
