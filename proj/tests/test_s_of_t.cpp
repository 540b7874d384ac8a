#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "szeta/s_of_t.hpp"

using namespace szeta;

namespace {

constexpr double pi = std::numbers::pi;

const ZeroSet& zeros() {
    static const ZeroSet z = find_zeros(10000.0);
    return z;
}

const PrimeTable& primes() {
    static const PrimeTable t(200000);
    return t;
}

SEvaluator ev() { return SEvaluator(zeros(), primes()); }

} // namespace

TEST(SExact, ValueBeforeFirstZero) {
    // N(14) = 0 and theta(14) / pi = -0.567530198.
    EXPECT_NEAR(s_exact(14.0, ev()), -1.0 + 0.5675301979010022, 1e-10);
    EXPECT_NEAR(s_exact(14.0, ev()), -0.4328, 5e-4);
}

TEST(SExact, JumpAndMidpointAtFirstZero) {
    const double g1 = zeros().ordinates()[0];
    const double below = s_exact(g1 - 1e-6, ev());
    const double above = s_exact(g1 + 1e-6, ev());
    EXPECT_NEAR(above - below, 1.0, 1e-5);
    EXPECT_NEAR(s_exact(g1, ev()), 0.5 * (above + below), 1e-5);
}

TEST(SExact, Domain) {
    EXPECT_THROW(s_exact(9.0, ev()), DomainError);
    EXPECT_THROW(s_exact(10001.0, ev()), DomainError);
}

TEST(SExact, DecreasingBetweenZeros) {
    const auto& g = zeros().ordinates();
    for (std::size_t i = 0; i + 1 < 200; i += 7) {
        const double a = g[i], b = g[i + 1];
        double prev = s_exact(a + 1e-9, ev());
        for (int k = 1; k <= 10; ++k) {
            const double s = s_exact(a + (b - a) * k / 11.0, ev());
            EXPECT_LT(s, prev);
            prev = s;
        }
    }
}

TEST(SinhTail, ClosedFormMatchesQuadrature) {
    for (double v : {1e-3, 0.01, 0.3, 1.0, 2.5, 10.0, 59.0, 61.0, 200.0}) {
        const double q = sinh_tail_integral(v);
        EXPECT_NEAR(sinh_tail_closed(v), q, 1e-10 * q) << v;
    }
    EXPECT_NEAR(sinh_tail_integral(1.0), 1.0711048265836679025, 1e-12);
    EXPECT_NEAR(sinh_tail_integral(0.01), 156.38909438871437212, 1e-8);
}

TEST(SinhTail, LargeArgumentLimit) {
    EXPECT_NEAR(sinh_tail_integral(50.0) * 2500.0 / (pi * pi / 4.0), 1.0, 0.01);
}

TEST(SinhTail, EvenAndDecreasing) {
    EXPECT_EQ(sinh_tail_integral(-1.7), sinh_tail_integral(1.7));
    EXPECT_GT(sinh_tail_integral(1.0), sinh_tail_integral(2.0));
    EXPECT_THROW(sinh_tail_integral(0.0), DomainError);
    EXPECT_EQ(zero_term(0.0), 0.0);
    // sin(v) I(v) -> pi/2 sign(v) as v -> 0.
    EXPECT_NEAR(zero_term(1e-6), pi / 2, 1e-5);
}

TEST(SExplicit, AgreesWithCounting) {
    for (double t : {30.0, 50.0, 80.0}) {
        const auto e = s_explicit(t, t, ev());
        EXPECT_LT(std::abs(e.value - s_exact(t, ev())), 0.15) << t;
        EXPECT_GT(e.error_budget, 0.0);
    }
}

TEST(SExplicit, SmallestCutoffSupport) {
    const double t = 40.0;
    const auto e = s_explicit(t, 4.0, ev());
    const double L = std::log(4.0);
    double manual = 0.0;
    manual += std::sin(t * std::log(2.0)) / std::sqrt(2.0) * smoothing_weight(std::log(2.0) / L);
    manual += std::sin(t * std::log(3.0)) / std::sqrt(3.0) * smoothing_weight(std::log(3.0) / L);
    manual += 0.5 * std::sin(t * std::log(4.0)) / 2.0 * smoothing_weight(1.0);
    EXPECT_NEAR(e.prime_part, -manual / pi, 1e-15);
    EXPECT_THROW(s_explicit(t, 3.5, ev()), DomainError);
}

TEST(SExplicit, ZeroSumSkewSymmetry) {
    auto z = ZeroSet::synthetic({20.0, 22.0}, 200.0);
    SEvaluator e(z, primes());
    const double x = 10.0, L = std::log(x);
    for (double d : {0.0, 0.3, 0.77}) {
        const double plus = s_explicit(21.0 + d, x, e).zero_part;
        const double minus = s_explicit(21.0 - d, x, e).zero_part;
        EXPECT_NEAR(plus, -minus, 1e-14) << d;
        // Direct sum over the two synthetic zeros.
        double direct = 0.0;
        for (double g : {20.0, 22.0}) {
            const double v = (21.0 + d - g) * L;
            direct += std::sin(v) * sinh_tail_integral(v) / pi;
        }
        EXPECT_NEAR(plus, direct, 1e-12);
    }
}

TEST(SExplicit, ResidualShrinksWithLargerCutoff) {
    const double t = 50.0;
    const double exact = s_exact(t, ev());
    const double near = std::abs(s_explicit(t, t * t, ev()).value - exact);
    const double far = std::abs(s_explicit(t, std::sqrt(t), ev()).value - exact);
    EXPECT_LT(near, far);
}

TEST(SecondMoment, Additivity) {
    const double whole = second_moment(100.0, ev());
    const double split = second_moment(50.0, ev()) + s_squared_integral(50.0, 100.0, ev());
    EXPECT_NEAR(whole, split, 1e-10);
    EXPECT_GT(whole, 0.0);
    EXPECT_THROW(second_moment(20000.0, ev()), DomainError);
}

TEST(SecondMoment, HeadUsesContinuedCounting) {
    // No zeros below 14: S = -1 - theta(t)/pi on [0, 10], integrated independently.
    auto f = [](double t) {
        const double s = -1.0 - theta_exact(t) / pi;
        return s * s;
    };
    double simpson = 0.0;
    const int n = 20000;
    const double h = 10.0 / n;
    for (int i = 0; i <= n; ++i) simpson += f(i * h) * (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0));
    simpson *= h / 3.0;
    EXPECT_NEAR(s_squared_integral(0.0, 10.0, ev()), simpson, 1e-10);
}

TEST(SecondMoment, GrowthBand) {
    for (double T : {1000.0, 5000.0, 10000.0}) {
        const double ratio = second_moment(T, ev()) / T / (std::log(std::log(T)) / (2 * pi * pi));
        EXPECT_GE(ratio, 0.4) << T;
        EXPECT_LE(ratio, 2.5) << T;
    }
}

TEST(SecondMoment, RefinedToleranceStable) {
    QuadratureSpec fine;
    fine.abs_tol = 1e-12;
    fine.rel_tol = 1e-12;
    const double a = second_moment(2000.0, ev());
    const double b = second_moment(2000.0, ev(), fine);
    EXPECT_LT(std::abs(a - b), QuadratureSpec{}.rel_tol * a);
}

TEST(SMean, NearZero) {
    EXPECT_LT(std::abs(s_integral(0.0, 1000.0, ev()) / 1000.0), 0.05);
}

TEST(GandH, DirectAgainstSumFormula) {
    const auto gh = g_and_h_direct(2000.0, 40.0, ev());
    EXPECT_GE(gh.g, 0.0);
    EXPECT_LT(gh.h_sum_formula, 0.0);
    EXPECT_LT(std::abs(gh.g - gh.g_sum_formula), 0.05 * gh.g);
    EXPECT_THROW(g_and_h_direct(1000.0, 40.0, ev()), DomainError);
}

TEST(GandH, SumFormulaSignForAllCutoffs) {
    for (double x : {4.0, 10.0, 100.0, 1000.0}) EXPECT_LT(g_and_h_sum_formulas(100.0, x, primes()).second, 0.0);
}
