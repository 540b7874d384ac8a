#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "szeta/errors.hpp"
#include "szeta/parallel.hpp"
#include "szeta/quadrature.hpp"
#include "szeta/special.hpp"

using namespace szeta;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    // 16 nodes are exact through degree 31.
    auto p = [](double x) { return std::pow(x, 31) + 3 * std::pow(x, 30) - x; };
    const double exact = 3.0 * 2.0 / 31.0;
    EXPECT_NEAR(gauss_legendre<16>(p, -1.0, 1.0), exact, 1e-13);
}

TEST(Integrate, SmoothIntegrand) {
    auto r = integrate([](double x) { return std::exp(x); }, 0.0, 1.0, QuadratureSpec{});
    EXPECT_NEAR(r.value, std::numbers::e - 1.0, 1e-14);
    EXPECT_LE(r.error, 1e-10);
}

TEST(Integrate, KinkNeedsBreakpoint) {
    auto f = [](double x) { return std::abs(x - 0.3); };
    const double exact = 0.5 * 0.09 + 0.5 * 0.49;
    auto with = integrate(f, 0.0, 1.0, QuadratureSpec{}.with_breakpoints({0.3}));
    EXPECT_NEAR(with.value, exact, 1e-15);
    EXPECT_EQ(with.panels, 2u);
    auto without = integrate(f, 0.0, 1.0, QuadratureSpec{});
    EXPECT_NEAR(without.value, exact, 1e-10);
    EXPECT_GT(without.panels, 2u);
}

TEST(Integrate, ReversedLimitsFlipSign) {
    auto f = [](double x) { return x * x; };
    EXPECT_NEAR(integrate(f, 2.0, 0.0, QuadratureSpec{}).value, -8.0 / 3.0, 1e-14);
}

TEST(Integrate, OscillatoryWithPanelCap) {
    const double a = 200.0;
    auto f = [&](double x) { return std::cos(a * x); };
    auto r = integrate(f, 0.0, 3.0, QuadratureSpec{}, 0.05);
    EXPECT_NEAR(r.value, std::sin(3.0 * a) / a, 1e-12);
}

TEST(Integrate, NonConvergenceRaisesAccuracyError) {
    QuadratureSpec spec;
    spec.max_depth = 3;
    spec.abs_tol = 1e-15;
    spec.rel_tol = 1e-15;
    auto f = [](double x) { return 1.0 / std::sqrt(x); };
    try {
        integrate(f, 0.0, 1.0, spec);
        FAIL() << "expected AccuracyError";
    } catch (const AccuracyError& e) {
        EXPECT_GT(e.estimate(), 1.0);
        EXPECT_GT(e.error(), 0.0);
    }
}

TEST(QuadratureSpec, Validation) {
    QuadratureSpec s;
    s.abs_tol = 0.0;
    EXPECT_THROW(s.validate(), DomainError);
    s = {};
    s.max_depth = 61;
    EXPECT_THROW(s.validate(), DomainError);
    s = {};
    s.breakpoints = {100.0};
    EXPECT_THROW(s.validate(), DomainError);
}

TEST(Special, SiCiAgainstSeriesAndAsymptotics) {
    // Si(1), Ci(1) and Si(10), Ci(10) to 15 digits.
    auto [si1, ci1] = special::sici(1.0);
    EXPECT_NEAR(si1, 0.946083070367183, 1e-14);
    EXPECT_NEAR(ci1, 0.337403922900968, 1e-14);
    auto [si10, ci10] = special::sici(10.0);
    EXPECT_NEAR(si10, 1.658347594218874, 1e-14);
    EXPECT_NEAR(ci10, -0.045456433004455, 1e-14);
    // Si(x) -> pi/2 - cos(x)/x for large x.
    auto [si, ci] = special::sici(1e4);
    EXPECT_NEAR(si, std::numbers::pi / 2 - std::cos(1e4) / 1e4, 1e-8);
    EXPECT_NEAR(ci, std::sin(1e4) / 1e4, 1e-8);
}

TEST(Special, SiCiDerivativesMatchQuadrature) {
    // Si(x) = int_0^x sin t / t dt, checked by independent quadrature at a few points.
    for (double x : {0.5, 3.9, 4.1, 7.0, 25.0}) {
        auto r = integrate([](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }, 0.0, x, QuadratureSpec{});
        EXPECT_NEAR(special::sici(x).first, r.value, 1e-13) << x;
    }
}

TEST(Special, ZetaEvenAndDigamma) {
    const double pi = std::numbers::pi;
    EXPECT_NEAR(special::zeta_even(1), pi * pi / 6, 1e-15);
    EXPECT_NEAR(special::zeta_even(2), std::pow(pi, 4) / 90, 1e-15);
    EXPECT_NEAR(special::digamma(1.0), -0.5772156649015329, 1e-14);
    EXPECT_NEAR(special::digamma(0.5), -0.5772156649015329 - 2 * std::log(2.0), 1e-14);
}

TEST(Special, LogGammaRecurrence) {
    // log Gamma(z + 1) - log Gamma(z) = log z modulo 2 pi i.
    const std::complex<double> z(0.25, 7.0);
    const auto d = special::log_gamma(z + 1.0) - special::log_gamma(z) - std::log(z);
    EXPECT_NEAR(d.real(), 0.0, 1e-13);
    EXPECT_NEAR(std::remainder(d.imag(), 2 * std::numbers::pi), 0.0, 1e-12);
    EXPECT_NEAR(special::log_gamma({5.0, 0.0}).real(), std::log(24.0), 1e-14);
}

TEST(Parallel, ChunkedSumIndependentOfThreadCount) {
    auto chunk = [](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += 1.0 / (1.0 + static_cast<double>(i));
        return s;
    };
    set_thread_count(1);
    const double one = chunked_sum<double>(100000, chunk);
    set_thread_count(4);
    const double four = chunked_sum<double>(100000, chunk);
    set_thread_count(0);
    EXPECT_EQ(one, four);
}
