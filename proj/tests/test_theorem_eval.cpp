#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "szeta/theorem_eval.hpp"

using namespace szeta;

namespace {

constexpr double pi = std::numbers::pi;

const ZeroSet& zeros() {
    static const ZeroSet z = find_zeros(1000.0);
    return z;
}

} // namespace

TEST(ConjecturalF, ValueAtZero) {
    const FModel m(std::exp(10.0));
    EXPECT_NEAR(conjectural_F(0.0, m), 8.0 - 2.0 * std::log(2.0 * pi), 1e-12);
    EXPECT_NEAR(conjectural_F(0.0, m), 4.3242, 1e-4);
}

TEST(ConjecturalF, UpperBranchAndModelRegion) {
    const FModel m(std::exp(10.0));
    EXPECT_DOUBLE_EQ(conjectural_F(1.0, m), 1.0);
    EXPECT_DOUBLE_EQ(conjectural_F(2.0, m), 1.0);
    EXPECT_DOUBLE_EQ(conjectural_F(0.8, m), 0.8);
    for (double a : {0.1, 0.3, 0.9, 1.7}) EXPECT_EQ(conjectural_F(-a, m), conjectural_F(a, m));
}

TEST(ConjecturalF, RegimeBoundary) {
    for (double T : {100.0, 1e3, 1e6, 1e12}) {
        const FModel m(T);
        EXPECT_GT(m.regime_boundary, 0.0) << T;
        EXPECT_LT(m.regime_boundary, 1.0) << T;
    }
    // 3 log log T exceeds log T below T of about 93.
    EXPECT_LT(FModel(20.0).regime_boundary, 0.0);
    EXPECT_THROW(FModel(10.0), DomainError);
}

TEST(ConjecturalF, JumpAtRegimeBoundary) {
    const FModel m(std::exp(10.0));
    const double jump = model_boundary_jump(m);
    const double L = 10.0;
    EXPECT_NEAR(jump, std::exp(-2.0 * m.regime_boundary * L) * (L + pair_constant_C()), 1e-12);
    EXPECT_NEAR(jump, 0.0089, 1e-4);
    EXPECT_LT(jump, model_boundary_jump_bound(m));
}

TEST(GPlusH, LinearInT) {
    EXPECT_EQ(g_plus_h_closed(2000.0, 20.0) / g_plus_h_closed(1000.0, 20.0), 2.0);
}

TEST(GPlusH, BracketDecreasesInX) {
    double prev = g_plus_h_bracket(16.0);
    for (double x : {20.0, 100.0, 1e3, 1e4, 1e6}) {
        const double b = g_plus_h_bracket(x);
        EXPECT_LT(b, prev) << x;
        prev = b;
    }
    EXPECT_THROW(g_plus_h_bracket(15.0), DomainError);
}

TEST(GPlusH, MatchesSumFormulaRoute) {
    const double T = 1000.0, x = 1e4;
    const PrimeTable table(10000);
    const auto [g, h] = g_and_h_sum_formulas(T, x, table);
    const auto b = prime_sum_terms(10000, table);
    const double scale = T / (2.0 * pi * pi);
    // The two routes differ by (S1 - 2S2 - closed form) and by the S3 tail
    // and S4, all of which have known bounds.
    const double s12_gap = std::abs(b.s1 - 2.0 * b.s2 - closed_form_s1_minus_2s2(x));
    const double slack = scale * (s12_gap + b.s4 + b.tail_bound_s3 + 1.0 / std::pow(std::log(x), 4));
    EXPECT_NEAR(g + h, g_plus_h_closed(T, x), slack);
    EXPECT_LT(slack, 0.01 * std::abs(g + h));
}

TEST(TheoremRhs, BracketComposition) {
    const auto& pc = prime_constants();
    const auto r = theorem_rhs(1000.0, 1.0);
    EXPECT_EQ(r.bracket, 1.0 + pc.euler - pc.theorem_sum.value);
    EXPECT_LE(std::abs(r.bracket - r.bracket_alt_sign), 1e-15);
}

TEST(TheoremRhs, BreakdownSumsExactly) {
    for (double T : {100.0, 777.0, 1e4})
        for (double f : {0.5, 0.7, 1.0}) {
            const auto r = theorem_rhs(T, f);
            EXPECT_EQ(r.loglog + r.f_tail + r.euler + r.prime_sum, r.total);
            EXPECT_NEAR(r.alt_sign_total, r.total, 1e-12 * r.total);
        }
}

TEST(TheoremRhs, Domain) { EXPECT_THROW(theorem_rhs(99.0, 1.0), DomainError); }

TEST(KernelAsymptotics, ModelGapShrinksWithT) {
    double prev = INFINITY;
    for (double lt : {8.0, 10.0, 12.0}) {
        const auto r = lemma_8_9_10_eval(zeros(), std::exp(lt), 0.5, {}, FSource::model);
        const auto& e = r.entries[0];
        EXPECT_LT(e.abs_diff, prev) << lt;
        prev = e.abs_diff;
    }
}

TEST(KernelAsymptotics, EmpiricalGapsWithinTenErrorScales) {
    const auto r = lemma_8_9_10_eval(zeros(), 1000.0, 0.5);
    EXPECT_TRUE(r.passed());
    for (const auto& e : r.entries) {
        if (e.assertable) continue;
        EXPECT_LT(e.abs_diff, 10.0 * e.error_scale) << e.label;
    }
}

TEST(KernelAsymptotics, SharedTransformedIntegral) {
    for (double beta : {0.2, 0.5, 0.8}) {
        const auto r = lemma_8_9_10_eval(zeros(), 1000.0, beta, {}, FSource::model);
        bool found = false;
        for (const auto& e : r.entries)
            if (e.assertable) {
                found = true;
                EXPECT_TRUE(e.passed) << e.label;
            }
        EXPECT_TRUE(found);
    }
}

TEST(KernelAsymptotics, Domain) {
    EXPECT_THROW(lemma_8_9_10_eval(zeros(), 1000.0, 0.0), DomainError);
    EXPECT_THROW(lemma_8_9_10_eval(zeros(), 2000.0, 0.5), DomainError);
}

TEST(FullReport, FieldsAndBand) {
    const auto m = full_report(1000.0, 20.0, zeros());
    EXPECT_EQ(m.T, 1000.0);
    EXPECT_EQ(m.x, 20.0);
    EXPECT_DOUBLE_EQ(m.beta, std::log(20.0) / std::log(1000.0));
    EXPECT_EQ(m.rhs.loglog + m.rhs.f_tail + m.rhs.euler + m.rhs.prime_sum, m.rhs.total);
    EXPECT_DOUBLE_EQ(m.discrepancy_abs, m.lhs - m.rhs.total);
    const double ratio = m.lhs / m.rhs.total;
    EXPECT_GT(ratio, 0.5);
    EXPECT_LT(ratio, 2.0);
    EXPECT_FALSE(m.notes.empty());
}

TEST(FullReport, SquaredExplicitFormula) {
    const auto m = full_report(1000.0, 20.0, zeros());
    EXPECT_LT(std::abs(m.identity_lhs - m.identity_r), m.identity_scale);
}

TEST(FullReport, Deterministic) {
    const auto a = full_report(500.0, 20.0, zeros());
    const auto b = full_report(500.0, 20.0, zeros());
    EXPECT_EQ(a.lhs, b.lhs);
    EXPECT_EQ(a.rhs.total, b.rhs.total);
    EXPECT_EQ(a.identity_r, b.identity_r);
    EXPECT_EQ(a.notes, b.notes);
}

TEST(FullReport, TailSourceChangesOnlyTheTailTerm) {
    ReportOptions model;
    model.f_tail_source = FSource::model;
    const auto e = full_report(500.0, 20.0, zeros());
    const auto m = full_report(500.0, 20.0, zeros(), {}, model);
    EXPECT_EQ(e.lhs, m.lhs);
    EXPECT_EQ(e.rhs.loglog, m.rhs.loglog);
    EXPECT_EQ(e.rhs.euler, m.rhs.euler);
    EXPECT_EQ(e.rhs.prime_sum, m.rhs.prime_sum);
    EXPECT_NE(e.rhs.f_tail, m.rhs.f_tail);
    EXPECT_EQ(m.rhs.f_tail, 500.0 / (2.0 * pi * pi));
}

TEST(FullReport, Domain) {
    EXPECT_THROW(full_report(1000.0, 40.0, zeros()), DomainError);
    EXPECT_THROW(full_report(2000.0, 20.0, zeros()), DomainError);
    EXPECT_THROW(full_report(1000.0, 10.0, zeros()), DomainError);
}
