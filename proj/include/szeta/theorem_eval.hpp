#pragma once

// Both sides of the second-moment asymptotic: the conjectural pair
// correlation model, the closed form of G + H, the right-hand side of the
// mean value of S(t)^2 and the asymptotics of the F-weighted kernel
// integrals that lead to it.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "szeta/check_report.hpp"
#include "szeta/errors.hpp"
#include "szeta/kernels.hpp"
#include "szeta/pair_correlation.hpp"
#include "szeta/primes.hpp"
#include "szeta/quadrature.hpp"
#include "szeta/s_of_t.hpp"
#include "szeta/zeta_zeros.hpp"

namespace szeta {

/// -2 log(2 pi) - 2, the constant of the lower-order pair correlation term.
inline double pair_constant_C() { return -2.0 * std::log(2.0 * std::numbers::pi) - 2.0; }

/// Conjectural F(alpha, T): alpha + T^{-2 alpha}(log T + C) up to the regime
/// boundary 1 - 3 log log T / log T, alpha up to 1 and 1 beyond.
struct FModel {
    double T = 0.0;
    double epsilon = 0.0;
    double regime_boundary = 0.0;

    explicit FModel(double t, double eps = 0.0) : T(t), epsilon(eps) {
        if (!(T >= 20.0)) throw DomainError("F model needs T >= 20");
        const double L = std::log(T);
        regime_boundary = 1.0 - 3.0 * std::log(L) / L;
    }
};

inline double conjectural_F(double alpha, const FModel& m) {
    const double a = std::abs(alpha);
    if (a <= m.regime_boundary) {
        const double L = std::log(m.T);
        return a + std::exp(-2.0 * a * L) * (L + pair_constant_C());
    }
    return a <= 1.0 ? a : 1.0;
}

/// Size of the step the model takes at its regime boundary.
inline double model_boundary_jump(const FModel& m) {
    const double b = m.regime_boundary;
    return std::abs(conjectural_F(b, m) - conjectural_F(std::nextafter(b, 2.0), m));
}

/// Bound on model_boundary_jump: 2 (log T) T^{-2 b}.
inline double model_boundary_jump_bound(const FModel& m) {
    const double L = std::log(m.T);
    return 2.0 * L * std::exp(-2.0 * m.regime_boundary * L);
}

/// (T / 2 pi^2)[-log log x + log(pi/2) - pi^2/8 + 1 - C0 + sum (1/m - 1/m^2) p^-m].
inline double g_plus_h_bracket(double x) {
    if (!(x >= 16.0)) throw DomainError("G + H closed form needs x >= 16");
    constexpr double pi = std::numbers::pi;
    const auto& pc = prime_constants();
    return -std::log(std::log(x)) + std::log(pi / 2.0) - pi * pi / 8.0 + 1.0 - pc.euler + pc.theorem_sum.value;
}

inline double g_plus_h_closed(double T, double x) {
    return T / (2.0 * std::numbers::pi * std::numbers::pi) * g_plus_h_bracket(x);
}

/// Right-hand side of the mean value of S(t)^2 in parts:
/// (T/2pi^2) log log T + (T/2pi^2)[f_tail + C0 - sum (1/m - 1/m^2) p^-m].
struct TheoremRhs {
    double loglog = 0.0;
    double f_tail = 0.0;
    double euler = 0.0;
    double prime_sum = 0.0;
    double total = 0.0;
    double alt_sign_total = 0.0;  // same bracket written with sum (-1/m + 1/m^2) p^-m
    double bracket = 0.0;
    double bracket_alt_sign = 0.0;
};

inline TheoremRhs theorem_rhs(double T, double f_tail) {
    if (!(T >= 100.0)) throw DomainError("theorem_rhs needs T >= 100");
    const auto& pc = prime_constants();
    const double scale = T / (2.0 * std::numbers::pi * std::numbers::pi);
    const double ll = std::log(std::log(T));
    TheoremRhs r;
    r.loglog = scale * ll;
    r.f_tail = scale * f_tail;
    r.euler = scale * pc.euler;
    r.prime_sum = -scale * pc.theorem_sum.value;
    r.total = r.loglog + r.f_tail + r.euler + r.prime_sum;
    r.bracket = f_tail + pc.euler - pc.theorem_sum.value;
    r.bracket_alt_sign = f_tail + pc.euler + pc.alt_sign_sum.value;
    r.alt_sign_total = scale * ll + scale * r.bracket_alt_sign;
    if (std::abs(r.bracket - r.bracket_alt_sign) > 1e-15)
        throw AccuracyError("the two forms of the prime bracket disagree", r.bracket,
                            r.bracket - r.bracket_alt_sign);
    return r;
}

enum class FSource { empirical, model };

inline const char* to_string(FSource s) { return s == FSource::empirical ? "empirical" : "model"; }

/// Sampling of the empirical F used for its alpha^-2 and alpha^-4 tails.
struct CurveOptions {
    double alpha_max = 4.0;
    double step = 0.01;
    TailModel tail_model = TailModel::constant_one;
};

/// int_1^inf F / alpha^2 and int_1^inf F / alpha^4.
struct FTails {
    double inv2 = 0.0;
    double inv4 = 0.0;
};

inline FTails f_tails(const ZeroSet& zeros, double T, FSource source, const CurveOptions& opt = {}) {
    if (source == FSource::model) return {1.0, 1.0 / 3.0};
    const auto curve = pcf_curve(zeros, T, opt.alpha_max, opt.step);
    return {tail_integral(curve, 2, opt.alpha_max, opt.tail_model),
            tail_integral(curve, 4, opt.alpha_max, opt.tail_model)};
}

namespace detail {

// int_{-inf}^{inf} F(alpha) kernel(alpha / 2 pi beta) d alpha for the model F.
// Above alpha = beta the kernel is (pi beta / alpha)^2 (k) or
// 24 pi^4 beta^4 / alpha^4 (k''), and F = 1 above alpha = 1.
inline double model_kernel_integral(const FModel& m, double beta, bool second, const QuadratureSpec& spec) {
    constexpr double pi = std::numbers::pi;
    auto f = [&](double a) {
        const double u = a / (2.0 * pi * beta);
        return conjectural_F(a, m) * (second ? kernel_k2(u) : kernel_k(u));
    };
    QuadratureSpec s = spec;
    s.breakpoints = {beta, m.regime_boundary};
    const double body = integrate(f, 0.0, 1.0, s, 0.05).value;
    const double tail = second ? 8.0 * std::pow(pi * beta, 4) : pi * pi * beta * beta;
    return 2.0 * (body + tail);
}

} // namespace detail

/// Asymptotics of int F k(alpha/2 pi beta), int F k''(alpha/2 pi beta) and R
/// against the same quantities built from the zeros (empirical) or from the
/// conjectural model. Dropped O-terms are reported beside each gap.
inline CheckReport lemma_8_9_10_eval(const ZeroSet& zeros, double T, double beta, const QuadratureSpec& spec = {},
                                     FSource source = FSource::empirical, const CurveOptions& opt = {}) {
    constexpr double pi = std::numbers::pi;
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
    const FModel model(T);
    const double L = std::log(T);
    const double C = pair_constant_C();
    const double eps = model.epsilon;
    const auto tails = f_tails(zeros, T, source, opt);

    double lhs8 = 0.0, lhs9 = 0.0, r_lhs = 0.0;
    if (source == FSource::empirical) {
        const auto p = pair_integrals(zeros, T, beta, spec);
        lhs8 = p.int_f_k;
        lhs9 = p.int_f_k2;
        r_lhs = T / std::pow(2.0 * pi * pi * beta, 2) * lhs8 + T / (16.0 * L * L) * p.f_beta / std::pow(beta, 3) -
                T / (64.0 * std::pow(pi, 6) * std::pow(beta, 4) * L * L) * lhs9;
    } else {
        lhs8 = detail::model_kernel_integral(model, beta, false, spec);
        lhs9 = detail::model_kernel_integral(model, beta, true, spec);
        r_lhs = T / std::pow(2.0 * pi * pi * beta, 2) * lhs8 +
                T / (16.0 * L * L) * conjectural_F(beta, model) / std::pow(beta, 3) -
                T / (64.0 * std::pow(pi, 6) * std::pow(beta, 4) * L * L) * lhs9;
    }

    const double bracket = 1.0 - pi * pi / 8.0 + std::log(pi / 2.0) + tails.inv2 - std::log(beta);
    const double ik = t_weighted_k_integral(beta, T, spec);
    const double rhs8 = 2.0 * pi * pi * beta * beta * bracket + 2.0 * (L + C) * ik;
    const double transformed = 2.0 * (L + C) * lemma7_rhs(beta, T, spec);
    const double direct_form = 32.0 * pi * pi * beta * beta * L * L * (L + C) * ik;
    const double rhs9 = 4.0 * std::pow(pi, 6) * beta * beta - 24.0 * std::pow(pi, 4) * std::pow(beta, 4) +
                        48.0 * std::pow(pi, 4) * std::pow(beta, 4) * tails.inv4 + transformed;
    const double rhs10 = T / (2.0 * pi * pi) * bracket + 3.0 * T / (8.0 * pi * pi * L * L) -
                         3.0 * T / (4.0 * pi * pi * L * L) * tails.inv4;

    const double decay = L * std::exp(-(0.5 - eps) * beta * L);
    CheckReport r{"lemma_8_9_10", {}, {}};
    r.report_only("int F k(alpha/2pi beta): source vs asymptotic", lhs8, rhs8,
                  1.0 / (beta * beta * std::pow(L, 4)) + decay + beta * beta / (L * L));
    r.report_only("int F k''(alpha/2pi beta): source vs asymptotic", lhs9, rhs9, 1.0 / (L * L) + decay);
    r.compare("T^{-2 alpha} term: transformed vs direct form", transformed, direct_form, 1e-12, true);
    r.report_only("R: source vs asymptotic", r_lhs, rhs10, T / (L * L) + T / (std::pow(beta, 4) * std::pow(L, 4)));
    r.notes.push_back(std::string("F source: ") + to_string(source));
    if (source == FSource::empirical)
        r.notes.push_back(std::string("F tails beyond alpha = ") + format_shortest(opt.alpha_max) + ": " +
                          to_string(opt.tail_model));
    else
        r.notes.push_back("model F: alpha + T^{-2 alpha}(log T + C) below 1 - 3 log log T / log T, alpha up to 1, "
                          "1 beyond");
    r.notes.push_back("the asymptotic for R uses int_1^inf F/alpha^2; the printed lower limit 0 diverges and is "
                      "read as 1");
    r.notes.push_back("error_scale holds the size of the dropped O-terms with unit constants");
    return r;
}

struct MomentReport {
    double T = 0.0, x = 0.0, beta = 0.0;
    double lhs = 0.0;
    TheoremRhs rhs;
    FSource f_tail_source = FSource::empirical;
    double discrepancy_abs = 0.0;
    double discrepancy_rel = 0.0;
    std::vector<std::string> notes;

    // Squared explicit formula: int_1^T S^2 + H + G against R.
    double identity_lhs = 0.0;
    double identity_r = 0.0;
    double identity_scale = 0.0;
};

struct ReportOptions {
    FSource f_tail_source = FSource::empirical;
    CurveOptions curve;
};

namespace detail {

inline std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace detail

/// Second moment of S(t) against the assembled right-hand side, with the
/// squared explicit formula checked along the way.
inline MomentReport full_report(double T, double x, const ZeroSet& zeros, const QuadratureSpec& spec = {},
                                const ReportOptions& opt = {}) {
    if (!(T >= 100.0)) throw DomainError("full_report needs T >= 100");
    if (!(x >= 16.0)) throw DomainError("full_report needs x >= 16");
    const double beta = std::log(x) / std::log(T);
    if (!(beta < 0.5)) throw DomainError("full_report needs x < sqrt(T)");
    if (!zeros.covers(T)) throw DomainError("full_report: T lies beyond the complete zero coverage");

    const PrimeTable table(static_cast<std::uint64_t>(std::max(1000.0, std::ceil(x))));
    const SEvaluator ev(zeros, table);

    MomentReport m;
    m.T = T;
    m.x = x;
    m.beta = beta;
    m.f_tail_source = opt.f_tail_source;
    m.lhs = second_moment(T, ev, spec);
    const auto tails = f_tails(zeros, T, opt.f_tail_source, opt.curve);
    m.rhs = theorem_rhs(T, tails.inv2);
    m.discrepancy_abs = m.lhs - m.rhs.total;
    m.discrepancy_rel = m.discrepancy_abs / m.rhs.total;

    const double s2_from_1 = s_squared_integral(1.0, T, ev, spec);
    const auto gh = g_and_h_direct(T, x, ev, spec);
    const auto dec = lemma6_eval(zeros, T, beta, spec, false);
    m.identity_lhs = s2_from_1 + gh.g + gh.h;
    m.identity_r = dec.r_total;
    m.identity_scale = std::sqrt(T * x);

    using detail::fmt12;
    if (opt.f_tail_source == FSource::empirical)
        m.notes.push_back("f_tail: empirical F on [1, " + fmt12(opt.curve.alpha_max) + "], step " +
                          fmt12(opt.curve.step) + ", tail beyond the cut: " + to_string(opt.curve.tail_model) +
                          (opt.curve.tail_model == TailModel::constant_one ? " (F = 1 model)" : ""));
    else
        m.notes.push_back("f_tail: model F = 1 for alpha >= 1");
    m.notes.push_back("int_1^T S^2 + G + H = " + fmt12(m.identity_lhs) + ", R from pair sums = " +
                      fmt12(m.identity_r) + ", difference " + fmt12(m.identity_lhs - m.identity_r) +
                      " against sqrt(T x) = " + fmt12(m.identity_scale));
    m.notes.push_back("G + H: direct " + fmt12(gh.g + gh.h) + ", closed form " + fmt12(g_plus_h_closed(T, x)));
    m.notes.push_back("dropped error term O(T / log^2 T) = " + fmt12(T / std::pow(std::log(T), 2)) +
                      " with unit constant");
    m.notes.push_back("zeros up to T: " + std::to_string(zeros.count_up_to(T)) + " (" + to_string(zeros.source()) +
                      ")");
    return m;
}

} // namespace szeta
