#pragma once

// S(t) by zero counting and by the explicit formula over primes and zeros,
// the mean square of S, and the Dirichlet-polynomial integrals G and H.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

#include "szeta/errors.hpp"
#include "szeta/kernels.hpp"
#include "szeta/parallel.hpp"
#include "szeta/primes.hpp"
#include "szeta/quadrature.hpp"
#include "szeta/special.hpp"
#include "szeta/zeta_zeros.hpp"

namespace szeta {

/// Zero set and prime table that S(t) is evaluated against. Holds
/// references; both must outlive the evaluator.
struct SEvaluator {
    const ZeroSet& zeros;
    const PrimeTable& prime_table;
    int theta_order = 5;

    SEvaluator(const ZeroSet& z, const PrimeTable& p, int order = 5) : zeros(z), prime_table(p), theta_order(order) {}
};

namespace detail {

// N(t) - 1 - theta(t)/pi with N counted at weight 1/2 on an ordinate. Below
// t = 10 theta comes from log Gamma.
inline double s_counting(double t, const ZeroSet& zeros, int theta_order) {
    const auto& g = zeros.ordinates();
    const auto lo = std::lower_bound(g.begin(), g.end(), t);
    const auto hi = std::upper_bound(lo, g.end(), t);
    const double n = static_cast<double>(lo - g.begin()) + 0.5 * static_cast<double>(hi - lo);
    const double th = t >= 10.0 ? theta(t, theta_order) : theta_exact(t);
    return n - 1.0 - th / std::numbers::pi;
}

} // namespace detail

/// S(t) = N(t) - 1 - theta(t)/pi, averaging the one-sided limits at an ordinate.
inline double s_exact(double t, const SEvaluator& ev) {
    if (!(t >= 10.0)) throw DomainError("s_exact needs t >= 10");
    if (!ev.zeros.covers(t)) throw DomainError("s_exact: t lies beyond the complete zero coverage");
    return detail::s_counting(t, ev.zeros, ev.theta_order);
}

/// int_0^inf u / ((u^2 + v^2) sinh u) du in closed form:
/// (psi(b/2 + 1/2) - psi(b/2)) / 2 - 1/(2b), b = |v| / pi.
inline double sinh_tail_closed(double v) {
    if (v == 0.0) throw DomainError("sinh tail integral diverges at v = 0");
    constexpr double pi = std::numbers::pi;
    const double a = std::abs(v);
    if (a > 60.0) {
        // Asymptotic series sum_k 2 (2k+1)! (1 - 2^(-2k-2)) zeta(2k+2) (-1)^k / v^(2k+2).
        const double inv2 = 1.0 / (a * a);
        double sum = 0.0, pw = inv2, fact = 1.0;  // (2k+1)!
        for (int k = 0; k < 12; ++k) {
            if (k > 0) fact *= (2.0 * k) * (2.0 * k + 1.0);
            const double term = 2.0 * fact * (1.0 - std::pow(2.0, -2.0 * k - 2.0)) * special::zeta_even(k + 1) * pw;
            sum += (k % 2 == 0) ? term : -term;
            if (term < 1e-17 * sum) break;
            pw *= inv2;
        }
        return sum;
    }
    const double b = a / pi;
    return 0.5 * (special::digamma(0.5 * b + 0.5) - special::digamma(0.5 * b)) - 0.5 / b;
}

/// int_0^inf u / ((u^2 + v^2) sinh u) du by adaptive quadrature, truncated at
/// spec.infinite_cutoff with the exponential tail bound added to the error.
inline double sinh_tail_integral(double v, const QuadratureSpec& spec = {}) {
    if (v == 0.0) throw DomainError("sinh tail integral diverges at v = 0");
    spec.validate();
    const double a = std::abs(v);
    auto f = [a](double u) {
        const double ratio = u == 0.0 ? 1.0 : u / std::sinh(u);
        return ratio / (u * u + a * a);
    };
    const double cut = spec.infinite_cutoff;
    std::vector<double> bps;
    for (double m : {1.0, 4.0, 16.0})
        if (m * a < cut) bps.push_back(m * a);
    for (double b : spec.breakpoints)
        if (b > 0.0 && b < cut) bps.push_back(b);
    QuadratureSpec s = spec;
    s.breakpoints = bps;
    // Beyond the cutoff: u / sinh u <= 2 u e^-u and 1/(u^2+v^2) <= 1/u^2.
    const double tail = -2.0 * std::expint(-cut);  // 2 E1(cut)
    return integrate_to_cutoff(f, 0.0, s, tail).value;
}

/// sin(v) * int_0^inf u / ((u^2 + v^2) sinh u) du, with the removable value 0
/// at v = 0.
inline double zero_term(double v) { return v == 0.0 ? 0.0 : std::sin(v) * sinh_tail_closed(v); }

struct ExplicitS {
    double value = 0.0;
    double error_budget = 0.0;
    double prime_part = 0.0;
    double zero_part = 0.0;
    double zero_tail_bound = 0.0;
};

/// Half-width in v = (t - gamma) log x of the zero window in s_explicit.
inline constexpr double zero_window_v = 50.0;

/// The Dirichlet polynomial sum_{n<=x} Lambda(n) n^-1/2 sin(t log n)/log n f(log n/log x).
inline double prime_dirichlet_sum(double t, double x, const PrimeTable& table) {
    const double L = std::log(x);
    double sum = 0.0;
    for (const auto& pp : table.lambda_support()) {
        const double n = static_cast<double>(pp.n);
        if (n > x) break;
        const double ln = std::log(n);
        sum += std::sin(t * ln) / std::sqrt(n) * (pp.lambda / ln) * smoothing_weight(ln / L);
    }
    return sum;
}

/// S(t) from the explicit formula with cutoff x.
///
/// Zeros with |t - gamma| log x <= zero_window_v are summed; the rest is
/// bounded with int <= pi^2/(4 v^2) and the local zero density. The error
/// budget adds x^(1/2)/(t^2 log x) + 1/(t log x) with unit constants.
inline ExplicitS s_explicit(double t, double x, const SEvaluator& ev, const QuadratureSpec& spec = {}) {
    (void)spec;
    if (!(x >= 4.0)) throw DomainError("s_explicit needs x >= 4");
    if (!(t >= 10.0)) throw DomainError("s_explicit needs t >= 10");
    if (x > static_cast<double>(ev.prime_table.limit())) throw DomainError("prime table does not reach x");
    constexpr double pi = std::numbers::pi;
    const double L = std::log(x);
    const double w = zero_window_v / L;
    if (!ev.zeros.covers(t + w))
        throw DomainError("s_explicit: zeros must be complete up to t + 50/log x");

    ExplicitS out;
    out.prime_part = -prime_dirichlet_sum(t, x, ev.prime_table) / pi;
    const auto& g = ev.zeros.ordinates();
    auto lo = std::lower_bound(g.begin(), g.end(), t - w);
    auto hi = std::upper_bound(g.begin(), g.end(), t + w);
    for (auto it = lo; it != hi; ++it) out.zero_part += zero_term((t - *it) * L);
    out.zero_part /= pi;
    out.value = out.prime_part + out.zero_part;
    // Zeros outside the window, density log(t/2pi)/2pi on each side.
    const double density = std::log(std::max(t, 2.0 * pi * std::numbers::e) / (2.0 * pi)) / (2.0 * pi);
    out.zero_tail_bound = (pi / 4.0) * 2.0 * (density + 1.0 / w) / (L * L * w);
    out.error_budget = std::sqrt(x) / (t * t * L) + 1.0 / (t * L) + out.zero_tail_bound;
    return out;
}

namespace detail {

// Breakpoints of the piecewise-smooth S on [a, b]: the ordinates inside.
inline std::vector<double> s_cuts(double a, double b, const ZeroSet& zeros) {
    std::vector<double> cuts{a};
    const auto& g = zeros.ordinates();
    for (auto it = std::upper_bound(g.begin(), g.end(), a); it != g.end() && *it < b; ++it) cuts.push_back(*it);
    if (a < 10.0 && b > 10.0) cuts.insert(std::upper_bound(cuts.begin(), cuts.end(), 10.0), 10.0);
    cuts.push_back(b);
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

// int over [cuts[i], cuts[i+1]] of fn(t, c) where c = N - 1 is constant on
// the piece, summed in a deterministic order.
template <class Fn>
double piecewise_integral(const std::vector<double>& cuts, const ZeroSet& zeros, const QuadratureSpec& spec,
                          double max_panel, const Fn& fn) {
    const std::size_t pieces = cuts.size() - 1;
    return chunked_sum<double>(pieces, [&](std::size_t i0, std::size_t i1) {
        double acc = 0.0;
        for (std::size_t i = i0; i < i1; ++i) {
            const double a = cuts[i], b = cuts[i + 1];
            const double n = static_cast<double>(zeros.count_up_to(0.5 * (a + b)));
            auto f = [&](double t) { return fn(t, n - 1.0); };
            acc += integrate(f, a, b, spec, max_panel).value;
        }
        return acc;
    });
}

inline double theta_mixed(double t, int order) { return t >= 10.0 ? theta(t, order) : theta_exact(t); }

} // namespace detail

/// int_a^b S(t)^2 dt, 0 <= a <= b <= t_max, integrating the smooth branch
/// N - 1 - theta(t)/pi between consecutive ordinates.
inline double s_squared_integral(double a, double b, const SEvaluator& ev, const QuadratureSpec& spec = {}) {
    if (!(a >= 0.0) || !(b >= a)) throw DomainError("s_squared_integral needs 0 <= a <= b");
    if (!ev.zeros.covers(b)) throw DomainError("S(t)^2 integral: T lies beyond the complete zero coverage");
    if (a == b) return 0.0;
    const auto cuts = detail::s_cuts(a, b, ev.zeros);
    const int order = ev.theta_order;
    return detail::piecewise_integral(cuts, ev.zeros, spec, 0.0, [order](double t, double c) {
        const double s = c - detail::theta_mixed(t, order) / std::numbers::pi;
        return s * s;
    });
}

/// int_0^T S(t)^2 dt.
inline double second_moment(double T, const SEvaluator& ev, const QuadratureSpec& spec = {}) {
    if (!(T >= 10.0)) throw DomainError("second_moment needs T >= 10");
    return s_squared_integral(0.0, T, ev, spec);
}

/// int_a^b S(t) dt.
inline double s_integral(double a, double b, const SEvaluator& ev, const QuadratureSpec& spec = {}) {
    if (!ev.zeros.covers(b)) throw DomainError("S(t) integral: T lies beyond the complete zero coverage");
    const auto cuts = detail::s_cuts(a, b, ev.zeros);
    const int order = ev.theta_order;
    return detail::piecewise_integral(cuts, ev.zeros, spec, 0.0, [order](double t, double c) {
        return c - detail::theta_mixed(t, order) / std::numbers::pi;
    });
}

struct GandH {
    double g = 0.0;
    double h = 0.0;
    double g_sum_formula = 0.0;  // (T / 2 pi^2) sum Lambda^2 f^2 / (n log^2 n)
    double h_sum_formula = 0.0;  // -(T / pi^2) sum Lambda^2 f / (n log^2 n)
};

/// The sum-formula companions of G and H.
inline std::pair<double, double> g_and_h_sum_formulas(double T, double x, const PrimeTable& table) {
    constexpr double pi = std::numbers::pi;
    const double L = std::log(x);
    double s2 = 0.0, s1 = 0.0;
    for (const auto& pp : table.lambda_support()) {
        const double n = static_cast<double>(pp.n);
        if (n > x) break;
        const double ln = std::log(n);
        const double r = pp.lambda / ln;
        const double f = smoothing_weight(ln / L);
        s2 += r * r * f * f / n;
        s1 += r * r * f / n;
    }
    return {T / (2.0 * pi * pi) * s2, -T / (pi * pi) * s1};
}

/// G(T) = int_1^T |D(t)/pi|^2 dt and H(T) = (2/pi) int_1^T S(t) D(t) dt,
/// D the prime Dirichlet polynomial, by direct quadrature.
inline GandH g_and_h_direct(double T, double x, const SEvaluator& ev, const QuadratureSpec& spec = {}) {
    if (!(x >= 4.0)) throw DomainError("g_and_h_direct needs x >= 4");
    if (!(x * x <= T)) throw DomainError("g_and_h_direct needs x <= sqrt(T)");
    if (!ev.zeros.covers(T)) throw DomainError("g_and_h_direct: T lies beyond the complete zero coverage");
    if (x > static_cast<double>(ev.prime_table.limit())) throw DomainError("prime table does not reach x");
    constexpr double pi = std::numbers::pi;
    const double L = std::log(x);

    // Dirichlet coefficients once.
    std::vector<double> freq, coef;
    for (const auto& pp : ev.prime_table.lambda_support()) {
        const double n = static_cast<double>(pp.n);
        if (n > x) break;
        const double ln = std::log(n);
        freq.push_back(ln);
        coef.push_back((pp.lambda / ln) * smoothing_weight(ln / L) / std::sqrt(n));
    }
    auto D = [&](double t) {
        double s = 0.0;
        for (std::size_t i = 0; i < freq.size(); ++i) s += coef[i] * std::sin(t * freq[i]);
        return s;
    };
    const double panel = std::min(1.0, pi / L);
    const auto cuts = detail::s_cuts(1.0, T, ev.zeros);
    const int order = ev.theta_order;
    GandH out;
    out.g = detail::piecewise_integral(cuts, ev.zeros, spec, panel, [&](double t, double) {
        const double d = D(t) / pi;
        return d * d;
    });
    out.h = 2.0 / pi * detail::piecewise_integral(cuts, ev.zeros, spec, panel, [&](double t, double c) {
        return (c - detail::theta_mixed(t, order) / pi) * D(t);
    });
    std::tie(out.g_sum_formula, out.h_sum_formula) = g_and_h_sum_formulas(T, x, ev.prime_table);
    return out;
}

} // namespace szeta
