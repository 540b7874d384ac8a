#pragma once

// Elementary special functions needed by the kernels and the zero machinery.
// Everything here is double precision and valid on the ranges documented
// per function.

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "szeta/errors.hpp"

namespace szeta::special {

inline constexpr double pi = std::numbers::pi;

/// Riemann zeta at an even integer 2n (n >= 1).
inline double zeta_even(int n) {
    if (n < 1) throw DomainError("zeta_even requires n >= 1");
    if (n == 1) return pi * pi / 6.0;
    // Direct sum plus Euler-Maclaurin correction; s >= 4 so the remainder
    // after three correction terms is far below double precision.
    const double s = 2.0 * n;
    constexpr int cut = 40;
    double sum = 0.0;
    for (int k = cut - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
    const double N = cut;
    sum += std::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(N, -s) +
           s * std::pow(N, -s - 1.0) / 12.0 -
           s * (s + 1.0) * (s + 2.0) * std::pow(N, -s - 3.0) / 720.0;
    return sum;
}

/// x cot x, with the Taylor series near zero.
inline double x_cot_x(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 3.0 - x2 * x2 / 45.0;
    }
    return x / std::tan(x);
}

/// Digamma function for x > 0.
inline double digamma(double x) {
    if (!(x > 0.0)) throw DomainError("digamma requires x > 0");
    double acc = 0.0;
    while (x < 12.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double r = 1.0 / (x * x);
    const double series =
        r * (1.0 / 12.0 -
             r * (1.0 / 120.0 -
                  r * (1.0 / 252.0 - r * (1.0 / 240.0 - r * (1.0 / 132.0 - r * 691.0 / 32760.0)))));
    return acc + std::log(x) - 0.5 / x - series;
}

/// Principal-branch log Gamma for Re z > 0 (the analytic continuation used
/// by the Riemann-Siegel theta function). Shifts to Re z >= 12 and applies
/// the Stirling series.
inline std::complex<double> log_gamma(std::complex<double> z) {
    if (!(z.real() > 0.0)) throw DomainError("log_gamma requires Re z > 0");
    std::complex<double> shift{0.0, 0.0};
    while (z.real() < 12.0) {
        shift += std::log(z);
        z += 1.0;
    }
    static constexpr double bern[] = {1.0 / 6.0,   -1.0 / 30.0,  1.0 / 42.0,  -1.0 / 30.0,
                                      5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0};
    const std::complex<double> zinv = 1.0 / z;
    const std::complex<double> zinv2 = zinv * zinv;
    std::complex<double> term = zinv;
    std::complex<double> series{0.0, 0.0};
    for (int k = 1; k <= 8; ++k) {
        series += bern[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * term;
        term *= zinv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + series - shift;
}

/// Sine and cosine integrals Si(x), Ci(x) for x > 0.
inline std::pair<double, double> sici(double x) {
    if (!(x > 0.0)) throw DomainError("sici requires x > 0");
    constexpr double euler_gamma = 0.57721566490153286061;
    if (x <= 4.0) {
        const double x2 = x * x;
        double si = 0.0, ci = 0.0;
        double t = x;  // x^(2k+1)/(2k+1)! with alternating sign
        for (int k = 0; k < 40; ++k) {
            const double si_term = t / (2.0 * k + 1.0);
            si += si_term;
            t *= -x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
            if (std::abs(si_term) < 1e-18 * std::abs(si)) break;
        }
        double c = 1.0;  // x^(2k)/(2k)! with alternating sign
        for (int k = 1; k < 40; ++k) {
            c *= -x2 / ((2.0 * k - 1.0) * (2.0 * k));
            const double ci_term = c / (2.0 * k);
            ci += ci_term;
            if (std::abs(ci_term) < 1e-18) break;
        }
        return {si, euler_gamma + std::log(x) + ci};
    }
    // Continued fraction for E1(ix), evaluated with the modified Lentz method.
    using cd = std::complex<double>;
    constexpr double tiny = 1e-300;
    cd b{1.0, x};
    cd c = 1.0 / tiny;
    cd d = 1.0 / b;
    cd h = d;
    for (int i = 2; i < 200; ++i) {
        const double a = -static_cast<double>((i - 1) * (i - 1));
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cd del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    h *= cd{std::cos(x), -std::sin(x)};
    return {0.5 * pi + h.imag(), -h.real()};
}

} // namespace szeta::special
