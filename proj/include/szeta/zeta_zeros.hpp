#pragma once

// Riemann-Siegel theta and Z functions, the zero finder, and the zeros text
// format.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "szeta/errors.hpp"
#include "szeta/parallel.hpp"
#include "szeta/quadrature.hpp"
#include "szeta/special.hpp"

namespace szeta {

/// Riemann-Siegel theta from its asymptotic expansion. `terms` (0..5) is the
/// number of inverse-power corrections kept after -pi/8.
inline double theta(double t, int terms = 5) {
    if (!(t >= 10.0)) throw DomainError("theta: asymptotic expansion needs t >= 10");
    constexpr double pi = std::numbers::pi;
    static constexpr std::array<double, 5> coeff{1.0 / 48.0, 7.0 / 5760.0, 31.0 / 80640.0, 127.0 / 430080.0,
                                                 511.0 / 1216512.0};
    const double inv = 1.0 / t;
    const double inv2 = inv * inv;
    double corr = 0.0;
    double pw = inv;
    for (int k = 0; k < std::clamp(terms, 0, 5); ++k) {
        corr += coeff[k] * pw;
        pw *= inv2;
    }
    return 0.5 * t * std::log(t / (2.0 * pi)) - 0.5 * t - pi / 8.0 + corr;
}

/// theta(t) = Im log Gamma(1/4 + i t / 2) - (t / 2) log pi, valid for all t >= 0.
inline double theta_exact(double t) {
    if (!(t >= 0.0)) throw DomainError("theta_exact needs t >= 0");
    const auto lg = special::log_gamma({0.25, 0.5 * t});
    return lg.imag() - 0.5 * t * std::log(std::numbers::pi);
}

/// theta with the expansion above t = 10 and the log-Gamma form below.
inline double theta_any(double t) { return t >= 10.0 ? theta(t) : theta_exact(t); }

namespace detail {

// Taylor coefficients at delta = 0 of
//   psi(delta) = -cos(2 pi delta^2 - 5 pi / 8) / cos(2 pi delta),
// obtained from a discrete Fourier transform on |delta| = 1. psi is entire
// (numerator and denominator vanish together at delta = +-1/4), so the
// coefficients decay faster than geometrically and aliasing is negligible.
inline const std::array<double, 60>& rs_psi_coeffs() {
    static const std::array<double, 60> a = [] {
        constexpr int M = 128;
        constexpr double pi = std::numbers::pi;
        std::array<std::complex<double>, M> vals;
        for (int j = 0; j < M; ++j) {
            const std::complex<double> d = std::polar(1.0, 2.0 * pi * j / M);
            vals[j] = -std::cos(2.0 * pi * d * d - 5.0 * pi / 8.0) / std::cos(2.0 * pi * d);
        }
        std::array<double, 60> out{};
        for (int n = 0; n < 60; ++n) {
            std::complex<double> s = 0.0;
            for (int j = 0; j < M; ++j) s += vals[j] * std::polar(1.0, -2.0 * pi * n * j / M);
            out[n] = s.real() / M;
        }
        return out;
    }();
    return a;
}

// k-th derivative of psi at delta.
inline double rs_psi_derivative(int k, double delta) {
    const auto& a = rs_psi_coeffs();
    double sum = 0.0;
    for (int n = static_cast<int>(a.size()) - 1; n >= k; --n) {
        double falling = 1.0;
        for (int i = 0; i < k; ++i) falling *= n - i;
        sum = sum * delta + falling * a[n];
    }
    return sum;
}

} // namespace detail

/// Riemann-Siegel Z(t) with the main sum and the remainder corrections
/// C0..C4. Error is about 3e-6 at t = 14, 3e-7 at t = 50 and below 1e-8
/// from t = 200 on.
inline double riemann_siegel_Z(double t) {
    if (!(t >= 10.0)) throw DomainError("riemann_siegel_Z needs t >= 10");
    constexpr double pi = std::numbers::pi;
    const double tau = t / (2.0 * pi);
    const double root = std::sqrt(tau);
    const auto N = static_cast<long>(std::floor(root));
    const double th = theta(t);
    double sum = 0.0;
    for (long n = N; n >= 1; --n) {
        const double dn = static_cast<double>(n);
        sum += std::cos(th - t * std::log(dn)) / std::sqrt(dn);
    }
    const double delta = (root - static_cast<double>(N)) - 0.5;
    double d[13];
    for (int k = 0; k <= 12; ++k) d[k] = detail::rs_psi_derivative(k, delta);
    const double p2 = pi * pi, p4 = p2 * p2, p6 = p4 * p2, p8 = p4 * p4;
    const double c0 = d[0];
    const double c1 = -d[3] / (96.0 * p2);
    const double c2 = d[2] / (64.0 * p2) + d[6] / (18432.0 * p4);
    const double c3 = -d[1] / (64.0 * p2) - d[5] / (3840.0 * p4) - d[9] / (5308416.0 * p6);
    const double c4 = d[0] / (128.0 * p2) + 19.0 * d[4] / (24576.0 * p4) + 11.0 * d[8] / (5898240.0 * p6) +
                      d[12] / (2038431744.0 * p8);
    const double r = 1.0 / root;  // tau^(-1/2)
    const double rem = c0 + r * (c1 + r * (c2 + r * (c3 + r * c4)));
    const double sign = (N % 2 == 1) ? 1.0 : -1.0;  // (-1)^(N-1)
    return 2.0 * sum + sign * std::pow(tau, -0.25) * rem;
}

/// zeta(1/2 + it) by Euler-Maclaurin summation; used where the
/// Riemann-Siegel remainder is not yet small.
inline std::complex<double> zeta_critical_line(double t) {
    using cd = std::complex<double>;
    const cd s(0.5, t);
    const int N = 30 + static_cast<int>(std::ceil(0.5 * std::abs(t)));
    cd sum = 0.0;
    for (int n = N - 1; n >= 1; --n) sum += std::exp(-s * std::log(static_cast<double>(n)));
    const double dN = N;
    const cd Ns = std::exp(-s * std::log(dN));
    sum += Ns * dN / (s - 1.0) + 0.5 * Ns;
    // B_2k for k = 1..10.
    static constexpr double bern[] = {1.0 / 6.0,       -1.0 / 30.0, 1.0 / 42.0,         -1.0 / 30.0,
                                      5.0 / 66.0,      -691.0 / 2730.0, 7.0 / 6.0,      -3617.0 / 510.0,
                                      43867.0 / 798.0, -174611.0 / 330.0};
    cd rising = s;       // s (s+1) ... (s+2k-2)
    double fact = 2.0;   // (2k)!
    cd pw = Ns / dN;     // N^(-s-2k+1)
    for (int k = 1; k <= 10; ++k) {
        sum += bern[k - 1] / fact * rising * pw;
        rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        pw /= dN * dN;
    }
    return sum;
}

/// Height below which hardy_Z uses Euler-Maclaurin instead of Riemann-Siegel.
inline constexpr double rs_switch_height = 200.0;

/// Z(t) = exp(i theta(t)) zeta(1/2 + it), accurate to about 1e-10 for
/// 10 <= t <= 1e5: Euler-Maclaurin below rs_switch_height, Riemann-Siegel above.
inline double hardy_Z(double t) {
    if (t >= rs_switch_height) return riemann_siegel_Z(t);
    if (!(t >= 10.0)) throw DomainError("hardy_Z needs t >= 10");
    const double th = theta(t);
    return (std::polar(1.0, th) * zeta_critical_line(t)).real();
}

enum class ZeroSource { computed, imported, synthetic };

inline const char* to_string(ZeroSource s) {
    switch (s) {
    case ZeroSource::computed: return "computed";
    case ZeroSource::imported: return "imported";
    case ZeroSource::synthetic: return "synthetic";
    }
    return "unknown";
}

/// Smooth part of the zero count, theta(t) / pi + 1.
inline double smooth_zero_count(double t) { return theta_any(t) / std::numbers::pi + 1.0; }

/// Ascending zero ordinates up to t_max with provenance. Immutable after
/// construction; the constructor enforces the ordering, gap and (for
/// complete computed or imported sets) count invariants.
class ZeroSet {
public:
    ZeroSet(std::vector<double> ordinates, double t_max, ZeroSource source, bool claimed_complete)
        : ordinates_(std::move(ordinates)), t_max_(t_max), source_(source), complete_(claimed_complete) {
        validate();
    }

    /// Hand-made ordinate sets for tests and experiments: ordering is still
    /// enforced, the gap and count checks against the zeta function are not.
    static ZeroSet synthetic(std::vector<double> ordinates, double t_max) {
        return ZeroSet(std::move(ordinates), t_max, ZeroSource::synthetic, true);
    }

    const std::vector<double>& ordinates() const noexcept { return ordinates_; }
    std::size_t size() const noexcept { return ordinates_.size(); }
    double t_max() const noexcept { return t_max_; }
    ZeroSource source() const noexcept { return source_; }
    bool claimed_complete() const noexcept { return complete_; }

    bool covers(double T) const noexcept { return complete_ && T <= t_max_; }

    /// Number of ordinates <= t.
    std::size_t count_up_to(double t) const {
        return static_cast<std::size_t>(std::upper_bound(ordinates_.begin(), ordinates_.end(), t) -
                                        ordinates_.begin());
    }

    /// Ordinates <= T.
    std::vector<double> up_to(double T) const {
        return {ordinates_.begin(), ordinates_.begin() + static_cast<std::ptrdiff_t>(count_up_to(T))};
    }

    bool operator==(const ZeroSet& o) const = default;

private:
    void validate() const {
        if (!std::isfinite(t_max_)) throw ValidationError("zero set t_max must be finite");
        for (std::size_t i = 0; i < ordinates_.size(); ++i) {
            const double g = ordinates_[i];
            if (!std::isfinite(g) || !(g > 1.0)) throw ValidationError("zero ordinates must be finite and > 1");
            if (i > 0 && !(g > ordinates_[i - 1]))
                throw ValidationError("zero ordinates must be strictly increasing (index " + std::to_string(i) + ")");
            if (source_ != ZeroSource::synthetic && i > 0 && g - ordinates_[i - 1] >= 10.0)
                throw ValidationError("gap of " + std::to_string(g - ordinates_[i - 1]) + " after ordinate " +
                                      std::to_string(ordinates_[i - 1]));
        }
        if (!ordinates_.empty() && ordinates_.back() > t_max_)
            throw ValidationError("ordinate above t_max");
        if (complete_ && source_ != ZeroSource::synthetic) {
            const double expect = smooth_zero_count(t_max_);
            const double count = static_cast<double>(ordinates_.size());
            if (std::abs(count - expect) >= 3.0) {
                std::ostringstream msg;
                msg << "zero count " << ordinates_.size() << " up to t=" << t_max_
                    << " is inconsistent with the smooth count " << expect;
                throw ValidationError(msg.str());
            }
        }
    }

    std::vector<double> ordinates_;
    double t_max_;
    ZeroSource source_;
    bool complete_;
};

namespace detail {

inline double bisect_zero(double a, double b, double za, double tol) {
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        const double zm = hardy_Z(m);
        if (zm == 0.0) return m;
        if ((zm < 0.0) == (za < 0.0)) {
            a = m;
            za = zm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// Sign changes of Z on the grid t_i = lo + i*step, i in [0, n], each refined
// by bisection. Scanning is split into index ranges so that the grid, and
// hence the result, does not depend on the thread count.
inline std::vector<double> scan_zeros(double lo, double hi, double step, double tol) {
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(256, n / 64));
    std::vector<std::vector<double>> found(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        const std::size_t i0 = n * c / chunks, i1 = n * (c + 1) / chunks;
        double a = std::min(lo + static_cast<double>(i0) * step, hi);
        double za = hardy_Z(a);
        for (std::size_t i = i0 + 1; i <= i1; ++i) {
            const double b = std::min(lo + static_cast<double>(i) * step, hi);
            const double zb = hardy_Z(b);
            if ((za < 0.0) != (zb < 0.0) && za != 0.0) found[c].push_back(bisect_zero(a, b, za, tol));
            a = b;
            za = zb;
        }
    });
    std::vector<double> all;
    for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

// Looks for a stretch where S(t) = N(t) - 1 - theta(t)/pi drifts away from
// zero on average, the signature of a missed pair of zeros. Returns the
// start of the first offending block, or NaN when all blocks are fine.
inline double find_count_drift(const std::vector<double>& zeros, double lo, double hi) {
    constexpr double pi = std::numbers::pi;
    double a = lo;
    while (a < hi) {
        const double gap = 2.0 * pi / std::log(std::max(a, 2.0 * pi * std::numbers::e) / (2.0 * pi));
        const double b = std::min(hi, a + std::max(20.0 * gap, 5.0));
        constexpr int samples = 400;
        double mean = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double t = a + (b - a) * (i + 0.5) / samples;
            const auto n = std::upper_bound(zeros.begin(), zeros.end(), t) - zeros.begin();
            mean += static_cast<double>(n) - 1.0 - theta(t) / pi;
        }
        mean /= samples;
        if (std::abs(mean) > 1.0) return a;
        a = b;
    }
    return std::nan("");
}

} // namespace detail

struct ZeroSearchOptions {
    double step = 0.05;
    double tolerance = 1e-9;
    int refinements = 4;
};

/// All zeros of hardy_Z on [10, t_max]. The count is checked by block averages of
/// S(t), which must stay within +-1 of zero; on failure the grid step is
/// halved up to `refinements` times before MissedZerosError is raised.
inline ZeroSet find_zeros(double t_max, const QuadratureSpec& spec = {}, ZeroSearchOptions opt = {}) {
    (void)spec;
    if (!(t_max >= 15.0 && t_max <= 1e5)) throw DomainError("find_zeros supports 15 <= t_max <= 1e5");
    constexpr double lo = 10.0;  // Z is defined from here; the first zero is at 14.13
    double step = opt.step;
    double where = 0.0;
    for (int attempt = 0; attempt <= opt.refinements; ++attempt, step *= 0.5) {
        auto zeros = detail::scan_zeros(lo, t_max, step, opt.tolerance);
        where = detail::find_count_drift(zeros, lo, t_max);
        const double smooth = smooth_zero_count(t_max);
        if (std::isnan(where) && std::abs(static_cast<double>(zeros.size()) - smooth) < 3.0)
            return ZeroSet(std::move(zeros), t_max, ZeroSource::computed, true);
        if (std::isnan(where)) where = t_max;
    }
    std::ostringstream msg;
    msg << "missed zeros near t=" << where << " after " << opt.refinements << " grid refinements";
    throw MissedZerosError(msg.str(), where);
}

/// Shortest decimal that reads back to the same double.
inline std::string format_shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Writes the zeros text format: '#' header lines with provenance, then one
/// ordinate per line.
inline void export_zeros(std::ostream& out, const ZeroSet& z) {
    out << "# t_max=" << format_shortest(z.t_max()) << '\n';
    out << "# source=" << to_string(z.source()) << '\n';
    out << "# complete=" << (z.claimed_complete() ? "true" : "false") << '\n';
    for (double g : z.ordinates()) out << format_shortest(g) << '\n';
}

/// Reads the zeros text format. Header lines written by export_zeros are
/// honoured; other comment lines are skipped. Without a t_max header the
/// last ordinate is used, and the set counts as complete when its size
/// agrees with the smooth zero count.
inline ZeroSet import_zeros(std::istream& in) {
    std::vector<double> ords;
    double t_max = std::nan("");
    int complete = -1;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            std::string body = line.substr(first + 1);
            body.erase(0, body.find_first_not_of(" \t"));
            if (body.rfind("t_max=", 0) == 0) {
                const std::string v = body.substr(6);
                double parsed = 0.0;
                auto r = std::from_chars(v.data(), v.data() + v.size(), parsed);
                if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw ParseError("bad t_max header", lineno);
                t_max = parsed;
            } else if (body.rfind("complete=", 0) == 0) {
                complete = body.substr(9) == "true" ? 1 : 0;
            }
            continue;
        }
        const auto last = line.find_last_not_of(" \t");
        const std::string tok = line.substr(first, last - first + 1);
        double v = 0.0;
        auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (r.ec != std::errc() || r.ptr != tok.data() + tok.size())
            throw ParseError("not a decimal ordinate: '" + tok + "'", lineno);
        if (!std::isfinite(v) || !(v > 1.0)) throw ParseError("ordinate must be finite and > 1", lineno);
        if (!ords.empty() && !(v > ords.back()))
            throw ParseError("ordinates not strictly increasing (" + tok + " after " + format_shortest(ords.back()) + ")",
                             lineno);
        ords.push_back(v);
    }
    if (ords.empty()) throw ParseError("zeros file contains no ordinates", lineno);
    if (std::isnan(t_max)) t_max = ords.back();
    if (t_max < ords.back()) throw ParseError("t_max header below the last ordinate", lineno);
    bool claimed = complete == 1;
    if (complete == -1) claimed = std::abs(static_cast<double>(ords.size()) - smooth_zero_count(t_max)) < 3.0;
    return ZeroSet(std::move(ords), t_max, ZeroSource::imported, claimed);
}

inline ZeroSet import_zeros(const std::string& text) {
    std::istringstream in(text);
    return import_zeros(in);
}

} // namespace szeta
