#pragma once

// The pair correlation F(alpha, T) over a zero set, the k-hat
// weighted pair sums, and the rearrangements built on them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "szeta/check_report.hpp"
#include "szeta/errors.hpp"
#include "szeta/kernels.hpp"
#include "szeta/parallel.hpp"
#include "szeta/quadrature.hpp"
#include "szeta/s_of_t.hpp"
#include "szeta/zeta_zeros.hpp"

namespace szeta {

/// (T / 2 pi) log T.
inline double pcf_normalizer(double T) { return T / (2.0 * std::numbers::pi) * std::log(T); }

namespace detail {

struct Samples {
    std::vector<double> v;
    Samples& operator+=(const Samples& o) {
        if (v.empty()) v.assign(o.v.size(), 0.0);
        for (std::size_t k = 0; k < o.v.size(); ++k) v[k] += o.v[k];
        return *this;
    }
};

inline std::vector<double> pcf_zeros(const ZeroSet& zeros, double T) {
    if (!(T >= 20.0)) throw DomainError("pair correlation needs T >= 20");
    if (!zeros.covers(T)) throw DomainError("pair correlation: zeros are not complete up to T");
    return zeros.up_to(T);
}

} // namespace detail

/// F(alpha, T) by the direct double sum over ordered pairs 0 < gamma, gamma' <= T.
/// The imaginary part cancels between (gamma, gamma') and (gamma', gamma);
/// its residue is checked before it is discarded.
inline double pcf(double alpha, const ZeroSet& zeros, double T) {
    const auto g = detail::pcf_zeros(zeros, T);
    const double L = std::log(T);
    const std::size_t n = g.size();
    const auto sum = chunked_sum<std::complex<double>>(n, [&](std::size_t i0, std::size_t i1) {
        std::complex<double> acc = 0.0;
        for (std::size_t i = i0; i < i1; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double d = g[i] - g[j];
                acc += std::polar(pair_weight(d), alpha * L * d);
            }
        return acc;
    });
    const double norm = pcf_normalizer(T);
    if (std::abs(sum.imag()) / norm >= 1e-9)
        throw AccuracyError("pair correlation has a non-negligible imaginary part", sum.real() / norm,
                            sum.imag() / norm);
    return sum.real() / norm;
}

/// Sampled F(alpha, T) on 0, step, 2 step, ... <= alpha_max.
struct PairCorrelationCurve {
    double T = 0.0;
    std::vector<double> alpha_grid;
    std::vector<double> values;
    std::size_t zero_count = 0;
    std::string weight_note = "w(u) = 4/(4+u^2)";
};

/// F on a uniform alpha grid. Pair differences are computed once; for each
/// pair cos(k h L d) is advanced along the grid by the Chebyshev recurrence.
inline PairCorrelationCurve pcf_curve(const ZeroSet& zeros, double T, double alpha_max, double step) {
    if (!(step > 0.0)) throw DomainError("pcf_curve needs step > 0");
    if (!(alpha_max >= 1.0)) throw DomainError("pcf_curve needs alpha_max >= 1");
    const auto g = detail::pcf_zeros(zeros, T);
    const double L = std::log(T);
    const auto K = static_cast<std::size_t>(std::floor(alpha_max / step * (1.0 + 1e-12)));
    const std::size_t n = g.size();

    // Row i contributes the pairs (i, j > i); the diagonal adds n.
    const auto sums = chunked_sum<detail::Samples>(
        n,
        [&](std::size_t i0, std::size_t i1) {
            detail::Samples out;
            out.v.assign(K + 1, 0.0);
            auto& acc = out.v;
            std::vector<double> w, prev, cur, two_c;
            for (std::size_t i = i0; i < i1; ++i) {
                const std::size_t m = n - i - 1;
                if (m == 0) continue;
                w.resize(m);
                prev.resize(m);
                cur.resize(m);
                two_c.resize(m);
                for (std::size_t j = 0; j < m; ++j) {
                    const double d = g[i + 1 + j] - g[i];
                    w[j] = 2.0 * pair_weight(d);
                    const double c = std::cos(step * L * d);
                    prev[j] = 1.0;  // cos(0)
                    cur[j] = c;
                    two_c[j] = 2.0 * c;
                }
                double s0 = 0.0;
                for (std::size_t j = 0; j < m; ++j) s0 += w[j];
                acc[0] += s0;
                for (std::size_t k = 1; k <= K; ++k) {
                    double s = 0.0;
                    for (std::size_t j = 0; j < m; ++j) {
                        s += w[j] * cur[j];
                        const double next = two_c[j] * cur[j] - prev[j];
                        prev[j] = cur[j];
                        cur[j] = next;
                    }
                    acc[k] += s;
                }
            }
            return out;
        },
        64);

    PairCorrelationCurve c;
    c.T = T;
    c.zero_count = n;
    const double norm = pcf_normalizer(T);
    c.alpha_grid.resize(K + 1);
    c.values.resize(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        c.alpha_grid[k] = static_cast<double>(k) * step;
        const double off = sums.v.empty() ? 0.0 : sums.v[k];
        c.values[k] = (static_cast<double>(n) + off) / norm;
    }
    return c;
}

/// pcf.csv: header "alpha,F", 12 significant digits.
inline void write_pcf_csv(std::ostream& out, const PairCorrelationCurve& c) {
    out << "alpha,F\n";
    char buf[64];
    for (std::size_t k = 0; k < c.values.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", c.alpha_grid[k], c.values[k]);
        out << buf;
    }
}

enum class TailModel { constant_one, last_value };

inline const char* to_string(TailModel m) { return m == TailModel::constant_one ? "constant_one" : "last_value"; }

/// int_1^inf F(alpha) alpha^-power d alpha: the piecewise-linear interpolant
/// of the curve is integrated exactly against alpha^-power on [1, alpha_cut],
/// and F is replaced by 1 (constant_one) or by its value at the cut
/// (last_value) beyond it.
inline double tail_integral(const PairCorrelationCurve& c, int power, double alpha_cut, TailModel model) {
    if (power != 2 && power != 4) throw DomainError("tail_integral supports power 2 or 4");
    if (c.alpha_grid.size() < 2) throw DomainError("tail_integral needs at least two samples");
    if (!(alpha_cut >= 1.0) || alpha_cut > c.alpha_grid.back() * (1.0 + 1e-12))
        throw DomainError("tail_integral: alpha_cut must lie in [1, end of grid]");
    alpha_cut = std::min(alpha_cut, c.alpha_grid.back());
    const double p = power;
    // Antiderivatives of a^-p and a^(1-p).
    auto m0 = [p](double a) { return std::pow(a, 1.0 - p) / (1.0 - p); };
    auto m1 = [p](double a) { return p == 2.0 ? std::log(a) : std::pow(a, 2.0 - p) / (2.0 - p); };
    auto interp = [&](double a) {
        auto it = std::upper_bound(c.alpha_grid.begin(), c.alpha_grid.end(), a);
        std::size_t k = static_cast<std::size_t>(it - c.alpha_grid.begin());
        k = std::clamp<std::size_t>(k, 1, c.alpha_grid.size() - 1);
        const double a0 = c.alpha_grid[k - 1], a1 = c.alpha_grid[k];
        const double t = (a - a0) / (a1 - a0);
        return c.values[k - 1] + t * (c.values[k] - c.values[k - 1]);
    };
    std::vector<double> nodes{1.0};
    for (double a : c.alpha_grid)
        if (a > 1.0 && a < alpha_cut) nodes.push_back(a);
    nodes.push_back(alpha_cut);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double a = nodes[i], b = nodes[i + 1];
        if (b <= a) continue;
        const double fa = interp(a), fb = interp(b);
        const double slope = (fb - fa) / (b - a);
        const double intercept = fa - slope * a;
        sum += intercept * (m0(b) - m0(a)) + slope * (m1(b) - m1(a));
    }
    const double f_tail = model == TailModel::constant_one ? 1.0 : interp(alpha_cut);
    return sum + f_tail * std::pow(alpha_cut, 1.0 - p) / (p - 1.0);
}

enum class PairWeight { none, w, complement };

/// Pair sums shared by the weighted rearrangements of R, over ordinates
/// 0 < gamma, gamma' <= T with y = (gamma - gamma') log x:
///   khat_w  = sum khat(y) w(d)        khat_c = sum khat(y) d^2/(4+d^2)
///   k2hat_w = sum k2hat(y) w(d)       cos_w  = sum cos(y) w(d)
struct PairSums {
    double khat_w = 0.0;
    double khat_c = 0.0;
    double k2hat_w = 0.0;
    double cos_w = 0.0;
    std::size_t zero_count = 0;

    PairSums& operator+=(const PairSums& o) {
        khat_w += o.khat_w;
        khat_c += o.khat_c;
        k2hat_w += o.k2hat_w;
        cos_w += o.cos_w;
        return *this;
    }
};

namespace detail {

// khat and k2hat at the small arguments, where quadrature is needed, are
// evaluated once per argument rounded to a 1e-9 grid, at the first argument
// seen for that slot.
class KhatTable {
public:
    KhatTable(const std::vector<double>& g, double logx, const QuadratureSpec& spec) {
        const std::size_t n = g.size();
        std::vector<std::pair<std::int64_t, double>> seen;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double y = (g[j] - g[i]) * logx;
                if (y >= series_threshold) break;
                seen.emplace_back(key(y), y);
            }
        std::stable_sort(seen.begin(), seen.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        seen.erase(std::unique(seen.begin(), seen.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
                   seen.end());
        keys_.resize(seen.size());
        khat_.resize(seen.size());
        k2hat_.resize(seen.size());
        parallel_for(seen.size(), [&](std::size_t i) {
            keys_[i] = seen[i].first;
            khat_[i] = khat(seen[i].second, KhatMethod::direct, spec);
            k2hat_[i] = k2hat(seen[i].second, KhatMethod::direct, spec);
        });
    }

    // khat and k2hat at y >= 0.
    std::pair<double, double> at(double y) const {
        if (y >= series_threshold) return {khat(y, KhatMethod::series), k2hat(y, KhatMethod::series)};
        const auto it = std::lower_bound(keys_.begin(), keys_.end(), key(y));
        if (it == keys_.end() || *it != key(y)) throw std::logic_error("khat table miss");
        const auto i = static_cast<std::size_t>(it - keys_.begin());
        return {khat_[i], k2hat_[i]};
    }

    std::size_t size() const noexcept { return keys_.size(); }

private:
    static std::int64_t key(double y) { return std::llround(y * 1e9); }

    std::vector<std::int64_t> keys_;
    std::vector<double> khat_, k2hat_;
};

inline PairSums pair_sums(const std::vector<double>& g, double logx, const QuadratureSpec& spec,
                          bool reversed = false) {
    spec.validate();
    const KhatTable table(g, logx, spec);
    const std::size_t n = g.size();
    PairSums total = chunked_sum<PairSums>(n, [&](std::size_t i0, std::size_t i1) {
        PairSums acc;
        for (std::size_t r = i0; r < i1; ++r) {
            const std::size_t i = reversed ? n - 1 - r : r;
            for (std::size_t j = 0; j < n; ++j) {
                const double d = reversed ? g[j] - g[i] : g[i] - g[j];
                const double y = std::abs(d) * logx;
                const auto [kh, k2] = table.at(y);
                const double w = pair_weight(d);
                acc.khat_w += kh * w;
                acc.khat_c += kh * pair_weight_complement(d);
                acc.k2hat_w += k2 * w;
                acc.cos_w += std::cos(y) * w;
            }
        }
        return acc;
    });
    total.zero_count = n;
    return total;
}

} // namespace detail

/// Pair sums over the ordinates 0 < gamma, gamma' <= T.
inline PairSums pair_sums(const ZeroSet& zeros, double T, double x, const QuadratureSpec& spec = {}) {
    if (!(x >= 4.0)) throw DomainError("pair sums need x >= 4");
    return detail::pair_sums(detail::pcf_zeros(zeros, T), std::log(x), spec);
}

/// sum over all ordered pairs of the set of khat((gamma - gamma') log x) times
/// the selected weight. khat is computed by direct quadrature below
/// |y| = 40 and by its asymptotic expansion above.
inline double weighted_khat_sum(const ZeroSet& zeros, double x, PairWeight weight, const QuadratureSpec& spec = {},
                                bool reversed = false) {
    if (zeros.size() == 0) throw DomainError("weighted_khat_sum needs a nonempty zero set");
    if (!(x >= 4.0)) throw DomainError("weighted_khat_sum needs x >= 4");
    const auto s = detail::pair_sums(zeros.ordinates(), std::log(x), spec, reversed);
    switch (weight) {
    case PairWeight::w: return s.khat_w;
    case PairWeight::complement: return s.khat_c;
    case PairWeight::none:
    default: return s.khat_w + s.khat_c;
    }
}

/// Terms of the pair-sum rearrangement at x = T^beta. Empirical integrals
/// against F follow from its definition:
///   int F(a) k(a / 2 pi beta) da   = 2 pi beta / N(T) * khat_w
///   int F(a) k''(a / 2 pi beta) da = 2 pi beta / N(T) * k2hat_w
/// with N(T) = (T / 2 pi) log T, and F(beta) = cos_w / N(T).
struct PairIntegrals {
    double T = 0.0, beta = 0.0, x = 0.0;
    double f_beta = 0.0;
    double int_f_k = 0.0;
    double int_f_k2 = 0.0;
    PairSums sums;
};

inline PairIntegrals pair_integrals(const ZeroSet& zeros, double T, double beta, const QuadratureSpec& spec = {}) {
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
    PairIntegrals p;
    p.T = T;
    p.beta = beta;
    p.x = std::exp(beta * std::log(T));
    p.sums = detail::pair_sums(detail::pcf_zeros(zeros, T), beta * std::log(T), spec);
    const double norm = pcf_normalizer(T);
    p.f_beta = p.sums.cos_w / norm;
    p.int_f_k = 2.0 * std::numbers::pi * beta / norm * p.sums.khat_w;
    p.int_f_k2 = 2.0 * std::numbers::pi * beta / norm * p.sums.k2hat_w;
    return p;
}

/// Both sides of the complement-weighted rearrangement:
///   sum khat(d log x) d^2/(4+d^2)
///     = (pi^2 T / 16 log T) F(beta) / beta^2
///       - T / (64 pi^4 log T beta^3) int F(a) k''(a / 2 pi beta) da.
inline CheckReport lemma5_check(const ZeroSet& zeros, double T, double beta, const QuadratureSpec& spec = {},
                                double tol = 1e-4) {
    constexpr double pi = std::numbers::pi;
    const auto p = pair_integrals(zeros, T, beta, spec);
    const double L = std::log(T);
    const double lhs = p.sums.khat_c;
    const double rhs = pi * pi * T / (16.0 * L) * p.f_beta / (beta * beta) -
                       T / (64.0 * std::pow(pi, 4) * L * beta * beta * beta) * p.int_f_k2;
    CheckReport r{"lemma5", {}, {}};
    r.compare("complement-weighted khat sum vs F(beta) and k'' integral", lhs, rhs, tol, true);
    r.notes.push_back("zeros up to T: " + std::to_string(p.sums.zero_count));
    r.notes.push_back("the k'' integral expands F into its pair sum; each pair contributes 2 pi beta times the "
                      "transform of k'' at (gamma - gamma') log x");
    return r;
}

struct RDecomposition {
    double r_total = 0.0;
    double term_main = 0.0;
    double term_F_beta = 0.0;
    double term_k2_integral = 0.0;
    double beta = 0.0;
    double x = 0.0;
    double khat_sum_none = 0.0;       // sum khat over all pairs
    double r_direct = std::nan("");   // time integral, only for T <= 500
    double remainder_scale = 0.0;     // log^3 T
};

/// R(x) = int_1^T |(1/pi) sum_gamma sin((t - gamma) log x) I((t - gamma) log x)|^2 dt
/// by direct quadrature over zeros 0 < gamma <= T.
inline double r_direct_integral(const ZeroSet& zeros, double T, double x, const QuadratureSpec& spec = {}) {
    const auto g = detail::pcf_zeros(zeros, T);
    constexpr double pi = std::numbers::pi;
    const double L = std::log(x);
    auto f = [&](double t) {
        double s = 0.0;
        for (double gamma : g) s += zero_term((t - gamma) * L);
        s /= pi;
        return s * s;
    };
    // The integrand jumps at every ordinate (sin(v) I(v) -> +-pi/2 as v -> 0+-).
    std::vector<double> cuts{1.0};
    for (double gamma : g)
        if (gamma > 1.0 && gamma < T) cuts.push_back(gamma);
    cuts.push_back(T);
    const double panel = std::min(1.0, pi / (2.0 * L));
    return chunked_sum<double>(cuts.size() - 1, [&](std::size_t i0, std::size_t i1) {
        double acc = 0.0;
        for (std::size_t i = i0; i < i1; ++i) acc += integrate(f, cuts[i], cuts[i + 1], spec, panel).value;
        return acc;
    });
}

/// R split into the F(alpha) k, F(beta) and F(alpha) k'' terms, each built
/// from the zero set. For T <= 500 the time integral is computed as well.
inline RDecomposition lemma6_eval(const ZeroSet& zeros, double T, double beta, const QuadratureSpec& spec = {},
                                  bool with_direct = true) {
    constexpr double pi = std::numbers::pi;
    const auto p = pair_integrals(zeros, T, beta, spec);
    const double L = std::log(T);
    RDecomposition r;
    r.beta = beta;
    r.x = p.x;
    r.term_main = T / std::pow(2.0 * pi * pi * beta, 2) * p.int_f_k;
    r.term_F_beta = T / (16.0 * L * L) * p.f_beta / (beta * beta * beta);
    r.term_k2_integral = T / (64.0 * std::pow(pi, 6) * std::pow(beta, 4) * L * L) * p.int_f_k2;
    r.r_total = r.term_main + r.term_F_beta - r.term_k2_integral;
    r.khat_sum_none = p.sums.khat_w + p.sums.khat_c;
    r.remainder_scale = L * L * L;
    if (with_direct && T <= 500.0) r.r_direct = r_direct_integral(zeros, T, p.x, spec);
    return r;
}

/// RDecomposition as a check: the regrouped terms against the full k-hat
/// pair sum (asserted), and against the time integral when T <= 500
/// (reported beside log^3 T).
inline CheckReport lemma6_check(const ZeroSet& zeros, double T, double beta, const QuadratureSpec& spec = {},
                                double tol = 1e-6) {
    const auto d = lemma6_eval(zeros, T, beta, spec);
    constexpr double pi = std::numbers::pi;
    CheckReport r{"lemma6", {}, {}};
    r.compare("term sum vs full khat sum / (pi^2 log x)", d.r_total, d.khat_sum_none / (pi * pi * std::log(d.x)), tol,
              true);
    r.report_only("term_main", d.term_main, d.term_main);
    r.report_only("term_F_beta", d.term_F_beta, d.term_F_beta);
    r.report_only("term_k2_integral", d.term_k2_integral, d.term_k2_integral);
    if (std::isfinite(d.r_direct))
        r.report_only("time integral vs term sum", d.r_direct, d.r_total, d.remainder_scale);
    else
        r.notes.push_back("time integral skipped above T = 500");
    return r;
}

} // namespace szeta
