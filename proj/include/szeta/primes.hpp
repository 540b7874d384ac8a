#pragma once

// Primes, the von Mangoldt function and the prime sums that enter the
// second-moment formula.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "szeta/errors.hpp"
#include "szeta/kernels.hpp"

namespace szeta {

/// Primes and prime powers up to a fixed limit. Immutable once built.
class PrimeTable {
public:
    struct PrimePower {
        std::uint64_t n;
        double lambda;  // log p
    };

    /// Sieve of Eratosthenes over odd numbers; prime powers are produced by
    /// repeated integer multiplication.
    explicit PrimeTable(std::uint64_t limit) : limit_(limit) {
        if (limit < 4) throw DomainError("prime table limit must be at least 4");
        const std::uint64_t odd_count = (limit - 1) / 2;  // odd numbers 3, 5, ..., <= limit
        std::vector<bool> composite(odd_count + 1, false);
        for (std::uint64_t i = 3; i * i <= limit; i += 2) {
            if (composite[(i - 3) / 2]) continue;
            for (std::uint64_t j = i * i; j <= limit; j += 2 * i) composite[(j - 3) / 2] = true;
        }
        primes_.push_back(2);
        for (std::uint64_t i = 3; i <= limit; i += 2)
            if (!composite[(i - 3) / 2]) primes_.push_back(static_cast<std::uint32_t>(i));

        for (std::uint32_t p : primes_) {
            const double lp = std::log(static_cast<double>(p));
            for (std::uint64_t q = p; q <= limit; q *= p) {
                support_.push_back({q, lp});
                if (q > limit / p) break;
            }
        }
        std::sort(support_.begin(), support_.end(), [](const PrimePower& a, const PrimePower& b) { return a.n < b.n; });
    }

    std::uint64_t limit() const noexcept { return limit_; }
    const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }
    const std::vector<PrimePower>& lambda_support() const noexcept { return support_; }

    /// Lambda(n): log p if n = p^m, otherwise 0.
    double lambda(std::uint64_t n) const {
        if (n < 1 || n > limit_) throw DomainError("lambda argument outside the table");
        auto it = std::lower_bound(support_.begin(), support_.end(), n,
                                   [](const PrimePower& a, std::uint64_t v) { return a.n < v; });
        return (it != support_.end() && it->n == n) ? it->lambda : 0.0;
    }

    /// Exponent m when n = p^m, else 0.
    int prime_power_exponent(std::uint64_t n) const {
        if (lambda(n) == 0.0) return 0;
        const auto p = static_cast<std::uint64_t>(std::llround(std::exp(lambda(n))));
        int m = 0;
        while (n > 1) {
            n /= p;
            ++m;
        }
        return m;
    }

    /// Primes p <= bound.
    std::size_t count_up_to(std::uint64_t bound) const {
        return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), bound) - primes_.begin());
    }

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> primes_;
    std::vector<PrimePower> support_;
};

inline PrimeTable build_prime_table(std::uint64_t x) { return PrimeTable(x); }

/// T(u) = sum_{p <= u} 1/p.
inline double mertens_partial(double u, const PrimeTable& table) {
    if (!(u >= 2.0) || u > static_cast<double>(table.limit()))
        throw DomainError("mertens_partial needs 2 <= u <= table limit");
    const std::size_t n = table.count_up_to(static_cast<std::uint64_t>(std::floor(u)));
    double sum = 0.0;
    for (std::size_t i = n; i-- > 0;) sum += 1.0 / table.primes()[i];
    return sum;
}

struct TruncatedSum {
    double value = 0.0;
    double tail_bound = 0.0;
};

/// sum_{m=2}^{m_cutoff} sum_{p <= p_cutoff} coeff(m) p^-m with a rigorous
/// bound on everything left out (assuming |coeff(m)| <= 1 for every m).
///
/// Tail pieces: primes above the cutoff contribute at most
/// sum_{odd n > P} 1/(n(n-1)) <= 1/(2(n0 - 2)), n0 the first odd number > P;
/// exponents above the cutoff contribute sum_{p <= P} p^-(M+1) / (1 - 1/p).
inline TruncatedSum prime_power_double_sum(const std::function<double(int)>& coeff, std::uint64_t p_cutoff,
                                           int m_cutoff, const PrimeTable& table) {
    if (p_cutoff < 3 || m_cutoff < 2) throw DomainError("prime_power_double_sum needs p_cutoff >= 3, m_cutoff >= 2");
    if (p_cutoff > table.limit()) throw DomainError("prime table too small for p_cutoff");
    std::vector<double> c(m_cutoff + 1, 0.0);
    for (int m = 2; m <= m_cutoff; ++m) {
        c[m] = coeff(m);
        if (!(std::abs(c[m]) <= 1.0)) throw DomainError("coefficients must be bounded by 1");
    }
    std::vector<double> by_m(m_cutoff + 1, 0.0);
    double exponent_tail = 0.0;
    const std::size_t count = table.count_up_to(p_cutoff);
    for (std::size_t i = count; i-- > 0;) {
        const double p = table.primes()[i];
        const double inv = 1.0 / p;
        double pw = inv;
        for (int m = 2; m <= m_cutoff; ++m) {
            pw *= inv;
            if (pw == 0.0) break;
            by_m[m] += c[m] * pw;
        }
        exponent_tail += std::pow(p, -(m_cutoff + 1.0)) / (1.0 - inv);
    }
    TruncatedSum out;
    for (int m = m_cutoff; m >= 2; --m) out.value += by_m[m];
    const double n0 = (p_cutoff % 2 == 0) ? p_cutoff + 1.0 : p_cutoff + 2.0;
    out.tail_bound = 1.0 / (2.0 * (n0 - 2.0)) + exponent_tail;
    return out;
}

inline TruncatedSum prime_power_double_sum(const std::function<double(int)>& coeff, std::uint64_t p_cutoff,
                                           int m_cutoff) {
    return prime_power_double_sum(coeff, p_cutoff, m_cutoff, PrimeTable(std::max<std::uint64_t>(p_cutoff, 4)));
}

inline constexpr std::uint64_t default_p_cutoff = 1'000'000;
inline constexpr int default_m_cutoff = 64;

/// Euler's constant from the Euler-Maclaurin expansion of H_N - log N.
inline double euler_constant() {
    constexpr int N = 100;
    long double h = 0.0L;
    for (int n = N; n >= 1; --n) h += 1.0L / n;
    const long double x = N;
    const long double r = 1.0L / (x * x);
    // H_N = log N + C0 + 1/(2N) - sum_k B_2k / (2k N^2k)
    const long double corr = r * (1.0L / 12 - r * (1.0L / 120 - r * (1.0L / 252 - r * (1.0L / 240 - r / 132))));
    return static_cast<double>(h - std::log(x) - 0.5L / x + corr);
}

/// Euler's constant by the Brent-McMillan Bessel-function ratio, an
/// independent route used to cross-check euler_constant().
inline double euler_constant_brent_mcmillan() {
    constexpr long double n = 12.0L;
    long double a = -std::log(n), b = 1.0L;
    long double u = a, v = b;
    for (int k = 1; k < 200; ++k) {
        b *= n * n / (static_cast<long double>(k) * k);
        a = (a * n * n / k + b) / k;
        u += a;
        v += b;
        if (b < 1e-22L * v && k > n) break;
    }
    return static_cast<double>(u / v);
}

/// The convergent prime-power constants used throughout, evaluated once with
/// the default cutoffs.
struct PrimeConstants {
    TruncatedSum inv_m;         // sum_{m>=2} sum_p 1/(m p^m)
    TruncatedSum inv_m2;        // sum_{m>=2} sum_p 1/(m^2 p^m)
    TruncatedSum theorem_sum;   // sum (1/m - 1/m^2) p^-m
    TruncatedSum alt_sign_sum;  // sum (-1/m + 1/m^2) p^-m
    double euler = 0.0;
};

inline double coeff_inv_m(int m) { return 1.0 / m; }
inline double coeff_inv_m2(int m) { return 1.0 / (static_cast<double>(m) * m); }
inline double coeff_theorem(int m) { return 1.0 / m - 1.0 / (static_cast<double>(m) * m); }
inline double coeff_alt_sign(int m) { return -1.0 / m + 1.0 / (static_cast<double>(m) * m); }

inline const PrimeConstants& prime_constants() {
    static const PrimeConstants pc = [] {
        const PrimeTable table(default_p_cutoff);
        PrimeConstants c;
        c.inv_m = prime_power_double_sum(coeff_inv_m, default_p_cutoff, default_m_cutoff, table);
        c.inv_m2 = prime_power_double_sum(coeff_inv_m2, default_p_cutoff, default_m_cutoff, table);
        c.theorem_sum = prime_power_double_sum(coeff_theorem, default_p_cutoff, default_m_cutoff, table);
        c.alt_sign_sum = prime_power_double_sum(coeff_alt_sign, default_p_cutoff, default_m_cutoff, table);
        c.euler = euler_constant();
        return c;
    }();
    return pc;
}

/// The four prime sums S1..S4 at cutoff x.
struct PrimeSumBundle {
    double x = 0.0;
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    double tail_bound_s3 = 0.0;  // |S3(infinity) - S3(x)| <= tail_bound_s3
};

inline PrimeSumBundle prime_sum_terms(std::uint64_t x, const PrimeTable& table) {
    if (x < 4) throw DomainError("prime_sum_terms needs x >= 4");
    if (x > table.limit()) throw DomainError("prime table too small for x");
    const double L = std::log(static_cast<double>(x));
    PrimeSumBundle b;
    b.x = static_cast<double>(x);
    const std::size_t np = table.count_up_to(x);
    for (std::size_t i = np; i-- > 0;) {
        const double p = table.primes()[i];
        const double f = smoothing_weight(std::log(p) / L);
        b.s1 += f * f / p;
        b.s2 += f / p;
    }
    // Higher prime powers, largest n first.
    const auto& sup = table.lambda_support();
    for (auto it = sup.rend() - static_cast<std::ptrdiff_t>(
                                    std::upper_bound(sup.begin(), sup.end(), x,
                                                     [](std::uint64_t v, const PrimeTable::PrimePower& a) {
                                                         return v < a.n;
                                                     }) -
                                    sup.begin());
         it != sup.rend(); ++it) {
        const double n = static_cast<double>(it->n);
        const double m = std::round(std::log(n) / it->lambda);
        if (m < 2) continue;
        const double w = 1.0 / (m * m * n);
        const double dev = smoothing_weight(m * it->lambda / L) - 1.0;
        b.s3 += w;
        b.s4 += dev * dev * w;
    }
    // S3(inf) - S3(x) = sum_m m^-2 sum_{p^m > x} p^-m <= sum_m m^-2 sum_{n >= n_m} n^-m,
    // n_m = floor(x^(1/m)) + 1, and sum_{n >= n_m} n^-m <= n_m^-m + n_m^(1-m)/(m-1).
    for (int m = 2; m <= 400; ++m) {
        const double nm = std::floor(std::pow(static_cast<double>(x), 1.0 / m)) + 1.0;
        b.tail_bound_s3 += (std::pow(nm, -m) + std::pow(nm, 1.0 - m) / (m - 1.0)) / (static_cast<double>(m) * m);
    }
    b.tail_bound_s3 += std::pow(2.0, -399.0);
    return b;
}

/// Closed form of S1 - 2 S2 with the O(1/log^4 x) remainder dropped:
/// -log log x + log(pi/2) - pi^2/8 + 1 - C0 + sum_{m>=2} sum_p 1/(m p^m).
inline double closed_form_s1_minus_2s2(double x, double c0, double inv_m_sum) {
    if (!(x >= 16.0)) throw DomainError("closed_form_s1_minus_2s2 needs x >= 16");
    constexpr double pi = std::numbers::pi;
    return -std::log(std::log(x)) + std::log(pi / 2.0) - pi * pi / 8.0 + 1.0 - c0 + inv_m_sum;
}

inline double closed_form_s1_minus_2s2(double x) {
    const auto& pc = prime_constants();
    return closed_form_s1_minus_2s2(x, pc.euler, pc.inv_m.value);
}

/// Singular series of the twin prime conjecture, with the Euler product
/// truncated at the table limit.
struct SingularSeries {
    double value = 0.0;
    double truncation_error = 0.0;
};

inline SingularSeries singular_series(std::int64_t d, const PrimeTable& table) {
    if (d == 0) throw DomainError("singular series is undefined at d = 0");
    if (d % 2 != 0) return {0.0, 0.0};
    double log_prod = 0.0;
    const auto& ps = table.primes();
    for (std::size_t i = ps.size(); i-- > 1;) {
        const double q = ps[i] - 1.0;
        log_prod += std::log1p(-1.0 / (q * q));
    }
    double factor = 1.0;
    std::uint64_t m = static_cast<std::uint64_t>(d < 0 ? -d : d);
    while (m % 2 == 0) m /= 2;
    for (std::uint64_t p = 3; p * p <= m; p += 2) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        factor *= (p - 1.0) / (p - 2.0);
    }
    if (m > 1) factor *= (m - 1.0) / (m - 2.0);
    SingularSeries s;
    s.value = 2.0 * std::exp(log_prod) * factor;
    // Omitted factors lie in (1 - delta, 1] with
    // delta <= 1.0001 * sum_{odd n > P} (n-1)^-2 <= 1.0001 / (2 (n0 - 3)).
    const double P = static_cast<double>(table.limit());
    const double n0 = std::fmod(P, 2.0) == 0.0 ? P + 1.0 : P + 2.0;
    s.truncation_error = s.value * 1.0001 / (2.0 * (n0 - 3.0));
    return s;
}

} // namespace szeta
