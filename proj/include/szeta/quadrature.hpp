#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <vector>

#include "szeta/errors.hpp"

namespace szeta {

/// Tolerances and mandatory subdivision points shared by every numeric
/// integral in the library.
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_depth = 50;
    std::vector<double> breakpoints{};
    double infinite_cutoff = 60.0;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw DomainError("quadrature tolerances must be positive");
        if (max_depth < 1 || max_depth > 60)
            throw DomainError("quadrature max_depth must lie in [1, 60]");
        for (double b : breakpoints) {
            if (!std::isfinite(b)) throw DomainError("quadrature breakpoints must be finite");
            if (!(infinite_cutoff > b))
                throw DomainError("infinite_cutoff must exceed every breakpoint");
        }
    }

    QuadratureSpec with_breakpoints(std::vector<double> pts) const {
        QuadratureSpec s = *this;
        s.breakpoints = std::move(pts);
        return s;
    }
};

/// Gauss-Legendre rule on [-1, 1], nodes found by Newton iteration on P_n.
template <std::size_t N>
struct GaussLegendre {
    std::array<double, N> nodes{};
    std::array<double, N> weights{};

    GaussLegendre() {
        for (std::size_t i = 0; i < (N + 1) / 2; ++i) {
            double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                                (static_cast<double>(N) + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (std::size_t k = 2; k <= N; ++k) {
                    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                    p0 = p1;
                    p1 = pk;
                }
                dp = static_cast<double>(N) * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            if (N == 1) dp = 1.0;
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[N - 1 - i] = x;
            weights[i] = w;
            weights[N - 1 - i] = w;
        }
        if constexpr (N % 2 == 1) {
            // Newton on the odd polynomial lands exactly at zero for the middle node.
            nodes[N / 2] = 0.0;
        }
    }

    static const GaussLegendre& instance() {
        static const GaussLegendre rule;
        return rule;
    }

    template <class F>
    double apply(const F& f, double a, double b) const {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double sum = 0.0;
        for (std::size_t i = 0; i < N; ++i) sum += weights[i] * f(mid + half * nodes[i]);
        return sum * half;
    }
};

/// Fixed composite Gauss-Legendre: `panels` equal panels of an N-point rule.
template <std::size_t N = 16, class F>
double gauss_legendre(const F& f, double a, double b, std::size_t panels = 1) {
    const auto& rule = GaussLegendre<N>::instance();
    const double h = (b - a) / static_cast<double>(panels);
    double sum = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + h * static_cast<double>(p);
        const double hi = (p + 1 == panels) ? b : lo + h;
        sum += rule.apply(f, lo, hi);
    }
    return sum;
}

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t panels = 0;
};

namespace detail {

struct Panel {
    double a, b;
    double left, right;  // 16-point values on the two halves
    double error;
    int depth;
    double value() const { return left + right; }
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel make_panel(const F& f, double a, double b, double whole, int depth) {
    const auto& rule = GaussLegendre<16>::instance();
    const double m = 0.5 * (a + b);
    Panel p{a, b, rule.apply(f, a, m), rule.apply(f, m, b), 0.0, depth};
    p.error = std::abs(whole - p.value());
    return p;
}

} // namespace detail

/// Globally adaptive Gauss-Legendre integration of f over [a, b].
///
/// The interval is first cut at every spec breakpoint inside (a, b) and
/// then into panels no wider than `max_panel` (0 disables the cap), which
/// keeps oscillatory integrands resolved from the start. Panels are then
/// bisected largest-error-first until the summed error estimate meets
/// max(abs_tol, rel_tol * |I|). A panel that would exceed spec.max_depth
/// bisections raises AccuracyError carrying the current estimate.
template <class F>
QuadratureResult integrate(const F& f, double a, double b, const QuadratureSpec& spec,
                           double max_panel = 0.0) {
    if (a == b) return {};
    if (a > b) {
        auto r = integrate(f, b, a, spec, max_panel);
        r.value = -r.value;
        return r;
    }
    std::vector<double> cuts{a};
    for (double bp : spec.breakpoints)
        if (bp > a && bp < b) cuts.push_back(bp);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const auto& rule = GaussLegendre<16>::instance();
    std::vector<detail::Panel> heap;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        std::size_t n = 1;
        if (max_panel > 0.0) n = static_cast<std::size_t>(std::ceil((hi - lo) / max_panel));
        n = std::max<std::size_t>(n, 1);
        const double h = (hi - lo) / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double pa = lo + h * static_cast<double>(k);
            const double pb = (k + 1 == n) ? hi : pa + h;
            heap.push_back(detail::make_panel(f, pa, pb, rule.apply(f, pa, pb), 0));
        }
    }

    std::make_heap(heap.begin(), heap.end());
    constexpr std::size_t max_panels = 400000;
    for (;;) {
        // Recompute totals from scratch so that rounding never drifts.
        double value = 0.0, error = 0.0;
        for (const auto& p : heap) {
            value += p.value();
            error += p.error;
        }
        const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
        if (error <= target || !std::isfinite(value)) {
            if (!std::isfinite(value))
                throw AccuracyError("non-finite integrand value", value, error);
            return {value, error, heap.size()};
        }
        // Bisect the worst panels in one sweep before re-totalling.
        std::size_t sweep = std::max<std::size_t>(1, heap.size() / 4);
        double remaining = error;
        while (sweep-- > 0 && !heap.empty() && remaining > target) {
            detail::Panel worst = heap.front();
            if (worst.depth >= spec.max_depth || heap.size() >= max_panels) {
                std::ostringstream msg;
                msg << "quadrature did not converge on [" << a << ", " << b << "]: estimate "
                    << value << " with error " << error << " (target " << target << ")";
                throw AccuracyError(msg.str(), value, error);
            }
            std::pop_heap(heap.begin(), heap.end());
            heap.pop_back();
            remaining -= worst.error;
            const double m = 0.5 * (worst.a + worst.b);
            auto l = detail::make_panel(f, worst.a, m, worst.left, worst.depth + 1);
            auto r = detail::make_panel(f, m, worst.b, worst.right, worst.depth + 1);
            remaining += l.error + r.error;
            heap.push_back(l);
            std::push_heap(heap.begin(), heap.end());
            heap.push_back(r);
            std::push_heap(heap.begin(), heap.end());
        }
    }
}

/// Integral over [a, infinity) truncated at spec.infinite_cutoff. The caller
/// supplies the analytic tail bound for the discarded range; it is added to
/// the reported error.
template <class F>
QuadratureResult integrate_to_cutoff(const F& f, double a, const QuadratureSpec& spec,
                                     double tail_bound, double max_panel = 0.0) {
    if (!(spec.infinite_cutoff > a))
        throw DomainError("infinite_cutoff must exceed the lower limit");
    auto r = integrate(f, a, spec.infinite_cutoff, spec, max_panel);
    r.error += tail_bound;
    return r;
}

} // namespace szeta
