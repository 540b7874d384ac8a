// Acceptance run: one PASS/FAIL line per criterion.
// Usage: acceptance <path to szeta binary>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "szeta/kernels.hpp"
#include "szeta/pair_correlation.hpp"
#include "szeta/primes.hpp"
#include "szeta/s_of_t.hpp"
#include "szeta/theorem_eval.hpp"
#include "szeta/zeta_zeros.hpp"

using namespace szeta;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string g(double v) { return fmt("%.6g", v); }

int failures = 0;

void run(int id, const std::string& name, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0.0 && secs > budget_s) {
        o.pass = false;
        o.detail += "; over the " + g(budget_s) + " s budget";
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
}

const ZeroSet& zeros_5000() {
    static const ZeroSet z = find_zeros(5000.0);
    return z;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";

    run(1, "kernel derivative constants", 1.0, [] {
        const auto r = check_identity(Identity::lemma3);
        double worst = 0.0;
        for (const auto& e : r.entries)
            if (e.label != "k'(0)") worst = std::max(worst, e.rel_diff);
        return Outcome{r.passed(), "max relative error of the five nonzero constants " + g(worst)};
    });

    run(2, "Fourier identity for k-hat", 10.0, [] {
        QuadratureSpec spec;
        spec.rel_tol = 1e-9;
        IdentityParams p;
        p.values["y"] = {0.5, 1.0, 2.0, 5.0, 10.0};
        const auto r = check_identity(Identity::lemma4, p, spec, 1e-6);
        return Outcome{r.passed() && r.max_abs_diff() < 1e-6, "max |direct - closed| " + g(r.max_abs_diff())};
    });

    run(3, "complement-weighted rearrangement", 60.0, [] {
        const auto real = lemma5_check(zeros_5000(), 200.0, 0.5);
        std::vector<double> g15;
        for (int t = 15; t <= 40; ++t) g15.push_back(t);
        const auto syn = lemma5_check(ZeroSet::synthetic(g15, 100.0), 100.0, 0.5);
        const double a = real.entries[0].rel_diff, b = syn.entries[0].rel_diff;
        return Outcome{a < 1e-4 && b < 1e-4, "relative discrepancy real zeros (T=200) " + g(a) +
                                                 ", equally spaced 15..40 " + g(b)};
    });

    run(4, "R regrouping and time integral", 300.0, [] {
        const double T = 100.0, beta = 0.4;
        const auto d = lemma6_eval(zeros_5000(), T, beta);
        const double full = d.khat_sum_none / (pi * pi * std::log(d.x));
        const double rel = std::abs(d.r_total - full) / std::abs(full);
        const double band = 50.0 * std::pow(std::log(T), 3);
        const double gap = std::abs(d.r_direct - d.r_total);
        return Outcome{rel < 1e-6 && gap <= band, "term sum vs full pair sum rel " + g(rel) +
                                                      "; time integral " + g(d.r_direct) + " vs terms " +
                                                      g(d.r_total) + ", gap " + g(gap) + " (band " + g(band) + ")"};
    });

    run(5, "w partition and bracket algebra", 0.0, [] {
        IdentityParams p;
        p.values["n"] = {10000.0};
        const auto r = check_identity(Identity::w_partition, p);
        double worst_bracket = 0.0;
        for (double f : {0.0, 0.5, 0.69, 1.0, 1.5})
            for (double T : {100.0, 1e3, 1e6}) {
                const auto rhs = theorem_rhs(T, f);
                worst_bracket = std::max(worst_bracket, std::abs(rhs.bracket - rhs.bracket_alt_sign));
            }
        const double w_dev = r.entries.back().abs_diff;
        return Outcome{r.passed() && w_dev < 1e-15 && worst_bracket <= 1e-15,
                       "max |w + complement - 1| " + g(w_dev) + ", max bracket difference " + g(worst_bracket)};
    });

    run(6, "zero pipeline to T = 100", 10.0, [] {
        const auto z = find_zeros(200.0);
        const std::size_t n = z.count_up_to(100.0);
        const PrimeTable table(1000);
        const SEvaluator ev(z, table);
        // N(100) = theta(100)/pi + 1 + S(100), with S from the explicit formula.
        const double s = s_explicit(100.0, 100.0, ev).value;
        const double predicted = theta(100.0) / pi + 1.0 + s;
        double worst = 0.0;
        for (double gamma : z.up_to(100.0)) worst = std::max(worst, std::abs(hardy_Z(gamma)));
        const bool ok = n == 29 && std::lround(predicted) == 29 && worst < 1e-6;
        return Outcome{ok, "count " + std::to_string(n) + ", theta/pi + 1 + S(100) = " + g(predicted) +
                               ", max |Z(gamma)| " + g(worst)};
    });

    run(7, "S(t) route agreement", 0.0, [] {
        const auto& z = zeros_5000();
        const PrimeTable table(1000);
        const SEvaluator ev(z, table);
        double worst = 0.0;
        for (double t : {30.0, 50.0, 80.0})
            worst = std::max(worst, std::abs(s_explicit(t, t, ev).value - s_exact(t, ev)));
        const double g1 = z.ordinates()[0];
        const double mid = 0.5 * (s_exact(g1 - 1e-7, ev) + s_exact(g1 + 1e-7, ev));
        const double mid_err = std::abs(s_exact(g1, ev) - mid);
        return Outcome{worst < 0.15 && mid_err < 1e-5,
                       "max |explicit - exact| " + g(worst) + ", midpoint error at gamma_1 " + g(mid_err)};
    });

    run(8, "proven window for the F tail", 120.0, [] {
        const auto curve = pcf_curve(zeros_5000(), 1000.0, 4.0, 0.01);
        const double one = tail_integral(curve, 2, 4.0, TailModel::constant_one);
        const double last = tail_integral(curve, 2, 4.0, TailModel::last_value);
        auto inside = [](double v) { return v > 2.0 / 3.0 - 0.1 && v < 2.1; };
        return Outcome{inside(one) && inside(last),
                       "int_1^inf F/alpha^2 at T=1000: constant_one " + g(one) + ", last_value " + g(last)};
    });

    run(9, "prime-sum closed form", 0.0, [] {
        const PrimeTable table(1000000);
        std::string detail = "gaps";
        double prev = INFINITY, last = 0.0;
        bool mono = true;
        for (std::uint64_t x : {1000ull, 10000ull, 100000ull, 1000000ull}) {
            const auto b = prime_sum_terms(x, table);
            const double gap = std::abs(b.s1 - 2.0 * b.s2 - closed_form_s1_minus_2s2(static_cast<double>(x)));
            mono = mono && gap <= prev;
            prev = gap;
            last = gap;
            detail += " " + g(gap);
        }
        return Outcome{mono && last < 1e-2, detail};
    });

    run(10, "second-moment trend", 600.0, [] {
        std::string detail;
        bool ok = true;
        double prev = INFINITY;
        for (double T : {500.0, 1000.0, 5000.0}) {
            const auto m = full_report(T, 20.0, zeros_5000());
            const double ratio = m.lhs / m.rhs.total;
            ok = ok && ratio >= 0.5 && ratio <= 2.0 && std::abs(m.discrepancy_rel) <= prev;
            prev = std::abs(m.discrepancy_rel);
            detail += "T=" + g(T) + " ratio " + fmt("%.4f", ratio) + " rel " + fmt("%.4f", m.discrepancy_rel) + "; ";
        }
        return Outcome{ok, detail};
    });

    run(11, "report determinism", 0.0, [&cli] {
        if (cli.empty()) return Outcome{false, "no CLI path given"};
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / ("szeta_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(dir / "a");
        fs::create_directories(dir / "b");
        for (const char* sub : {"a", "b"}) {
            const std::string cmd = "\"" + cli + "\" report --t 500 --x 20 --out \"" + (dir / sub / "report.json").string() +
                                    "\" > /dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) {
                fs::remove_all(dir);
                return Outcome{false, "report command failed"};
            }
        }
        const bool json = slurp(dir / "a" / "report.json") == slurp(dir / "b" / "report.json");
        const bool csv = slurp(dir / "a" / "pcf.csv") == slurp(dir / "b" / "pcf.csv");
        const auto bytes = fs::file_size(dir / "a" / "report.json") + fs::file_size(dir / "a" / "pcf.csv");
        fs::remove_all(dir);
        return Outcome{json && csv, std::string("JSON ") + (json ? "identical" : "differs") + ", CSV " +
                                        (csv ? "identical" : "differs") + " (" + std::to_string(bytes) + " bytes)"};
    });

    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
