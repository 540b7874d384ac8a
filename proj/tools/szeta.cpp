// Command-line front end: zeros, S(t), pair correlation, identity checks and
// the second-moment report.
//
// Exit codes: 0 success, 1 usage or argument error, 2 validation or
// coverage failure (including a failed assertable identity).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "szeta/io.hpp"
#include "szeta/kernels.hpp"
#include "szeta/pair_correlation.hpp"
#include "szeta/primes.hpp"
#include "szeta/s_of_t.hpp"
#include "szeta/theorem_eval.hpp"
#include "szeta/zeta_zeros.hpp"

using namespace szeta;

namespace {

// An input problem that is not a usage error: bad data or missing coverage.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadFlags {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;

    QuadratureSpec spec() const {
        QuadratureSpec s;
        s.abs_tol = abs_tol;
        s.rel_tol = rel_tol;
        s.validate();
        return s;
    }
};

void add_quad_flags(CLI::App* cmd, QuadFlags& q) {
    cmd->add_option("--abs-tol", q.abs_tol, "Absolute quadrature tolerance");
    cmd->add_option("--rel-tol", q.rel_tol, "Relative quadrature tolerance");
}

ZeroSet read_zero_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open zeros file '" + path + "'");
    try {
        return import_zeros(in);
    } catch (const ParseError& e) {
        throw DataError(path + ": " + e.what());
    } catch (const ValidationError& e) {
        throw DataError(path + ": " + e.what());
    }
}

// Zeros from a file when one is given, computed up to t_max otherwise. The
// set must cover T.
ZeroSet load_zeros(const std::string& path, double T) {
    if (path.empty()) return find_zeros(std::max(T, 15.0));
    ZeroSet z = read_zero_file(path);
    if (!z.covers(T)) {
        std::ostringstream msg;
        msg << path << " covers zeros only up to " << format_shortest(z.claimed_complete() ? z.t_max() : 0.0)
            << "; T = " << format_shortest(T) << " needs a file complete up to T (run 'szeta zeros --t-max "
            << format_shortest(T) << "')";
        throw DataError(msg.str());
    }
    return z;
}

template <class Fn>
void write_output(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    fn(out);
    if (!out) throw DataError("failed writing '" + path + "'");
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// --- zeros -----------------------------------------------------------------

struct ZerosCmd {
    double t_max = 0.0;
    std::string out;
    std::string import_path;
    bool validate = false;
    double step = 0.05;
    double tolerance = 1e-9;
};

int run_zeros(const ZerosCmd& c) {
    if (!c.import_path.empty()) {
        const ZeroSet z = read_zero_file(c.import_path);
        std::cerr << c.import_path << ": " << z.size() << " ordinates up to " << format_shortest(z.t_max())
                  << (z.claimed_complete() ? ", complete" : ", not claimed complete") << '\n';
        if (!c.out.empty()) write_output(c.out, [&](std::ostream& o) { export_zeros(o, z); });
        return 0;
    }
    if (c.t_max == 0.0) throw CLI::ValidationError("zeros", "give --t-max or --import");
    ZeroSearchOptions opt;
    opt.step = c.step;
    opt.tolerance = c.tolerance;
    const ZeroSet z = find_zeros(c.t_max, {}, opt);
    write_output(c.out, [&](std::ostream& o) { export_zeros(o, z); });
    return 0;
}

// --- s ---------------------------------------------------------------------

struct SCmd {
    std::vector<double> t;
    double from = 0.0, to = 0.0;
    int points = 0;
    std::string method = "exact";
    double x = 0.0;
    std::string zeros;
    std::string out;
};

int run_s(const SCmd& c) {
    std::vector<double> ts = c.t;
    if (c.points > 0) {
        if (!(c.to > c.from)) throw CLI::ValidationError("s", "--to must exceed --from");
        for (int i = 0; i < c.points; ++i)
            ts.push_back(c.points == 1 ? c.from : c.from + (c.to - c.from) * i / (c.points - 1));
    }
    if (ts.empty()) throw CLI::ValidationError("s", "give --t or --from/--to/--points");
    double t_hi = *std::max_element(ts.begin(), ts.end());
    const bool expl = c.method == "explicit";
    if (expl) {
        if (!(c.x >= 4.0)) throw CLI::ValidationError("s", "--method explicit needs --x >= 4");
        t_hi += zero_window_v / std::log(c.x);
    }
    const ZeroSet z = load_zeros(c.zeros, t_hi);
    const PrimeTable table(static_cast<std::uint64_t>(std::max(100.0, std::ceil(c.x))));
    const SEvaluator ev(z, table);
    write_output(c.out, [&](std::ostream& o) {
        o << "t,S\n";
        for (double t : ts) {
            const double s = expl ? s_explicit(t, c.x, ev).value : s_exact(t, ev);
            o << fmt12(t) << ',' << fmt12(s) << '\n';
        }
    });
    return 0;
}

// --- pcf -------------------------------------------------------------------

struct PcfCmd {
    double T = 0.0;
    double alpha_max = 4.0;
    double step = 0.01;
    std::string zeros;
    std::string out = "pcf.csv";
};

int run_pcf(const PcfCmd& c) {
    const ZeroSet z = load_zeros(c.zeros, c.T);
    const auto curve = pcf_curve(z, c.T, c.alpha_max, c.step);
    write_output(c.out, [&](std::ostream& o) { write_pcf_csv(o, curve); });
    return 0;
}

// --- check -----------------------------------------------------------------

struct CheckCmd {
    std::string identity;
    double tol = 1e-6;
    std::vector<std::string> params;
    std::string zeros;
    std::string out;
    QuadFlags quad;
};

IdentityParams parse_params(const std::vector<std::string>& raw) {
    IdentityParams p;
    for (const auto& group : raw) {
        std::stringstream ss(group);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw CLI::ValidationError("--params", "expected key=value, got '" + item + "'");
            const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
            char* end = nullptr;
            const double v = std::strtod(val.c_str(), &end);
            if (val.empty() || *end != '\0')
                throw CLI::ValidationError("--params", "value of '" + key + "' is not a number: '" + val + "'");
            p.values[key].push_back(v);
        }
    }
    return p;
}

const std::vector<std::string>& identity_names() {
    static const std::vector<std::string> names{"lemma3", "lemma4", "lemma5", "lemma6", "lemma7",
                                                "lemma8", "lemma9", "lemma10", "lemma11", "w_partition"};
    return names;
}

CheckReport select_entries(const CheckReport& full, const std::string& name, std::vector<std::size_t> keep) {
    CheckReport r{name, {}, full.notes};
    for (std::size_t i : keep) r.entries.push_back(full.entries.at(i));
    return r;
}

int run_check(const CheckCmd& c) {
    const IdentityParams p = parse_params(c.params);
    const QuadratureSpec spec = c.quad.spec();
    const std::string& id = c.identity;
    CheckReport report;
    bool report_only = false;
    if (id == "lemma5" || id == "lemma6" || id == "lemma8" || id == "lemma9" || id == "lemma10") {
        const double T = p.get("T", 200.0);
        const double beta = p.get("beta", 0.5);
        const ZeroSet z = load_zeros(c.zeros, T);
        if (id == "lemma5") {
            report = lemma5_check(z, T, beta, spec, p.get("tol", 1e-4));
        } else if (id == "lemma6") {
            report = lemma6_check(z, T, beta, spec);
        } else {
            const auto source = p.get("model", 0.0) != 0.0 ? FSource::model : FSource::empirical;
            const auto full = lemma_8_9_10_eval(z, T, beta, spec, source);
            if (id == "lemma8") report = select_entries(full, id, {0});
            if (id == "lemma9") report = select_entries(full, id, {1, 2});
            if (id == "lemma10") report = select_entries(full, id, {3});
            report_only = true;
        }
    } else {
        report = check_identity(parse_identity(id), p, spec, c.tol);
    }
    auto j = to_json(report);
    if (report_only) j["report_only"] = true;
    write_output(c.out, [&](std::ostream& o) { write_json(o, j); });
    if (report_only || report.passed()) return 0;
    std::cerr << "identity '" << id << "' failed: max discrepancy " << fmt12(report.max_abs_diff()) << '\n';
    return 2;
}

// --- report ----------------------------------------------------------------

struct ReportCmd {
    double T = 0.0;
    double x = 0.0;
    std::string zeros;
    double alpha_max = 4.0;
    double step = 0.01;
    std::string tail_model = "constant_one";
    std::string f_tail_source = "empirical";
    std::string out = "report.json";
    std::string pcf_out;
    QuadFlags quad;
};

int run_report(const ReportCmd& c) {
    const ZeroSet z = load_zeros(c.zeros, c.T);
    ReportOptions opt;
    opt.f_tail_source = c.f_tail_source == "model" ? FSource::model : FSource::empirical;
    opt.curve.alpha_max = c.alpha_max;
    opt.curve.step = c.step;
    opt.curve.tail_model = c.tail_model == "last_value" ? TailModel::last_value : TailModel::constant_one;
    const auto report = full_report(c.T, c.x, z, c.quad.spec(), opt);
    const auto curve = pcf_curve(z, c.T, c.alpha_max, c.step);
    std::string pcf_path = c.pcf_out;
    if (pcf_path.empty()) {
        const std::filesystem::path base = (c.out.empty() || c.out == "-") ? "report.json" : c.out;
        pcf_path = (base.parent_path() / "pcf.csv").string();
    }
    write_output(c.out, [&](std::ostream& o) { write_json(o, to_json(report)); });
    write_output(pcf_path, [&](std::ostream& o) { write_pcf_csv(o, curve); });
    return 0;
}

void apply_thread_cap(unsigned flag) {
    unsigned n = flag;
    if (const char* env = std::getenv("SZETA_THREADS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 0) throw CLI::ValidationError("SZETA_THREADS", "must be a nonnegative integer");
        n = static_cast<unsigned>(v);
    }
    if (n > 0) set_thread_count(n);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Second moment of S(t): zeros, S(t), pair correlation, identity checks and reports", "szeta"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker thread cap, 0 for all cores (SZETA_THREADS overrides)");

    ZerosCmd zc;
    auto* zeros = app.add_subcommand("zeros", "Compute zeta zero ordinates, or import and validate a zeros file");
    zeros->add_option("--t-max", zc.t_max, "Find every zero with 0 < gamma <= t-max (15 to 1e5)");
    zeros->add_option("--out", zc.out, "Output file (stdout when empty)");
    zeros->add_option("--import", zc.import_path, "Zeros file to read and validate");
    zeros->add_flag("--validate", zc.validate, "Validate the imported file (always done on import)");
    zeros->add_option("--step", zc.step, "Sign-change scan step");
    zeros->add_option("--tolerance", zc.tolerance, "Bisection tolerance on each ordinate");

    SCmd sc;
    auto* s = app.add_subcommand("s", "Evaluate S(t) and write CSV 't,S'");
    s->add_option("--t", sc.t, "Evaluation point (repeatable)");
    s->add_option("--from", sc.from, "Range start");
    s->add_option("--to", sc.to, "Range end");
    s->add_option("--points", sc.points, "Number of equally spaced range points");
    s->add_option("--method", sc.method, "exact (zero counting) or explicit (explicit formula)")
        ->check(CLI::IsMember({"exact", "explicit"}));
    s->add_option("--x", sc.x, "Prime cutoff for --method explicit");
    s->add_option("--zeros", sc.zeros, "Zeros file (computed when empty)");
    s->add_option("--out", sc.out, "Output CSV (stdout when empty)");

    PcfCmd pc;
    auto* pcf = app.add_subcommand("pcf", "Pair correlation F(alpha, T) on a grid, CSV 'alpha,F'");
    pcf->add_option("--t", pc.T, "Height T")->required();
    pcf->add_option("--alpha-max", pc.alpha_max, "Largest alpha");
    pcf->add_option("--step", pc.step, "Alpha grid step");
    pcf->add_option("--zeros", pc.zeros, "Zeros file (computed when empty)");
    pcf->add_option("--out", pc.out, "Output CSV");

    CheckCmd cc;
    auto* check = app.add_subcommand("check", "Run an identity check and write a JSON report");
    check->add_option("--identity", cc.identity, "Identity name")->required()->check(CLI::IsMember(identity_names()));
    check->add_option("--tol", cc.tol, "Comparison tolerance for lemma4");
    check->add_option("--params", cc.params, "key=value pairs, comma separated; keys may repeat (T, beta, y, h, k, C, u, ...)");
    check->add_option("--zeros", cc.zeros, "Zeros file for lemma5/6/8/9/10 (computed when empty)");
    check->add_option("--out", cc.out, "Output JSON (stdout when empty)");
    add_quad_flags(check, cc.quad);

    ReportCmd rc;
    auto* report = app.add_subcommand("report", "Second-moment report (JSON) and F curve (CSV)");
    report->add_option("--t", rc.T, "Height T (>= 100)")->required();
    report->add_option("--x", rc.x, "Prime cutoff x, 16 <= x < sqrt(T)")->required();
    report->add_option("--zeros", rc.zeros, "Zeros file (computed when empty)");
    report->add_option("--alpha-max", rc.alpha_max, "Largest alpha of the F curve");
    report->add_option("--step", rc.step, "Alpha grid step");
    report->add_option("--tail-model", rc.tail_model, "F beyond alpha-max: constant_one or last_value")
        ->check(CLI::IsMember({"constant_one", "last_value"}));
    report->add_option("--f-tail-source", rc.f_tail_source, "empirical (F curve) or model (F = 1 beyond 1)")
        ->check(CLI::IsMember({"empirical", "model"}));
    report->add_option("--out", rc.out, "Output JSON");
    report->add_option("--pcf-out", rc.pcf_out, "Output CSV (pcf.csv beside --out when empty)");
    add_quad_flags(report, rc.quad);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        apply_thread_cap(threads);
        if (zeros->parsed()) return run_zeros(zc);
        if (s->parsed()) return run_s(sc);
        if (pcf->parsed()) return run_pcf(pc);
        if (check->parsed()) return run_check(cc);
        if (report->parsed()) return run_report(rc);
    } catch (const CLI::Error& e) {
        std::cerr << "szeta: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        std::cerr << "szeta: " << e.what() << '\n';
        return 2;
    } catch (const MissedZerosError& e) {
        std::cerr << "szeta: " << e.what() << '\n';
        return 2;
    } catch (const AccuracyError& e) {
        std::cerr << "szeta: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "szeta: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "szeta: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
