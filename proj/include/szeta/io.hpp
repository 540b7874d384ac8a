#pragma once

// JSON serialization of reports: fixed key order, numbers rounded to 12
// significant digits, non-finite numbers written as null.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>

#include <json.hpp>

#include "szeta/check_report.hpp"
#include "szeta/pair_correlation.hpp"
#include "szeta/theorem_eval.hpp"

namespace szeta {

using ordered_json = nlohmann::ordered_json;

/// v rounded to 12 significant digits.
inline double round12(double v) {
    if (!std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline ordered_json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round12(v);
}

inline ordered_json to_json(const CheckEntry& e) {
    ordered_json j;
    j["label"] = e.label;
    j["lhs"] = num(e.lhs);
    j["rhs"] = num(e.rhs);
    j["abs_diff"] = num(e.abs_diff);
    j["rel_diff"] = num(e.rel_diff);
    j["tolerance"] = num(e.tolerance);
    j["assertable"] = e.assertable;
    j["passed"] = e.passed;
    j["error_scale"] = num(e.error_scale);
    return j;
}

inline ordered_json to_json(const CheckReport& r) {
    ordered_json j;
    j["identity"] = r.name;
    j["passed"] = r.passed();
    j["max_discrepancy"] = num(r.max_abs_diff());
    j["entries"] = ordered_json::array();
    for (const auto& e : r.entries) j["entries"].push_back(to_json(e));
    j["notes"] = r.notes;
    return j;
}

inline ordered_json to_json(const MomentReport& m) {
    ordered_json j;
    j["T"] = num(m.T);
    j["x"] = num(m.x);
    j["beta"] = num(m.beta);
    j["lhs"] = num(m.lhs);
    ordered_json rhs;
    rhs["loglog"] = num(m.rhs.loglog);
    rhs["f_tail"] = num(m.rhs.f_tail);
    rhs["euler"] = num(m.rhs.euler);
    rhs["prime_sum"] = num(m.rhs.prime_sum);
    j["rhs_theorem"] = rhs;
    j["rhs_goldston"] = num(m.rhs.alt_sign_total);
    j["f_tail_source"] = to_string(m.f_tail_source);
    j["discrepancy_abs"] = num(m.discrepancy_abs);
    j["discrepancy_rel"] = num(m.discrepancy_rel);
    j["notes"] = m.notes;
    return j;
}

/// Two-space indented JSON followed by a newline.
inline void write_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

} // namespace szeta
