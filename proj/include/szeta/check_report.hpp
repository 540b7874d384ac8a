#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace szeta {

/// One compared quantity inside a CheckReport.
struct CheckEntry {
    std::string label;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    double tolerance = 0.0;
    bool assertable = true;  // report-only entries never fail the check
    bool passed = true;
    double error_scale = 0.0;  // size of the dropped error term, when one applies
};

struct CheckReport {
    std::string name;
    std::vector<CheckEntry> entries;
    std::vector<std::string> notes;

    /// Records lhs vs rhs. Relative discrepancy uses max(|lhs|, |rhs|) as the
    /// scale; `relative` selects which one the tolerance applies to.
    CheckEntry& compare(std::string label, double lhs, double rhs, double tolerance,
                        bool relative = false, bool assertable = true) {
        CheckEntry e;
        e.label = std::move(label);
        e.lhs = lhs;
        e.rhs = rhs;
        e.abs_diff = std::abs(lhs - rhs);
        const double scale = std::max(std::abs(lhs), std::abs(rhs));
        e.rel_diff = scale > 0.0 ? e.abs_diff / scale : 0.0;
        e.tolerance = tolerance;
        e.assertable = assertable;
        const double measured = relative ? e.rel_diff : e.abs_diff;
        e.passed = !assertable || (std::isfinite(measured) && measured < tolerance);
        entries.push_back(std::move(e));
        return entries.back();
    }

    CheckEntry& report_only(std::string label, double lhs, double rhs, double error_scale = 0.0) {
        auto& e = compare(std::move(label), lhs, rhs, 0.0, false, false);
        e.error_scale = error_scale;
        return e;
    }

    bool passed() const {
        for (const auto& e : entries)
            if (!e.passed) return false;
        return true;
    }

    double max_abs_diff() const {
        double m = 0.0;
        for (const auto& e : entries)
            if (e.assertable) m = std::max(m, e.abs_diff);
        return m;
    }
};

} // namespace szeta
