#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "szeta/io.hpp"

using namespace szeta;

TEST(Round12, KeepsTwelveDigits) {
    EXPECT_EQ(round12(1.0 / 3.0), 0.333333333333);
    EXPECT_EQ(round12(123456.7890123456), 123456.789012);
    EXPECT_EQ(round12(0.0), 0.0);
    EXPECT_TRUE(std::isnan(round12(std::nan(""))));
}

TEST(Json, NonFiniteIsNull) {
    EXPECT_TRUE(num(std::nan("")).is_null());
    EXPECT_TRUE(num(INFINITY).is_null());
}

TEST(Json, CheckReportLayout) {
    CheckReport r{"demo", {}, {"a note"}};
    r.compare("x", 1.0, 1.0 + 1e-9, 1e-6);
    r.report_only("y", 2.0, 3.0, 0.5);
    const auto j = to_json(r);
    EXPECT_EQ(j["identity"], "demo");
    EXPECT_EQ(j["passed"], true);
    EXPECT_EQ(j["entries"].size(), 2u);
    EXPECT_EQ(j["entries"][1]["assertable"], false);
    EXPECT_EQ(j["entries"][1]["error_scale"], 0.5);
    EXPECT_EQ(j["notes"][0], "a note");
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"identity", "passed", "max_discrepancy", "entries", "notes"}));
}

TEST(Json, MomentReportKeyOrder) {
    MomentReport m;
    m.T = 1000.0;
    m.x = 20.0;
    m.beta = std::log(20.0) / std::log(1000.0);
    m.rhs = theorem_rhs(1000.0, 0.7);
    m.lhs = 140.0;
    m.discrepancy_abs = m.lhs - m.rhs.total;
    m.discrepancy_rel = m.discrepancy_abs / m.rhs.total;
    m.notes = {"n1"};
    const auto j = to_json(m);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"T", "x", "beta", "lhs", "rhs_theorem", "rhs_goldston", "f_tail_source",
                                              "discrepancy_abs", "discrepancy_rel", "notes"}));
    std::vector<std::string> inner;
    for (auto it = j["rhs_theorem"].begin(); it != j["rhs_theorem"].end(); ++it) inner.push_back(it.key());
    EXPECT_EQ(inner, (std::vector<std::string>{"loglog", "f_tail", "euler", "prime_sum"}));
    EXPECT_EQ(j["f_tail_source"], "empirical");
    EXPECT_EQ(j["beta"], round12(m.beta));
}

TEST(Json, RoundTripIsStable) {
    MomentReport m;
    m.T = 500.0;
    m.x = 20.0;
    m.rhs = theorem_rhs(500.0, 0.69);
    std::ostringstream a, b;
    write_json(a, to_json(m));
    const auto parsed = ordered_json::parse(a.str());
    write_json(b, parsed);
    EXPECT_EQ(a.str(), b.str());
}
