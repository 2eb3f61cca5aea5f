#include "hitchin_glue/report.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

using namespace hg;

TEST(Report, OneRowCsv) {
    ReportRow r;
    r.set("R", 0.1).set("n", 3).set("ok", true).set("name", "wolf");
    EXPECT_EQ(format_report({r}, ReportFormat::csv), "R,n,ok,name\n0.10000000000000001,3,true,wolf\n");
}

TEST(Report, UnionOfKeysWithBlanks) {
    ReportRow a, b;
    a.set("x", 1).set("y", 2);
    b.set("y", 3).set("z", 4);
    EXPECT_EQ(format_report({a, b}, ReportFormat::csv), "x,y,z\n1,2,\n,3,4\n");
    a.set("x", 5);
    EXPECT_EQ(a.cells.size(), 2u);
    EXPECT_EQ(std::get<long long>(*a.get("x")), 5);
    EXPECT_EQ(a.get("missing"), nullptr);
}

TEST(Report, DoubleFormatting) {
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
    EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
    double x = 0.1 + 0.2;
    EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Report, JsonRoundTrip) {
    ReportRow a, b;
    a.set("R", 0.05).set("label", "a \"quoted\"\nline").set("flag", false);
    b.set("R", std::numeric_limits<double>::infinity()).set("count", 7);
    std::string s = format_report({a, b}, ReportFormat::json);
    nlohmann::json j = nlohmann::json::parse(s);
    ASSERT_TRUE(j.is_array());
    ASSERT_EQ(j.size(), 2u);
    EXPECT_EQ(j[0]["R"].get<double>(), 0.05);
    EXPECT_EQ(j[0]["label"].get<std::string>(), "a \"quoted\"\nline");
    EXPECT_FALSE(j[0]["flag"].get<bool>());
    EXPECT_TRUE(j[1]["R"].is_null());
    EXPECT_EQ(j[1]["count"].get<int>(), 7);
    EXPECT_FALSE(j[1].contains("label"));
    EXPECT_EQ(format_report({a, b}, ReportFormat::json), s);
}

TEST(Report, EmitAndFormatNames) {
    EXPECT_EQ(report_format_from_name("csv"), ReportFormat::csv);
    EXPECT_EQ(report_format_from_name("json"), ReportFormat::json);
    EXPECT_THROW(report_format_from_name("xml"), std::exception);
    ReportRow r;
    r.set("a", 1);
    const std::string path = testing::TempDir() + "hg_report.csv";
    emit_report({r}, ReportFormat::csv, path);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), "a\n1\n");
    EXPECT_THROW(emit_report({r}, ReportFormat::csv, "/nonexistent/dir/x.csv"), std::runtime_error);
}
