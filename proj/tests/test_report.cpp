// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <json.hpp>
#include <limits>
#include <cstdlib>
#include <cstring>
#include <random>

#include "npuperf/error.hpp"
#include "npuperf/report.hpp"
#include "npuperf/scenario.hpp"
#include "npuperf/spec_library.hpp"

namespace npuperf {
namespace {

ReportTable tiny() {
  ReportTable t;
  t.header = {"name", "count", "value"};
  t.rows = {{std::string("a"), std::int64_t{3}, 0.1}};
  return t;
}

TEST(Report, SingleRowCsv) {
  EXPECT_EQ(emit_report(tiny(), ReportFormat::kCsv), "name,count,value\na,3,0.1\n");
}

TEST(Report, CsvQuotesAndNulls) {
  ReportTable t = tiny();
  t.rows.push_back({std::string("x,\"y\""), Value{}, std::numeric_limits<double>::quiet_NaN()});
  EXPECT_EQ(emit_report(t, ReportFormat::kCsv), "name,count,value\na,3,0.1\n\"x,\"\"y\"\"\",,\n");
}

TEST(Report, IntegralDoublesStayReal) {
  ReportTable t = tiny();
  t.rows[0][2] = 2.0;
  EXPECT_EQ(emit_report(t, ReportFormat::kCsv), "name,count,value\na,3,2.0\n");
}

TEST(Report, JsonShape) {
  ReportTable t = tiny();
  t.metadata["tool"] = "npuperf";
  const auto doc = nlohmann::ordered_json::parse(emit_report(t, ReportFormat::kJson));
  EXPECT_EQ(doc.begin().key(), "metadata");
  EXPECT_EQ(doc["rows"][0]["count"], 3);
  EXPECT_EQ(doc["rows"][0]["value"].get<double>(), 0.1);
}

TEST(Report, NonRectangularRejected) {
  ReportTable t = tiny();
  t.rows.push_back({std::string("b")});
  EXPECT_THROW(emit_report(t, ReportFormat::kCsv), ValidationError);
}

TEST(Report, UnknownFormat) { EXPECT_THROW(report_format_from_string("xml"), ValidationError); }

TEST(Report, FormatDoubleRoundTrips) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t b = bits(rng);
    double v;
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) continue;
    const std::string s = format_double(v);
    ASSERT_EQ(std::strtod(s.c_str(), nullptr), v) << s;
  }
}

TEST(Report, JsonRoundTripIsExact) {
  for (const auto& p : list_scenario_presets()) {
    const ReportTable t = run_scenario(load_scenario_file(resolve_scenario_path(p.name)));
    const auto doc = nlohmann::ordered_json::parse(emit_report(t, ReportFormat::kJson));
    ASSERT_EQ(doc["rows"].size(), t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      for (std::size_t c = 0; c < t.header.size(); ++c) {
        const auto& cell = doc["rows"][r][t.header[c]];
        const Value& v = t.rows[r][c];
        if (const auto* d = std::get_if<double>(&v)) {
          ASSERT_EQ(cell.get<double>(), *d) << p.name << " " << t.header[c];
        } else if (const auto* i = std::get_if<std::int64_t>(&v)) {
          ASSERT_EQ(cell.get<std::int64_t>(), *i);
        } else if (const auto* s = std::get_if<std::string>(&v)) {
          ASSERT_EQ(cell.get<std::string>(), *s);
        } else {
          ASSERT_TRUE(cell.is_null());
        }
      }
    }
  }
}

}  // namespace
}  // namespace npuperf
