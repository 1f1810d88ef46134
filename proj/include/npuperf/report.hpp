// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace npuperf {

// A report cell. Null stands for "not applicable" and for non-finite values.
using Value = std::variant<std::monostate, std::int64_t, double, std::string>;

struct ReportTable {
  std::vector<std::string> header;
  std::vector<std::vector<Value>> rows;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

  // Index of `column` in the header; throws ValidationError if absent.
  std::size_t column(std::string_view name) const;
};

// Numeric view of a cell; NaN for null and strings.
double as_double(const Value& value);

// Shortest text that parses back to the same double.
std::string format_double(double value);

enum class ReportFormat { kCsv, kJson };

ReportFormat report_format_from_string(std::string_view name);

// Throws ValidationError if the table is not rectangular.
void validate(const ReportTable& table);

std::string emit_report(const ReportTable& table, ReportFormat format);

}  // namespace npuperf
