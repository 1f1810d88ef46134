// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#include "npuperf/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "npuperf/error.hpp"

namespace npuperf {

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string csv_cell(const Value& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&value)) return std::isfinite(*d) ? format_double(*d) : std::string();
  if (const auto* s = std::get_if<std::string>(&value)) return csv_field(*s);
  return {};
}

nlohmann::ordered_json json_cell(const Value& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return *i;
  if (const auto* d = std::get_if<double>(&value)) {
    return std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(nullptr);
  }
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  return nullptr;
}

}  // namespace

std::size_t ReportTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ValidationError("report has no column '" + std::string(name) + "'");
}

double as_double(const Value& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&value)) return *d;
  return std::numeric_limits<double>::quiet_NaN();
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw ValidationError("cannot format number");
  std::string text(buf, end);
  // Keep doubles visibly non-integral so readers do not narrow them.
  if (std::isfinite(value) && text.find_first_of(".eE") == std::string::npos) text += ".0";
  return text;
}

ReportFormat report_format_from_string(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw ValidationError("unknown report format '" + std::string(name) + "' (expected csv or json)");
}

void validate(const ReportTable& table) {
  if (table.header.empty()) throw ValidationError("report has no columns");
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw ValidationError("report is not rectangular");
  }
}

std::string emit_report(const ReportTable& table, ReportFormat format) {
  validate(table);
  if (format == ReportFormat::kCsv) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      if (i) out += ',';
      out += csv_field(table.header[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += csv_cell(row[i]);
      }
      out += '\n';
    }
    return out;
  }

  nlohmann::ordered_json doc;
  doc["metadata"] = table.metadata;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.header[i]] = json_cell(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

}  // namespace npuperf
