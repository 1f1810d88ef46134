// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "npuperf/device_model.hpp"
#include "npuperf/report.hpp"

namespace npuperf {

enum class ScenarioKind {
  kGemmSweep,
  kStreamSweep,
  kGatherSweep,
  kCollectiveSweep,
  kEmbeddingSweep,
  kPagedAttentionSweep,
};

std::string_view to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(std::string_view name);

// Axis values are integers, reals or strings; ranges expand on load.
struct Axis {
  std::string name;
  std::vector<Value> values;
};

struct ScenarioSpec {
  std::string name;
  std::string description;
  ScenarioKind kind = ScenarioKind::kGemmSweep;
  std::vector<std::string> devices;  // references resolved by the spec library
  std::vector<Axis> axes;            // cartesian product in declaration order
  std::vector<std::string> columns;  // empty selects every column
};

ScenarioSpec load_scenario(std::string_view document);
ScenarioSpec load_scenario_file(const std::filesystem::path& path);

// Checks axis names, value types, and that the product is non-empty.
void validate(const ScenarioSpec& scenario);

// Number of rows one device contributes.
std::size_t row_count(const ScenarioSpec& scenario);

// One row per device and axis combination, devices outermost. Rows are
// evaluated concurrently and stored by index, so output order is fixed.
ReportTable run_scenario(const ScenarioSpec& scenario, const std::vector<DeviceSpec>& devices);

// Resolves the scenario's own device references first.
ReportTable run_scenario(const ScenarioSpec& scenario);

// Per-row a/b values and a/b ratios for every numeric metric, followed by a
// geometric-mean summary row.
ReportTable compare_devices(const ScenarioSpec& scenario, const DeviceSpec& a, const DeviceSpec& b);

}  // namespace npuperf
