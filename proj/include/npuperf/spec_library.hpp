// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "npuperf/device_model.hpp"

namespace npuperf {

inline constexpr const char* kDataDirEnv = "NPUPERF_DATA_DIR";

// $NPUPERF_DATA_DIR if set, else the data directory of the source tree.
std::filesystem::path data_dir();

// A reference is a bundled name ("gaudi2") or a path to a .json file.
std::filesystem::path resolve_device_path(std::string_view ref);
std::filesystem::path resolve_scenario_path(std::string_view ref);

DeviceSpec load_device(std::string_view ref);

struct PresetEntry {
  std::string name;
  std::string description;
};

std::vector<PresetEntry> list_device_presets();
std::vector<PresetEntry> list_scenario_presets();

// Hex SHA-256 of the canonical serialization.
std::string spec_sha256(const DeviceSpec& spec);

// Reads a whole file; throws IoError on failure.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace npuperf
