// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#include "npuperf/spec_library.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "npuperf/error.hpp"

namespace npuperf {

namespace {

namespace fs = std::filesystem;

bool looks_like_path(std::string_view ref) {
  return ref.find('/') != std::string_view::npos || (ref.size() > 5 && ref.substr(ref.size() - 5) == ".json");
}

fs::path resolve(std::string_view ref, const char* subdir, const char* what) {
  if (ref.empty()) throw ValidationError(std::string("empty ") + what + " reference");
  fs::path path = looks_like_path(ref) ? fs::path(ref) : data_dir() / subdir / (std::string(ref) + ".json");
  if (!fs::is_regular_file(path)) {
    throw IoError(std::string("cannot resolve ") + what + " '" + std::string(ref) + "' (looked for " +
                  path.string() + ")");
  }
  return path;
}

std::vector<fs::path> json_files(const fs::path& dir) {
  std::vector<fs::path> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

fs::path data_dir() {
  if (const char* env = std::getenv(kDataDirEnv); env != nullptr && *env != '\0') return fs::path(env);
  return fs::path(NPUPERF_DEFAULT_DATA_DIR);
}

fs::path resolve_device_path(std::string_view ref) { return resolve(ref, "devices", "device"); }

fs::path resolve_scenario_path(std::string_view ref) { return resolve(ref, "scenarios", "scenario"); }

DeviceSpec load_device(std::string_view ref) { return load_device_spec_file(resolve_device_path(ref)); }

std::vector<PresetEntry> list_device_presets() {
  std::vector<PresetEntry> out;
  for (const auto& path : json_files(data_dir() / "devices")) {
    const DeviceSpec spec = load_device_spec_file(path);
    char line[160];
    std::snprintf(line, sizeof line, "%.0f TFLOPS matrix, %.0f TFLOPS vector, %.2f TB/s memory",
                  spec.matrix_peak_flops / 1e12, spec.vector_engine.aggregate_peak_flops / 1e12,
                  spec.memory.peak_bandwidth / 1e12);
    out.push_back({path.stem().string(), line});
  }
  return out;
}

std::vector<PresetEntry> list_scenario_presets() {
  std::vector<PresetEntry> out;
  for (const auto& path : json_files(data_dir() / "scenarios")) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError("scenario '" + path.string() + "': " + e.what());
    }
    out.push_back({path.stem().string(), doc.value("description", std::string())});
  }
  return out;
}

std::string spec_sha256(const DeviceSpec& spec) {
  const std::string text = dump_device_spec(spec);
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned char byte : digest) {
    out += hex[byte >> 4];
    out += hex[byte & 0xF];
  }
  return out;
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path.string() + "'");
  return text.str();
}

}  // namespace npuperf
