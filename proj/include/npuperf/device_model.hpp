// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace npuperf {

enum class Engine { kMatrix, kVector };
enum class Bound { kCompute, kMemory };

std::string_view to_string(Engine engine);
std::string_view to_string(Bound bound);

// One active MAC rectangle of the matrix engine.
struct MacUnit {
  std::int64_t height = 0;
  std::int64_t width = 0;

  std::int64_t macs() const { return height * width; }
  bool operator==(const MacUnit&) const = default;
};

// An active systolic-array configuration: a set of identical MAC units
// working on disjoint output tiles.
struct MacGeometry {
  std::string label;
  std::vector<MacUnit> units;

  std::int64_t active_macs() const;
  bool operator==(const MacGeometry&) const = default;
};

struct MatrixEngineSpec {
  std::int64_t mac_budget = 0;
  std::vector<MacGeometry> geometries;  // selection menu, in preference order
};

struct IssueSlots {
  int load_store_slots = 1;
  int vector_slots = 1;
};

struct VectorEngineSpec {
  int core_count = 0;
  int vector_width_bytes = 0;
  int instr_latency_cycles = 0;
  IssueSlots issue_slots;
  double aggregate_peak_flops = 0.0;  // MAC instruction mix, all cores
};

struct MemorySpec {
  double peak_bandwidth = 0.0;  // bytes/s
  double capacity_bytes = 0.0;
  std::int64_t min_access_granularity = 0;
  double random_access_beta = 0.0;
  std::optional<double> scatter_beta;  // falls back to random_access_beta
  double small_transfer_overhead_bytes = 0.0;
  double mean_latency = 0.0;  // seconds, per outstanding request
};

// Every device pair wired directly; usable bandwidth grows with participants.
struct P2pMesh {
  int links_per_pair = 0;
  double link_bandwidth = 0.0;  // bytes/s per link, one direction
  int total_ports = 0;
};

// A non-blocking switch; each device always gets its full link bandwidth.
struct Switched {
  double per_device_bandwidth = 0.0;
};

struct TopologySpec {
  std::variant<P2pMesh, Switched> variant;
  double alpha_latency = 0.0;  // seconds per communication step
  int node_size = 8;
};

enum class FillModel { kNone, kHeightPlusWidth };

std::string_view to_string(FillModel model);

struct CalibrationSpec {
  double stream_efficiency = 0.0;
  double kernel_launch_overhead = 0.0;
  FillModel mme_fill_model = FillModel::kHeightPlusWidth;
  double pipeline_overlap = 0.0;
  double matrix_stream_efficiency = 1.0;
};

struct DeviceSpec {
  std::string name;
  double matrix_peak_flops = 0.0;
  MatrixEngineSpec matrix_engine;
  VectorEngineSpec vector_engine;
  MemorySpec memory;
  TopologySpec interconnect;
  CalibrationSpec calibration;
};

struct RooflinePoint {
  double operational_intensity = 0.0;
  double attainable = 0.0;
  Bound bound = Bound::kCompute;
};

// Parses and validates a device-spec document. Unknown keys are rejected.
DeviceSpec load_device_spec(std::string_view document);
DeviceSpec load_device_spec_file(const std::filesystem::path& path);

// Canonical serialization; load_device_spec(dump_device_spec(s)) == s.
std::string dump_device_spec(const DeviceSpec& spec);

// Throws ValidationError naming the offending field.
void validate(const DeviceSpec& spec);

double engine_peak(const DeviceSpec& spec, Engine engine);

// min(engine peak, oi * peak_bandwidth); ties are tagged compute-bound.
RooflinePoint attainable_flops(const DeviceSpec& spec, double oi, Engine engine);

}  // namespace npuperf
