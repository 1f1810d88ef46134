// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>

#include "npuperf/device_model.hpp"

namespace npuperf {

enum class Direction { kGather, kScatter };
enum class AccessPattern { kRandom, kStreaming };

std::string_view to_string(Direction direction);
std::string_view to_string(AccessPattern pattern);
Direction direction_from_string(std::string_view name);
AccessPattern access_pattern_from_string(std::string_view name);

struct GatherWorkload {
  double num_vectors = 4e6;
  std::int64_t vector_bytes = 256;
  double fraction_accessed = 1.0;  // scales bytes moved, not utilization
  Direction direction = Direction::kGather;
  AccessPattern pattern = AccessPattern::kRandom;
  int element_bytes = 2;
};

struct BandwidthResult {
  double useful_bytes_per_sec = 0.0;
  double fetched_bytes_per_sec = 0.0;
  double utilization = 0.0;  // useful / peak
  double useful_bytes = 0.0;
  double time_seconds = 0.0;
};

void validate(const GatherWorkload& workload);

// size / (ceil(size / granularity) * granularity).
double access_efficiency(std::int64_t size, std::int64_t granularity);

// size rounded up to a whole number of granules.
std::int64_t round_up_to_granularity(std::int64_t size, std::int64_t granularity);

// Fraction of peak bandwidth delivered as useful bytes for independent
// vector-sized accesses. Streaming accesses run at the stream efficiency.
BandwidthResult gather_scatter_utilization(const GatherWorkload& workload, const DeviceSpec& spec);

// Utilization only, for random gathers of `size` bytes.
double random_gather_utilization(std::int64_t size, const DeviceSpec& spec,
                                 Direction direction = Direction::kGather);

// Bandwidth sustained by `outstanding` in-flight requests, capped at peak.
double littles_law_bandwidth(double outstanding, std::int64_t transfer_bytes, const DeviceSpec& spec);

}  // namespace npuperf
