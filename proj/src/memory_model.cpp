// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#include "npuperf/memory_model.hpp"

#include <algorithm>
#include <string>

#include "npuperf/error.hpp"

namespace npuperf {

std::string_view to_string(Direction direction) {
  return direction == Direction::kGather ? "gather" : "scatter";
}

std::string_view to_string(AccessPattern pattern) {
  return pattern == AccessPattern::kRandom ? "random" : "streaming";
}

Direction direction_from_string(std::string_view name) {
  if (name == "gather") return Direction::kGather;
  if (name == "scatter") return Direction::kScatter;
  throw ValidationError("unknown direction '" + std::string(name) + "'");
}

AccessPattern access_pattern_from_string(std::string_view name) {
  if (name == "random") return AccessPattern::kRandom;
  if (name == "streaming") return AccessPattern::kStreaming;
  throw ValidationError("unknown access pattern '" + std::string(name) + "'");
}

void validate(const GatherWorkload& w) {
  if (!(w.num_vectors >= 1.0)) throw ValidationError("gather: num_vectors must be >= 1");
  if (w.element_bytes < 1) throw ValidationError("gather: element_bytes must be >= 1");
  if (w.vector_bytes < w.element_bytes) throw ValidationError("gather: vector_bytes smaller than one element");
  if (!(w.fraction_accessed > 0.0 && w.fraction_accessed <= 1.0)) {
    throw ValidationError("gather: fraction_accessed must lie in (0, 1]");
  }
}

std::int64_t round_up_to_granularity(std::int64_t size, std::int64_t granularity) {
  if (size < 1 || granularity < 1) throw ValidationError("size and granularity must be >= 1");
  return (size + granularity - 1) / granularity * granularity;
}

double access_efficiency(std::int64_t size, std::int64_t granularity) {
  return static_cast<double>(size) / static_cast<double>(round_up_to_granularity(size, granularity));
}

double random_gather_utilization(std::int64_t size, const DeviceSpec& spec, Direction direction) {
  const auto& mem = spec.memory;
  const double beta =
      direction == Direction::kScatter && mem.scatter_beta ? *mem.scatter_beta : mem.random_access_beta;
  const auto fetched = static_cast<double>(round_up_to_granularity(size, mem.min_access_granularity));
  return beta * access_efficiency(size, mem.min_access_granularity) * fetched /
         (fetched + mem.small_transfer_overhead_bytes);
}

BandwidthResult gather_scatter_utilization(const GatherWorkload& workload, const DeviceSpec& spec) {
  validate(workload);
  BandwidthResult r;
  const double ae = access_efficiency(workload.vector_bytes, spec.memory.min_access_granularity);
  r.utilization = workload.pattern == AccessPattern::kStreaming
                      ? spec.calibration.stream_efficiency
                      : random_gather_utilization(workload.vector_bytes, spec, workload.direction);
  r.useful_bytes_per_sec = r.utilization * spec.memory.peak_bandwidth;
  r.fetched_bytes_per_sec = r.useful_bytes_per_sec / ae;
  r.useful_bytes = workload.num_vectors * workload.fraction_accessed * static_cast<double>(workload.vector_bytes);
  r.time_seconds = r.useful_bytes / r.useful_bytes_per_sec;
  return r;
}

double littles_law_bandwidth(double outstanding, std::int64_t transfer_bytes, const DeviceSpec& spec) {
  if (!(outstanding >= 1.0)) throw ValidationError("outstanding requests must be >= 1");
  const auto bytes =
      static_cast<double>(round_up_to_granularity(transfer_bytes, spec.memory.min_access_granularity));
  return std::min(spec.memory.peak_bandwidth, outstanding * bytes / spec.memory.mean_latency);
}

}  // namespace npuperf
