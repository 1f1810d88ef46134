// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "npuperf/device_model.hpp"

namespace npuperf {

enum class StreamKernel { kAdd, kScale, kTriad };

std::string_view to_string(StreamKernel kernel);
StreamKernel stream_kernel_from_string(std::string_view name);

// A streaming loop body for one vector core. Counts are per iteration of the
// un-unrolled loop; each memory instruction moves `access_bytes`.
struct VectorKernelSpec {
  std::string name;
  int loads_per_iter = 0;
  int stores_per_iter = 0;
  int computes_per_iter = 0;
  int flops_per_compute_instr = 1;  // 1 for add/mul, 2 for multiply-accumulate
  int unroll = 1;
  std::int64_t access_bytes = 256;
  int element_bytes = 2;
  int arrays_touched = 0;
  double extra_ops_per_element = 0.0;  // synthetic intensity knob
  double total_elements = 24e6;
};

enum class KernelBound { kIssue, kDependency, kMemory, kComputeMix };

std::string_view to_string(KernelBound bound);

struct KernelThroughput {
  double flops = 0.0;
  double bytes_per_sec = 0.0;
  KernelBound bound = KernelBound::kIssue;
  double oi = 0.0;  // +inf for kernels without memory traffic
};

void validate(const VectorKernelSpec& kernel);

std::map<StreamKernel, VectorKernelSpec> kernel_presets();
VectorKernelSpec kernel_preset(StreamKernel kernel);

// Flops per element over bytes per element, extra ops included.
double kernel_operational_intensity(const VectorKernelSpec& kernel);

// Fraction of the MAC-rated vector peak reachable by the compute mix.
double compute_bound_fraction(const VectorKernelSpec& kernel);

// Per-core clock chosen so that all cores issuing MACs on every vector slot
// reach aggregate_peak_flops.
double vector_clock_hz(const DeviceSpec& spec);

KernelThroughput single_core_throughput(const VectorKernelSpec& kernel, const DeviceSpec& spec);

// min(cores x one core, compute-mix ceiling, stream_efficiency x bandwidth x oi).
KernelThroughput multi_core_throughput(const VectorKernelSpec& kernel, int cores, const DeviceSpec& spec);

}  // namespace npuperf
