// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#include "npuperf/tpc_model.hpp"

#include <algorithm>
#include <limits>

#include "npuperf/error.hpp"

namespace npuperf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double flops_per_element(const VectorKernelSpec& k) {
  return static_cast<double>(k.computes_per_iter) * k.flops_per_compute_instr + k.extra_ops_per_element;
}

double bytes_per_element(const VectorKernelSpec& k) {
  return static_cast<double>(k.arrays_touched) * k.element_bytes;
}

struct CoreRate {
  double elements_per_sec = 0.0;
  KernelBound bound = KernelBound::kIssue;
};

CoreRate core_rate(const VectorKernelSpec& k, const DeviceSpec& spec) {
  const auto& ve = spec.vector_engine;
  const int memory_instrs = k.loads_per_iter + k.stores_per_iter;
  const double lanes = static_cast<double>(ve.vector_width_bytes) / k.element_bytes;
  const double payload_bytes = static_cast<double>(std::min<std::int64_t>(k.access_bytes, ve.vector_width_bytes));
  const double elements_per_iter = memory_instrs > 0 ? payload_bytes / k.element_bytes : lanes;

  const double unroll = k.unroll;
  const double vector_instrs = k.computes_per_iter + k.extra_ops_per_element / k.flops_per_compute_instr;
  const double memory_cycles = unroll * memory_instrs / ve.issue_slots.load_store_slots;
  const double vector_cycles = unroll * vector_instrs / ve.issue_slots.vector_slots;
  const int stages = (k.loads_per_iter > 0) + (vector_instrs > 0.0) + (k.stores_per_iter > 0);
  const double dependency_cycles = static_cast<double>(ve.instr_latency_cycles) * stages;

  const double issue_cycles = std::max(memory_cycles, vector_cycles);
  CoreRate r;
  r.bound = dependency_cycles > issue_cycles ? KernelBound::kDependency : KernelBound::kIssue;
  const double cycles = std::max(issue_cycles, dependency_cycles);
  r.elements_per_sec = unroll * elements_per_iter / cycles * vector_clock_hz(spec);
  return r;
}

KernelThroughput from_element_rate(const VectorKernelSpec& k, double elements_per_sec, KernelBound bound) {
  KernelThroughput t;
  t.flops = elements_per_sec * flops_per_element(k);
  t.bytes_per_sec = elements_per_sec * bytes_per_element(k);
  t.bound = bound;
  t.oi = kernel_operational_intensity(k);
  return t;
}

}  // namespace

std::string_view to_string(StreamKernel kernel) {
  switch (kernel) {
    case StreamKernel::kAdd:
      return "ADD";
    case StreamKernel::kScale:
      return "SCALE";
    case StreamKernel::kTriad:
      return "TRIAD";
  }
  return "?";
}

StreamKernel stream_kernel_from_string(std::string_view name) {
  if (name == "ADD") return StreamKernel::kAdd;
  if (name == "SCALE") return StreamKernel::kScale;
  if (name == "TRIAD") return StreamKernel::kTriad;
  throw ValidationError("unknown stream kernel '" + std::string(name) + "'");
}

std::string_view to_string(KernelBound bound) {
  switch (bound) {
    case KernelBound::kIssue:
      return "issue";
    case KernelBound::kDependency:
      return "dependency";
    case KernelBound::kMemory:
      return "memory";
    case KernelBound::kComputeMix:
      return "compute-mix";
  }
  return "?";
}

void validate(const VectorKernelSpec& k) {
  if (k.loads_per_iter < 0 || k.stores_per_iter < 0 || k.computes_per_iter < 0) {
    throw ValidationError("kernel '" + k.name + "': instruction counts must be >= 0");
  }
  if (k.loads_per_iter + k.stores_per_iter + k.computes_per_iter == 0) {
    throw ValidationError("kernel '" + k.name + "': empty instruction mix");
  }
  if (k.flops_per_compute_instr < 1) throw ValidationError("kernel '" + k.name + "': flops per instruction < 1");
  if (k.unroll < 1) throw ValidationError("kernel '" + k.name + "': unroll must be >= 1");
  if (k.element_bytes < 1) throw ValidationError("kernel '" + k.name + "': element_bytes must be >= 1");
  if (k.access_bytes < k.element_bytes) {
    throw ValidationError("kernel '" + k.name + "': access_bytes smaller than one element");
  }
  if (k.extra_ops_per_element < 0.0) throw ValidationError("kernel '" + k.name + "': extra ops must be >= 0");
  if (k.arrays_touched < 0 || (k.loads_per_iter + k.stores_per_iter > 0 && k.arrays_touched < 1)) {
    throw ValidationError("kernel '" + k.name + "': memory instructions need arrays_touched >= 1");
  }
}

std::map<StreamKernel, VectorKernelSpec> kernel_presets() {
  std::map<StreamKernel, VectorKernelSpec> presets;
  presets[StreamKernel::kAdd] = {.name = "ADD",
                                 .loads_per_iter = 2,
                                 .stores_per_iter = 1,
                                 .computes_per_iter = 1,
                                 .flops_per_compute_instr = 1,
                                 .arrays_touched = 3};
  presets[StreamKernel::kScale] = {.name = "SCALE",
                                   .loads_per_iter = 1,
                                   .stores_per_iter = 1,
                                   .computes_per_iter = 1,
                                   .flops_per_compute_instr = 1,
                                   .arrays_touched = 2};
  presets[StreamKernel::kTriad] = {.name = "TRIAD",
                                   .loads_per_iter = 2,
                                   .stores_per_iter = 1,
                                   .computes_per_iter = 1,
                                   .flops_per_compute_instr = 2,
                                   .arrays_touched = 3};
  return presets;
}

VectorKernelSpec kernel_preset(StreamKernel kernel) { return kernel_presets().at(kernel); }

double kernel_operational_intensity(const VectorKernelSpec& k) {
  const double bytes = bytes_per_element(k);
  return bytes > 0.0 ? flops_per_element(k) / bytes : kInf;
}

double compute_bound_fraction(const VectorKernelSpec& k) {
  if (k.computes_per_iter < 1) throw ValidationError("kernel '" + k.name + "': no compute instructions");
  return std::min(1.0, k.flops_per_compute_instr / 2.0);
}

double vector_clock_hz(const DeviceSpec& spec) {
  const auto& ve = spec.vector_engine;
  const double lanes = static_cast<double>(ve.vector_width_bytes) / 2.0;  // BF16 lanes
  return ve.aggregate_peak_flops / (ve.core_count * ve.issue_slots.vector_slots * lanes * 2.0);
}

KernelThroughput single_core_throughput(const VectorKernelSpec& kernel, const DeviceSpec& spec) {
  validate(kernel);
  const CoreRate r = core_rate(kernel, spec);
  return from_element_rate(kernel, r.elements_per_sec, r.bound);
}

KernelThroughput multi_core_throughput(const VectorKernelSpec& kernel, int cores, const DeviceSpec& spec) {
  validate(kernel);
  if (cores < 1 || cores > spec.vector_engine.core_count) {
    throw ValidationError("cores must lie in [1, " + std::to_string(spec.vector_engine.core_count) + "]");
  }
  const double fpe = flops_per_element(kernel);
  const double bpe = bytes_per_element(kernel);

  const CoreRate one = core_rate(kernel, spec);
  const double issue_rate = cores * one.elements_per_sec;
  const double mix_rate =
      fpe > 0.0 ? compute_bound_fraction(kernel) * spec.vector_engine.aggregate_peak_flops / fpe : kInf;
  const double memory_rate =
      bpe > 0.0 ? spec.calibration.stream_efficiency * spec.memory.peak_bandwidth / bpe : kInf;

  // Ties resolve toward the compute-mix ceiling, then memory. The issue and
  // mix ceilings coincide analytically for vector-bound kernels, so a
  // relative slack keeps rounding from flipping the tag.
  constexpr double kTie = 1e-12;
  double rate = mix_rate;
  KernelBound bound = KernelBound::kComputeMix;
  if (memory_rate < rate * (1.0 - kTie)) {
    rate = memory_rate;
    bound = KernelBound::kMemory;
  }
  if (issue_rate < rate * (1.0 - kTie)) {
    rate = issue_rate;
    bound = one.bound;
  }
  return from_element_rate(kernel, rate, bound);
}

}  // namespace npuperf
