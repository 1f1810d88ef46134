// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#include "npuperf/mme_model.hpp"

#include <algorithm>
#include <charconv>
#include <tuple>

#include "npuperf/error.hpp"

namespace npuperf {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// Makespan in cycles of the busiest unit.
std::int64_t makespan_cycles(const GemmShape& shape, const MacGeometry& geometry, FillModel fill,
                             std::int64_t batch) {
  const MacUnit& unit = geometry.units.front();
  const auto unit_count = static_cast<std::int64_t>(geometry.units.size());
  const std::int64_t tiles = batch * ceil_div(shape.m, unit.height) * ceil_div(shape.n, unit.width);
  const std::int64_t busiest = ceil_div(tiles, unit_count);
  const std::int64_t fill_cycles = fill == FillModel::kHeightPlusWidth ? unit.height + unit.width - 1 : 0;
  return busiest * shape.k + fill_cycles;
}

void check_geometry(const MacGeometry& geometry, const DeviceSpec& spec) {
  if (geometry.units.empty()) throw ValidationError("geometry '" + geometry.label + "' has no units");
  for (const auto& u : geometry.units) {
    if (u.height < 1 || u.width < 1) {
      throw ValidationError("geometry '" + geometry.label + "' has a non-positive unit dimension");
    }
    if (u != geometry.units.front()) {
      throw ValidationError("geometry '" + geometry.label + "' mixes unit shapes");
    }
  }
  if (geometry.active_macs() > spec.matrix_engine.mac_budget) {
    throw ValidationError("geometry '" + geometry.label + "' exceeds the device MAC budget of " +
                          std::to_string(spec.matrix_engine.mac_budget));
  }
}

}  // namespace

void validate(const GemmShape& shape) {
  if (shape.m < 1 || shape.k < 1 || shape.n < 1) throw ValidationError("GEMM dimensions must be >= 1");
  if (shape.element_bytes < 1) throw ValidationError("GEMM element_bytes must be >= 1");
}

double gemm_operational_intensity(const GemmShape& shape) {
  const double m = static_cast<double>(shape.m);
  const double k = static_cast<double>(shape.k);
  const double n = static_cast<double>(shape.n);
  return 2.0 * m * n * k / (shape.element_bytes * (m * k + k * n + m * n));
}

double matrix_clock_hz(const DeviceSpec& spec) {
  return spec.matrix_peak_flops / (2.0 * static_cast<double>(spec.matrix_engine.mac_budget));
}

std::vector<MacGeometry> enumerate_geometries(const DeviceSpec& spec) { return spec.matrix_engine.geometries; }

GemmResult gemm_cycles(const GemmShape& shape, const MacGeometry& geometry, const DeviceSpec& spec,
                       std::int64_t batch) {
  validate(shape);
  check_geometry(geometry, spec);
  if (batch < 1) throw ValidationError("GEMM batch must be >= 1");

  GemmResult r;
  r.geometry_used = geometry;
  r.cycles = makespan_cycles(shape, geometry, spec.calibration.mme_fill_model, batch);
  r.flops = 2.0 * static_cast<double>(shape.m) * static_cast<double>(shape.n) * static_cast<double>(shape.k) *
            static_cast<double>(batch);

  const double full_array_flops_per_cycle = 2.0 * static_cast<double>(spec.matrix_engine.mac_budget);
  const double compute_utilization = r.flops / (static_cast<double>(r.cycles) * full_array_flops_per_cycle);
  const double compute_flops = compute_utilization * spec.matrix_peak_flops;

  r.operational_intensity = gemm_operational_intensity(shape);
  const double memory_flops =
      spec.calibration.matrix_stream_efficiency * r.operational_intensity * spec.memory.peak_bandwidth;

  if (memory_flops < compute_flops) {
    r.achieved_flops = memory_flops;
    r.bound = Bound::kMemory;
  } else {
    r.achieved_flops = compute_flops;
    r.bound = Bound::kCompute;
  }
  r.utilization = r.achieved_flops / spec.matrix_peak_flops;
  r.time_seconds = r.flops / r.achieved_flops;
  return r;
}

MacGeometry select_geometry(const GemmShape& shape, const DeviceSpec& spec, std::int64_t batch) {
  validate(shape);
  const auto& menu = spec.matrix_engine.geometries;
  if (menu.empty()) throw ValidationError("device '" + spec.name + "' has an empty geometry menu");

  using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t, std::size_t>;
  Key best{};
  std::size_t best_index = menu.size();
  for (std::size_t i = 0; i < menu.size(); ++i) {
    const auto& g = menu[i];
    Key key{makespan_cycles(shape, g, spec.calibration.mme_fill_model, batch), g.active_macs(),
            -g.units.front().height, i};
    if (best_index == menu.size() || key < best) {
      best = key;
      best_index = i;
    }
  }
  return menu[best_index];
}

GemmResult gemm_perf(const GemmShape& shape, const DeviceSpec& spec, const GemmMode& mode, std::int64_t batch) {
  if (const auto* fixed = std::get_if<Fixed>(&mode)) return gemm_cycles(shape, fixed->geometry, spec, batch);
  return gemm_cycles(shape, select_geometry(shape, spec, batch), spec, batch);
}

MacGeometry geometry_from_label(const std::string& label, const DeviceSpec& spec) {
  for (const auto& g : spec.matrix_engine.geometries) {
    if (g.label == label) return g;
  }
  // <count>x<height>x<width>
  std::int64_t parts[3] = {0, 0, 0};
  const char* p = label.data();
  const char* end = label.data() + label.size();
  for (int i = 0; i < 3; ++i) {
    auto [next, ec] = std::from_chars(p, end, parts[i]);
    if (ec != std::errc{} || (i < 2 && (next == end || *next != 'x')) || (i == 2 && next != end)) {
      throw ValidationError("unknown geometry '" + label + "' (expected a menu label or CxHxW)");
    }
    p = next + 1;
  }
  if (parts[0] < 1) throw ValidationError("geometry '" + label + "' needs at least one unit");
  MacGeometry g{label, std::vector<MacUnit>(static_cast<std::size_t>(parts[0]), MacUnit{parts[1], parts[2]})};
  check_geometry(g, spec);
  return g;
}

}  // namespace npuperf
