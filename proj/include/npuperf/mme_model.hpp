// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "npuperf/device_model.hpp"

namespace npuperf {

// C[m x n] = A[m x k] * B[k x n].
struct GemmShape {
  std::int64_t m = 1;
  std::int64_t k = 1;
  std::int64_t n = 1;
  int element_bytes = 2;
};

struct GemmResult {
  std::int64_t cycles = 0;
  double achieved_flops = 0.0;
  double utilization = 0.0;  // achieved / full-array peak
  Bound bound = Bound::kCompute;
  MacGeometry geometry_used;
  double operational_intensity = 0.0;
  double flops = 0.0;         // total useful flops of the problem
  double time_seconds = 0.0;  // flops / achieved_flops
};

struct Configurable {};
struct Fixed {
  MacGeometry geometry;
};
using GemmMode = std::variant<Configurable, Fixed>;

void validate(const GemmShape& shape);

// 2mnk / (element_bytes * (mk + kn + mn)): each operand touched once.
double gemm_operational_intensity(const GemmShape& shape);

// Matrix-engine cycles per second implied by peak flops and MAC budget.
double matrix_clock_hz(const DeviceSpec& spec);

std::vector<MacGeometry> enumerate_geometries(const DeviceSpec& spec);

// Output-stationary tiling model. Each unit owns h x w output tiles and
// spends k cycles per tile; the ceil(m/h) x ceil(n/w) grid (times `batch`
// independent problems) is dealt evenly across units, remainders going to the
// lowest-indexed units. Pipeline fill of h + w - 1 cycles is paid once per
// busy unit when the fill model is h_plus_w.
GemmResult gemm_cycles(const GemmShape& shape, const MacGeometry& geometry, const DeviceSpec& spec,
                       std::int64_t batch = 1);

// Fewest cycles over the menu; ties go to fewer active MACs, then taller
// units, then menu order.
MacGeometry select_geometry(const GemmShape& shape, const DeviceSpec& spec, std::int64_t batch = 1);

GemmResult gemm_perf(const GemmShape& shape, const DeviceSpec& spec, const GemmMode& mode,
                     std::int64_t batch = 1);

// Resolves a geometry by menu label, or parses "<count>x<height>x<width>".
MacGeometry geometry_from_label(const std::string& label, const DeviceSpec& spec);

}  // namespace npuperf
