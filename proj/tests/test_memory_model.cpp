// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "npuperf/error.hpp"
#include "npuperf/memory_model.hpp"
#include "test_support.hpp"

namespace npuperf {
namespace {

using testing::a100;
using testing::gaudi2;
using testing::mean;

double gather_util(std::int64_t size, const DeviceSpec& spec) {
  GatherWorkload w;
  w.vector_bytes = size;
  return gather_scatter_utilization(w, spec).utilization;
}

TEST(MemoryModel, AccessEfficiency) {
  EXPECT_DOUBLE_EQ(access_efficiency(128, 256), 0.5);
  EXPECT_DOUBLE_EQ(access_efficiency(256, 256), 1.0);
  EXPECT_DOUBLE_EQ(access_efficiency(96, 32), 1.0);
  EXPECT_DOUBLE_EQ(access_efficiency(300, 256), 300.0 / 512.0);
}

TEST(MemoryModel, Gaudi2LargeVectorMean) {
  std::vector<double> u;
  for (std::int64_t s = 256; s <= 2048; s *= 2) u.push_back(gather_util(s, gaudi2()));
  EXPECT_NEAR(mean(u), 0.64, 0.05);
}

TEST(MemoryModel, Gaudi2SmallVectorMeanMatchesClosedForm) {
  std::vector<double> u;
  for (std::int64_t s : {16, 32, 64, 128}) u.push_back(gather_util(s, gaudi2()));
  const double closed_form = 0.64 * (16.0 + 32.0 + 64.0 + 128.0) / 256.0 / 4.0;
  EXPECT_DOUBLE_EQ(mean(u), closed_form);
  EXPECT_NEAR(mean(u), 0.15, 0.01);
}

TEST(MemoryModel, SmallVectorDropVersusA100) {
  std::vector<double> g;
  std::vector<double> a;
  for (std::int64_t s : {16, 32, 64, 128}) {
    g.push_back(gather_util(s, gaudi2()));
    a.push_back(gather_util(s, a100()));
  }
  EXPECT_NEAR(mean(g) / mean(a), 1.0 / 2.4, 0.15 / 2.4);
}

TEST(MemoryModel, MonotoneInSize) {
  for (const DeviceSpec* spec : {&gaudi2(), &a100()}) {
    double previous = 0.0;
    for (std::int64_t s = 2; s <= 4096; ++s) {
      const double u = random_gather_utilization(s, *spec);
      // Rounding up to the next granule may dip; compare aligned sizes only.
      if (s % spec->memory.min_access_granularity == 0) {
        EXPECT_GE(u, previous);
        previous = u;
      }
      EXPECT_LE(u, 1.0);
    }
  }
}

TEST(MemoryModel, FetchedAtLeastUseful) {
  for (std::int64_t s = 16; s <= 2048; s += 16) {
    GatherWorkload w;
    w.vector_bytes = s;
    const auto r = gather_scatter_utilization(w, gaudi2());
    EXPECT_GE(r.fetched_bytes_per_sec, r.useful_bytes_per_sec);
    if (s % 256 == 0) {
      EXPECT_DOUBLE_EQ(r.fetched_bytes_per_sec, r.useful_bytes_per_sec);
    } else {
      EXPECT_GT(r.fetched_bytes_per_sec, r.useful_bytes_per_sec);
    }
  }
}

TEST(MemoryModel, UnitGranularityGivesBeta) {
  DeviceSpec spec = gaudi2();
  spec.memory.min_access_granularity = 1;
  spec.memory.small_transfer_overhead_bytes = 0;
  for (std::int64_t s : {2, 3, 17, 100, 2048}) EXPECT_DOUBLE_EQ(random_gather_utilization(s, spec), 0.64);
}

TEST(MemoryModel, ScatterUsesOwnBeta) {
  DeviceSpec spec = gaudi2();
  GatherWorkload w;
  w.vector_bytes = 512;
  w.direction = Direction::kScatter;
  EXPECT_DOUBLE_EQ(gather_scatter_utilization(w, spec).utilization, 0.64);
  spec.memory.scatter_beta = 0.5;
  EXPECT_DOUBLE_EQ(gather_scatter_utilization(w, spec).utilization, 0.5);
}

TEST(MemoryModel, StreamingUsesStreamEfficiency) {
  GatherWorkload w;
  w.vector_bytes = 64;
  w.pattern = AccessPattern::kStreaming;
  EXPECT_DOUBLE_EQ(gather_scatter_utilization(w, gaudi2()).utilization, 0.80);
}

TEST(MemoryModel, FractionScalesBytesNotUtilization) {
  GatherWorkload w;
  w.vector_bytes = 512;
  const auto full = gather_scatter_utilization(w, gaudi2());
  w.fraction_accessed = 0.25;
  const auto part = gather_scatter_utilization(w, gaudi2());
  EXPECT_DOUBLE_EQ(part.utilization, full.utilization);
  EXPECT_DOUBLE_EQ(part.useful_bytes * 4.0, full.useful_bytes);
}

TEST(MemoryModel, LittlesLaw) {
  DeviceSpec spec = gaudi2();
  spec.memory.mean_latency = 1e-6;
  EXPECT_DOUBLE_EQ(littles_law_bandwidth(1, 256, spec), 256e6);
  EXPECT_DOUBLE_EQ(littles_law_bandwidth(1e12, 256, spec), spec.memory.peak_bandwidth);
  spec.memory.mean_latency = 0.8e-6;
  EXPECT_DOUBLE_EQ(littles_law_bandwidth(96, 512, spec), 96.0 * 512.0 / 0.8e-6);
  EXPECT_THROW(littles_law_bandwidth(0, 256, spec), ValidationError);
}

TEST(MemoryModel, InvalidWorkload) {
  GatherWorkload w;
  w.vector_bytes = 1;
  EXPECT_THROW(gather_scatter_utilization(w, gaudi2()), ValidationError);
  w.vector_bytes = 256;
  w.fraction_accessed = 0.0;
  EXPECT_THROW(gather_scatter_utilization(w, gaudi2()), ValidationError);
  EXPECT_THROW(direction_from_string("sideways"), ValidationError);
}

}  // namespace
}  // namespace npuperf
