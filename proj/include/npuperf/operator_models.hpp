// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "npuperf/device_model.hpp"

namespace npuperf {

enum class EmbeddingLayout { kSingleTable, kBatchedTable };

std::string_view to_string(EmbeddingLayout layout);
EmbeddingLayout embedding_layout_from_string(std::string_view name);

struct EmbeddingConfig {
  std::int64_t num_tables = 1;
  std::int64_t rows_per_table = 1'000'000;
  std::int64_t vector_bytes = 256;
  std::int64_t pooling_factor = 1;  // gathers per sample per table
  std::int64_t batch = 1;
  int unroll = 4;  // concurrent gathers per core
};

struct EmbeddingResult {
  double time = 0.0;
  double bandwidth_utilization = 0.0;  // useful bytes / (time * peak)
  std::int64_t launches = 0;
  double useful_bytes = 0.0;
  double achieved_bandwidth = 0.0;  // while a kernel is running
  double concurrent_gathers = 0.0;
};

void validate(const EmbeddingConfig& cfg);

EmbeddingResult embedding_lookup(EmbeddingLayout layout, const EmbeddingConfig& cfg, const DeviceSpec& spec);

enum class PagedAttentionVariant { kBlockTable, kBlockList };

std::string_view to_string(PagedAttentionVariant variant);
PagedAttentionVariant paged_attention_variant_from_string(std::string_view name);

struct PagedAttentionConfig {
  std::int64_t batch = 1;
  std::int64_t seq_len = 1024;
  std::int64_t block_size = 128;
  std::int64_t head_dim = 128;
  std::int64_t num_query_heads = 32;
  std::int64_t num_kv_heads = 8;
  int element_bytes = 2;
  double padded_fraction = 0.0;  // share of block-table entries that are padding
};

struct PagedAttentionResult {
  double time = 0.0;
  double gather_time = 0.0;
  double gemm_time = 0.0;  // matrix work plus softmax
  double copy_time = 0.0;  // contiguous KV staging, block_table only
  double overlap_achieved = 0.0;
  double tokens_per_sec = 0.0;
  double flops = 0.0;
  double bytes_moved = 0.0;
  double achieved_flops = 0.0;
  double operational_intensity = 0.0;
  double processed_blocks = 0.0;
};

void validate(const PagedAttentionConfig& cfg);

// Blocks holding real KV data across the batch.
std::int64_t effectual_blocks(const PagedAttentionConfig& cfg);

// K and V for one block across all KV heads.
std::int64_t block_bytes(const PagedAttentionConfig& cfg);

// block_table gathers every table entry (padding included) into a
// contiguous buffer, then runs one small GEMM pair per sequence and query
// head, all strictly in sequence. block_list gathers only effectual blocks
// and feeds batched GEMMs, overlapping the two phases by the device's
// pipeline_overlap.
PagedAttentionResult paged_attention(PagedAttentionVariant variant, const PagedAttentionConfig& cfg,
                                     const DeviceSpec& spec);

// tokens/s of the faster variant on device a over the same on device b.
double paged_attention_cross_device(const PagedAttentionConfig& cfg, const DeviceSpec& a, const DeviceSpec& b);

// Mean block_table / block_list time ratio over `grid` (padding as given).
double mean_paged_attention_speedup(const std::vector<PagedAttentionConfig>& grid, const DeviceSpec& spec);

// Default calibration grid: seq {1K, 2K, 4K} x batch {8, 16, 32} on an
// 8B-class decoder (32 query heads, 8 KV heads, head_dim 128, block 128).
std::vector<PagedAttentionConfig> overlap_calibration_grid();

// Bisects pipeline_overlap in [0, 1] so the mean speedup over `grid` hits
// `target_speedup`; clamps to the interval ends if the target is out of reach.
double fit_pipeline_overlap(const DeviceSpec& spec, const std::vector<PagedAttentionConfig>& grid,
                            double target_speedup);

}  // namespace npuperf
