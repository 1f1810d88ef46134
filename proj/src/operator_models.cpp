// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#include "npuperf/operator_models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "npuperf/error.hpp"
#include "npuperf/memory_model.hpp"
#include "npuperf/mme_model.hpp"
#include "npuperf/tpc_model.hpp"

namespace npuperf {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// Bandwidth sustained by `concurrent` outstanding gathers of `vector_bytes`.
double gather_bandwidth(double concurrent, std::int64_t vector_bytes, const DeviceSpec& spec) {
  return std::min(spec.memory.peak_bandwidth * random_gather_utilization(vector_bytes, spec),
                  littles_law_bandwidth(concurrent, vector_bytes, spec));
}

double gemm_seconds(const GemmShape& shape, std::int64_t batch, const DeviceSpec& spec) {
  return gemm_perf(shape, spec, Configurable{}, batch).time_seconds;
}

// `count` independent launches of the same shape, each paying its own fill.
double unbatched_gemm_seconds(const GemmShape& shape, std::int64_t count, const DeviceSpec& spec) {
  return static_cast<double>(count) * gemm_perf(shape, spec, Configurable{}).time_seconds;
}

// Scale, exponentiate and normalize the scores: two reads and a write per
// element, one non-fused op each, on every vector core.
double softmax_seconds(double elements, int element_bytes, const DeviceSpec& spec) {
  const VectorKernelSpec kernel{.name = "softmax",
                                .loads_per_iter = 2,
                                .stores_per_iter = 1,
                                .computes_per_iter = 1,
                                .flops_per_compute_instr = 1,
                                .element_bytes = element_bytes,
                                .arrays_touched = 3};
  const auto t = multi_core_throughput(kernel, spec.vector_engine.core_count, spec);
  return elements / t.flops;
}

}  // namespace

std::string_view to_string(EmbeddingLayout layout) {
  return layout == EmbeddingLayout::kSingleTable ? "single_table" : "batched_table";
}

EmbeddingLayout embedding_layout_from_string(std::string_view name) {
  if (name == "single_table") return EmbeddingLayout::kSingleTable;
  if (name == "batched_table") return EmbeddingLayout::kBatchedTable;
  throw ValidationError("unknown embedding layout '" + std::string(name) + "'");
}

void validate(const EmbeddingConfig& cfg) {
  if (cfg.num_tables < 1 || cfg.rows_per_table < 1 || cfg.vector_bytes < 1 || cfg.pooling_factor < 1 ||
      cfg.batch < 1 || cfg.unroll < 1) {
    throw ValidationError("embedding: all configuration fields must be >= 1");
  }
}

EmbeddingResult embedding_lookup(EmbeddingLayout layout, const EmbeddingConfig& cfg, const DeviceSpec& spec) {
  validate(cfg);
  const auto cores = static_cast<std::int64_t>(spec.vector_engine.core_count);
  const double launch = spec.calibration.kernel_launch_overhead;
  const double per_table_bytes =
      static_cast<double>(cfg.batch) * static_cast<double>(cfg.pooling_factor) * static_cast<double>(cfg.vector_bytes);

  EmbeddingResult r;
  r.useful_bytes = per_table_bytes * static_cast<double>(cfg.num_tables);
  if (layout == EmbeddingLayout::kSingleTable) {
    // One kernel per table; only that table's batch offsets are spread over cores.
    r.launches = cfg.num_tables;
    r.concurrent_gathers = static_cast<double>(std::min(cores, cfg.batch) * cfg.unroll);
    r.achieved_bandwidth = gather_bandwidth(r.concurrent_gathers, cfg.vector_bytes, spec);
    r.time = static_cast<double>(cfg.num_tables) * (launch + per_table_bytes / r.achieved_bandwidth);
  } else {
    r.launches = 1;
    r.concurrent_gathers = static_cast<double>(std::min(cores, cfg.num_tables * cfg.batch) * cfg.unroll);
    r.achieved_bandwidth = gather_bandwidth(r.concurrent_gathers, cfg.vector_bytes, spec);
    r.time = launch + r.useful_bytes / r.achieved_bandwidth;
  }
  r.bandwidth_utilization = r.useful_bytes / (r.time * spec.memory.peak_bandwidth);
  return r;
}

std::string_view to_string(PagedAttentionVariant variant) {
  return variant == PagedAttentionVariant::kBlockTable ? "block_table" : "block_list";
}

PagedAttentionVariant paged_attention_variant_from_string(std::string_view name) {
  if (name == "block_table") return PagedAttentionVariant::kBlockTable;
  if (name == "block_list") return PagedAttentionVariant::kBlockList;
  throw ValidationError("unknown paged attention variant '" + std::string(name) + "'");
}

void validate(const PagedAttentionConfig& cfg) {
  if (cfg.batch < 1 || cfg.seq_len < 1 || cfg.block_size < 1 || cfg.head_dim < 1 || cfg.num_query_heads < 1 ||
      cfg.num_kv_heads < 1 || cfg.element_bytes < 1) {
    throw ValidationError("paged attention: sizes must be >= 1");
  }
  if (cfg.num_query_heads % cfg.num_kv_heads != 0) {
    throw ValidationError("paged attention: query heads must be a multiple of KV heads");
  }
  if (!(cfg.padded_fraction >= 0.0 && cfg.padded_fraction < 1.0)) {
    throw ValidationError("paged attention: padded_fraction must lie in [0, 1)");
  }
}

std::int64_t effectual_blocks(const PagedAttentionConfig& cfg) {
  return cfg.batch * ceil_div(cfg.seq_len, cfg.block_size);
}

std::int64_t block_bytes(const PagedAttentionConfig& cfg) {
  return cfg.block_size * cfg.num_kv_heads * cfg.head_dim * cfg.element_bytes * 2;
}

PagedAttentionResult paged_attention(PagedAttentionVariant variant, const PagedAttentionConfig& cfg,
                                     const DeviceSpec& spec) {
  validate(cfg);
  const std::int64_t blocks = effectual_blocks(cfg);
  const std::int64_t bb = block_bytes(cfg);
  const std::int64_t blocks_per_seq = ceil_div(cfg.seq_len, cfg.block_size);
  const std::int64_t padded_seq = blocks_per_seq * cfg.block_size;
  const std::int64_t group = cfg.num_query_heads / cfg.num_kv_heads;
  const int eb = cfg.element_bytes;
  const double z = cfg.padded_fraction;

  const double gather_bw = spec.memory.peak_bandwidth * random_gather_utilization(bb, spec);
  const double effectual_gather = static_cast<double>(blocks) * static_cast<double>(bb) / gather_bw;
  const double scores = static_cast<double>(blocks * cfg.block_size * cfg.num_query_heads);
  const double softmax = softmax_seconds(scores, eb, spec);

  PagedAttentionResult r;
  r.flops = 4.0 * static_cast<double>(cfg.batch * cfg.num_query_heads * cfg.head_dim * padded_seq);
  if (variant == PagedAttentionVariant::kBlockTable) {
    const double stretch = 1.0 / (1.0 - z);
    r.processed_blocks = static_cast<double>(blocks) * stretch;
    const double processed_bytes = r.processed_blocks * static_cast<double>(bb);
    r.gather_time = effectual_gather * stretch;
    r.copy_time = 2.0 * processed_bytes / (spec.calibration.stream_efficiency * spec.memory.peak_bandwidth);
    const std::int64_t launches = cfg.batch * cfg.num_query_heads;
    const double matrix = unbatched_gemm_seconds({1, cfg.head_dim, padded_seq, eb}, launches, spec) +
                          unbatched_gemm_seconds({1, padded_seq, cfg.head_dim, eb}, launches, spec);
    r.gemm_time = (matrix + softmax) * stretch;
    r.time = r.gather_time + r.copy_time + r.gemm_time;
    r.bytes_moved = 3.0 * processed_bytes;
  } else {
    r.processed_blocks = static_cast<double>(blocks);
    r.gather_time = effectual_gather;
    // The graph compiler may lower block-wise or per sequence; take the faster.
    const double per_block = gemm_seconds({group, cfg.head_dim, cfg.block_size, eb}, blocks * cfg.num_kv_heads, spec) +
                             gemm_seconds({group, cfg.block_size, cfg.head_dim, eb}, blocks * cfg.num_kv_heads, spec);
    const std::int64_t seq_batch = cfg.batch * cfg.num_kv_heads;
    const double per_seq = gemm_seconds({group, cfg.head_dim, padded_seq, eb}, seq_batch, spec) +
                           gemm_seconds({group, padded_seq, cfg.head_dim, eb}, seq_batch, spec);
    r.gemm_time = std::min(per_block, per_seq) + softmax;
    const double overlap = spec.calibration.pipeline_overlap;
    r.time = std::max(r.gather_time, r.gemm_time) + (1.0 - overlap) * std::min(r.gather_time, r.gemm_time);
    r.overlap_achieved = overlap;
    r.bytes_moved = r.processed_blocks * static_cast<double>(bb);
  }
  r.tokens_per_sec = static_cast<double>(cfg.batch) / r.time;
  r.achieved_flops = r.flops / r.time;
  r.operational_intensity = r.flops / r.bytes_moved;
  return r;
}

double paged_attention_cross_device(const PagedAttentionConfig& cfg, const DeviceSpec& a, const DeviceSpec& b) {
  const auto best = [&cfg](const DeviceSpec& spec) {
    return std::max(paged_attention(PagedAttentionVariant::kBlockTable, cfg, spec).tokens_per_sec,
                    paged_attention(PagedAttentionVariant::kBlockList, cfg, spec).tokens_per_sec);
  };
  return best(a) / best(b);
}

double mean_paged_attention_speedup(const std::vector<PagedAttentionConfig>& grid, const DeviceSpec& spec) {
  if (grid.empty()) throw ValidationError("paged attention grid is empty");
  double sum = 0.0;
  for (const auto& cfg : grid) {
    sum += paged_attention(PagedAttentionVariant::kBlockTable, cfg, spec).time /
           paged_attention(PagedAttentionVariant::kBlockList, cfg, spec).time;
  }
  return sum / static_cast<double>(grid.size());
}

std::vector<PagedAttentionConfig> overlap_calibration_grid() {
  std::vector<PagedAttentionConfig> grid;
  for (std::int64_t seq : {1024, 2048, 4096}) {
    for (std::int64_t batch : {8, 16, 32}) {
      PagedAttentionConfig cfg;
      cfg.batch = batch;
      cfg.seq_len = seq;
      grid.push_back(cfg);
    }
  }
  return grid;
}

double fit_pipeline_overlap(const DeviceSpec& spec, const std::vector<PagedAttentionConfig>& grid,
                            double target_speedup) {
  DeviceSpec probe = spec;
  const auto speedup_at = [&](double overlap) {
    probe.calibration.pipeline_overlap = overlap;
    return mean_paged_attention_speedup(grid, probe);
  };
  // Speedup grows with overlap.
  double lo = 0.0;
  double hi = 1.0;
  if (speedup_at(lo) >= target_speedup) return lo;
  if (speedup_at(hi) <= target_speedup) return hi;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (speedup_at(mid) < target_speedup ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace npuperf
