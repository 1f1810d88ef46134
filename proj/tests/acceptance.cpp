// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Calibration constants come from the bundled device files as-is.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "npuperf/error.hpp"
#include "npuperf/interconnect_model.hpp"
#include "npuperf/memory_model.hpp"
#include "npuperf/mme_model.hpp"
#include "npuperf/operator_models.hpp"
#include "npuperf/scenario.hpp"
#include "npuperf/spec_library.hpp"
#include "npuperf/tpc_model.hpp"

namespace {

using namespace npuperf;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

ReportTable run_bundled(const std::string& name) {
  return run_scenario(load_scenario_file(resolve_scenario_path(name)));
}

double num(const ReportTable& t, const std::vector<Value>& row, const char* column) {
  return as_double(row[t.column(column)]);
}

std::string text(const ReportTable& t, const std::vector<Value>& row, const char* column) {
  return std::get<std::string>(row[t.column(column)]);
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

Outcome mme_peak(const DeviceSpec& gaudi2, const DeviceSpec&) {
  const double u = gemm_perf({8192, 8192, 8192}, gaudi2, Configurable{}).utilization;
  return {u >= 0.99, fmt("utilization %.5f (need >= 0.99)", u)};
}

Outcome configurability_gain(const DeviceSpec&, const DeviceSpec&) {
  const ReportTable t = run_bundled("fig7c");
  std::map<double, double> configurable;
  std::map<double, double> fixed;
  for (const auto& row : t.rows) {
    auto& side = text(t, row, "mode") == "configurable" ? configurable : fixed;
    side[num(t, row, "n")] = num(t, row, "utilization");
  }
  double best = -1.0;
  for (const auto& [n, u] : configurable) best = std::max(best, u - fixed.at(n));
  return {best >= 0.10 && best <= 0.20, fmt("max gain %.4f (need [0.10, 0.20])", best)};
}

Outcome selection_oracle(const DeviceSpec& gaudi2, const DeviceSpec&) {
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> log_dim(0.0, std::log(32768.0));
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const GemmShape shape{static_cast<std::int64_t>(std::exp(log_dim(rng))),
                          static_cast<std::int64_t>(std::exp(log_dim(rng))),
                          static_cast<std::int64_t>(std::exp(log_dim(rng)))};
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& g : enumerate_geometries(gaudi2)) best = std::min(best, gemm_cycles(shape, g, gaudi2).cycles);
    if (gemm_perf(shape, gaudi2, Configurable{}).cycles != best) ++mismatches;
  }
  return {mismatches == 0, fmt("%.0f of 1000 shapes differ from brute force", mismatches)};
}

Outcome stream_mix(const DeviceSpec&, const DeviceSpec&) {
  const ReportTable t = run_bundled("fig8def");
  std::map<std::string, double> peak;  // device/kernel -> best fraction
  for (const auto& row : t.rows) {
    const std::string key = text(t, row, "device") + "/" + text(t, row, "kernel");
    peak[key] = std::max(peak[key], num(t, row, "compute_fraction"));
  }
  bool ok = peak.size() == 6;
  std::string detail;
  for (const auto& [key, f] : peak) {
    const bool triad = key.find("TRIAD") != std::string::npos;
    ok &= triad ? f >= 0.98 : std::abs(f - 0.50) <= 0.01;
    detail += key + fmt("=%.4f ", f);
  }
  return {ok, detail + "(need 0.50/0.50/>=0.98)"};
}

Outcome stream_plateaus(const DeviceSpec&, const DeviceSpec&) {
  const ReportTable t = run_bundled("fig8c");
  const std::map<std::string, double> target = {{"ADD", 330e9}, {"SCALE", 530e9}, {"TRIAD", 670e9}};
  bool ok = true;
  int seen = 0;
  std::string detail;
  for (const auto& row : t.rows) {
    if (num(t, row, "cores") != 24) continue;
    const std::string kernel = text(t, row, "kernel");
    const double f = num(t, row, "achieved_flops");
    ok &= std::abs(f - target.at(kernel)) <= 0.10 * target.at(kernel);
    detail += kernel + fmt("=%.0f GFLOPS ", f / 1e9);
    ++seen;
  }
  return {ok && seen == 3, detail + "(need 330/530/670 +-10%)"};
}

Outcome gather_model(const DeviceSpec& gaudi2, const DeviceSpec& a100) {
  std::vector<double> small;
  std::vector<double> small_a100;
  std::vector<double> large;
  for (std::int64_t s = 16; s <= 2048; s *= 2) {
    (s <= 128 ? small : large).push_back(random_gather_utilization(s, gaudi2));
    if (s <= 128) small_a100.push_back(random_gather_utilization(s, a100));
  }
  const double ratio = mean(small) / mean(small_a100);
  const bool ok = std::abs(mean(small) - 0.15) <= 0.03 && std::abs(mean(large) - 0.64) <= 0.03 &&
                  std::abs(ratio - 1.0 / 2.4) <= 0.15 / 2.4;
  return {ok, fmt("small %.4f, large %.4f, small ratio vs a100 %.4f (need 0.15, 0.64, 0.4167)", mean(small),
                  mean(large), ratio)};
}

Outcome collectives(const DeviceSpec& gaudi2, const DeviceSpec& a100) {
  bool identities = true;
  for (int n = 2; n <= 8; ++n) {
    const double d = n;
    identities &= bus_bw_factor(Collective::kAllReduce, n) == 2.0 * (d - 1.0) / d;
    for (auto op : {Collective::kAllGather, Collective::kReduceScatter, Collective::kAllToAll}) {
      identities &= bus_bw_factor(op, n) == (d - 1.0) / d;
    }
    identities &= bus_bw_factor(Collective::kReduce, n) == 1.0 && bus_bw_factor(Collective::kBroadcast, n) == 1.0;
  }
  const double payload = 32.0 * 1024 * 1024;
  const auto util = [&](const DeviceSpec& spec, int n) {
    return collective_time({Collective::kAllReduce, payload, n}, spec.interconnect).utilization;
  };
  const double mesh_ratio = util(gaudi2, 2) / util(gaudi2, 8);
  std::vector<double> sw = {util(a100, 2), util(a100, 4), util(a100, 8)};
  const auto [lo, hi] = std::minmax_element(sw.begin(), sw.end());
  const double variation = (*hi - *lo) / *hi;
  const bool ok = identities && std::abs(mesh_ratio - 1.0 / 7.0) <= 0.05 && variation < 0.10;
  return {ok, std::string(identities ? "identities exact, " : "identities BROKEN, ") +
                  fmt("mesh n2/n8 %.4f (need 0.1429 +-0.05), switched variation %.2f%% (need < 10%%)", mesh_ratio,
                      100.0 * variation)};
}

Outcome embedding(const DeviceSpec&, const DeviceSpec&) {
  const ReportTable grid = run_bundled("fig15");
  std::map<std::pair<double, double>, double> single;
  std::map<std::pair<double, double>, double> batched;
  for (const auto& row : grid.rows) {
    auto& side = text(grid, row, "layout") == "single_table" ? single : batched;
    side[{num(grid, row, "vector_bytes"), num(grid, row, "batch")}] = num(grid, row, "time_seconds");
  }
  double log_sum = 0.0;
  for (const auto& [key, t] : single) log_sum += std::log(t / batched.at(key));
  const double speedup = std::exp(log_sum / static_cast<double>(single.size()));

  const ReportTable sweep = run_bundled("fig15a");
  std::vector<double> s;
  std::vector<double> b;
  for (const auto& row : sweep.rows) {
    (text(sweep, row, "layout") == "single_table" ? s : b).push_back(num(sweep, row, "bandwidth_utilization"));
  }
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  const double variation = (*hi - *lo) / *hi;
  bool increasing = true;
  for (std::size_t i = 1; i < b.size(); ++i) increasing &= b[i] > b[i - 1];
  const bool ok = speedup >= 1.2 && speedup <= 1.9 && variation < 0.05 && increasing;
  return {ok, fmt("geomean speedup %.3f (need [1.2, 1.9]), single-table variation %.2f%% (need < 5%%)", speedup,
                  100.0 * variation) +
                  (increasing ? ", batched strictly increasing" : ", batched NOT increasing")};
}

Outcome paged_attention_criterion(const DeviceSpec& gaudi2, const DeviceSpec& a100) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::int64_t> batch(1, 64);
  std::uniform_int_distribution<std::int64_t> seq(1, 16384);
  std::uniform_int_distribution<int> log_block(0, 8);
  std::uniform_int_distribution<int> log_dim(4, 8);
  std::uniform_int_distribution<int> log_kv(0, 4);
  std::uniform_int_distribution<int> log_group(0, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  DeviceSpec specs[] = {gaudi2, a100};
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    PagedAttentionConfig cfg;
    cfg.batch = batch(rng);
    cfg.seq_len = seq(rng);
    cfg.block_size = std::int64_t{1} << log_block(rng);
    cfg.head_dim = std::int64_t{1} << log_dim(rng);
    cfg.num_kv_heads = std::int64_t{1} << log_kv(rng);
    cfg.num_query_heads = cfg.num_kv_heads << log_group(rng);
    cfg.padded_fraction = 0.99 * unit(rng);
    DeviceSpec& spec = specs[i % 2];
    spec.calibration.pipeline_overlap = unit(rng);
    if (paged_attention(PagedAttentionVariant::kBlockList, cfg, spec).time >
        paged_attention(PagedAttentionVariant::kBlockTable, cfg, spec).time) {
      ++violations;
    }
  }

  const ReportTable a = run_bundled("fig17a");
  std::vector<double> unpadded;
  for (const auto& row : a.rows) {
    if (text(a, row, "variant") == "block_list") unpadded.push_back(num(a, row, "speedup"));
  }
  const ReportTable b = run_bundled("fig17b");
  std::vector<double> sweep;
  for (const auto& row : b.rows) {
    if (text(b, row, "variant") == "block_list" && num(b, row, "padded_fraction") > 0.0) {
      sweep.push_back(num(b, row, "speedup"));
    }
  }
  bool increasing = true;
  for (std::size_t i = 1; i < sweep.size(); ++i) increasing &= sweep[i] > sweep[i - 1];
  const double at_09 = sweep.back();
  const bool ok = violations == 0 && mean(unpadded) >= 5.0 && mean(unpadded) <= 10.0 && at_09 >= 39.0 &&
                  at_09 <= 72.0 && increasing;
  return {ok, fmt("dominance violations %.0f/10000, z=0 mean speedup %.3f (need [5, 10]), z=0.9 speedup %.2f "
                  "(need [39, 72])",
                  violations, mean(unpadded), at_09) +
                  (increasing ? ", strictly increasing in z" : ", NOT increasing in z")};
}

Outcome roofline_dominance(const DeviceSpec&, const DeviceSpec&) {
  std::map<std::string, DeviceSpec> devices;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::string worst;
  for (const auto& preset : list_scenario_presets()) {
    const ScenarioSpec s = load_scenario_file(resolve_scenario_path(preset.name));
    const ReportTable t = run_scenario(s);
    const auto has = [&](const char* c) { return std::find(t.header.begin(), t.header.end(), c) != t.header.end(); };
    for (const auto& row : t.rows) {
      const std::string name = text(t, row, "device");
      if (!devices.count(name)) devices.emplace(name, load_device(name));
      const DeviceSpec& spec = devices.at(name);
      double achieved = 0.0;
      double roof = 0.0;
      if (has("achieved_flops") && has("operational_intensity")) {
        const Engine engine = s.kind == ScenarioKind::kStreamSweep ? Engine::kVector : Engine::kMatrix;
        const double oi = num(t, row, "operational_intensity");
        achieved = num(t, row, "achieved_flops");
        roof = attainable_flops(spec, std::isnan(oi) ? std::numeric_limits<double>::infinity() : oi, engine).attainable;
      } else if (has("useful_bytes_per_sec")) {
        achieved = num(t, row, "useful_bytes_per_sec");
        roof = spec.memory.peak_bandwidth;
      } else if (has("achieved_bandwidth")) {
        achieved = num(t, row, "achieved_bandwidth");
        roof = spec.memory.peak_bandwidth;
      } else if (has("bus_bandwidth")) {
        achieved = num(t, row, "bus_bandwidth");
        roof = per_device_bandwidth(spec.interconnect, spec.interconnect.node_size);
      } else {
        continue;
      }
      ++checked;
      if (!(achieved <= roof * (1.0 + 1e-12))) {
        ++violations;
        worst = preset.name;
      }
    }
  }
  return {violations == 0 && checked > 0,
          fmt("%.0f rows checked, %.0f above the roof", static_cast<double>(checked), static_cast<double>(violations)) +
              (worst.empty() ? "" : " (e.g. " + worst + ")")};
}

Outcome determinism(const DeviceSpec&, const DeviceSpec&) {
  std::size_t scenarios = 0;
  std::size_t differing = 0;
  for (const auto& preset : list_scenario_presets()) {
    const ScenarioSpec s = load_scenario_file(resolve_scenario_path(preset.name));
    for (auto format : {ReportFormat::kCsv, ReportFormat::kJson}) {
      if (emit_report(run_scenario(s), format) != emit_report(run_scenario(s), format)) ++differing;
    }
    ++scenarios;
  }
  return {differing == 0 && scenarios > 0,
          fmt("%.0f scenarios x {csv, json}, %.0f differing", static_cast<double>(scenarios),
              static_cast<double>(differing))};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome(const DeviceSpec&, const DeviceSpec&)>>> criteria = {
      {"MME peak", mme_peak},
      {"configurability gain", configurability_gain},
      {"geometry-selection oracle", selection_oracle},
      {"STREAM compute mix", stream_mix},
      {"STREAM plateaus", stream_plateaus},
      {"gather model", gather_model},
      {"collectives", collectives},
      {"embedding", embedding},
      {"PagedAttention", paged_attention_criterion},
      {"roofline dominance", roofline_dominance},
      {"determinism", determinism},
  };

  DeviceSpec gaudi2;
  DeviceSpec a100;
  try {
    gaudi2 = load_device("gaudi2");
    a100 = load_device("a100");
  } catch (const std::exception& e) {
    std::printf("FAIL  cannot load bundled devices: %s\n", e.what());
    return 1;
  }

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second(gaudi2, a100);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s  %2zu %-26s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
