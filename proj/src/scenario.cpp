// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#include "npuperf/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "npuperf/error.hpp"
#include "npuperf/interconnect_model.hpp"
#include "npuperf/memory_model.hpp"
#include "npuperf/mme_model.hpp"
#include "npuperf/operator_models.hpp"
#include "npuperf/spec_library.hpp"
#include "npuperf/tpc_model.hpp"

namespace npuperf {

namespace {

using nlohmann::ordered_json;

enum class ParamType { kInt, kReal, kText };

constexpr std::size_t kMaxAxisValues = 1'000'000;

struct Metric {
  std::string name;
  bool text = false;
};

// Axis values for one row, by axis name.
class Params {
 public:
  explicit Params(std::map<std::string, Value> values) : values_(std::move(values)) {}

  bool has(const std::string& name) const { return values_.count(name) > 0; }

  std::int64_t integer(const std::string& name, std::int64_t fallback) const {
    auto it = values_.find(name);
    return it == values_.end() ? fallback : std::get<std::int64_t>(it->second);
  }

  double real(const std::string& name, double fallback) const {
    auto it = values_.find(name);
    return it == values_.end() ? fallback : std::get<double>(it->second);
  }

  std::string text(const std::string& name, const std::string& fallback) const {
    auto it = values_.find(name);
    return it == values_.end() ? fallback : std::get<std::string>(it->second);
  }

 private:
  std::map<std::string, Value> values_;
};

using Evaluator = std::function<std::vector<Value>(const Params&, const DeviceSpec&)>;

struct KindInfo {
  std::map<std::string, ParamType> params;
  std::vector<Metric> metrics;
  Evaluator evaluate;
};

Value real_or_null(double v) { return std::isfinite(v) ? Value{v} : Value{}; }

std::vector<Value> eval_gemm(const Params& p, const DeviceSpec& spec) {
  GemmShape shape;
  const std::int64_t size = p.integer("size", 0);
  shape.m = p.has("size") ? size : p.integer("m", 0);
  shape.k = p.has("size") ? size : p.integer("k", 0);
  shape.n = p.has("size") ? size : p.integer("n", 0);
  shape.element_bytes = static_cast<int>(p.integer("element_bytes", 2));
  const std::int64_t batch = p.integer("batch", 1);

  const std::string mode_text = p.text("mode", "configurable");
  GemmMode mode = Configurable{};
  if (mode_text.rfind("fixed:", 0) == 0) {
    mode = Fixed{geometry_from_label(mode_text.substr(6), spec)};
  } else if (mode_text != "configurable") {
    throw ValidationError("gemm mode must be 'configurable' or 'fixed:<geometry>', got '" + mode_text + "'");
  }

  const GemmResult r = gemm_perf(shape, spec, mode, batch);
  const RooflinePoint roof = attainable_flops(spec, r.operational_intensity, Engine::kMatrix);
  return {r.geometry_used.label, r.cycles, r.utilization, r.achieved_flops, r.operational_intensity,
          roof.attainable, std::string(to_string(r.bound)), r.time_seconds};
}

std::vector<Value> eval_stream(const Params& p, const DeviceSpec& spec) {
  VectorKernelSpec kernel = kernel_preset(stream_kernel_from_string(p.text("kernel", "TRIAD")));
  kernel.access_bytes = p.integer("access_bytes", kernel.access_bytes);
  kernel.unroll = static_cast<int>(p.integer("unroll", kernel.unroll));
  kernel.element_bytes = static_cast<int>(p.integer("element_bytes", kernel.element_bytes));
  kernel.extra_ops_per_element = p.real("extra_ops_per_element", 0.0);
  const auto cores = static_cast<int>(p.integer("cores", spec.vector_engine.core_count));

  const KernelThroughput t = multi_core_throughput(kernel, cores, spec);
  const RooflinePoint roof = attainable_flops(spec, t.oi, Engine::kVector);
  const double flops_per_element = t.oi * kernel.arrays_touched * kernel.element_bytes;
  return {t.flops,
          t.bytes_per_sec,
          std::string(to_string(t.bound)),
          real_or_null(t.oi),
          roof.attainable,
          t.flops / spec.vector_engine.aggregate_peak_flops,
          kernel.total_elements * flops_per_element / t.flops};
}

std::vector<Value> eval_gather(const Params& p, const DeviceSpec& spec) {
  GatherWorkload w;
  w.vector_bytes = p.integer("vector_bytes", w.vector_bytes);
  w.fraction_accessed = p.real("fraction_accessed", w.fraction_accessed);
  w.num_vectors = p.real("num_vectors", w.num_vectors);
  w.direction = direction_from_string(p.text("direction", "gather"));
  w.pattern = access_pattern_from_string(p.text("pattern", "random"));
  const BandwidthResult r = gather_scatter_utilization(w, spec);
  return {r.utilization, r.useful_bytes_per_sec, r.fetched_bytes_per_sec,
          access_efficiency(w.vector_bytes, spec.memory.min_access_granularity), r.time_seconds};
}

std::vector<Value> eval_collective(const Params& p, const DeviceSpec& spec) {
  CollectiveRequest req;
  req.op = collective_from_string(p.text("collective", "AllReduce"));
  req.payload_bytes = p.real("payload_bytes", 0.0);
  req.participants = static_cast<int>(p.integer("participants", spec.interconnect.node_size));
  const CollectiveResult r = collective_time(req, spec.interconnect);
  return {r.time, r.alg_bandwidth, r.bus_bandwidth, r.utilization,
          per_device_bandwidth(spec.interconnect, req.participants)};
}

std::vector<Value> eval_embedding(const Params& p, const DeviceSpec& spec) {
  EmbeddingConfig cfg;
  cfg.num_tables = p.integer("num_tables", cfg.num_tables);
  cfg.batch = p.integer("batch", cfg.batch);
  cfg.vector_bytes = p.integer("vector_bytes", cfg.vector_bytes);
  cfg.pooling_factor = p.integer("pooling_factor", cfg.pooling_factor);
  cfg.unroll = static_cast<int>(p.integer("unroll", cfg.unroll));
  cfg.rows_per_table = p.integer("rows_per_table", cfg.rows_per_table);
  const EmbeddingResult r =
      embedding_lookup(embedding_layout_from_string(p.text("layout", "batched_table")), cfg, spec);
  return {r.time, r.bandwidth_utilization, r.launches, r.achieved_bandwidth, r.useful_bytes};
}

std::vector<Value> eval_paged_attention(const Params& p, const DeviceSpec& spec) {
  PagedAttentionConfig cfg;
  cfg.batch = p.integer("batch", cfg.batch);
  cfg.seq_len = p.integer("seq_len", cfg.seq_len);
  cfg.block_size = p.integer("block_size", cfg.block_size);
  cfg.head_dim = p.integer("head_dim", cfg.head_dim);
  cfg.num_query_heads = p.integer("num_query_heads", cfg.num_query_heads);
  cfg.num_kv_heads = p.integer("num_kv_heads", cfg.num_kv_heads);
  cfg.element_bytes = static_cast<int>(p.integer("element_bytes", cfg.element_bytes));
  cfg.padded_fraction = p.real("padded_fraction", cfg.padded_fraction);
  const auto variant = paged_attention_variant_from_string(p.text("variant", "block_list"));

  const PagedAttentionResult r = paged_attention(variant, cfg, spec);
  const double baseline = variant == PagedAttentionVariant::kBlockTable
                              ? r.time
                              : paged_attention(PagedAttentionVariant::kBlockTable, cfg, spec).time;
  const RooflinePoint roof = attainable_flops(spec, r.operational_intensity, Engine::kMatrix);
  return {r.time,           r.gather_time,   r.gemm_time,
          r.copy_time,      r.overlap_achieved, r.tokens_per_sec,
          baseline / r.time, r.achieved_flops, r.operational_intensity,
          roof.attainable};
}

const KindInfo& kind_info(ScenarioKind kind) {
  using T = ParamType;
  static const std::map<ScenarioKind, KindInfo> table = {
      {ScenarioKind::kGemmSweep,
       {{{"m", T::kInt},
         {"k", T::kInt},
         {"n", T::kInt},
         {"size", T::kInt},
         {"mode", T::kText},
         {"element_bytes", T::kInt},
         {"batch", T::kInt}},
        {{"geometry", true},
         {"cycles"},
         {"utilization"},
         {"achieved_flops"},
         {"operational_intensity"},
         {"attainable_flops"},
         {"bound", true},
         {"time_seconds"}},
        eval_gemm}},
      {ScenarioKind::kStreamSweep,
       {{{"kernel", T::kText},
         {"access_bytes", T::kInt},
         {"unroll", T::kInt},
         {"cores", T::kInt},
         {"extra_ops_per_element", T::kReal},
         {"element_bytes", T::kInt}},
        {{"achieved_flops"},
         {"bytes_per_sec"},
         {"bound", true},
         {"operational_intensity"},
         {"attainable_flops"},
         {"compute_fraction"},
         {"time_seconds"}},
        eval_stream}},
      {ScenarioKind::kGatherSweep,
       {{{"vector_bytes", T::kInt},
         {"fraction_accessed", T::kReal},
         {"num_vectors", T::kReal},
         {"direction", T::kText},
         {"pattern", T::kText}},
        {{"utilization"},
         {"useful_bytes_per_sec"},
         {"fetched_bytes_per_sec"},
         {"access_efficiency"},
         {"time_seconds"}},
        eval_gather}},
      {ScenarioKind::kCollectiveSweep,
       {{{"collective", T::kText}, {"payload_bytes", T::kReal}, {"participants", T::kInt}},
        {{"time_seconds"}, {"alg_bandwidth"}, {"bus_bandwidth"}, {"utilization"}, {"per_device_bandwidth"}},
        eval_collective}},
      {ScenarioKind::kEmbeddingSweep,
       {{{"layout", T::kText},
         {"num_tables", T::kInt},
         {"batch", T::kInt},
         {"vector_bytes", T::kInt},
         {"pooling_factor", T::kInt},
         {"unroll", T::kInt},
         {"rows_per_table", T::kInt}},
        {{"time_seconds"}, {"bandwidth_utilization"}, {"launches"}, {"achieved_bandwidth"}, {"useful_bytes"}},
        eval_embedding}},
      {ScenarioKind::kPagedAttentionSweep,
       {{{"variant", T::kText},
         {"batch", T::kInt},
         {"seq_len", T::kInt},
         {"block_size", T::kInt},
         {"head_dim", T::kInt},
         {"num_query_heads", T::kInt},
         {"num_kv_heads", T::kInt},
         {"element_bytes", T::kInt},
         {"padded_fraction", T::kReal}},
        {{"time_seconds"},
         {"gather_time"},
         {"gemm_time"},
         {"copy_time"},
         {"overlap_achieved"},
         {"tokens_per_sec"},
         {"speedup"},
         {"achieved_flops"},
         {"operational_intensity"},
         {"attainable_flops"}},
        eval_paged_attention}},
  };
  return table.at(kind);
}

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ValidationError("scenario: field '" + field + "': " + what);
}

// Converts one JSON axis value to the axis type, rejecting mismatches.
Value convert(const ordered_json& v, ParamType type, const std::string& field) {
  switch (type) {
    case ParamType::kInt:
      if (!v.is_number_integer()) fail(field, "expected an integer");
      return v.get<std::int64_t>();
    case ParamType::kReal:
      if (!v.is_number()) fail(field, "expected a number");
      return v.get<double>();
    case ParamType::kText:
      if (!v.is_string()) fail(field, "expected a string");
      return v.get<std::string>();
  }
  fail(field, "unsupported type");
}

std::vector<Value> expand_range(const ordered_json& range, ParamType type, const std::string& field) {
  if (!range.is_object()) fail(field, "expected an object");
  for (auto it = range.begin(); it != range.end(); ++it) {
    if (it.key() != "start" && it.key() != "stop" && it.key() != "step" && it.key() != "factor") {
      fail(field + "." + it.key(), "unknown key");
    }
  }
  if (type == ParamType::kText) fail(field, "ranges need a numeric axis");
  if (!range.contains("start") || !range.contains("stop")) fail(field, "range needs start and stop");
  if (range.contains("step") == range.contains("factor")) fail(field, "range needs exactly one of step or factor");

  const bool geometric = range.contains("factor");
  const auto& inc = geometric ? range["factor"] : range["step"];
  const std::string inc_field = field + (geometric ? ".factor" : ".step");
  std::vector<Value> out;
  if (type == ParamType::kInt) {
    const auto start = convert(range["start"], type, field + ".start");
    const auto stop = convert(range["stop"], type, field + ".stop");
    const auto step = convert(inc, type, inc_field);
    std::int64_t v = std::get<std::int64_t>(start);
    const std::int64_t last = std::get<std::int64_t>(stop);
    const std::int64_t s = std::get<std::int64_t>(step);
    if (geometric ? (s < 2 || v < 1) : s < 1) fail(inc_field, "range would not advance");
    for (; v <= last; v = geometric ? v * s : v + s) {
      out.emplace_back(v);
      if (out.size() > kMaxAxisValues) fail(field, "range too long");
    }
    return out;
  }
  const double start = std::get<double>(convert(range["start"], type, field + ".start"));
  const double stop = std::get<double>(convert(range["stop"], type, field + ".stop"));
  const double step = std::get<double>(convert(inc, type, inc_field));
  if (geometric ? (!(step > 1.0) || !(start > 0.0)) : !(step > 0.0)) fail(inc_field, "range would not advance");
  // Index-based generation avoids accumulating rounding error.
  const double slack = 1e-9 * std::max(std::abs(stop), 1.0);
  for (std::size_t i = 0;; ++i) {
    const double v = geometric ? start * std::pow(step, static_cast<double>(i)) : start + step * static_cast<double>(i);
    if (v > stop + slack) break;
    out.emplace_back(v);
    if (out.size() > kMaxAxisValues) fail(field, "range too long");
  }
  return out;
}

std::vector<Metric> selected_metrics(const ScenarioSpec& scenario) {
  const auto& all = kind_info(scenario.kind).metrics;
  if (scenario.columns.empty()) return all;
  std::vector<Metric> out;
  for (const auto& name : scenario.columns) {
    auto it = std::find_if(all.begin(), all.end(), [&](const Metric& m) { return m.name == name; });
    if (it == all.end()) fail("columns", "unknown column '" + name + "' for " + std::string(to_string(scenario.kind)));
    out.push_back(*it);
  }
  return out;
}

std::vector<std::size_t> metric_indices(const ScenarioSpec& scenario, const std::vector<Metric>& chosen) {
  const auto& all = kind_info(scenario.kind).metrics;
  std::vector<std::size_t> idx;
  for (const auto& m : chosen) {
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (all[i].name == m.name) idx.push_back(i);
    }
  }
  return idx;
}

// Axis values of row `index` in declaration-order cartesian product.
std::vector<Value> axis_values(const ScenarioSpec& scenario, std::size_t index) {
  std::vector<Value> out(scenario.axes.size());
  for (std::size_t a = scenario.axes.size(); a-- > 0;) {
    const auto& values = scenario.axes[a].values;
    out[a] = values[index % values.size()];
    index /= values.size();
  }
  return out;
}

std::vector<Value> evaluate_row(const ScenarioSpec& scenario, const std::vector<Value>& axes,
                                const std::vector<std::size_t>& metrics, const DeviceSpec& spec) {
  std::map<std::string, Value> named;
  for (std::size_t a = 0; a < axes.size(); ++a) named[scenario.axes[a].name] = axes[a];
  const auto all = kind_info(scenario.kind).evaluate(Params(std::move(named)), spec);
  std::vector<Value> out;
  out.reserve(metrics.size());
  for (auto i : metrics) out.push_back(all[i]);
  return out;
}

// Runs `count` independent jobs on a small thread pool.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job) {
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8) < count
          ? std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8)
          : count;
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

ordered_json device_metadata(const DeviceSpec& spec) {
  ordered_json d;
  d["name"] = spec.name;
  d["sha256"] = spec_sha256(spec);
  d["calibration"] = ordered_json::parse(dump_device_spec(spec))["calibration"];
  return d;
}

ordered_json scenario_metadata(const ScenarioSpec& scenario) {
  ordered_json s;
  s["name"] = scenario.name;
  s["description"] = scenario.description;
  s["kind"] = std::string(to_string(scenario.kind));
  return s;
}

double geometric_mean(const std::vector<double>& values) {
  double log_sum = 0.0;
  std::size_t n = 0;
  for (double v : values) {
    if (std::isfinite(v) && v > 0.0) {
      log_sum += std::log(v);
      ++n;
    }
  }
  return n == 0 ? std::nan("") : std::exp(log_sum / static_cast<double>(n));
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kGemmSweep:
      return "gemm_sweep";
    case ScenarioKind::kStreamSweep:
      return "stream_sweep";
    case ScenarioKind::kGatherSweep:
      return "gather_sweep";
    case ScenarioKind::kCollectiveSweep:
      return "collective_sweep";
    case ScenarioKind::kEmbeddingSweep:
      return "embedding_sweep";
    case ScenarioKind::kPagedAttentionSweep:
      return "paged_attention_sweep";
  }
  return "?";
}

ScenarioKind scenario_kind_from_string(std::string_view name) {
  for (auto kind : {ScenarioKind::kGemmSweep, ScenarioKind::kStreamSweep, ScenarioKind::kGatherSweep,
                    ScenarioKind::kCollectiveSweep, ScenarioKind::kEmbeddingSweep,
                    ScenarioKind::kPagedAttentionSweep}) {
    if (to_string(kind) == name) return kind;
  }
  throw ValidationError("scenario: unknown kind '" + std::string(name) + "'");
}

ScenarioSpec load_scenario(std::string_view document) {
  ordered_json root;
  try {
    root = ordered_json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("scenario: malformed document: ") + e.what());
  }
  if (!root.is_object()) fail("scenario", "expected an object");
  static const std::set<std::string> known = {"name", "description", "kind", "devices", "axes", "columns"};
  for (auto it = root.begin(); it != root.end(); ++it) {
    if (!known.count(it.key())) fail(it.key(), "unknown key");
  }

  const auto text = [&](const char* key, bool required) -> std::string {
    if (!root.contains(key)) {
      if (required) fail(key, "missing");
      return {};
    }
    if (!root[key].is_string()) fail(key, "expected a string");
    return root[key].get<std::string>();
  };
  const auto strings = [&](const char* key) {
    std::vector<std::string> out;
    if (!root.contains(key)) return out;
    if (!root[key].is_array()) fail(key, "expected an array of strings");
    for (const auto& v : root[key]) {
      if (!v.is_string()) fail(key, "expected an array of strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  };

  ScenarioSpec s;
  s.name = text("name", true);
  s.description = text("description", false);
  s.kind = scenario_kind_from_string(text("kind", true));
  s.devices = strings("devices");
  s.columns = strings("columns");

  if (!root.contains("axes")) fail("axes", "missing");
  const auto& axes = root["axes"];
  if (!axes.is_array()) fail("axes", "expected an array");
  const auto& params = kind_info(s.kind).params;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const std::string field = "axes[" + std::to_string(i) + "]";
    const auto& node = axes[i];
    if (!node.is_object()) fail(field, "expected an object");
    for (auto it = node.begin(); it != node.end(); ++it) {
      if (it.key() != "name" && it.key() != "values" && it.key() != "range") fail(field + "." + it.key(), "unknown key");
    }
    if (!node.contains("name") || !node["name"].is_string()) fail(field + ".name", "expected a string");
    Axis axis;
    axis.name = node["name"].get<std::string>();
    auto p = params.find(axis.name);
    if (p == params.end()) {
      fail(field + ".name", "'" + axis.name + "' is not a parameter of " + std::string(to_string(s.kind)));
    }
    if (node.contains("values") == node.contains("range")) fail(field, "needs exactly one of values or range");
    if (node.contains("values")) {
      const auto& values = node["values"];
      if (!values.is_array()) fail(field + ".values", "expected an array");
      for (std::size_t j = 0; j < values.size(); ++j) {
        axis.values.push_back(convert(values[j], p->second, field + ".values[" + std::to_string(j) + "]"));
      }
    } else {
      axis.values = expand_range(node["range"], p->second, field + ".range");
    }
    s.axes.push_back(std::move(axis));
  }
  validate(s);
  return s;
}

ScenarioSpec load_scenario_file(const std::filesystem::path& path) {
  return load_scenario(read_text_file(path));
}

void validate(const ScenarioSpec& scenario) {
  if (scenario.name.empty()) fail("name", "must not be empty");
  if (scenario.axes.empty()) fail("axes", "at least one axis is required");
  if (scenario.devices.size() > 2) fail("devices", "at most two devices");
  const auto& params = kind_info(scenario.kind).params;
  std::set<std::string> seen;
  for (const auto& axis : scenario.axes) {
    auto p = params.find(axis.name);
    if (p == params.end()) fail("axes", "'" + axis.name + "' is not a parameter of " + std::string(to_string(scenario.kind)));
    if (!seen.insert(axis.name).second) fail("axes", "duplicate axis '" + axis.name + "'");
    if (axis.values.empty()) fail("axes", "axis '" + axis.name + "' is empty");
    for (const auto& v : axis.values) {
      const bool ok = (p->second == ParamType::kInt && std::holds_alternative<std::int64_t>(v)) ||
                      (p->second == ParamType::kReal && std::holds_alternative<double>(v)) ||
                      (p->second == ParamType::kText && std::holds_alternative<std::string>(v));
      if (!ok) fail("axes", "axis '" + axis.name + "' has a value of the wrong type");
    }
  }
  if (scenario.kind == ScenarioKind::kGemmSweep) {
    const bool size = seen.count("size") > 0;
    const bool dims = seen.count("m") && seen.count("k") && seen.count("n");
    const bool any_dim = seen.count("m") || seen.count("k") || seen.count("n");
    if (size == any_dim || (!size && !dims)) fail("axes", "gemm sweeps need either size or all of m, k, n");
  }
  if (scenario.kind == ScenarioKind::kGatherSweep && !seen.count("vector_bytes")) {
    fail("axes", "gather sweeps need a vector_bytes axis");
  }
  if (scenario.kind == ScenarioKind::kCollectiveSweep && !seen.count("payload_bytes")) {
    fail("axes", "collective sweeps need a payload_bytes axis");
  }
  selected_metrics(scenario);
  if (row_count(scenario) > kMaxAxisValues) fail("axes", "sweep too large");
}

std::size_t row_count(const ScenarioSpec& scenario) {
  std::size_t n = 1;
  for (const auto& axis : scenario.axes) {
    if (axis.values.empty()) return 0;
    if (n > kMaxAxisValues) return n;
    n *= axis.values.size();
  }
  return n;
}

ReportTable run_scenario(const ScenarioSpec& scenario, const std::vector<DeviceSpec>& devices) {
  validate(scenario);
  if (devices.empty()) throw ValidationError("scenario '" + scenario.name + "' has no devices");
  const auto metrics = selected_metrics(scenario);
  const auto indices = metric_indices(scenario, metrics);
  const std::size_t per_device = row_count(scenario);

  ReportTable table;
  table.header.push_back("device");
  for (const auto& axis : scenario.axes) table.header.push_back(axis.name);
  for (const auto& m : metrics) table.header.push_back(m.name);

  table.rows.resize(devices.size() * per_device);
  parallel_for(table.rows.size(), [&](std::size_t i) {
    const DeviceSpec& spec = devices[i / per_device];
    auto axes = axis_values(scenario, i % per_device);
    auto values = evaluate_row(scenario, axes, indices, spec);
    std::vector<Value> row;
    row.reserve(table.header.size());
    row.emplace_back(spec.name);
    row.insert(row.end(), axes.begin(), axes.end());
    row.insert(row.end(), values.begin(), values.end());
    table.rows[i] = std::move(row);
  });

  auto& md = table.metadata;
  md["tool"] = "npuperf";
  md["version"] = NPUPERF_VERSION;
  md["scenario"] = scenario_metadata(scenario);
  md["devices"] = ordered_json::array();
  for (const auto& d : devices) md["devices"].push_back(device_metadata(d));
  md["columns"] = table.header;
  md["row_count"] = table.rows.size();
  return table;
}

ReportTable run_scenario(const ScenarioSpec& scenario) {
  if (scenario.devices.empty()) throw ValidationError("scenario '" + scenario.name + "' names no devices");
  std::vector<DeviceSpec> devices;
  for (const auto& ref : scenario.devices) devices.push_back(load_device(ref));
  return run_scenario(scenario, devices);
}

ReportTable compare_devices(const ScenarioSpec& scenario, const DeviceSpec& a, const DeviceSpec& b) {
  const ReportTable ta = run_scenario(scenario, {a});
  const ReportTable tb = run_scenario(scenario, {b});
  const auto metrics = selected_metrics(scenario);
  const std::size_t axis_count = scenario.axes.size();
  if (ta.rows.size() != tb.rows.size()) throw ValidationError("compare: mismatched axes");

  ReportTable table;
  for (const auto& axis : scenario.axes) table.header.push_back(axis.name);
  for (const auto& m : metrics) {
    table.header.push_back(m.name + "_a");
    table.header.push_back(m.name + "_b");
    if (!m.text) table.header.push_back(m.name + "_ratio");
  }

  std::vector<std::vector<double>> ratios(metrics.size());
  for (std::size_t r = 0; r < ta.rows.size(); ++r) {
    const auto& ra = ta.rows[r];
    const auto& rb = tb.rows[r];
    // Column 0 is the device name; axis columns follow.
    if (!std::equal(ra.begin() + 1, ra.begin() + 1 + static_cast<std::ptrdiff_t>(axis_count), rb.begin() + 1)) {
      throw ValidationError("compare: mismatched axes");
    }
    std::vector<Value> row(ra.begin() + 1, ra.begin() + 1 + static_cast<std::ptrdiff_t>(axis_count));
    for (std::size_t m = 0; m < metrics.size(); ++m) {
      const Value& va = ra[1 + axis_count + m];
      const Value& vb = rb[1 + axis_count + m];
      row.push_back(va);
      row.push_back(vb);
      if (!metrics[m].text) {
        const double ratio = as_double(va) / as_double(vb);
        ratios[m].push_back(ratio);
        row.push_back(real_or_null(ratio));
      }
    }
    table.rows.push_back(std::move(row));
  }

  std::vector<Value> summary(axis_count);
  summary[0] = std::string("geomean");
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    summary.emplace_back();
    summary.emplace_back();
    if (!metrics[m].text) summary.push_back(real_or_null(geometric_mean(ratios[m])));
  }
  table.rows.push_back(std::move(summary));

  auto& md = table.metadata;
  md["tool"] = "npuperf";
  md["version"] = NPUPERF_VERSION;
  md["scenario"] = scenario_metadata(scenario);
  md["devices"] = ordered_json::array({device_metadata(a), device_metadata(b)});
  md["comparison"] = {{"a", a.name}, {"b", b.name}, {"summary", "geomean"}};
  md["columns"] = table.header;
  md["row_count"] = table.rows.size();
  return table;
}

}  // namespace npuperf
