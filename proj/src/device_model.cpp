// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#include "npuperf/device_model.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "npuperf/error.hpp"

namespace npuperf {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(Engine engine) {
  return engine == Engine::kMatrix ? "matrix" : "vector";
}

std::string_view to_string(Bound bound) {
  return bound == Bound::kCompute ? "compute" : "memory";
}

std::string_view to_string(FillModel model) {
  return model == FillModel::kNone ? "none" : "h_plus_w";
}

std::int64_t MacGeometry::active_macs() const {
  std::int64_t total = 0;
  for (const auto& unit : units) total += unit.macs();
  return total;
}

namespace {

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

// Reads fields out of one JSON object and rejects anything left unread.
class Section {
 public:
  Section(const ordered_json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail(path_, "expected an object");
  }

  [[noreturn]] static void fail(const std::string& field, const std::string& what) {
    throw ValidationError("device spec: field '" + field + "': " + what);
  }

  std::string field(std::string_view key) const { return path_ + "." + std::string(key); }

  bool has(std::string_view key) const { return node_.contains(std::string(key)); }

  const ordered_json& raw(std::string_view key) {
    auto it = node_.find(std::string(key));
    if (it == node_.end()) fail(field(key), "missing");
    seen_.insert(std::string(key));
    return *it;
  }

  double number(std::string_view key) {
    const auto& v = raw(key);
    if (!v.is_number()) fail(field(key), "expected a number");
    return v.get<double>();
  }

  std::int64_t integer(std::string_view key) {
    const auto& v = raw(key);
    if (!v.is_number_integer()) fail(field(key), "expected an integer");
    return v.get<std::int64_t>();
  }

  std::string text(std::string_view key) {
    const auto& v = raw(key);
    if (!v.is_string()) fail(field(key), "expected a string");
    return v.get<std::string>();
  }

  Section child(std::string_view key) { return Section(raw(key), field(key)); }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) fail(field(it.key()), "unknown key");
    }
  }

 private:
  const ordered_json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

MacGeometry parse_geometry(const ordered_json& node, const std::string& path) {
  Section s(node, path);
  MacGeometry g;
  g.label = s.text("label");
  const std::int64_t count = s.integer("count");
  const std::int64_t height = s.integer("height");
  const std::int64_t width = s.integer("width");
  s.finish();
  if (count < 1) Section::fail(path + ".count", "must be >= 1");
  g.units.assign(static_cast<std::size_t>(count), MacUnit{height, width});
  return g;
}

MatrixEngineSpec parse_matrix_engine(Section s) {
  MatrixEngineSpec m;
  m.mac_budget = s.integer("mac_budget");
  const auto& list = s.raw("geometries");
  if (!list.is_array()) Section::fail(s.field("geometries"), "expected an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    m.geometries.push_back(parse_geometry(list[i], s.field("geometries") + "[" + std::to_string(i) + "]"));
  }
  s.finish();
  return m;
}

VectorEngineSpec parse_vector_engine(Section s) {
  VectorEngineSpec v;
  v.core_count = static_cast<int>(s.integer("core_count"));
  v.vector_width_bytes = static_cast<int>(s.integer("vector_width_bytes"));
  v.instr_latency_cycles = static_cast<int>(s.integer("instr_latency_cycles"));
  Section slots = s.child("issue_slots");
  v.issue_slots.load_store_slots = static_cast<int>(slots.integer("load_store_slots"));
  v.issue_slots.vector_slots = static_cast<int>(slots.integer("vector_slots"));
  slots.finish();
  v.aggregate_peak_flops = s.number("aggregate_peak_flops");
  s.finish();
  return v;
}

MemorySpec parse_memory(Section s) {
  MemorySpec m;
  m.peak_bandwidth = s.number("peak_bandwidth");
  m.capacity_bytes = s.number("capacity_bytes");
  m.min_access_granularity = s.integer("min_access_granularity");
  m.random_access_beta = s.number("random_access_beta");
  if (s.has("scatter_beta")) m.scatter_beta = s.number("scatter_beta");
  m.small_transfer_overhead_bytes = s.number("small_transfer_overhead_bytes");
  m.mean_latency = s.number("mean_latency");
  s.finish();
  return m;
}

TopologySpec parse_topology(Section s) {
  TopologySpec t;
  const std::string variant = s.text("variant");
  if (variant == "p2p_mesh") {
    P2pMesh mesh;
    mesh.links_per_pair = static_cast<int>(s.integer("links_per_pair"));
    mesh.link_bandwidth = s.number("link_bandwidth");
    mesh.total_ports = static_cast<int>(s.integer("total_ports"));
    t.variant = mesh;
  } else if (variant == "switched") {
    t.variant = Switched{s.number("per_device_bandwidth")};
  } else {
    Section::fail(s.field("variant"), "unknown topology variant '" + variant + "'");
  }
  t.alpha_latency = s.number("alpha_latency");
  t.node_size = static_cast<int>(s.integer("node_size"));
  s.finish();
  return t;
}

CalibrationSpec parse_calibration(Section s) {
  CalibrationSpec c;
  c.stream_efficiency = s.number("stream_efficiency");
  c.kernel_launch_overhead = s.number("kernel_launch_overhead");
  const std::string fill = s.text("mme_fill_model");
  if (fill == "none") {
    c.mme_fill_model = FillModel::kNone;
  } else if (fill == "h_plus_w") {
    c.mme_fill_model = FillModel::kHeightPlusWidth;
  } else {
    Section::fail(s.field("mme_fill_model"), "expected 'none' or 'h_plus_w'");
  }
  c.pipeline_overlap = s.number("pipeline_overlap");
  c.matrix_stream_efficiency = s.number("matrix_stream_efficiency");
  s.finish();
  return c;
}

void require_positive(double v, const std::string& field) {
  if (!(v > 0.0) || !std::isfinite(v)) Section::fail(field, "must be positive");
}

void require_fraction(double v, const std::string& field, bool allow_zero) {
  const bool ok = allow_zero ? (v >= 0.0 && v <= 1.0) : (v > 0.0 && v <= 1.0);
  if (!ok) Section::fail(field, allow_zero ? "must lie in [0, 1]" : "must lie in (0, 1]");
}

}  // namespace

void validate(const DeviceSpec& spec) {
  if (spec.name.empty()) Section::fail("name", "must be non-empty");
  require_positive(spec.matrix_peak_flops, "matrix_peak_flops");

  const auto& me = spec.matrix_engine;
  if (me.mac_budget < 1) Section::fail("matrix_engine.mac_budget", "must be positive");
  if (me.geometries.empty()) Section::fail("matrix_engine.geometries", "must be non-empty");
  for (const auto& g : me.geometries) {
    const std::string f = "matrix_engine.geometries[" + g.label + "]";
    if (g.units.empty()) Section::fail(f, "needs at least one unit");
    for (const auto& u : g.units) {
      if (u.height < 1 || u.width < 1) Section::fail(f, "unit dimensions must be >= 1");
      if (u != g.units.front()) Section::fail(f, "units must share one shape");
    }
    if (g.active_macs() > me.mac_budget) Section::fail(f, "exceeds the MAC budget");
  }

  const auto& ve = spec.vector_engine;
  if (ve.core_count < 1) Section::fail("vector_engine.core_count", "must be >= 1");
  if (!is_power_of_two(ve.vector_width_bytes)) {
    Section::fail("vector_engine.vector_width_bytes", "must be a power of two");
  }
  if (ve.instr_latency_cycles < 1) Section::fail("vector_engine.instr_latency_cycles", "must be >= 1");
  if (ve.issue_slots.load_store_slots < 1) {
    Section::fail("vector_engine.issue_slots.load_store_slots", "must be >= 1");
  }
  if (ve.issue_slots.vector_slots < 1) Section::fail("vector_engine.issue_slots.vector_slots", "must be >= 1");
  require_positive(ve.aggregate_peak_flops, "vector_engine.aggregate_peak_flops");

  const auto& mem = spec.memory;
  require_positive(mem.peak_bandwidth, "memory.peak_bandwidth");
  require_positive(mem.capacity_bytes, "memory.capacity_bytes");
  if (!is_power_of_two(mem.min_access_granularity)) {
    Section::fail("memory.min_access_granularity", "must be a power of two");
  }
  require_fraction(mem.random_access_beta, "memory.random_access_beta", false);
  if (mem.scatter_beta) require_fraction(*mem.scatter_beta, "memory.scatter_beta", false);
  if (!(mem.small_transfer_overhead_bytes >= 0.0)) {
    Section::fail("memory.small_transfer_overhead_bytes", "must be >= 0");
  }
  require_positive(mem.mean_latency, "memory.mean_latency");

  const auto& topo = spec.interconnect;
  if (topo.node_size < 2) Section::fail("interconnect.node_size", "must be >= 2");
  if (!(topo.alpha_latency >= 0.0)) Section::fail("interconnect.alpha_latency", "must be >= 0");
  if (const auto* mesh = std::get_if<P2pMesh>(&topo.variant)) {
    if (mesh->links_per_pair < 1) Section::fail("interconnect.links_per_pair", "must be >= 1");
    require_positive(mesh->link_bandwidth, "interconnect.link_bandwidth");
    if (mesh->links_per_pair * (topo.node_size - 1) > mesh->total_ports) {
      Section::fail("interconnect.total_ports", "too few ports for a full mesh");
    }
  } else {
    require_positive(std::get<Switched>(topo.variant).per_device_bandwidth, "interconnect.per_device_bandwidth");
  }

  const auto& cal = spec.calibration;
  require_fraction(cal.stream_efficiency, "calibration.stream_efficiency", false);
  require_fraction(cal.matrix_stream_efficiency, "calibration.matrix_stream_efficiency", false);
  require_fraction(cal.pipeline_overlap, "calibration.pipeline_overlap", true);
  if (!(cal.kernel_launch_overhead >= 0.0)) Section::fail("calibration.kernel_launch_overhead", "must be >= 0");
}

DeviceSpec load_device_spec(std::string_view document) {
  ordered_json root;
  try {
    root = ordered_json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("device spec: malformed document: ") + e.what());
  }
  Section s(root, "spec");
  DeviceSpec spec;
  spec.name = s.text("name");
  spec.matrix_peak_flops = s.number("matrix_peak_flops");
  spec.matrix_engine = parse_matrix_engine(s.child("matrix_engine"));
  spec.vector_engine = parse_vector_engine(s.child("vector_engine"));
  spec.memory = parse_memory(s.child("memory"));
  spec.interconnect = parse_topology(s.child("interconnect"));
  spec.calibration = parse_calibration(s.child("calibration"));
  s.finish();
  validate(spec);
  return spec;
}

DeviceSpec load_device_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open device spec '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return load_device_spec(text.str());
}

std::string dump_device_spec(const DeviceSpec& spec) {
  ordered_json root;
  root["name"] = spec.name;
  root["matrix_peak_flops"] = spec.matrix_peak_flops;

  ordered_json geometries = ordered_json::array();
  for (const auto& g : spec.matrix_engine.geometries) {
    ordered_json entry;
    entry["label"] = g.label;
    entry["count"] = static_cast<std::int64_t>(g.units.size());
    entry["height"] = g.units.empty() ? 0 : g.units.front().height;
    entry["width"] = g.units.empty() ? 0 : g.units.front().width;
    geometries.push_back(std::move(entry));
  }
  root["matrix_engine"]["mac_budget"] = spec.matrix_engine.mac_budget;
  root["matrix_engine"]["geometries"] = std::move(geometries);

  const auto& ve = spec.vector_engine;
  auto& v = root["vector_engine"];
  v["core_count"] = ve.core_count;
  v["vector_width_bytes"] = ve.vector_width_bytes;
  v["instr_latency_cycles"] = ve.instr_latency_cycles;
  v["issue_slots"]["load_store_slots"] = ve.issue_slots.load_store_slots;
  v["issue_slots"]["vector_slots"] = ve.issue_slots.vector_slots;
  v["aggregate_peak_flops"] = ve.aggregate_peak_flops;

  const auto& mem = spec.memory;
  auto& m = root["memory"];
  m["peak_bandwidth"] = mem.peak_bandwidth;
  m["capacity_bytes"] = mem.capacity_bytes;
  m["min_access_granularity"] = mem.min_access_granularity;
  m["random_access_beta"] = mem.random_access_beta;
  if (mem.scatter_beta) m["scatter_beta"] = *mem.scatter_beta;
  m["small_transfer_overhead_bytes"] = mem.small_transfer_overhead_bytes;
  m["mean_latency"] = mem.mean_latency;

  const auto& topo = spec.interconnect;
  auto& t = root["interconnect"];
  if (const auto* mesh = std::get_if<P2pMesh>(&topo.variant)) {
    t["variant"] = "p2p_mesh";
    t["links_per_pair"] = mesh->links_per_pair;
    t["link_bandwidth"] = mesh->link_bandwidth;
    t["total_ports"] = mesh->total_ports;
  } else {
    t["variant"] = "switched";
    t["per_device_bandwidth"] = std::get<Switched>(topo.variant).per_device_bandwidth;
  }
  t["alpha_latency"] = topo.alpha_latency;
  t["node_size"] = topo.node_size;

  const auto& cal = spec.calibration;
  auto& c = root["calibration"];
  c["stream_efficiency"] = cal.stream_efficiency;
  c["kernel_launch_overhead"] = cal.kernel_launch_overhead;
  c["mme_fill_model"] = std::string(to_string(cal.mme_fill_model));
  c["pipeline_overlap"] = cal.pipeline_overlap;
  c["matrix_stream_efficiency"] = cal.matrix_stream_efficiency;

  return root.dump(2) + "\n";
}

double engine_peak(const DeviceSpec& spec, Engine engine) {
  return engine == Engine::kMatrix ? spec.matrix_peak_flops : spec.vector_engine.aggregate_peak_flops;
}

RooflinePoint attainable_flops(const DeviceSpec& spec, double oi, Engine engine) {
  if (std::isnan(oi) || oi < 0.0) throw ValidationError("attainable_flops: operational intensity must be >= 0");
  const double peak = engine_peak(spec, engine);
  RooflinePoint p;
  p.operational_intensity = oi;
  if (std::isinf(oi)) {
    p.attainable = peak;
    p.bound = Bound::kCompute;
    return p;
  }
  const double memory_roof = oi * spec.memory.peak_bandwidth;
  if (peak <= memory_roof) {
    p.attainable = peak;
    p.bound = Bound::kCompute;
  } else {
    p.attainable = memory_roof;
    p.bound = Bound::kMemory;
  }
  return p;
}

}  // namespace npuperf
