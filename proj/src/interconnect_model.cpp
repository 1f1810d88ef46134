// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#include "npuperf/interconnect_model.hpp"

#include <string>

#include "npuperf/error.hpp"

namespace npuperf {

namespace {

void check_participants(const TopologySpec& topology, int participants) {
  if (participants < 2 || participants > topology.node_size) {
    throw ValidationError("participants must lie in [2, " + std::to_string(topology.node_size) + "]");
  }
}

}  // namespace

std::string_view to_string(Collective op) {
  switch (op) {
    case Collective::kAllReduce:
      return "AllReduce";
    case Collective::kAllGather:
      return "AllGather";
    case Collective::kReduceScatter:
      return "ReduceScatter";
    case Collective::kAllToAll:
      return "AllToAll";
    case Collective::kReduce:
      return "Reduce";
    case Collective::kBroadcast:
      return "Broadcast";
  }
  return "?";
}

Collective collective_from_string(std::string_view name) {
  for (auto op : {Collective::kAllReduce, Collective::kAllGather, Collective::kReduceScatter, Collective::kAllToAll,
                  Collective::kReduce, Collective::kBroadcast}) {
    if (to_string(op) == name) return op;
  }
  throw ValidationError("unknown collective '" + std::string(name) + "'");
}

double per_device_bandwidth(const TopologySpec& topology, int participants) {
  check_participants(topology, participants);
  if (const auto* mesh = std::get_if<P2pMesh>(&topology.variant)) {
    return mesh->links_per_pair * (participants - 1) * mesh->link_bandwidth;
  }
  return std::get<Switched>(topology.variant).per_device_bandwidth;
}

double bus_bw_factor(Collective op, int participants) {
  if (participants < 2) throw ValidationError("collectives need at least 2 participants");
  const double n = participants;
  switch (op) {
    case Collective::kAllReduce:
      return 2.0 * (n - 1.0) / n;
    case Collective::kAllGather:
    case Collective::kReduceScatter:
    case Collective::kAllToAll:
      return (n - 1.0) / n;
    case Collective::kReduce:
    case Collective::kBroadcast:
      return 1.0;
  }
  return 1.0;
}

int collective_steps(Collective op, int participants) {
  return op == Collective::kAllReduce ? 2 * (participants - 1) : participants - 1;
}

double traffic_per_device(Collective op, int participants, double payload_bytes) {
  const double n = participants;
  switch (op) {
    case Collective::kAllReduce:
      return 2.0 * payload_bytes * (n - 1.0) / n;
    case Collective::kReduce:
    case Collective::kBroadcast:
      return payload_bytes;
    default:
      return payload_bytes * (n - 1.0) / n;
  }
}

CollectiveResult collective_time(const CollectiveRequest& request, const TopologySpec& topology) {
  if (!(request.payload_bytes >= 1.0)) throw ValidationError("collective payload must be >= 1 byte");
  const double bandwidth = per_device_bandwidth(topology, request.participants);
  CollectiveResult r;
  r.time = collective_steps(request.op, request.participants) * topology.alpha_latency +
           traffic_per_device(request.op, request.participants, request.payload_bytes) / bandwidth;
  r.alg_bandwidth = request.payload_bytes / r.time;
  r.bus_bandwidth = r.alg_bandwidth * bus_bw_factor(request.op, request.participants);
  r.utilization = r.bus_bandwidth / per_device_bandwidth(topology, topology.node_size);
  return r;
}

}  // namespace npuperf
