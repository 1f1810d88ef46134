// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

#include "npuperf/device_model.hpp"

namespace npuperf {

enum class Collective { kAllReduce, kAllGather, kReduceScatter, kAllToAll, kReduce, kBroadcast };

std::string_view to_string(Collective op);
Collective collective_from_string(std::string_view name);

struct CollectiveRequest {
  Collective op = Collective::kAllReduce;
  double payload_bytes = 0.0;  // per device
  int participants = 2;
};

struct CollectiveResult {
  double time = 0.0;
  double alg_bandwidth = 0.0;
  double bus_bandwidth = 0.0;
  double utilization = 0.0;  // bus bandwidth over the full-node per-device bandwidth
};

// Bandwidth one device can drive into the collective.
double per_device_bandwidth(const TopologySpec& topology, int participants);

// Conventional bus-bandwidth scaling factor.
double bus_bw_factor(Collective op, int participants);

int collective_steps(Collective op, int participants);
double traffic_per_device(Collective op, int participants, double payload_bytes);

// Alpha-beta model: steps * alpha + traffic / per-device bandwidth.
CollectiveResult collective_time(const CollectiveRequest& request, const TopologySpec& topology);

}  // namespace npuperf
