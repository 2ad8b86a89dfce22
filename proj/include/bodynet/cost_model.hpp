// Copyright 2026 The BodyNet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Analytic latency / energy / throughput prediction.
//
// Compute time follows a MAC-throughput model with a fixed per-layer
// overhead. Weights are resident, so loading time is not charged.
//
// Pipeline accounting: every segment is a compute stage on its device and
// every inter-device transfer is a stage on its link. A device's busy time per
// round is the sum of its compute stages (plus the post-processing charge on
// the output device); a link's busy time is the sum of the transfers it
// carries. The period is the largest busy time, and its reciprocal is the
// steady-state throughput. Apps sharing a device serialize on it.

#ifndef BODYNET_COST_MODEL_HPP_
#define BODYNET_COST_MODEL_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "bodynet/fleet.hpp"
#include "bodynet/model_ir.hpp"
#include "bodynet/plan.hpp"

namespace bodynet {

/// Directed (src, dst) device pair.
using LinkKey = std::pair<std::string, std::string>;

struct PlanCost {
  double latency_s = 0.0;
  double period_s = 0.0;
  double energy_j = 0.0;
  std::map<std::string, double> device_busy_s;
  std::map<LinkKey, double> link_busy_s;
  double link_energy_j = 0.0;  // share of energy_j spent on transfers
};

/// Per-device frequency scale in (0, 1]; compute on a scaled device takes
/// 1/alpha longer and draws alpha^3 of the dynamic power. Empty = unscaled.
struct CostOptions {
  std::map<std::string, double, std::less<>> speed_scale;

  double scale_of(std::string_view device) const;
};

double layer_compute_latency(const LayerSpec& layer, const DeviceSpec& device);

/// Sum of layer latencies over the range, accumulated in layer order.
double segment_compute_latency(const ModelGraph& model, LayerRange range,
                               const DeviceSpec& device);

double transfer_latency(std::uint64_t bytes, const LinkSpec& link);

/// Zero when src == dst; otherwise needs a direct link (NoRouteError).
double transfer_latency(std::uint64_t bytes, const Fleet& fleet,
                        std::string_view src, std::string_view dst);

PlanCost plan_cost(const ModelGraph& model, const ExecutionPlan& plan,
                   const Fleet& fleet, const Binding& binding,
                   double postprocess_latency_s = 0.0,
                   const CostOptions& options = {});

PlanCost plan_cost(const PlannedApp& app, const Fleet& fleet,
                   const CostOptions& options = {});

struct WorkloadCost {
  std::map<std::string, PlanCost> per_app;
  // Busy time summed across apps.
  std::map<std::string, double> device_busy_s;
  std::map<LinkKey, double> link_busy_s;
  double shared_period_s = 0.0;
  double total_energy_j = 0.0;

  /// Rounds per second for every app; zero when nothing runs.
  double throughput() const {
    return shared_period_s > 0.0 ? 1.0 / shared_period_s : 0.0;
  }
  /// busy / shared period, zero for idle devices.
  double utilization(std::string_view device) const;
};

WorkloadCost workload_cost(std::span<const PlannedApp> apps, const Fleet& fleet,
                           const CostOptions& options = {});

/// Dynamic compute energy of running the whole fixture model on one device.
double fixture_energy(const ModelGraph& fixture, const DeviceSpec& device);

/// Latency of running the whole fixture model on one device.
double fixture_latency(const ModelGraph& fixture, const DeviceSpec& device);

}  // namespace bodynet

#endif  // BODYNET_COST_MODEL_HPP_
