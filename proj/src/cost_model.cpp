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

#include "bodynet/cost_model.hpp"

#include <algorithm>

#include "bodynet/error.hpp"

namespace bodynet {

double CostOptions::scale_of(std::string_view device) const {
  auto it = speed_scale.find(device);
  return it == speed_scale.end() ? 1.0 : it->second;
}

double layer_compute_latency(const LayerSpec& layer, const DeviceSpec& device) {
  return static_cast<double>(layer.macs) / device.mac_rate() +
         device.per_layer_overhead_s;
}

double segment_compute_latency(const ModelGraph& model, LayerRange range,
                               const DeviceSpec& device) {
  if (range.begin > range.end || range.end > model.layer_count()) {
    throw RangeError("segment range outside model '" + model.name + "'");
  }
  double total = 0.0;
  for (std::size_t i = range.begin; i < range.end; ++i) {
    total += layer_compute_latency(model.layers[i], device);
  }
  return total;
}

double transfer_latency(std::uint64_t bytes, const LinkSpec& link) {
  return link.transfer_seconds(bytes);
}

double transfer_latency(std::uint64_t bytes, const Fleet& fleet,
                        std::string_view src, std::string_view dst) {
  if (src == dst) return 0.0;
  const LinkSpec* link = fleet.find_link(src, dst);
  if (link == nullptr) throw NoRouteError(std::string(src), std::string(dst));
  return transfer_latency(bytes, *link);
}

namespace {

// Charges one hop to the cost; no-op when the hop stays on a device.
void charge_transfer(PlanCost& cost, const Fleet& fleet, const std::string& src,
                     const std::string& dst, std::uint64_t bytes) {
  if (src == dst) return;
  const LinkSpec* link = fleet.find_link(src, dst);
  if (link == nullptr) throw NoRouteError(src, dst);
  const double t = transfer_latency(bytes, *link);
  const double e = link->energy_per_byte_j * static_cast<double>(bytes);
  cost.latency_s += t;
  cost.link_busy_s[{src, dst}] += t;
  cost.energy_j += e;
  cost.link_energy_j += e;
}

double max_busy(const std::map<std::string, double>& devices,
                const std::map<LinkKey, double>& links) {
  double period = 0.0;
  for (const auto& [id, busy] : devices) period = std::max(period, busy);
  for (const auto& [key, busy] : links) period = std::max(period, busy);
  return period;
}

}  // namespace

PlanCost plan_cost(const ModelGraph& model, const ExecutionPlan& plan,
                   const Fleet& fleet, const Binding& binding,
                   double postprocess_latency_s, const CostOptions& options) {
  plan.validate_structure(model);
  PlanCost cost;
  std::string prev = binding.sensor_device;
  std::uint64_t bytes = model.input_bytes;
  for (const Segment& seg : plan.segments) {
    charge_transfer(cost, fleet, prev, seg.device, bytes);
    const DeviceSpec& device = fleet.device(seg.device);
    const double alpha = options.scale_of(seg.device);
    const double compute =
        segment_compute_latency(model, seg.layers, device) / alpha;
    cost.latency_s += compute;
    cost.device_busy_s[seg.device] += compute;
    cost.energy_j += alpha * alpha * alpha *
                     (device.active_power_w - device.idle_power_w) * compute;
    prev = seg.device;
    bytes = model.layers[seg.layers.end - 1].out_activation_bytes;
  }
  charge_transfer(cost, fleet, prev, binding.output_device, bytes);
  if (postprocess_latency_s > 0.0) {
    cost.latency_s += postprocess_latency_s;
    cost.device_busy_s[binding.output_device] += postprocess_latency_s;
  }
  cost.period_s = max_busy(cost.device_busy_s, cost.link_busy_s);
  return cost;
}

PlanCost plan_cost(const PlannedApp& app, const Fleet& fleet,
                   const CostOptions& options) {
  if (!app.model) {
    throw ValidationError("plan " + app.plan.app, "model not resolved");
  }
  return plan_cost(*app.model, app.plan, fleet, app.binding,
                   app.postprocess_latency_s, options);
}

double WorkloadCost::utilization(std::string_view device) const {
  if (shared_period_s <= 0.0) return 0.0;
  auto it = device_busy_s.find(std::string(device));
  return it == device_busy_s.end() ? 0.0
                                   : std::min(1.0, it->second / shared_period_s);
}

WorkloadCost workload_cost(std::span<const PlannedApp> apps, const Fleet& fleet,
                           const CostOptions& options) {
  WorkloadCost total;
  for (const PlannedApp& app : apps) {
    PlanCost cost = plan_cost(app, fleet, options);
    for (const auto& [id, busy] : cost.device_busy_s) {
      total.device_busy_s[id] += busy;
    }
    for (const auto& [key, busy] : cost.link_busy_s) {
      total.link_busy_s[key] += busy;
    }
    total.total_energy_j += cost.energy_j;
    total.per_app[app.plan.app] = std::move(cost);
  }
  total.shared_period_s = max_busy(total.device_busy_s, total.link_busy_s);
  return total;
}

double fixture_latency(const ModelGraph& fixture, const DeviceSpec& device) {
  return segment_compute_latency(fixture, {0, fixture.layer_count()}, device);
}

double fixture_energy(const ModelGraph& fixture, const DeviceSpec& device) {
  double energy = 0.0;
  for (const LayerSpec& layer : fixture.layers) {
    if (layer.macs == 0) continue;
    energy += (device.active_power_w - device.idle_power_w) *
              layer_compute_latency(layer, device);
  }
  return energy;
}

}  // namespace bodynet
