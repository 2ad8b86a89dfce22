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

#include "search_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bodynet::detail {

Snapshot::Snapshot(const Fleet& fleet, const Availability& availability,
                   const ThermalConfig& thermal)
    : fleet_(&fleet) {
  for (const DeviceSpec& d : fleet.devices) {
    if (availability.is_available(d.id)) devices_.push_back(&d);
  }
  std::sort(devices_.begin(), devices_.end(),
            [](const DeviceSpec* a, const DeviceSpec* b) { return a->id < b->id; });
  const std::size_t n = devices_.size();
  links_.assign(n * n, nullptr);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) links_[i * n + j] = fleet.find_link(devices_[i]->id, devices_[j]->id);
    }
  }
  for (const DeviceSpec* d : devices_) {
    ceilings_.push_back(
        temperature_ceiling(*d, availability.wear(d->id), thermal));
  }
}

int Snapshot::index_of(std::string_view id) const {
  auto it = std::lower_bound(
      devices_.begin(), devices_.end(), id,
      [](const DeviceSpec* d, std::string_view key) { return d->id < key; });
  if (it == devices_.end() || (*it)->id != id) return kNoDevice;
  return static_cast<int>(it - devices_.begin());
}

Usage::Usage(const Snapshot& snap)
    : weight(snap.size(), 0),
      bias(snap.size(), 0),
      data(snap.size(), 0),
      device_busy(snap.size(), 0.0),
      link_busy(snap.slot_count(), 0.0) {}

double Usage::period() const {
  double p = 0.0;
  for (double b : device_busy) p = std::max(p, b);
  for (double b : link_busy) p = std::max(p, b);
  return p;
}

double Usage::load_sum() const {
  double s = 0.0;
  for (double b : device_busy) s += b;
  return s;
}

AppTables::AppTables(const ModelGraph& model, const Binding& binding,
                     double postprocess_latency_s, const Snapshot& snap)
    : model_(&model),
      n_(model.layer_count()),
      sensor_(snap.index_of(binding.sensor_device)),
      output_(snap.index_of(binding.output_device)),
      postprocess_(postprocess_latency_s),
      input_bytes_(model.input_bytes) {
  const std::size_t w = n_ + 1;
  compute_.assign(snap.size() * w * w, 0.0);
  for (std::size_t d = 0; d < snap.size(); ++d) {
    const DeviceSpec& dev = snap.device(static_cast<int>(d));
    for (std::size_t b = 0; b < n_; ++b) {
      double acc = 0.0;
      for (std::size_t e = b + 1; e <= n_; ++e) {
        acc += layer_compute_latency(model.layers[e - 1], dev);
        compute_[(d * w + b) * w + e] = acc;
      }
    }
  }
  weight_.assign(w * w, 0);
  bias_.assign(w * w, 0);
  data_.assign(w * w, 0);
  for (std::size_t b = 0; b < n_; ++b) {
    for (std::size_t e = b + 1; e <= n_; ++e) {
      weight_[b * w + e] = weight_footprint(model, {b, e});
      bias_[b * w + e] = bias_footprint(model, {b, e});
      data_[b * w + e] = activation_footprint(model, {b, e}) +
                         (b == 0 ? model.input_bytes : 0);
    }
  }
  boundary_.resize(w);
  for (std::size_t i = 0; i <= n_; ++i) {
    boundary_[i] = i == 0 ? model.input_bytes
                          : model.layers[i - 1].out_activation_bytes;
  }
  rem_min_.assign(w, 0.0);
  rem_weight_.assign(w, 0);
  rem_bias_.assign(w, 0);
  const auto bits = static_cast<std::uint64_t>(model.quant.weight_bits());
  std::uint64_t weight_bits_acc = 0;
  for (std::size_t i = n_; i-- > 0;) {
    double fastest = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < snap.size(); ++d) {
      fastest = std::min(fastest, compute(static_cast<int>(d), i, i + 1));
    }
    if (snap.size() == 0) fastest = 0.0;
    rem_min_[i] = rem_min_[i + 1] + fastest;
    weight_bits_acc += model.layers[i].weight_count * bits;
    rem_weight_[i] = weight_bits_acc / 8;
    rem_bias_[i] = rem_bias_[i + 1] + model.layers[i].bias_count;
  }
}

double AppTables::hop_time(const Snapshot& snap, int src, int dst,
                           std::size_t i) const {
  if (src == dst) return 0.0;
  return snap.link(src, dst)->transfer_seconds(boundary_[i]);
}

double AppTables::hop_energy(const Snapshot& snap, int src, int dst,
                             std::size_t i) const {
  if (src == dst) return 0.0;
  return snap.link(src, dst)->energy_per_byte_j *
         static_cast<double>(boundary_[i]);
}

Constraint RejectTally::dominant() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best]) best = i;
  }
  return static_cast<Constraint>(best);
}

bool segment_fits(const Usage& usage, const Snapshot& snap,
                  const AppTables& app, const SegChoice& seg,
                  Constraint* why) {
  const DeviceSpec& dev = snap.device(seg.device);
  const auto d = static_cast<std::size_t>(seg.device);
  if (usage.weight[d] + app.weight(seg.begin, seg.end) > dev.weight_mem_bytes) {
    if (why) *why = Constraint::kWeightMemory;
    return false;
  }
  if (usage.bias[d] + app.bias(seg.begin, seg.end) > dev.bias_mem_bytes) {
    if (why) *why = Constraint::kBiasMemory;
    return false;
  }
  if (usage.data[d] + app.data(seg.begin, seg.end) > dev.data_mem_bytes) {
    if (why) *why = Constraint::kDataMemory;
    return false;
  }
  return true;
}

bool add_assignment(Usage& usage, const Snapshot& snap, const AppTables& app,
                    std::span<const SegChoice> segs, Constraint* why) {
  if (app.sensor() == kNoDevice || app.output() == kNoDevice) {
    if (why) *why = Constraint::kBinding;
    return false;
  }
  int prev = app.sensor();
  for (const SegChoice& seg : segs) {
    if (!snap.routable(prev, seg.device)) {
      if (why) *why = Constraint::kRoute;
      return false;
    }
    if (!segment_fits(usage, snap, app, seg, why)) return false;
    const auto d = static_cast<std::size_t>(seg.device);
    usage.weight[d] += app.weight(seg.begin, seg.end);
    usage.bias[d] += app.bias(seg.begin, seg.end);
    usage.data[d] += app.data(seg.begin, seg.end);
    if (prev != seg.device) {
      usage.link_busy[snap.slot(prev, seg.device)] +=
          app.hop_time(snap, prev, seg.device, seg.begin);
      usage.energy += app.hop_energy(snap, prev, seg.device, seg.begin);
    }
    const double c = app.compute(seg.device, seg.begin, seg.end);
    usage.device_busy[d] += c;
    const DeviceSpec& dev = snap.device(seg.device);
    usage.energy += (dev.active_power_w - dev.idle_power_w) * c;
    prev = seg.device;
  }
  if (!snap.routable(prev, app.output())) {
    if (why) *why = Constraint::kRoute;
    return false;
  }
  if (prev != app.output()) {
    usage.link_busy[snap.slot(prev, app.output())] +=
        app.hop_time(snap, prev, app.output(), app.layers());
    usage.energy += app.hop_energy(snap, prev, app.output(), app.layers());
  }
  if (app.postprocess() > 0.0) {
    usage.device_busy[static_cast<std::size_t>(app.output())] +=
        app.postprocess();
  }
  return true;
}

bool thermal_ok(const Usage& usage, const Snapshot& snap) {
  const double period = usage.period();
  if (!(period > 0.0)) return true;
  for (std::size_t d = 0; d < snap.size(); ++d) {
    const double busy = usage.device_busy[d];
    if (!(busy > 0.0)) continue;
    const auto& ceiling = snap.ceiling(static_cast<int>(d));
    if (!ceiling) continue;
    const DeviceSpec& dev = snap.device(static_cast<int>(d));
    const double util = std::min(1.0, busy / period);
    const double temp = steady_state_temp(power_of_utilization(dev, util), dev,
                                          snap.fleet().ambient_c);
    if (temp > *ceiling) return false;
  }
  return true;
}

PlannedApp to_planned(const BoundApp& app, const Snapshot& snap,
                      std::span<const SegChoice> segs) {
  PlannedApp planned;
  planned.plan.app = app.app.id;
  for (const SegChoice& s : segs) {
    planned.plan.segments.push_back(
        Segment{snap.id(s.device), LayerRange{s.begin, s.end}});
  }
  planned.binding = app.binding;
  planned.model = app.app.model;
  planned.postprocess_latency_s = app.app.postprocess_latency_s;
  return planned;
}

std::optional<std::vector<SegChoice>> to_choices(const ExecutionPlan& plan,
                                                 const Snapshot& snap) {
  std::vector<SegChoice> out;
  for (const Segment& s : plan.segments) {
    const int d = snap.index_of(s.device);
    if (d == kNoDevice) return std::nullopt;
    out.push_back(SegChoice{d, static_cast<std::uint16_t>(s.layers.begin),
                            static_cast<std::uint16_t>(s.layers.end)});
  }
  return out;
}

Usage fixed_usage(const PlanningContext& ctx, const Snapshot& snap) {
  Usage usage(snap);
  for (const PlannedApp& fixed : ctx.fixed) {
    const auto choices = to_choices(fixed.plan, snap);
    if (!choices) {
      throw ValidationError("plan " + fixed.plan.app,
                            "fixed plan uses an unavailable device");
    }
    AppTables tables(*fixed.model, fixed.binding, fixed.postprocess_latency_s,
                     snap);
    Constraint why{};
    if (!add_assignment(usage, snap, tables, *choices, &why)) {
      throw ValidationError("plan " + fixed.plan.app,
                            "fixed plan violates " +
                                std::string(to_string(why)));
    }
  }
  return usage;
}

std::pair<int, double> quantize(double value) {
  if (value == 0.0 || !std::isfinite(value)) return {0, value};
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  return {exponent, std::round(mantissa * 1e9)};
}

JointPlan make_joint_plan(std::vector<PlannedApp> apps, const Fleet& fleet) {
  std::sort(apps.begin(), apps.end(), [](const PlannedApp& a, const PlannedApp& b) {
    return a.plan.app < b.plan.app;
  });
  JointPlan joint;
  joint.cost = workload_cost(apps, fleet);
  joint.apps = std::move(apps);
  return joint;
}

bool joint_less(const JointPlan& a, const JointPlan& b, double a_key,
                double b_key) {
  const auto qa = quantize(a_key);
  const auto qb = quantize(b_key);
  if (qa != qb) return qa < qb;
  const std::size_t sa = a.total_segments();
  const std::size_t sb = b.total_segments();
  if (sa != sb) return sa < sb;
  return a.device_sequence() < b.device_sequence();
}

}  // namespace bodynet::detail
