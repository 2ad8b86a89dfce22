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

#include "bodynet/report.hpp"

#include <algorithm>

#include "bodynet/thermal.hpp"
#include "json_util.hpp"

namespace bodynet {

PlanReport make_plan_report(std::span<const PlannedApp> plans,
                            std::span<const OorReport> oor, const Fleet& fleet,
                            const Availability& availability,
                            const CostOptions& options) {
  const WorkloadCost cost = workload_cost(plans, fleet, options);
  PlanReport report;
  for (const PlannedApp& p : plans) {
    const PlanCost& c = cost.per_app.at(p.plan.app);
    report.apps.push_back({p.plan, p.binding.sensor_device, p.binding.output_device,
                           c.period_s, c.latency_s, c.energy_j});
  }
  std::sort(report.apps.begin(), report.apps.end(),
            [](const ReportedApp& a, const ReportedApp& b) {
              return a.plan.app < b.plan.app;
            });
  report.shared_period_s = cost.shared_period_s;
  report.throughput_per_s = cost.throughput();
  for (const std::string& id : availability.available_ids()) {
    const DeviceSpec& dev = fleet.device(id);
    const double p =
        dvfs_power(dev, options.scale_of(id), cost.utilization(id));
    report.device_temps_c[id] = steady_state_temp(p, dev, fleet.ambient_c);
  }
  report.oor.assign(oor.begin(), oor.end());
  std::sort(report.oor.begin(), report.oor.end(),
            [](const OorReport& a, const OorReport& b) { return a.app < b.app; });
  return report;
}

std::string plan_report_to_json(const PlanReport& report) {
  using detail::OrderedJson;
  OrderedJson j;
  OrderedJson apps = OrderedJson::array();
  for (const ReportedApp& a : report.apps) {
    OrderedJson segs = OrderedJson::array();
    for (const Segment& s : a.plan.segments) {
      segs.push_back({{"device", s.device},
                      {"layer_start", s.layers.begin},
                      {"layer_end", s.layers.end}});
    }
    OrderedJson entry;
    entry["app"] = a.plan.app;
    entry["sensor_device"] = a.sensor_device;
    entry["output_device"] = a.output_device;
    entry["segments"] = std::move(segs);
    entry["period_s"] = a.period_s;
    entry["latency_s"] = a.latency_s;
    entry["energy_j"] = a.energy_j;
    apps.push_back(std::move(entry));
  }
  j["apps"] = std::move(apps);
  j["shared_period_s"] = report.shared_period_s;
  j["throughput_per_s"] = report.throughput_per_s;
  OrderedJson temps = OrderedJson::object();
  for (const auto& [id, t] : report.device_temps_c) temps[id] = t;
  j["device_temps_c"] = std::move(temps);
  OrderedJson oor = OrderedJson::array();
  for (const OorReport& r : report.oor) {
    oor.push_back({{"app", r.app},
                   {"constraint", std::string(to_string(r.constraint))},
                   {"detail", r.detail}});
  }
  j["oor"] = std::move(oor);
  return j.dump(2) + "\n";
}

PlanReport parse_plan_report(std::string_view json_text) {
  using detail::Json;
  const Json doc = detail::parse_json_text(json_text, "plan report");
  PlanReport report;
  const Json& apps = detail::require(doc, "apps", "");
  if (!apps.is_array()) throw ParseError("apps: expected an array");
  for (const Json& a : apps) {
    ReportedApp r;
    r.plan.app = detail::get_string(a, "app", "apps[]");
    r.sensor_device = detail::get_string(a, "sensor_device", "apps[]");
    r.output_device = detail::get_string(a, "output_device", "apps[]");
    const Json& segs = detail::require(a, "segments", "apps[]");
    if (!segs.is_array()) throw ParseError("segments: expected an array");
    for (const Json& s : segs) {
      r.plan.segments.push_back(
          {detail::get_string(s, "device", "segments[]"),
           LayerRange{detail::get_uint(s, "layer_start", "segments[]"),
                      detail::get_uint(s, "layer_end", "segments[]")}});
    }
    r.period_s = detail::get_number(a, "period_s", "apps[]");
    r.latency_s = detail::get_number(a, "latency_s", "apps[]");
    r.energy_j = detail::get_number(a, "energy_j", "apps[]");
    report.apps.push_back(std::move(r));
  }
  report.shared_period_s = detail::get_number(doc, "shared_period_s", "");
  report.throughput_per_s = detail::get_number(doc, "throughput_per_s", "");
  const Json& temps = detail::require(doc, "device_temps_c", "");
  for (const auto& [id, t] : temps.items()) {
    if (!t.is_number()) throw ParseError("device_temps_c: expected numbers");
    report.device_temps_c[id] = t.get<double>();
  }
  const Json& oor = detail::require(doc, "oor", "");
  if (!oor.is_array()) throw ParseError("oor: expected an array");
  for (const Json& o : oor) {
    report.oor.push_back({detail::get_string(o, "app", "oor[]"),
                          parse_constraint(detail::get_string(o, "constraint", "oor[]")),
                          detail::get_string(o, "detail", "oor[]")});
  }
  return report;
}

}  // namespace bodynet
