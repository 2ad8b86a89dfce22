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

#include <algorithm>
#include <map>

#include <spdlog/spdlog.h>

#include "bodynet/orchestrator.hpp"

namespace bodynet {

namespace {

bool hosts(const ExecutionPlan& plan, const std::string& device) {
  return std::any_of(plan.segments.begin(), plan.segments.end(),
                     [&](const Segment& s) { return s.device == device; });
}

}  // namespace

ReplanResult replan_on_event(std::span<const PlannedApp> current,
                             std::span<const OorReport> suspended,
                             const AvailabilityEvent& event,
                             std::span<const AppSpec> apps, const Fleet& fleet,
                             const Availability& availability,
                             const ThermalConfig& thermal,
                             const Planner& planner,
                             const CostOptions& current_options) {
  std::map<std::string, const PlannedApp*> by_id;
  for (const PlannedApp& p : current) by_id[p.plan.app] = &p;
  std::map<std::string, const OorReport*> was_suspended;
  for (const OorReport& r : suspended) was_suspended[r.app] = &r;

  ReplanResult result;
  result.cost_options = current_options;
  PlanningContext ctx;
  ctx.fleet = &fleet;
  ctx.availability = availability;
  ctx.thermal = thermal;

  std::vector<BoundApp> affected;
  std::map<std::string, ReplanEntry> entries;
  for (const AppSpec& app : apps) {
    auto it = by_id.find(app.id);
    const PlannedApp* plan = it == by_id.end() ? nullptr : it->second;
    std::optional<Binding> binding;
    std::optional<OorReport> unbound;
    try {
      binding = bind_virtual(app, fleet, availability);
    } catch (const NoSensorError& e) {
      unbound = OorReport{app.id, Constraint::kBinding, e.what()};
    } catch (const NoOutputError& e) {
      unbound = OorReport{app.id, Constraint::kBinding, e.what()};
    }

    std::string reason;
    if (plan == nullptr) {
      reason = was_suspended.count(app.id) ? "retry" : "registered";
    } else if (!binding || !(*binding == plan->binding)) {
      reason = "binding";
    } else if (hosts(plan->plan, event.device) &&
               event.change != AvailabilityChange::kJoin) {
      reason = "hosts " + event.device;
    }
    if (reason.empty()) {
      ctx.fixed.push_back(*plan);
      continue;
    }
    ReplanEntry entry;
    entry.app = app.id;
    entry.reason = reason;
    if (plan) entry.before = plan->plan;
    if (unbound) {
      entry.oor = *unbound;
      result.suspended.push_back(*unbound);
    } else {
      affected.push_back({app, *binding});
    }
    entries[app.id] = std::move(entry);
  }
  for (const PlannedApp& p : current) {
    const bool registered = std::any_of(
        apps.begin(), apps.end(), [&](const AppSpec& a) { return a.id == p.plan.app; });
    if (!registered) {
      ReplanEntry entry;
      entry.app = p.plan.app;
      entry.reason = "unregistered";
      entry.before = p.plan;
      entries[p.plan.app] = std::move(entry);
    }
  }

  result.plans = ctx.fixed;
  if (!affected.empty()) {
    PlanOutcome outcome = planner(affected, ctx);
    for (const auto& [dev, scale] : outcome.cost_options.speed_scale) {
      result.cost_options.speed_scale[dev] = scale;
    }
    for (PlannedApp& p : outcome.plans) {
      entries[p.plan.app].after = p.plan;
      result.plans.push_back(std::move(p));
    }
    for (OorReport& r : outcome.oor) {
      entries[r.app].oor = r;
      result.suspended.push_back(std::move(r));
    }
  }
  std::sort(result.plans.begin(), result.plans.end(),
            [](const PlannedApp& a, const PlannedApp& b) {
              return a.plan.app < b.plan.app;
            });
  std::sort(result.suspended.begin(), result.suspended.end(),
            [](const OorReport& a, const OorReport& b) { return a.app < b.app; });
  for (auto& [id, entry] : entries) result.diff.push_back(std::move(entry));
  spdlog::info("replan at t={} ({} {}): {} app(s) replanned", event.time_s,
               to_string(event.change), event.device, result.diff.size());
  return result;
}

}  // namespace bodynet
