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

#include "bodynet/simulator.hpp"
#include "search_space.hpp"

namespace bodynet {

std::string_view to_string(Policy policy) {
  switch (policy) {
    case Policy::kOrchestrator:
      return "orchestrator";
    case Policy::kNeurosurgeon:
      return "neurosurgeon";
    case Policy::kDvfsOnly:
      return "dvfs_only";
  }
  return "orchestrator";
}

Policy parse_policy(std::string_view text) {
  if (text == "orchestrator") return Policy::kOrchestrator;
  if (text == "neurosurgeon") return Policy::kNeurosurgeon;
  if (text == "dvfs_only") return Policy::kDvfsOnly;
  throw ValidationError("policy", "must be orchestrator, neurosurgeon or dvfs_only");
}

namespace {

std::vector<BoundApp> by_id(std::span<const BoundApp> apps) {
  std::vector<BoundApp> sorted(apps.begin(), apps.end());
  std::sort(sorted.begin(), sorted.end(), [](const BoundApp& a, const BoundApp& b) {
    return a.app.id < b.app.id;
  });
  return sorted;
}

PlannedApp planned_of(const BoundApp& app, ExecutionPlan plan) {
  PlannedApp p;
  p.plan = std::move(plan);
  p.binding = app.binding;
  p.model = app.app.model;
  p.postprocess_latency_s = app.app.postprocess_latency_s;
  return p;
}

}  // namespace

Planner neurosurgeon_planner() {
  return [](std::span<const BoundApp> apps, const PlanningContext& ctx) {
    PlanOutcome outcome;
    PlanningContext work = ctx;
    for (const BoundApp& app : by_id(apps)) {
      try {
        PlannedApp p = planned_of(app, neurosurgeon_baseline(app, work));
        work.fixed.push_back(p);
        outcome.plans.push_back(std::move(p));
      } catch (const OutOfResource& e) {
        outcome.oor.insert(outcome.oor.end(), e.reports().begin(),
                           e.reports().end());
      }
    }
    return outcome;
  };
}

Planner dvfs_only_planner(const ThermalConfig& thermal) {
  return [thermal](std::span<const BoundApp> apps, const PlanningContext& ctx) {
    using namespace detail;
    PlanOutcome outcome;
    const Snapshot snap(*ctx.fleet, ctx.availability, ctx.thermal);
    Usage usage = fixed_usage(ctx, snap);
    for (const BoundApp& app : by_id(apps)) {
      const AppTables tables(*app.app.model, app.binding,
                             app.app.postprocess_latency_s, snap);
      const int host = tables.sensor();
      if (host == kNoDevice || tables.output() == kNoDevice) {
        outcome.oor.push_back(
            {app.app.id, Constraint::kBinding, "bound device is not available"});
        continue;
      }
      const std::vector<SegChoice> segs{
          {host, 0, static_cast<std::uint16_t>(tables.layers())}};
      Usage trial = usage;
      Constraint why{};
      if (!add_assignment(trial, snap, tables, segs, &why)) {
        outcome.oor.push_back({app.app.id, why,
                               "does not fit on " + app.binding.sensor_device});
        continue;
      }
      const DeviceSpec& dev = snap.device(host);
      try {
        const DvfsSetting s = dvfs_max_utilization(
            dev, ctx.availability.wear(dev.id), ctx.fleet->ambient_c, thermal);
        outcome.cost_options.speed_scale[dev.id] = s.alpha;
      } catch (const InfeasibleError& e) {
        outcome.oor.push_back({app.app.id, Constraint::kThermal, e.what()});
        continue;
      }
      usage = std::move(trial);
      outcome.plans.push_back(planned_of(app, to_planned(app, snap, segs).plan));
    }
    return outcome;
  };
}

Planner make_planner(Policy policy, const Scenario& scenario) {
  switch (policy) {
    case Policy::kOrchestrator:
      return orchestrator_planner(scenario.search, scenario.objective);
    case Policy::kNeurosurgeon:
      return neurosurgeon_planner();
    case Policy::kDvfsOnly:
      return dvfs_only_planner(scenario.thermal);
  }
  return orchestrator_planner(scenario.search, scenario.objective);
}

}  // namespace bodynet
