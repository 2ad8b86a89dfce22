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

#include "bodynet/orchestrator.hpp"
#include "search_space.hpp"

namespace bodynet {

ExecutionPlan neurosurgeon_baseline(const BoundApp& app,
                                    const PlanningContext& ctx) {
  using namespace detail;
  if (ctx.fleet == nullptr) throw ValidationError("fleet", "missing fleet");
  if (!app.app.model) throw ValidationError("app " + app.app.id, "model not resolved");
  const Snapshot snap(*ctx.fleet, ctx.availability, ctx.thermal);
  const AppTables tables(*app.app.model, app.binding,
                         app.app.postprocess_latency_s, snap);
  const int local = tables.sensor();
  if (local == kNoDevice || tables.output() == kNoDevice) {
    throw OutOfResource(
        {{app.app.id, Constraint::kBinding, "bound device is not available"}});
  }
  int remote = 0;
  for (int d = 1; d < static_cast<int>(snap.size()); ++d) {
    // ids are sorted, so strict > keeps the smallest id on ties
    if (snap.device(d).weight_mem_bytes > snap.device(remote).weight_mem_bytes) {
      remote = d;
    }
  }
  const Usage base = fixed_usage(ctx, snap);
  const std::size_t n = tables.layers();
  const auto un = static_cast<std::uint16_t>(n);

  RejectTally tally;
  std::optional<ExecutionPlan> best;
  double best_latency = 0.0;
  for (std::size_t s = 0; s <= n; ++s) {
    std::vector<SegChoice> segs;
    const auto us = static_cast<std::uint16_t>(s);
    if (local == remote) {
      if (s != 0) break;
      segs.push_back({local, 0, un});
    } else if (s == 0) {
      segs.push_back({remote, 0, un});
    } else if (s == n) {
      segs.push_back({local, 0, un});
    } else {
      segs.push_back({local, 0, us});
      segs.push_back({remote, us, un});
    }
    Usage u = base;
    Constraint why{};
    if (!add_assignment(u, snap, tables, segs, &why)) {
      tally.add(why);
      continue;
    }
    const PlannedApp planned = to_planned(app, snap, segs);
    const double latency = plan_cost(planned, *ctx.fleet).latency_s;
    if (!best || quantize(latency) < quantize(best_latency)) {
      best = planned.plan;
      best_latency = latency;
    }
  }
  if (!best) {
    const Constraint c = tally.dominant();
    throw OutOfResource({{app.app.id, c,
                          "no split between " + snap.id(local) + " and " +
                              snap.id(remote) + " satisfies " +
                              std::string(to_string(c))}});
  }
  return *best;
}

}  // namespace bodynet
