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
#include <limits>
#include <optional>

#include "bodynet/orchestrator.hpp"
#include "search_space.hpp"

namespace bodynet {

namespace {

using detail::AppTables;
using detail::quantize;
using detail::SegChoice;
using detail::Snapshot;
using detail::Usage;

// One self-contained placement of one app: its own resource delta.
struct Option {
  std::vector<SegChoice> segs;
  Usage delta;
};

std::vector<Option> enumerate_options(const ModelGraph& model, const AppTables& tables,
                                      const Snapshot& snap, const Usage& base,
                                      std::size_t max_segments,
                                      detail::RejectTally& tally) {
  std::vector<Option> out;
  const auto cut_lists = enumerate_cut_candidates(model, max_segments);
  const std::size_t devices = snap.size();
  for (const auto& cuts : cut_lists) {
    const auto ranges = segment(model, cuts);
    const std::size_t k = ranges.size();
    std::vector<int> assign(k, 0);
    while (true) {
      bool shape_ok = true;
      for (std::size_t i = 1; i < k; ++i) {
        shape_ok = shape_ok && assign[i] != assign[i - 1];
      }
      if (shape_ok) {
        std::vector<SegChoice> segs;
        for (std::size_t i = 0; i < k; ++i) {
          segs.push_back({assign[i], static_cast<std::uint16_t>(ranges[i].begin),
                          static_cast<std::uint16_t>(ranges[i].end)});
        }
        Usage alone = base;
        Constraint why{};
        if (detail::add_assignment(alone, snap, tables, segs, &why)) {
          Usage delta(snap);
          detail::add_assignment(delta, snap, tables, segs, nullptr);
          out.push_back({std::move(segs), std::move(delta)});
        } else {
          tally.add(why);
        }
      }
      std::size_t pos = k;
      while (pos > 0 && assign[pos - 1] + 1 == static_cast<int>(devices)) {
        assign[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
      ++assign[pos - 1];
    }
  }
  return out;
}

// Adds `add` into `total`; returns the violated memory, if any.
std::optional<Constraint> combine(Usage& total, const Usage& add,
                                  const Snapshot& snap) {
  for (std::size_t d = 0; d < snap.size(); ++d) {
    const DeviceSpec& dev = snap.device(static_cast<int>(d));
    total.weight[d] += add.weight[d];
    total.bias[d] += add.bias[d];
    total.data[d] += add.data[d];
    if (total.weight[d] > dev.weight_mem_bytes) return Constraint::kWeightMemory;
    if (total.bias[d] > dev.bias_mem_bytes) return Constraint::kBiasMemory;
    if (total.data[d] > dev.data_mem_bytes) return Constraint::kDataMemory;
    total.device_busy[d] += add.device_busy[d];
  }
  for (std::size_t s = 0; s < total.link_busy.size(); ++s) {
    total.link_busy[s] += add.link_busy[s];
  }
  total.energy += add.energy;
  return std::nullopt;
}

}  // namespace

JointPlan brute_force_optimal(std::span<const BoundApp> apps,
                              const PlanningContext& ctx,
                              const Objective& objective,
                              std::size_t max_segments) {
  objective.validate();
  if (ctx.fleet == nullptr) throw ValidationError("fleet", "missing fleet");
  if (max_segments < 1) throw RangeError("max_segments must be >= 1");
  if (apps.size() > kOracleMaxApps) {
    throw InstanceTooLarge(std::to_string(apps.size()) + " apps exceed the limit of " +
                           std::to_string(kOracleMaxApps));
  }
  for (const BoundApp& a : apps) {
    if (!a.app.model) throw ValidationError("app " + a.app.id, "model not resolved");
    if (a.app.model->layer_count() > kOracleMaxLayers) {
      throw InstanceTooLarge("model '" + a.app.model->name + "' has " +
                             std::to_string(a.app.model->layer_count()) +
                             " layers; the limit is " +
                             std::to_string(kOracleMaxLayers));
    }
  }
  const Snapshot snap(*ctx.fleet, ctx.availability, ctx.thermal);
  if (snap.size() > kOracleMaxDevices) {
    throw InstanceTooLarge(std::to_string(snap.size()) +
                           " available devices exceed the limit of " +
                           std::to_string(kOracleMaxDevices));
  }
  const Usage base = detail::fixed_usage(ctx, snap);

  std::vector<AppTables> tables;
  std::vector<std::vector<Option>> options;
  std::vector<OorReport> oor;
  for (const BoundApp& a : apps) {
    tables.emplace_back(*a.app.model, a.binding, a.app.postprocess_latency_s, snap);
    detail::RejectTally tally;
    if (tables.back().sensor() == detail::kNoDevice ||
        tables.back().output() == detail::kNoDevice) {
      oor.push_back({a.app.id, Constraint::kBinding, "bound device is not available"});
      options.emplace_back();
      continue;
    }
    options.push_back(
        enumerate_options(*a.app.model, tables.back(), snap, base, max_segments, tally));
    if (options.back().empty()) {
      const bool empty = std::all_of(tally.counts.begin(), tally.counts.end(),
                                     [](std::size_t c) { return c == 0; });
      oor.push_back({a.app.id, empty ? Constraint::kRoute : tally.dominant(),
                     "no placement fits"});
    }
  }
  if (!oor.empty()) throw OutOfResource(std::move(oor));

  const bool energy = objective.kind == Objective::Kind::kMinEnergy;
  const double floor = objective.throughput_floor.value_or(0.0);
  using Key = std::pair<int, double>;
  std::optional<Key> best_key;
  std::vector<std::vector<std::size_t>> best_picks;
  bool any_feasible = false;

  std::vector<std::size_t> pick(apps.size(), 0);
  detail::RejectTally joint_tally;
  Usage total;
  while (!apps.empty()) {
    total = base;
    std::optional<Constraint> failed;
    for (std::size_t a = 0; a < apps.size() && !failed; ++a) {
      failed = combine(total, options[a][pick[a]].delta, snap);
    }
    if (failed) {
      joint_tally.add(*failed);
    } else {
      const double period = total.period();
      const Key key = quantize(energy ? total.energy : period);
      if (!best_key || key <= *best_key) {
        if (!detail::thermal_ok(total, snap)) {
          joint_tally.add(Constraint::kThermal);
        } else {
          any_feasible = true;
          const bool meets = !energy || floor <= 0.0 ||
                             (period > 0.0 && 1.0 / period >= floor);
          if (meets) {
            if (!best_key || key < *best_key) {
              best_key = key;
              best_picks.clear();
            }
            best_picks.push_back(pick);
          }
        }
      }
    }
    std::size_t pos = apps.size();
    while (pos > 0 && pick[pos - 1] + 1 == options[pos - 1].size()) {
      pick[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
    ++pick[pos - 1];
  }
  if (apps.empty()) return detail::make_joint_plan({}, *ctx.fleet);
  if (best_picks.empty()) {
    if (any_feasible) {
      throw NoCandidateMeetsFloor("no plan reaches " + std::to_string(floor) +
                                  " inferences/s");
    }
    const Constraint why = joint_tally.counts[static_cast<std::size_t>(
                               Constraint::kThermal)] > 0
                               ? Constraint::kThermal
                               : joint_tally.dominant();
    std::vector<OorReport> reports;
    for (const BoundApp& a : apps) {
      reports.push_back(
          {a.app.id, why, "no joint placement satisfies every constraint"});
    }
    throw OutOfResource(std::move(reports));
  }
  std::vector<JointPlan> tied;
  for (const auto& p : best_picks) {
    std::vector<PlannedApp> planned;
    for (std::size_t a = 0; a < apps.size(); ++a) {
      planned.push_back(detail::to_planned(apps[a], snap, options[a][p[a]].segs));
    }
    tied.push_back(detail::make_joint_plan(std::move(planned), *ctx.fleet));
  }
  return select_plan(tied, objective);
}

}  // namespace bodynet
