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

// Time-stepped scenario replay. Rows are emitted at t = k * dt for
// k = 1 .. floor(duration / dt). Events and sensor windows stamped at or
// before the start of a step are applied (and replanned) before that step is
// integrated, so a row never reflects an event later than its own time.

#ifndef BODYNET_SIMULATOR_HPP_
#define BODYNET_SIMULATOR_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bodynet/orchestrator.hpp"
#include "bodynet/scenario.hpp"

namespace bodynet {

enum class Policy { kOrchestrator, kNeurosurgeon, kDvfsOnly };

std::string_view to_string(Policy policy);
Policy parse_policy(std::string_view text);

/// The per-app baseline applied app by app in id order; OOR apps are
/// reported and skipped.
Planner neurosurgeon_planner();

/// Each app wholly on its sensor-bound device, throttled to the largest
/// frequency scale that keeps that device under its ceiling.
Planner dvfs_only_planner(const ThermalConfig& thermal);

Planner make_planner(Policy policy, const Scenario& scenario);

enum class AppRunState { kRunning, kSuspended };

std::string_view to_string(AppRunState state);

struct TraceRow {
  double t_s = 0.0;
  // Indexed like Trace::device_ids / Trace::app_ids.
  std::vector<double> temp_c;
  std::vector<double> util;
  std::vector<double> tput;
  std::vector<AppRunState> state;
  double energy_j = 0.0;            // cumulative
  double energy_increment_j = 0.0;  // this step only
  // Not written to CSV.
  std::vector<bool> available;
  std::vector<WearStatus> wear;
};

struct EventLogRow {
  double t_s = 0.0;
  std::string kind;
  std::string subject;
  std::string detail;
};

/// The plan set in force after the initial pass or after an event.
struct PlanRecord {
  double t_s = 0.0;
  std::optional<AvailabilityEvent> event;  // empty for the initial pass
  std::vector<PlannedApp> plans;
  std::vector<OorReport> suspended;
  std::vector<ReplanEntry> diff;
};

struct DeviceSummary {
  double mean_temp_c = 0.0;
  double max_temp_c = 0.0;

  bool operator==(const DeviceSummary&) const = default;
};

struct TraceSummary {
  std::string policy;
  std::size_t rows = 0;
  std::map<std::string, DeviceSummary> devices;
  std::map<std::string, double> mean_throughput;  // per app, rounds / s
  double total_mean_throughput = 0.0;
  double total_energy_j = 0.0;
  std::size_t replan_count = 0;
  std::size_t oor_count = 0;

  bool operator==(const TraceSummary&) const = default;
};

struct Trace {
  Policy policy = Policy::kOrchestrator;
  double dt_s = 0.0;
  std::vector<std::string> device_ids;
  std::vector<std::string> app_ids;
  std::vector<TraceRow> rows;
  std::vector<EventLogRow> events;
  std::vector<PlanRecord> plans;
  TraceSummary summary;
};

/// Recomputes the summary from rows and the event log.
TraceSummary summarize(const Trace& trace);

/// Replays the scenario. `seed` overrides the scenario seed.
Trace run(const Scenario& scenario, Policy policy = Policy::kOrchestrator,
          std::optional<std::uint64_t> seed = std::nullopt);

struct PolicyComparison {
  std::vector<Trace> traces;  // orchestrator, neurosurgeon, dvfs_only
  double vs_baseline = 0.0;   // orchestrator / baseline total throughput
  double vs_dvfs = 0.0;       // orchestrator / dvfs_only total throughput

  const Trace& of(Policy policy) const;
};

PolicyComparison compare_policies(const Scenario& scenario,
                                  std::optional<std::uint64_t> seed = std::nullopt);

/// CSV: t_s, dev:<id>:temp_c..., dev:<id>:util..., app:<id>:tput...,
/// app:<id>:state..., energy_j.
void write_trace(const Trace& trace, const std::filesystem::path& path);
/// CSV: t_s,kind,subject,detail.
void write_event_log(const Trace& trace, const std::filesystem::path& path);
void write_summary(const TraceSummary& summary, const std::filesystem::path& path);
std::string summary_to_json(const TraceSummary& summary);

/// trace.csv, events.csv and summary.json under `dir` (created if needed).
void write_run(const Trace& trace, const std::filesystem::path& dir);

/// One sub-directory per policy plus comparison.json.
void write_comparison(const PolicyComparison& comparison,
                      const std::filesystem::path& dir);
std::string comparison_to_json(const PolicyComparison& comparison);

}  // namespace bodynet

#endif  // BODYNET_SIMULATOR_HPP_
