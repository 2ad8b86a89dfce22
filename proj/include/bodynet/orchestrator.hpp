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

// Plan generation, filtering and selection.
//
// A joint plan assigns every app's layer chain to contiguous segments on
// available devices. It is feasible when
//   * per device, the weight, bias and data footprints of all resident
//     segments (across every app) fit the device memories; data memory holds
//     the largest input plus largest output activation of each segment, plus
//     the app input buffer on the device hosting its first segment;
//   * every transfer between distinct devices has a direct link;
//   * every loaded device stays under its thermal ceiling at the utilization
//     implied by the shared period (busy / period).
//
// The search is greedy over apps (largest weight footprint first) with a
// beam over (cut list x device) per app, followed by a seeded local search
// that moves or swaps single segments. Partial placements are ranked by an
// optimistic completion period; ones a greedy fill cannot finish go last.
// When everything fits, extra passes pull each other app to the front of
// the order and add their beams to the candidates. Consecutive segments
// never share a device: merging them is never worse on time and never
// larger in memory.

#ifndef BODYNET_ORCHESTRATOR_HPP_
#define BODYNET_ORCHESTRATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bodynet/cost_model.hpp"
#include "bodynet/error.hpp"
#include "bodynet/fleet.hpp"
#include "bodynet/model_ir.hpp"
#include "bodynet/plan.hpp"
#include "bodynet/thermal.hpp"

namespace bodynet {

/// The constraint that made an app unplaceable.
enum class Constraint {
  kWeightMemory,
  kBiasMemory,
  kDataMemory,
  kRoute,
  kThermal,
  kBinding,
  kThroughputFloor,
};

std::string_view to_string(Constraint constraint);
Constraint parse_constraint(std::string_view text);

struct OorReport {
  std::string app;
  Constraint constraint = Constraint::kWeightMemory;
  std::string detail;

  bool operator==(const OorReport&) const = default;
};

/// Out-of-resource failure. Carries one report per unplaceable app.
class OutOfResource : public Error {
 public:
  explicit OutOfResource(std::vector<OorReport> reports);

  const std::vector<OorReport>& reports() const noexcept { return reports_; }

 private:
  std::vector<OorReport> reports_;
};

struct Objective {
  enum class Kind { kMaxThroughput, kMinEnergy };

  Kind kind = Kind::kMaxThroughput;
  // Minimum rounds per second; MinEnergy only.
  std::optional<double> throughput_floor;

  void validate() const;
};

struct SearchConfig {
  std::size_t max_segments = 4;  // per model
  std::size_t beam_width = 16;
  std::size_t local_search_iters = 200;
  std::uint64_t seed = 0;

  void validate() const;
};

/// An app paired with its resolved binding.
struct BoundApp {
  AppSpec app;
  Binding binding;
};

/// The fleet snapshot a planning pass works against. `fixed` plans keep
/// their placement and reserve their memory and busy time.
struct PlanningContext {
  const Fleet* fleet = nullptr;
  Availability availability;
  ThermalConfig thermal;
  std::vector<PlannedApp> fixed;
};

struct JointPlan {
  std::vector<PlannedApp> apps;  // sorted by app id
  WorkloadCost cost;

  std::size_t total_segments() const;
  /// Devices of every segment, apps in id order.
  std::vector<std::string> device_sequence() const;
  const PlannedApp* find(std::string_view app) const;
};

/// Every cut list giving 1..k_max segments: sizes ascending, then
/// lexicographic.
std::vector<std::vector<std::size_t>> enumerate_cut_candidates(
    const ModelGraph& model, std::size_t k_max);

struct CandidateSet {
  // Ranked by shared period, then segment count, then device sequence.
  std::vector<JointPlan> ranked;
  // Apps the search could not place; absent from every candidate.
  std::vector<OorReport> oor;
};

/// Beam search over joint plans. Apps that cannot be placed are reported in
/// `oor` and left out.
CandidateSet search_plan_candidates(std::span<const BoundApp> apps,
                                    const PlanningContext& ctx,
                                    const SearchConfig& cfg);

/// As search_plan_candidates, but throws OutOfResource unless every app is
/// placed.
std::vector<JointPlan> generate_plan_candidates(std::span<const BoundApp> apps,
                                                const PlanningContext& ctx,
                                                const SearchConfig& cfg);

/// MaxThroughput: smallest shared period. MinEnergy: least total energy
/// among candidates meeting the floor. Ties: fewer segments, then the
/// lexicographically smallest device sequence.
JointPlan select_plan(std::span<const JointPlan> candidates,
                      const Objective& objective);

/// Limits of the exhaustive oracle.
inline constexpr std::size_t kOracleMaxLayers = 8;
inline constexpr std::size_t kOracleMaxDevices = 3;
inline constexpr std::size_t kOracleMaxApps = 2;

/// Exhaustive search over all cut lists (up to `max_segments` segments per
/// model) and device assignments under the same feasibility rules.
/// InstanceTooLarge outside the limits above; OutOfResource if nothing fits.
JointPlan brute_force_optimal(std::span<const BoundApp> apps,
                              const PlanningContext& ctx,
                              const Objective& objective,
                              std::size_t max_segments = 4);

/// Split-computing baseline: one split point between the sensor-bound
/// device and the largest-weight-memory available device, chosen for
/// minimal latency. Memory is checked against `ctx.fixed` plus the plan;
/// thermal limits are ignored.
ExecutionPlan neurosurgeon_baseline(const BoundApp& app,
                                    const PlanningContext& ctx);

/// Outcome of one planning pass: placed apps plus out-of-resource reports.
struct PlanOutcome {
  std::vector<PlannedApp> plans;
  std::vector<OorReport> oor;
  // Frequency scales applied by the policy; empty for unthrottled policies.
  CostOptions cost_options;
};

/// Plans `apps` against the context (fixed apps stay as they are).
using Planner =
    std::function<PlanOutcome(std::span<const BoundApp>, const PlanningContext&)>;

/// search_plan_candidates followed by select_plan.
Planner orchestrator_planner(const SearchConfig& cfg, const Objective& objective);

/// Binds every app; apps without a capable device come back as kBinding
/// reports.
std::vector<BoundApp> bind_apps(std::span<const AppSpec> apps,
                                const Fleet& fleet,
                                const Availability& availability,
                                std::vector<OorReport>& unbound);

struct ReplanEntry {
  std::string app;
  std::string reason;
  std::optional<ExecutionPlan> before;
  std::optional<ExecutionPlan> after;
  std::optional<OorReport> oor;
};

struct ReplanResult {
  std::vector<PlannedApp> plans;  // every running app, sorted by id
  std::vector<OorReport> suspended;
  std::vector<ReplanEntry> diff;  // only apps that were replanned
  CostOptions cost_options;
};

/// Reacts to an availability event (already applied to `availability`).
/// Replans only apps whose binding changed, that host a segment on the
/// event's device, or that were suspended; every other plan is kept as is.
ReplanResult replan_on_event(std::span<const PlannedApp> current,
                             std::span<const OorReport> suspended,
                             const AvailabilityEvent& event,
                             std::span<const AppSpec> apps, const Fleet& fleet,
                             const Availability& availability,
                             const ThermalConfig& thermal,
                             const Planner& planner,
                             const CostOptions& current_options = {});

}  // namespace bodynet

#endif  // BODYNET_ORCHESTRATOR_HPP_
