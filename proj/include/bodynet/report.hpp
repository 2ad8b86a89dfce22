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

// Plan reports: the structured text printed by `bodynet plan` and
// `bodynet oracle`.

#ifndef BODYNET_REPORT_HPP_
#define BODYNET_REPORT_HPP_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bodynet/cost_model.hpp"
#include "bodynet/orchestrator.hpp"

namespace bodynet {

struct ReportedApp {
  ExecutionPlan plan;
  std::string sensor_device;
  std::string output_device;
  double period_s = 0.0;
  double latency_s = 0.0;
  double energy_j = 0.0;

  bool operator==(const ReportedApp&) const = default;
};

struct PlanReport {
  std::vector<ReportedApp> apps;  // sorted by app id
  double shared_period_s = 0.0;
  double throughput_per_s = 0.0;
  std::map<std::string, double> device_temps_c;  // predicted steady state
  std::vector<OorReport> oor;

  bool operator==(const PlanReport&) const = default;
};

/// Prices `plans` and predicts steady-state temperatures of every available
/// device.
PlanReport make_plan_report(std::span<const PlannedApp> plans,
                            std::span<const OorReport> oor, const Fleet& fleet,
                            const Availability& availability,
                            const CostOptions& options = {});

std::string plan_report_to_json(const PlanReport& report);
PlanReport parse_plan_report(std::string_view json_text);

}  // namespace bodynet

#endif  // BODYNET_REPORT_HPP_
