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

// Scenario files: a fleet, a model catalog, apps, scripted events and the
// planner settings. File references resolve relative to the scenario file.

#ifndef BODYNET_SCENARIO_HPP_
#define BODYNET_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bodynet/fleet.hpp"
#include "bodynet/model_ir.hpp"
#include "bodynet/orchestrator.hpp"
#include "bodynet/thermal.hpp"

namespace bodynet {

using ModelCatalog =
    std::map<std::string, std::shared_ptr<const ModelGraph>, std::less<>>;

/// A scripted sensor reading for one device, delivered at `time_s`.
struct TimedSensorWindow {
  double time_s = 0.0;
  SensorWindow window;
};

struct Scenario {
  std::filesystem::path fleet_path;
  Fleet fleet;
  ModelCatalog models;
  std::vector<AppSpec> apps;
  std::vector<AvailabilityEvent> events;
  std::vector<TimedSensorWindow> sensor_windows;
  double duration_s = 0.0;
  std::optional<double> dt_s;
  ThermalConfig thermal;
  WearThresholds wear_thresholds;
  SearchConfig search;
  Objective objective;
  std::uint64_t seed = 0;

  /// dt_s, or 0.05 * the smallest device time constant.
  double step_s() const;

  /// Throws ScenarioError naming the first offending field.
  void validate() const;
};

/// `base_dir` anchors the fleet and model paths.
Scenario parse_scenario(std::string_view json_text,
                        const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace bodynet

#endif  // BODYNET_SCENARIO_HPP_
