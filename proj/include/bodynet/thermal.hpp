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

// Lumped thermal model: one RC node per device, driven by a power draw that
// is linear in utilization. Skin temperature is the device temperature plus a
// fixed offset. Worn skin-contact devices are held to the comfort threshold;
// doffed devices to the higher off-body ceiling.

#ifndef BODYNET_THERMAL_HPP_
#define BODYNET_THERMAL_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bodynet/fleet.hpp"

namespace bodynet {

struct ThermalConfig {
  double t_skin_max_c = 42.0;
  double t_doffed_max_c = 60.0;
  double skin_offset_c = 0.0;

  /// Both ceilings must sit above the ambient temperature.
  void validate(double ambient_c) const;
};

struct DeviceThermal {
  double temperature_c = 0.0;
  double last_power_w = 0.0;
};

using ThermalState = std::map<std::string, DeviceThermal>;

/// Every device at ambient, drawing nothing.
ThermalState initial_thermal_state(const Fleet& fleet);

/// idle + util * (active - idle). DomainError unless util is in [0, 1].
double power_of_utilization(const DeviceSpec& device, double util);

/// Power at frequency scale alpha: the dynamic part scales as alpha^3.
double dvfs_power(const DeviceSpec& device, double alpha, double util);

double steady_state_temp(double power_w, const DeviceSpec& device,
                         double ambient_c);

double time_constant_s(const DeviceSpec& device);

/// Exact exponential update of the RC node over dt_s under constant power.
double temp_step(double temperature_c, const DeviceSpec& device, double power_w,
                 double ambient_c, double dt_s);

enum class Proximity { kNear, kFar, kAbsent };

std::string_view to_string(Proximity proximity);
Proximity parse_proximity(std::string_view text);

struct SensorWindow {
  std::string device;
  double imu_std_g = 0.0;
  Proximity proximity = Proximity::kAbsent;
  double window_s = 1.0;

  void validate() const;
};

struct WearThresholds {
  double motion_g = 0.05;
};

/// Proximity decides when present; otherwise body micro-motion at or above
/// the threshold means worn.
WearStatus predict_wear_status(const SensorWindow& window,
                               const WearThresholds& thresholds = {});

/// Device-temperature ceiling that applies to a device in the given wear
/// status, or nullopt when none applies (worn, no skin contact).
std::optional<double> temperature_ceiling(const DeviceSpec& device,
                                          WearStatus wear,
                                          const ThermalConfig& cfg);

struct ThermalCheck {
  bool feasible = true;
  std::map<std::string, double> steady_temp_c;  // device temperature
  std::vector<std::string> violations;
};

/// Checks every device in `wear`; missing utilizations count as idle.
ThermalCheck thermal_feasible(const std::map<std::string, double>& util,
                              const std::map<std::string, WearStatus>& wear,
                              const Fleet& fleet, const ThermalConfig& cfg);

struct DvfsSetting {
  double alpha = 1.0;     // frequency scale in (0, 1]
  double slowdown = 1.0;  // 1 / alpha
};

/// Largest frequency scale keeping the device under its ceiling at full
/// utilization; bisection to 1e-4 relative tolerance. InfeasibleError when
/// idle power alone overheats the device.
DvfsSetting dvfs_max_utilization(const DeviceSpec& device, WearStatus wear,
                                 double ambient_c, const ThermalConfig& cfg);

}  // namespace bodynet

#endif  // BODYNET_THERMAL_HPP_
