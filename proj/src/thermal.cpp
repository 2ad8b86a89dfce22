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

#include "bodynet/thermal.hpp"

#include <cmath>

#include "bodynet/error.hpp"

namespace bodynet {

void ThermalConfig::validate(double ambient_c) const {
  if (!(t_skin_max_c < t_doffed_max_c)) {
    throw ValidationError("thermal.t_skin_max_c",
                          "must be below thermal.t_doffed_max_c");
  }
  if (!(t_skin_max_c > ambient_c)) {
    throw ValidationError("thermal.t_skin_max_c", "must exceed ambient_c");
  }
}

ThermalState initial_thermal_state(const Fleet& fleet) {
  ThermalState state;
  for (const DeviceSpec& d : fleet.devices) {
    state[d.id] = DeviceThermal{fleet.ambient_c, 0.0};
  }
  return state;
}

double power_of_utilization(const DeviceSpec& device, double util) {
  if (!(util >= 0.0 && util <= 1.0)) {
    throw DomainError("utilization " + std::to_string(util) +
                      " outside [0, 1]");
  }
  return device.idle_power_w +
         util * (device.active_power_w - device.idle_power_w);
}

double dvfs_power(const DeviceSpec& device, double alpha, double util) {
  if (!(util >= 0.0 && util <= 1.0)) {
    throw DomainError("utilization " + std::to_string(util) +
                      " outside [0, 1]");
  }
  return device.idle_power_w + util * alpha * alpha * alpha *
                                   (device.active_power_w - device.idle_power_w);
}

double steady_state_temp(double power_w, const DeviceSpec& device,
                         double ambient_c) {
  return ambient_c + power_w * device.r_th;
}

double time_constant_s(const DeviceSpec& device) {
  return device.r_th * device.c_th;
}

double temp_step(double temperature_c, const DeviceSpec& device, double power_w,
                 double ambient_c, double dt_s) {
  if (!(dt_s > 0.0)) throw DomainError("dt must be > 0");
  const double steady = steady_state_temp(power_w, device, ambient_c);
  return steady +
         (temperature_c - steady) * std::exp(-dt_s / time_constant_s(device));
}

std::string_view to_string(Proximity proximity) {
  switch (proximity) {
    case Proximity::kNear:
      return "near";
    case Proximity::kFar:
      return "far";
    case Proximity::kAbsent:
      return "absent";
  }
  return "absent";
}

Proximity parse_proximity(std::string_view text) {
  if (text == "near") return Proximity::kNear;
  if (text == "far") return Proximity::kFar;
  if (text == "absent") return Proximity::kAbsent;
  throw ValidationError("proximity", "must be near, far or absent");
}

void SensorWindow::validate() const {
  if (!(imu_std_g >= 0.0)) {
    throw ValidationError("sensor_windows.imu_std_g", "must be >= 0");
  }
  if (!(window_s > 0.0)) {
    throw ValidationError("sensor_windows.window_s", "must be > 0");
  }
}

WearStatus predict_wear_status(const SensorWindow& window,
                               const WearThresholds& thresholds) {
  switch (window.proximity) {
    case Proximity::kNear:
      return WearStatus::kWorn;
    case Proximity::kFar:
      return WearStatus::kDoffed;
    case Proximity::kAbsent:
      break;
  }
  return window.imu_std_g >= thresholds.motion_g ? WearStatus::kWorn
                                                 : WearStatus::kDoffed;
}

std::optional<double> temperature_ceiling(const DeviceSpec& device,
                                          WearStatus wear,
                                          const ThermalConfig& cfg) {
  if (wear == WearStatus::kDoffed) return cfg.t_doffed_max_c;
  if (device.skin_contact) return cfg.t_skin_max_c - cfg.skin_offset_c;
  return std::nullopt;
}

ThermalCheck thermal_feasible(const std::map<std::string, double>& util,
                              const std::map<std::string, WearStatus>& wear,
                              const Fleet& fleet, const ThermalConfig& cfg) {
  ThermalCheck check;
  for (const auto& [id, status] : wear) {
    const DeviceSpec& device = fleet.device(id);
    auto it = util.find(id);
    const double u = it == util.end() ? 0.0 : it->second;
    const double temp =
        steady_state_temp(power_of_utilization(device, u), device,
                          fleet.ambient_c);
    check.steady_temp_c[id] = temp;
    const std::optional<double> ceiling =
        temperature_ceiling(device, status, cfg);
    if (ceiling && temp > *ceiling) {
      check.feasible = false;
      check.violations.push_back(id);
    }
  }
  return check;
}

DvfsSetting dvfs_max_utilization(const DeviceSpec& device, WearStatus wear,
                                 double ambient_c, const ThermalConfig& cfg) {
  const std::optional<double> ceiling = temperature_ceiling(device, wear, cfg);
  auto fits = [&](double alpha) {
    return steady_state_temp(dvfs_power(device, alpha, 1.0), device,
                             ambient_c) <= *ceiling;
  };
  if (!ceiling || fits(1.0)) return DvfsSetting{1.0, 1.0};
  if (!fits(0.0)) {
    throw InfeasibleError("device '" + device.id +
                          "' exceeds its thermal ceiling at idle power");
  }
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-4 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (fits(mid) ? lo : hi) = mid;
  }
  if (!(lo > 0.0)) {
    throw InfeasibleError("device '" + device.id +
                          "' sits at its thermal ceiling at idle power");
  }
  return DvfsSetting{lo, 1.0 / lo};
}

}  // namespace bodynet
