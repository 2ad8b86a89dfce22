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


#include <cmath>
#include <random>

#include "bodynet/error.hpp"
#include "bodynet/thermal.hpp"
#include "builders.hpp"
#include "doctest.h"

using namespace bodynet;
using bodynet::testing::device;

namespace {

DeviceSpec hot(double idle, double active) {
  DeviceSpec d = device("h");
  d.idle_power_w = idle;
  d.active_power_w = active;
  d.r_th = 50;
  d.c_th = 0.2;
  return d;
}

}  // namespace

TEST_CASE("power is linear in utilization") {
  const DeviceSpec d = hot(0.1, 0.5);
  CHECK(power_of_utilization(d, 0) == doctest::Approx(0.1));
  CHECK(power_of_utilization(d, 1) == doctest::Approx(0.5));
  CHECK(power_of_utilization(d, 0.5) == doctest::Approx(0.3));
  CHECK_THROWS_AS(power_of_utilization(d, 1.01), DomainError);
  CHECK_THROWS_AS(power_of_utilization(d, -0.1), DomainError);
  CHECK_THROWS_AS(power_of_utilization(d, std::nan("")), DomainError);
}

TEST_CASE("steady state is ambient plus power times resistance") {
  const DeviceSpec d = hot(0.1, 0.5);
  CHECK(steady_state_temp(0.5, d, 25) == doctest::Approx(50.0));
  CHECK(steady_state_temp(0.0, d, 25) == doctest::Approx(25.0));
  CHECK(steady_state_temp(0.34, d, 25) == doctest::Approx(42.0));
}

TEST_CASE("exact exponential step") {
  const DeviceSpec d = hot(0.1, 0.5);
  const double tau = time_constant_s(d);
  CHECK(tau == doctest::Approx(10.0));
  CHECK(temp_step(50.0, d, 0.5, 25, 1.0) == doctest::Approx(50.0));
  CHECK(std::abs(temp_step(25.0, d, 0.5, 25, 20 * tau) - 50.0) <= 1e-6);
  CHECK(temp_step(25.0, d, 0.5, 25, tau) ==
        doctest::Approx(50.0 - 25.0 * std::exp(-1.0)).epsilon(1e-12));
  CHECK(temp_step(25.0, d, 0.5, 25, tau) == doctest::Approx(40.803).epsilon(1e-4));
}

TEST_CASE("two half steps equal one full step and trajectories never cross") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    DeviceSpec d = hot(0.01 + u(rng) * 0.2, 0.3 + u(rng));
    d.r_th = 5 + 95 * u(rng);
    d.c_th = 0.05 + 2 * u(rng);
    const double p = u(rng) * d.active_power_w;
    const double dt = 0.01 + 5 * u(rng);
    const double t0 = 20 + 40 * u(rng);
    const double twice = temp_step(temp_step(t0, d, p, 25, dt), d, p, 25, dt);
    CHECK(std::abs(twice - temp_step(t0, d, p, 25, 2 * dt)) <= 1e-9);
    const double ss = steady_state_temp(p, d, 25);
    double t = t0;
    for (int k = 0; k < 20; ++k) {
      const double next = temp_step(t, d, p, 25, dt);
      CHECK(std::abs(next - ss) <= std::abs(t - ss) + 1e-12);
      CHECK((next - ss) * (t0 - ss) >= -1e-12);
      t = next;
    }
  }
}

TEST_CASE("temperature stays at or above ambient under non-negative power") {
  const DeviceSpec d = hot(0.1, 0.5);
  double t = 25.0;
  for (int k = 0; k < 100; ++k) {
    t = temp_step(t, d, (k % 3) * 0.2, 25, 0.7);
    CHECK(t >= 25.0 - 1e-12);
  }
}

TEST_CASE("wear status follows proximity first, then motion") {
  SensorWindow w;
  w.device = "d";
  w.proximity = Proximity::kNear;
  w.imu_std_g = 0.0;
  CHECK(predict_wear_status(w) == WearStatus::kWorn);
  w.proximity = Proximity::kFar;
  w.imu_std_g = 1.0;
  CHECK(predict_wear_status(w) == WearStatus::kDoffed);
  w.proximity = Proximity::kAbsent;
  w.imu_std_g = 0.001;
  CHECK(predict_wear_status(w) == WearStatus::kDoffed);
  w.imu_std_g = 0.12;
  CHECK(predict_wear_status(w) == WearStatus::kWorn);
  w.imu_std_g = 0.05;
  CHECK(predict_wear_status(w) == WearStatus::kWorn);
  CHECK(predict_wear_status(w, WearThresholds{0.2}) == WearStatus::kDoffed);
  w.window_s = 0;
  CHECK_THROWS_AS(w.validate(), ValidationError);
}

TEST_CASE("synthetic windows with margin classify consistently") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> still(0.0, 0.03);
  std::uniform_real_distribution<double> moving(0.08, 0.6);
  for (int i = 0; i < 1000; ++i) {
    SensorWindow w;
    w.device = "d";
    const bool worn = rng() % 2;
    w.imu_std_g = worn ? moving(rng) : still(rng);
    CHECK(predict_wear_status(w) == (worn ? WearStatus::kWorn : WearStatus::kDoffed));
  }
}

TEST_CASE("worn ceiling at 42 versus doffed ceiling at 60") {
  Fleet f;
  f.ambient_c = 25;
  f.devices = {hot(0.1, 0.5)};
  const ThermalConfig cfg;
  const std::map<std::string, double> full{{"h", 1.0}};
  const ThermalCheck worn = thermal_feasible(full, {{"h", WearStatus::kWorn}}, f, cfg);
  CHECK_FALSE(worn.feasible);
  CHECK(worn.steady_temp_c.at("h") == doctest::Approx(50.0));
  CHECK(worn.violations == std::vector<std::string>{"h"});
  CHECK(thermal_feasible(full, {{"h", WearStatus::kDoffed}}, f, cfg).feasible);
  CHECK(thermal_feasible({}, {{"h", WearStatus::kWorn}}, f, cfg).feasible);
}

TEST_CASE("skin offset tightens the worn ceiling; no skin contact lifts it") {
  Fleet f;
  f.ambient_c = 25;
  DeviceSpec d = hot(0.0, 0.34);
  f.devices = {d};
  ThermalConfig cfg;
  const std::map<std::string, double> full{{"h", 1.0}};
  CHECK(thermal_feasible(full, {{"h", WearStatus::kWorn}}, f, cfg).feasible);
  cfg.skin_offset_c = 0.5;
  CHECK_FALSE(thermal_feasible(full, {{"h", WearStatus::kWorn}}, f, cfg).feasible);
  f.devices[0].skin_contact = false;
  CHECK(thermal_feasible(full, {{"h", WearStatus::kWorn}}, f, cfg).feasible);
  CHECK_FALSE(temperature_ceiling(f.devices[0], WearStatus::kWorn, cfg).has_value());
}

TEST_CASE("feasibility is monotone in worn-device utilization") {
  Fleet f;
  f.ambient_c = 25;
  f.devices = {hot(0.1, 0.5)};
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 500; ++i) {
    const double hi = u(rng);
    const double lo = hi * u(rng);
    const bool at_hi = thermal_feasible({{"h", hi}}, {{"h", WearStatus::kWorn}}, f, {}).feasible;
    const bool at_lo = thermal_feasible({{"h", lo}}, {{"h", WearStatus::kWorn}}, f, {}).feasible;
    if (at_hi) CHECK(at_lo);
  }
}

TEST_CASE("DVFS scale solves the cubic power budget") {
  const ThermalConfig cfg;
  const DeviceSpec d = hot(0.1, 0.9);
  const DvfsSetting s = dvfs_max_utilization(d, WearStatus::kWorn, 25, cfg);
  const double exact = std::cbrt(0.3);
  CHECK(s.alpha == doctest::Approx(exact).epsilon(1e-4));
  CHECK(s.alpha == doctest::Approx(0.6694).epsilon(1e-3));
  CHECK(s.slowdown == doctest::Approx(1.0 / s.alpha));
  CHECK(steady_state_temp(dvfs_power(d, s.alpha, 1.0), d, 25) <= 42.0);
  CHECK(steady_state_temp(dvfs_power(d, s.alpha, 1.0), d, 25) ==
        doctest::Approx(42.0).epsilon(1e-3));
  CHECK(steady_state_temp(dvfs_power(d, s.alpha + 1e-3, 1.0), d, 25) > 42.0);
}

TEST_CASE("DVFS boundary and infeasible cases") {
  const ThermalConfig cfg;
  const DeviceSpec exact = hot(0.1, 0.34);
  CHECK(dvfs_max_utilization(exact, WearStatus::kWorn, 25, cfg).alpha == 1.0);
  const DeviceSpec idle_hot = hot(0.4, 0.9);
  CHECK(steady_state_temp(0.4, idle_hot, 25) == doctest::Approx(45.0));
  CHECK_THROWS_AS(dvfs_max_utilization(idle_hot, WearStatus::kWorn, 25, cfg),
                  InfeasibleError);
  // Full speed would reach 70 C, over the doffed ceiling.
  const auto doffed = dvfs_max_utilization(idle_hot, WearStatus::kDoffed, 25, cfg);
  CHECK(doffed.alpha > 0.0);
  CHECK(doffed.alpha < 1.0);
  CHECK(steady_state_temp(dvfs_power(idle_hot, doffed.alpha, 1.0), idle_hot, 25) ==
        doctest::Approx(60.0).epsilon(1e-3));
}

TEST_CASE("thermal config validation") {
  ThermalConfig cfg;
  CHECK_NOTHROW(cfg.validate(25));
  cfg.t_skin_max_c = 61;
  CHECK_THROWS_AS(cfg.validate(25), ValidationError);
  cfg = ThermalConfig{};
  CHECK_THROWS_AS(cfg.validate(45), ValidationError);
}
