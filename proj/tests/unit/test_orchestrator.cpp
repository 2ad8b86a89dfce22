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
#include <cmath>
#include <random>

#include "bodynet/error.hpp"
#include "bodynet/orchestrator.hpp"
#include "bodynet/report.hpp"
#include "builders.hpp"
#include "doctest.h"
#include "instances.hpp"

using namespace bodynet;
using namespace bodynet::testing;

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// 1.2 MB of 8-bit weights over 10 layers: eight of 100 kB, two of 200 kB.
std::shared_ptr<ModelGraph> mobilenet_like() {
  auto m = chain("mobilenet_like", 10, 2000000, 100000, 4096, 49152);
  m->layers[8].weight_count = 200000;
  m->layers[9].weight_count = 200000;
  return m;
}

struct Setup {
  std::unique_ptr<Fleet> fleet = std::make_unique<Fleet>();
  std::vector<AppSpec> apps;

  std::vector<BoundApp> bound() const {
    std::vector<OorReport> unbound;
    auto b = bind_apps(apps, *fleet, Availability(*fleet), unbound);
    REQUIRE(unbound.empty());
    return b;
  }
  PlanningContext ctx() const {
    PlanningContext c;
    c.fleet = fleet.get();
    c.availability = Availability(*fleet);
    return c;
  }
};

Setup accelerators(std::size_t n) {
  Setup s;
  for (std::size_t i = 0; i < n; ++i) {
    DeviceSpec d = device("acc" + std::to_string(i));
    if (i == 0) {
      d.sensors = {"camera"};
      d.outputs = {"haptic"};
    }
    s.fleet->devices.push_back(d);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      connect(*s.fleet, s.fleet->devices[a].id, s.fleet->devices[b].id, 1e6, 1e-3);
    }
  }
  return s;
}

JointPlan fake(double period, double energy, std::size_t segments,
               const std::string& first_device = "a") {
  JointPlan p;
  PlannedApp a;
  a.plan.app = "x";
  for (std::size_t i = 0; i < segments; ++i) {
    a.plan.segments.push_back({i == 0 ? first_device : "d" + std::to_string(i), {i, i + 1}});
  }
  p.apps.push_back(a);
  p.cost.shared_period_s = period;
  p.cost.total_energy_j = energy;
  return p;
}

JointPlan search_best(const std::vector<BoundApp>& bound, const PlanningContext& ctx,
                      const SearchConfig& cfg = {}, const Objective& obj = {}) {
  return select_plan(generate_plan_candidates(bound, ctx, cfg), obj);
}

}  // namespace

TEST_CASE("cut candidate enumeration") {
  auto three = chain("t", 3, 1, 1, 1);
  const auto c3 = enumerate_cut_candidates(*three, 2);
  CHECK(c3 == std::vector<std::vector<std::size_t>>{{}, {1}, {2}});
  auto five = chain("f", 5, 1, 1, 1);
  CHECK(enumerate_cut_candidates(*five, 1) == std::vector<std::vector<std::size_t>>{{}});
  CHECK(enumerate_cut_candidates(*five, 3).size() == 11);
  CHECK_THROWS_AS(enumerate_cut_candidates(*five, 0), RangeError);
  for (std::size_t n = 1; n <= 10; ++n) {
    auto m = chain("m", n, 1, 1, 1);
    for (std::size_t k = 1; k <= 5; ++k) {
      std::size_t expected = 0;
      for (std::size_t j = 0; j < k; ++j) expected += binomial(n - 1, j);
      const auto all = enumerate_cut_candidates(*m, k);
      CHECK(all.size() == expected);
      for (const auto& cuts : all) {
        CHECK(std::is_sorted(cuts.begin(), cuts.end()));
        CHECK(std::adjacent_find(cuts.begin(), cuts.end()) == cuts.end());
      }
    }
  }
}

TEST_CASE("objective and search settings are validated") {
  Objective o;
  o.kind = Objective::Kind::kMinEnergy;
  o.throughput_floor = 0.0;
  CHECK_THROWS_AS(o.validate(), ValidationError);
  o.throughput_floor = 5.0;
  CHECK_NOTHROW(o.validate());
  SearchConfig c;
  c.max_segments = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = SearchConfig{};
  c.beam_width = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = SearchConfig{};
  c.local_search_iters = 0;
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("a 1.2 MB model needs three 442 KB devices") {
  const auto model = mobilenet_like();
  CHECK(total_weight_footprint(*model) == 1200000);

  Setup three = accelerators(3);
  three.apps = {app("vision", model, "camera", "haptic")};
  SearchConfig cfg;
  cfg.max_segments = 3;
  const JointPlan best = search_best(three.bound(), three.ctx(), cfg);
  REQUIRE(best.apps.size() == 1);
  CHECK(best.apps[0].plan.segments.size() == 3);
  CHECK(memory_violations(best.apps, *three.fleet, Availability(*three.fleet)).empty());

  Setup one = accelerators(1);
  one.apps = three.apps;
  try {
    generate_plan_candidates(one.bound(), one.ctx(), cfg);
    FAIL("expected OutOfResource");
  } catch (const OutOfResource& e) {
    REQUIRE(e.reports().size() == 1);
    CHECK(e.reports()[0].constraint == Constraint::kWeightMemory);
    CHECK(e.reports()[0].app == "vision");
  }
  const CandidateSet partial = search_plan_candidates(one.bound(), one.ctx(), cfg);
  CHECK(partial.oor.size() == 1);
}

TEST_CASE("two devices cannot hold it either, under the baseline or the search") {
  Setup two = accelerators(2);
  two.apps = {app("vision", mobilenet_like(), "camera", "haptic")};
  CHECK_THROWS_AS(neurosurgeon_baseline(two.bound()[0], two.ctx()), OutOfResource);
  CHECK_THROWS_AS(generate_plan_candidates(two.bound(), two.ctx(), {}), OutOfResource);
  Setup three = accelerators(3);
  three.apps = two.apps;
  CHECK_NOTHROW(generate_plan_candidates(three.bound(), three.ctx(), {}));
}

TEST_CASE("selection by period, segment count and device sequence") {
  const std::vector<JointPlan> by_period{fake(3e-3, 1, 1), fake(2e-3, 9, 1)};
  CHECK(select_plan(by_period, {}).cost.shared_period_s == 2e-3);
  const std::vector<JointPlan> by_segments{fake(2e-3, 1, 3), fake(2e-3, 1, 2)};
  CHECK(select_plan(by_segments, {}).total_segments() == 2);
  const std::vector<JointPlan> by_sequence{fake(2e-3, 1, 2, "b"), fake(2e-3, 1, 2, "a")};
  CHECK(select_plan(by_sequence, {}).apps[0].plan.segments[0].device == "a");

  Objective energy;
  energy.kind = Objective::Kind::kMinEnergy;
  const std::vector<JointPlan> by_energy{fake(1e-3, 5, 1), fake(4e-3, 2, 1)};
  CHECK(select_plan(by_energy, energy).cost.total_energy_j == 2);
  energy.throughput_floor = 500.0;
  CHECK(select_plan(by_energy, energy).cost.total_energy_j == 5);
  energy.throughput_floor = 100.0;
  const std::vector<JointPlan> slow{fake(1.0 / 50, 1, 1), fake(1.0 / 50, 2, 2)};
  CHECK_THROWS_AS(select_plan(slow, energy), NoCandidateMeetsFloor);
  CHECK_THROWS_AS(select_plan(std::vector<JointPlan>{}, {}), Error);
}

TEST_CASE("first segment sits on the sensor device when the link is costly") {
  // Two identical devices, four identical layers, a slow link.
  Setup s;
  DeviceSpec a = device("a");
  a.sensors = {"mic"};
  a.outputs = {"buzz"};
  DeviceSpec b = device("b");
  b.outputs = {"buzz"};
  s.fleet->devices = {a, b};
  connect(*s.fleet, "a", "b", 2e5, 1e-3);
  auto m = chain("m", 4, 6400000, 1000, 100, 4000);
  s.apps = {app("kws", m, "mic", "buzz")};
  const auto bound = s.bound();
  const JointPlan best = search_best(bound, s.ctx());
  CHECK(best.apps[0].plan.segments.front().device == "a");
  const JointPlan oracle = brute_force_optimal(bound, s.ctx(), {});
  CHECK(oracle.apps[0].plan.segments.front().device == "a");
  CHECK(best.cost.shared_period_s == doctest::Approx(oracle.cost.shared_period_s));
}

TEST_CASE("source-target awareness over random symmetric instances") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    Setup s;
    DeviceSpec a = device("a");
    DeviceSpec b = device("b");
    const bool sensor_on_b = rng() % 2;
    (sensor_on_b ? b : a).sensors = {"s"};
    a.outputs = b.outputs = {"o"};
    s.fleet->devices = {a, b};
    connect(*s.fleet, "a", "b", 1e5 + static_cast<double>(rng() % 900) * 1e3,
            static_cast<double>(1 + rng() % 3) * 1e-3, 2e-8);
    const std::size_t n = 2 + rng() % 5;
    // The raw input costs more link time than the whole chain's compute.
    auto m = chain("m", n, 1000000 + rng() % 4000000, 1000, 200 + rng() % 3000,
                   50000 + rng() % 50000);
    s.apps = {app("x", m, "s", "o")};
    const auto bound = s.bound();
    const std::string sensor = sensor_on_b ? "b" : "a";
    CHECK(search_best(bound, s.ctx()).apps[0].plan.segments.front().device == sensor);
    CHECK(brute_force_optimal(bound, s.ctx(), {}).apps[0].plan.segments.front().device ==
          sensor);
  }
}

TEST_CASE("oracle keeps a chain whole when transfers dominate") {
  Setup s;
  DeviceSpec a = device("a");
  a.sensors = {"s"};
  a.outputs = {"o"};
  s.fleet->devices = {a, device("b")};
  connect(*s.fleet, "a", "b", 1e5, 5e-3);
  s.apps = {app("x", chain("m", 3, 640000, 10, 500), "s", "o")};
  const JointPlan best = brute_force_optimal(s.bound(), s.ctx(), {});
  REQUIRE(best.apps[0].plan.segments.size() == 1);
  CHECK(best.apps[0].plan.segments[0].device == "a");
}

TEST_CASE("oracle on one device returns one segment; oversized instances are refused") {
  Setup one = accelerators(1);
  one.apps = {app("x", chain("m", 5, 100000, 10, 10), "camera", "haptic")};
  const JointPlan best = brute_force_optimal(one.bound(), one.ctx(), {});
  CHECK(best.apps[0].plan.segments ==
        std::vector<Segment>{{"acc0", {0, 5}}});

  Setup big = accelerators(2);
  big.apps = {app("x", chain("m", 9, 1, 1, 1), "camera", "haptic")};
  CHECK_THROWS_AS(brute_force_optimal(big.bound(), big.ctx(), {}), InstanceTooLarge);
  Setup wide = accelerators(4);
  wide.apps = {app("x", chain("m", 3, 1, 1, 1), "camera", "haptic")};
  CHECK_THROWS_AS(brute_force_optimal(wide.bound(), wide.ctx(), {}), InstanceTooLarge);
}

TEST_CASE("baseline split points at the boundaries") {
  Setup s;
  DeviceSpec local = device("local");
  local.device_class = DeviceClass::kMcu;
  local.num_processors = 1;
  local.weight_mem_bytes = 300000;
  local.sensors = {"s"};
  local.outputs = {"o"};
  DeviceSpec big = device("big");
  s.fleet->devices = {big, local};
  connect(*s.fleet, "local", "big", 1e9, 0.0);
  auto m = chain("m", 4, 2000000, 50000, 1000, 1000);
  s.apps = {app("x", m, "s", "o")};
  const ExecutionPlan remote = neurosurgeon_baseline(s.bound()[0], s.ctx());
  CHECK(remote.segments == std::vector<Segment>{{"big", {0, 4}}});

  // A starved link keeps everything local, which fits.
  s.fleet->links.clear();
  connect(*s.fleet, "local", "big", 1.0, 0.0);
  const ExecutionPlan local_only = neurosurgeon_baseline(s.bound()[0], s.ctx());
  REQUIRE(!local_only.segments.empty());
  CHECK(local_only.segments[0].device == "local");
  CHECK(local_only.segments[0].layers == LayerRange{0, 4});
}

TEST_CASE("baseline uses the largest-memory device and respects fixed plans") {
  Setup s = accelerators(3);
  s.fleet->devices[2].weight_mem_bytes = 442001;
  auto m = chain("m", 4, 1000000, 100000, 500);
  s.apps = {app("x", m, "camera", "haptic")};
  const ExecutionPlan p = neurosurgeon_baseline(s.bound()[0], s.ctx());
  for (const Segment& seg : p.segments) {
    CHECK((seg.device == "acc0" || seg.device == "acc2"));
  }
  CHECK(p.segments.size() <= 2);
  PlanningContext full = s.ctx();
  full.fixed = {planned(s.apps[0], s.bound()[0].binding, {{"acc0", {0, 4}}})};
  full.fixed[0].plan.app = "other";
  full.fixed.push_back(planned(s.apps[0], s.bound()[0].binding, {{"acc2", {0, 4}}}));
  full.fixed[1].plan.app = "third";
  CHECK_THROWS_AS(neurosurgeon_baseline(s.bound()[0], full), OutOfResource);
}

TEST_CASE("route and thermal constraints are diagnosed") {
  Setup s;
  DeviceSpec a = device("a");
  a.sensors = {"s"};
  a.weight_mem_bytes = 1000;
  DeviceSpec b = device("b");
  b.outputs = {"o"};
  s.fleet->devices = {a, b};
  s.apps = {app("x", chain("m", 2, 1000, 800, 10), "s", "o")};
  try {
    generate_plan_candidates(s.bound(), s.ctx(), {});
    FAIL("expected OutOfResource");
  } catch (const OutOfResource& e) {
    CHECK(e.reports().at(0).constraint == Constraint::kRoute);
  }

  Setup hot;
  DeviceSpec w = device("w");
  w.sensors = {"s"};
  w.outputs = {"o"};
  w.idle_power_w = 0.1;
  w.active_power_w = 0.9;
  hot.fleet->devices = {w};
  hot.apps = {app("x", chain("m", 2, 6400000, 10, 10), "s", "o")};
  try {
    generate_plan_candidates(hot.bound(), hot.ctx(), {});
    FAIL("expected OutOfResource");
  } catch (const OutOfResource& e) {
    CHECK(e.reports().at(0).constraint == Constraint::kThermal);
  }
}

TEST_CASE("constraint names round-trip") {
  for (Constraint c : {Constraint::kWeightMemory, Constraint::kBiasMemory,
                       Constraint::kDataMemory, Constraint::kRoute, Constraint::kThermal,
                       Constraint::kBinding, Constraint::kThroughputFloor}) {
    CHECK(parse_constraint(to_string(c)) == c);
  }
  CHECK_THROWS_AS(parse_constraint("gravity"), Error);
}

TEST_CASE("search is deterministic down to the serialized report") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    InstanceShape shape;
    shape.max_apps = 3;
    shape.max_devices = 4;
    const Instance inst = random_instance(1000 + seed, shape);
    SearchConfig cfg;
    cfg.seed = seed;
    auto render = [&] {
      const CandidateSet set = search_plan_candidates(inst.bound, inst.context(), cfg);
      if (set.ranked.empty()) return std::string("none");
      const JointPlan p = select_plan(set.ranked, {});
      return plan_report_to_json(make_plan_report(p.apps, set.oor, *inst.fleet,
                                                  Availability(*inst.fleet)));
    };
    CHECK(render() == render());
  }
}

TEST_CASE("no false out-of-resource on small instances") {
  InstanceShape shape;
  shape.max_apps = 2;
  shape.max_layers = 6;
  shape.max_devices = 3;
  shape.memory_scale = 0.4;
  int feasible = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance inst = random_instance(seed, shape);
    if (inst.bound.size() != inst.apps.size()) continue;
    bool oracle_ok = true;
    try {
      brute_force_optimal(inst.bound, inst.context(), {});
    } catch (const OutOfResource&) {
      oracle_ok = false;
    }
    if (!oracle_ok) continue;
    ++feasible;
    CHECK_NOTHROW(generate_plan_candidates(inst.bound, inst.context(), {}));
  }
  CHECK(feasible > 10);
}

TEST_CASE("every candidate respects memory on random instances") {
  InstanceShape shape;
  shape.memory_scale = 0.5;
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const Instance inst = random_instance(5000 + seed, shape);
    const CandidateSet set = search_plan_candidates(inst.bound, inst.context(), {});
    for (const JointPlan& p : set.ranked) {
      const auto v = memory_violations(p.apps, *inst.fleet, Availability(*inst.fleet));
      CHECK_MESSAGE(v.empty(), "seed ", seed, ": ", v.empty() ? "" : v[0]);
    }
  }
}

TEST_CASE("fixed plans keep their memory") {
  Setup s = accelerators(1);
  auto m = chain("m", 2, 1000, 150000, 10);
  s.apps = {app("a", m, "camera", "haptic"), app("b", m, "camera", "haptic")};
  const auto bound = s.bound();
  PlanningContext ctx = s.ctx();
  ctx.fixed = {planned(s.apps[0], bound[0].binding, {{"acc0", {0, 2}}})};
  const std::vector<BoundApp> only_b{bound[1]};
  CHECK_THROWS_AS(generate_plan_candidates(only_b, ctx, {}), OutOfResource);
  ctx.fixed.clear();
  CHECK_NOTHROW(generate_plan_candidates(only_b, ctx, {}));
}

TEST_CASE("replan leaves untouched apps alone") {
  Setup s = accelerators(4);
  for (auto& d : s.fleet->devices) d.sensors.insert("camera");
  auto small = chain("small", 3, 2000000, 30000, 500);
  s.apps = {app("w1", small, "camera", "haptic"), app("w2", small, "camera", "haptic"),
            app("w3", small, "camera", "haptic")};
  const Planner planner = orchestrator_planner({}, {});
  const Availability start(*s.fleet);
  const PlanOutcome first = planner(s.bound(), s.ctx());
  REQUIRE(first.oor.empty());
  REQUIRE(first.plans.size() == 3);

  // A doff on a device that hosts nothing and binds nothing.
  std::set<std::string> used;
  for (const auto& p : first.plans) {
    used.insert(p.binding.sensor_device);
    used.insert(p.binding.output_device);
    for (const auto& seg : p.plan.segments) used.insert(seg.device);
  }
  for (const auto& d : s.fleet->devices) {
    if (used.contains(d.id)) continue;
    Availability after = start;
    const AvailabilityEvent doff{1.0, d.id, AvailabilityChange::kDoffed};
    after.apply(doff);
    const ReplanResult r = replan_on_event(first.plans, {}, doff, s.apps, *s.fleet,
                                           after, {}, planner);
    CHECK(r.diff.empty());
    CHECK(r.plans.size() == 3);
  }

  // Remove a device hosting w3 that nobody is bound to.
  const PlannedApp& w3 = first.plans[2];
  std::string victim;
  for (const auto& seg : w3.plan.segments) {
    if (seg.device != w3.binding.sensor_device && seg.device != w3.binding.output_device)
      victim = seg.device;
  }
  if (victim.empty()) {
    // Force a placement that does use a spare device.
    PlanOutcome forced = first;
    forced.plans[2].plan.segments = {{"acc3", {0, 3}}};
    victim = "acc3";
    for (int i = 0; i < 2; ++i) {
      for (const auto& seg : forced.plans[i].plan.segments) REQUIRE(seg.device != "acc3");
    }
    Availability after = start;
    const AvailabilityEvent leave{2.0, victim, AvailabilityChange::kLeave};
    after.apply(leave);
    const ReplanResult r = replan_on_event(forced.plans, {}, leave, s.apps, *s.fleet,
                                           after, {}, planner);
    REQUIRE(r.diff.size() == 1);
    CHECK(r.diff[0].app == "w3");
    CHECK(r.plans[0].plan == forced.plans[0].plan);
    CHECK(r.plans[1].plan == forced.plans[1].plan);
    return;
  }
  Availability after = start;
  const AvailabilityEvent leave{2.0, victim, AvailabilityChange::kLeave};
  after.apply(leave);
  const ReplanResult r =
      replan_on_event(first.plans, {}, leave, s.apps, *s.fleet, after, {}, planner);
  for (const auto& e : r.diff) {
    bool hosts = false;
    for (const auto& p : first.plans) {
      if (p.plan.app != e.app) continue;
      for (const auto& seg : p.plan.segments) hosts |= seg.device == victim;
    }
    CHECK(hosts);
  }
  for (const auto& p : r.plans) {
    for (const auto& seg : p.plan.segments) CHECK(seg.device != victim);
  }
}

TEST_CASE("putting a hot device back on the body forces an offload") {
  // desk starts doffed and runs the app hot; wearing it caps it at 42 C.
  Setup s;
  DeviceSpec desk = device("desk");
  desk.sensors = {"imu"};
  desk.outputs = {"haptic"};
  desk.idle_power_w = 0.1;
  desk.active_power_w = 0.5;
  DeviceSpec spare = device("spare");
  spare.idle_power_w = 0.1;
  spare.active_power_w = 0.5;
  s.fleet->devices = {desk, spare};
  s.fleet->initial_status["desk"] = InitialDeviceState{true, WearStatus::kDoffed};
  s.fleet->initial_status["spare"] = InitialDeviceState{true, WearStatus::kDoffed};
  connect(*s.fleet, "desk", "spare", 1e7, 0.0);
  s.apps = {app("act", chain("m", 1, 6400000, 1000, 8, 8), "imu", "haptic")};
  const PlanningContext ctx = s.ctx();
  const Planner planner = orchestrator_planner({}, {});
  const PlanOutcome first = planner(s.bound(), ctx);
  REQUIRE(first.plans.size() == 1);
  REQUIRE(first.plans[0].plan.segments[0].device == "desk");

  Availability after = ctx.availability;
  const AvailabilityEvent worn{5.0, "desk", AvailabilityChange::kWorn};
  after.apply(worn);
  const ReplanResult r =
      replan_on_event(first.plans, {}, worn, s.apps, *s.fleet, after, {}, planner);
  REQUIRE(r.diff.size() == 1);
  REQUIRE(r.plans.size() == 1);
  CHECK(r.plans[0].plan.segments[0].device == "spare");
  const WorkloadCost w = workload_cost(r.plans, *s.fleet);
  const ThermalCheck t = thermal_feasible({{"desk", w.utilization("desk")}},
                                          {{"desk", WearStatus::kWorn}}, *s.fleet, {});
  CHECK(t.feasible);
}

TEST_CASE("an app that lost its sensor is suspended and retried on rejoin") {
  Setup s = accelerators(2);
  s.apps = {app("x", chain("m", 2, 1000, 1000, 10), "camera", "haptic")};
  const Planner planner = orchestrator_planner({}, {});
  const PlanOutcome first = planner(s.bound(), s.ctx());
  Availability gone(*s.fleet);
  const AvailabilityEvent leave{1.0, "acc0", AvailabilityChange::kLeave};
  gone.apply(leave);
  const ReplanResult r1 =
      replan_on_event(first.plans, {}, leave, s.apps, *s.fleet, gone, {}, planner);
  CHECK(r1.plans.empty());
  REQUIRE(r1.suspended.size() == 1);
  CHECK(r1.suspended[0].constraint == Constraint::kBinding);

  Availability back = gone;
  const AvailabilityEvent join{2.0, "acc0", AvailabilityChange::kJoin};
  back.apply(join);
  const ReplanResult r2 =
      replan_on_event(r1.plans, r1.suspended, join, s.apps, *s.fleet, back, {}, planner);
  CHECK(r2.plans.size() == 1);
  CHECK(r2.suspended.empty());
}
