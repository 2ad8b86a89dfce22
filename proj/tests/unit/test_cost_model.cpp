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

#include "bodynet/cost_model.hpp"
#include "bodynet/error.hpp"
#include "builders.hpp"
#include "doctest.h"

using namespace bodynet;
using namespace bodynet::testing;

namespace {

// 6.4e9 MAC/s with the default test device.
constexpr double kMacsPerMs = 6.4e6;

ExecutionPlan plan_of(const std::string& app, std::vector<Segment> segs) {
  return ExecutionPlan{app, std::move(segs)};
}

// Independent latency: walk the stages.
double stage_sum(const ModelGraph& m, const ExecutionPlan& p, const Fleet& f,
                 const Binding& b) {
  double total = 0.0;
  std::string prev = b.sensor_device;
  std::uint64_t bytes = m.input_bytes;
  auto hop = [&](const std::string& to) {
    if (to == prev) return;
    const LinkSpec* l = f.find_link(prev, to);
    total += l->latency_s + static_cast<double>(bytes) / l->bandwidth_bytes_per_s;
  };
  for (const Segment& s : p.segments) {
    hop(s.device);
    const DeviceSpec& d = f.device(s.device);
    for (std::size_t i = s.layers.begin; i < s.layers.end; ++i) {
      total += static_cast<double>(m.layers[i].macs) / d.mac_rate() +
               d.per_layer_overhead_s;
    }
    prev = s.device;
    bytes = m.layers[s.layers.end - 1].out_activation_bytes;
  }
  hop(b.output_device);
  return total;
}

Fleet mesh(std::size_t n, std::mt19937_64& rng) {
  Fleet f;
  for (std::size_t i = 0; i < n; ++i) {
    DeviceSpec d = device("d" + std::to_string(i));
    d.clock_hz = 5e7 + static_cast<double>(rng() % 150) * 1e6;
    d.per_layer_overhead_s = static_cast<double>(rng() % 5) * 1e-5;
    f.devices.push_back(d);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      connect(f, f.devices[a].id, f.devices[b].id,
              1e5 + static_cast<double>(rng() % 1000) * 1e4,
              static_cast<double>(rng() % 3) * 1e-3, 1e-8);
    }
  }
  return f;
}

ExecutionPlan random_plan(const ModelGraph& m, std::size_t n_dev,
                          std::mt19937_64& rng) {
  ExecutionPlan p;
  p.app = "a";
  std::size_t begin = 0;
  while (begin < m.layers.size()) {
    const std::size_t end = begin + 1 + rng() % (m.layers.size() - begin);
    p.segments.push_back({"d" + std::to_string(rng() % n_dev), {begin, end}});
    begin = end;
  }
  return p;
}

}  // namespace

TEST_CASE("layer latency follows the MAC-throughput form") {
  DeviceSpec d = device("d");
  CHECK(layer_compute_latency(layer("l", 1280000, 0, 1), d) ==
        doctest::Approx(2.0e-4).epsilon(1e-12));
  d.per_layer_overhead_s = 1e-5;
  CHECK(layer_compute_latency(layer("l", 0, 0, 1), d) ==
        doctest::Approx(1e-5).epsilon(1e-12));
  d.macs_per_cycle_per_processor = 2;
  CHECK(layer_compute_latency(layer("l", 1280000, 0, 1), d) ==
        doctest::Approx(1e-4 + 1e-5).epsilon(1e-12));
}

TEST_CASE("transfer latency is fixed latency plus serialization") {
  CHECK(transfer_latency(32768, link("a", "b", 1e6, 1e-3)) ==
        doctest::Approx(0.033768).epsilon(1e-12));
  Fleet f;
  f.devices = {device("a"), device("b")};
  CHECK(transfer_latency(32768, f, "a", "a") == 0.0);
  CHECK_THROWS_AS(transfer_latency(1, f, "a", "b"), NoRouteError);
}

TEST_CASE("single segment between sensor and output") {
  Fleet f;
  f.devices = {device("s"), device("c"), device("o")};
  f.links = {link("s", "c", 1e6), link("c", "o", 1e6)};
  ModelGraph m;
  m.name = "m";
  m.input_bytes = 2000;
  m.layers = {layer("l", static_cast<std::uint64_t>(kMacsPerMs), 0, 3000)};
  const PlanCost c =
      plan_cost(m, plan_of("a", {{"c", {0, 1}}}), f, {"a", "s", "o"});
  CHECK(c.latency_s == doctest::Approx(6e-3));
  CHECK(c.period_s == doctest::Approx(3e-3));
  CHECK(c.device_busy_s.at("c") == doctest::Approx(1e-3));
  CHECK(c.link_busy_s.at({"s", "c"}) == doctest::Approx(2e-3));
  CHECK(c.link_busy_s.at({"c", "o"}) == doctest::Approx(3e-3));
}

TEST_CASE("two segments with one hop pipeline at the slowest stage") {
  Fleet f;
  f.devices = {device("a"), device("b")};
  f.links = {link("a", "b", 1e6)};
  ModelGraph m;
  m.name = "m";
  m.layers = {layer("x", static_cast<std::uint64_t>(kMacsPerMs), 0, 1000),
              layer("y", static_cast<std::uint64_t>(2 * kMacsPerMs), 0, 10)};
  const PlanCost c = plan_cost(m, plan_of("a", {{"a", {0, 1}}, {"b", {1, 2}}}), f,
                               {"a", "a", "b"});
  CHECK(c.latency_s == doctest::Approx(4e-3));
  CHECK(c.period_s == doctest::Approx(2e-3));
}

TEST_CASE("energy is dynamic compute energy plus link energy") {
  Fleet f;
  DeviceSpec a = device("a");
  a.idle_power_w = 0.0;
  a.active_power_w = 0.5;
  f.devices = {a, device("b")};
  f.links = {link("a", "b", 1e9, 0.0, 1e-6)};
  ModelGraph m;
  m.name = "m";
  m.input_bytes = 1;
  m.layers = {layer("x", static_cast<std::uint64_t>(2 * kMacsPerMs), 0, 1000)};
  const PlanCost c = plan_cost(m, plan_of("a", {{"a", {0, 1}}}), f, {"a", "a", "b"});
  CHECK(c.energy_j == doctest::Approx(2.0e-3));
  CHECK(c.link_energy_j == doctest::Approx(1.0e-3));
}

TEST_CASE("apps sharing a device serialize; disjoint apps keep solo periods") {
  Fleet f;
  f.devices = {device("d"), device("e")};
  auto m = chain("m", 1, static_cast<std::uint64_t>(kMacsPerMs), 0, 1);
  const AppSpec a1 = app("a1", m, "x", "y");
  const AppSpec a2 = app("a2", m, "x", "y");
  const std::vector<PlannedApp> shared{planned(a1, {"a1", "d", "d"}, {{"d", {0, 1}}}),
                                       planned(a2, {"a2", "d", "d"}, {{"d", {0, 1}}})};
  const WorkloadCost w = workload_cost(shared, f);
  CHECK(w.shared_period_s >= 2e-3 - 1e-12);
  CHECK(w.utilization("d") == doctest::Approx(1.0));

  const std::vector<PlannedApp> apart{planned(a1, {"a1", "d", "d"}, {{"d", {0, 1}}}),
                                      planned(a2, {"a2", "e", "e"}, {{"e", {0, 1}}})};
  const WorkloadCost v = workload_cost(apart, f);
  CHECK(v.shared_period_s == doctest::Approx(1e-3));
  CHECK(v.per_app.at("a1").period_s == doctest::Approx(1e-3));
  CHECK(v.per_app.at("a2").period_s == doctest::Approx(1e-3));
}

TEST_CASE("three-app contention matches a hand tally of stage loads") {
  // Compute in ms: a1 = 2 on d0 then 1 on d1; a2 = 3 on d1; a3 = 1 on d2
  // then 2 on d0. Hops carry 1000 B over 1 MB/s (1 ms each).
  Fleet f;
  f.devices = {device("d0"), device("d1"), device("d2")};
  connect(f, "d0", "d1", 1e6);
  connect(f, "d2", "d0", 1e6);
  auto two = [](std::uint64_t x, std::uint64_t y) {
    auto m = std::make_shared<ModelGraph>();
    m->name = "m";
    m->layers = {layer("p", x * static_cast<std::uint64_t>(kMacsPerMs), 0, 1000),
                 layer("q", y * static_cast<std::uint64_t>(kMacsPerMs), 0, 1)};
    return m;
  };
  const AppSpec a1 = app("a1", two(2, 1), "s", "o");
  const AppSpec a2 = app("a2", chain("n", 1, 3 * static_cast<std::uint64_t>(kMacsPerMs), 0, 1), "s", "o");
  const AppSpec a3 = app("a3", two(1, 2), "s", "o");
  const std::vector<PlannedApp> plans{
      planned(a1, {"a1", "d0", "d1"}, {{"d0", {0, 1}}, {"d1", {1, 2}}}),
      planned(a2, {"a2", "d1", "d1"}, {{"d1", {0, 1}}}),
      planned(a3, {"a3", "d2", "d0"}, {{"d2", {0, 1}}, {"d0", {1, 2}}})};
  const WorkloadCost w = workload_cost(plans, f);
  // d0: 2 + 2, d1: 1 + 3, d2: 1, d0->d1: 1, d2->d0: 1.
  const double loads[] = {4e-3, 4e-3, 1e-3, 1e-3, 1e-3};
  CHECK(w.shared_period_s == doctest::Approx(*std::max_element(std::begin(loads), std::end(loads))));
  CHECK(w.device_busy_s.at("d0") == doctest::Approx(4e-3));
  CHECK(w.device_busy_s.at("d1") == doctest::Approx(4e-3));
  CHECK(w.device_busy_s.at("d2") == doctest::Approx(1e-3));
  CHECK(w.throughput() == doctest::Approx(250.0));
}

TEST_CASE("fixture energy of a zero-MAC model is zero") {
  auto m = chain("z", 3, 0, 10, 10);
  DeviceSpec d = device("d");
  d.per_layer_overhead_s = 1e-5;
  CHECK(fixture_energy(*m, d) == 0.0);
}

TEST_CASE("frequency scaling stretches compute and cuts energy by alpha squared") {
  Fleet f;
  f.devices = {device("d")};
  auto m = chain("m", 1, static_cast<std::uint64_t>(kMacsPerMs), 0, 1);
  const ExecutionPlan p = plan_of("a", {{"d", {0, 1}}});
  CostOptions half;
  half.speed_scale["d"] = 0.5;
  const PlanCost base = plan_cost(*m, p, f, {"a", "d", "d"});
  const PlanCost slow = plan_cost(*m, p, f, {"a", "d", "d"}, 0.0, half);
  CHECK(slow.latency_s == doctest::Approx(2 * base.latency_s));
  CHECK(slow.energy_j == doctest::Approx(0.25 * base.energy_j));
}

TEST_CASE("cost properties over random plans") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n_dev = 1 + rng() % 4;
    Fleet f = mesh(n_dev, rng);
    ModelGraph m;
    m.name = "m";
    m.input_bytes = 1 + rng() % 20000;
    const std::size_t n = 1 + rng() % 8;
    for (std::size_t i = 0; i < n; ++i) {
      m.layers.push_back(layer("l" + std::to_string(i), rng() % 8000000, 1,
                               1 + rng() % 30000));
    }
    const ExecutionPlan p = random_plan(m, n_dev, rng);
    const Binding b{"a", "d" + std::to_string(rng() % n_dev),
                    "d" + std::to_string(rng() % n_dev)};
    const PlanCost c = plan_cost(m, p, f, b);

    // Additivity, and the period lies between the mean and the total.
    CHECK(c.latency_s == doctest::Approx(stage_sum(m, p, f, b)).epsilon(1e-12));
    std::size_t stages = c.device_busy_s.size() + c.link_busy_s.size();
    for (const auto& [d, busy] : c.device_busy_s) CHECK(c.period_s >= busy);
    for (const auto& [l, busy] : c.link_busy_s) CHECK(c.period_s >= busy);
    CHECK(c.period_s <= c.latency_s * (1 + 1e-12));
    if (stages > 0) CHECK(c.period_s * static_cast<double>(stages) >= c.latency_s * (1 - 1e-12));

    // Monotone in MACs, bytes and bandwidth.
    ModelGraph heavier = m;
    const std::size_t k = rng() % n;
    heavier.layers[k].macs += 1 + rng() % 1000000;
    heavier.layers[k].out_activation_bytes += 1 + rng() % 5000;
    const PlanCost h = plan_cost(heavier, p, f, b);
    CHECK(h.latency_s >= c.latency_s);
    CHECK(h.period_s >= c.period_s);
    Fleet slower = f;
    for (LinkSpec& l : slower.links) l.bandwidth_bytes_per_s *= 0.5;
    const PlanCost s = plan_cost(m, p, slower, b);
    CHECK(s.latency_s >= c.latency_s);
    CHECK(s.period_s >= c.period_s);

    // Merging adjacent same-device segments never adds latency.
    for (std::size_t i = 0; i + 1 < p.segments.size(); ++i) {
      if (p.segments[i].device != p.segments[i + 1].device) continue;
      ExecutionPlan merged = p;
      merged.segments[i].layers.end = merged.segments[i + 1].layers.end;
      merged.segments.erase(merged.segments.begin() + static_cast<long>(i) + 1);
      CHECK(plan_cost(m, merged, f, b).latency_s <= c.latency_s * (1 + 1e-12));
    }
  }
}

TEST_CASE("splitting on one device is free and energy ignores segment order") {
  Fleet f;
  f.devices = {device("a"), device("b")};
  connect(f, "a", "b", 1e6, 0.0, 1e-8);
  auto m = chain("m", 4, 3000000, 0, 500);
  const Binding b{"x", "a", "a"};
  const PlanCost whole = plan_cost(*m, plan_of("x", {{"a", {0, 4}}}), f, b);
  const PlanCost cut = plan_cost(*m, plan_of("x", {{"a", {0, 2}}, {"a", {2, 4}}}), f, b);
  CHECK(cut.latency_s == doctest::Approx(whole.latency_s));
  CHECK(cut.energy_j == doctest::Approx(whole.energy_j));
  // Identical layers, identical devices: a-b-a and b-a-b do the same work.
  const Binding bb{"x", "a", "a"};
  const PlanCost aba = plan_cost(
      *m, plan_of("x", {{"a", {0, 1}}, {"b", {1, 3}}, {"a", {3, 4}}}), f, bb);
  Fleet g = f;
  const PlanCost bab = plan_cost(
      *m, plan_of("x", {{"b", {0, 1}}, {"a", {1, 3}}, {"b", {3, 4}}}), g,
      {"x", "b", "b"});
  CHECK(aba.energy_j == doctest::Approx(bab.energy_j));
}
