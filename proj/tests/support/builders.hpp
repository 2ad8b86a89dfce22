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


// Small hand-built fixtures shared by the unit tests.

#ifndef BODYNET_TESTS_BUILDERS_HPP_
#define BODYNET_TESTS_BUILDERS_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "bodynet/fleet.hpp"
#include "bodynet/model_ir.hpp"
#include "bodynet/orchestrator.hpp"

namespace bodynet::testing {

inline std::filesystem::path source_path(const std::string& relative) {
  return std::filesystem::path(BODYNET_SOURCE_DIR) / relative;
}

/// 64 processors at 100 MHz, no overhead, roomy memories, cool.
inline DeviceSpec device(const std::string& id) {
  DeviceSpec d;
  d.id = id;
  d.weight_mem_bytes = 442000;
  d.bias_mem_bytes = 2048;
  d.data_mem_bytes = 512000;
  d.num_processors = 64;
  d.clock_hz = 100e6;
  d.idle_power_w = 0.005;
  d.active_power_w = 0.055;
  d.r_th = 50;
  d.c_th = 0.2;
  return d;
}

inline LinkSpec link(const std::string& src, const std::string& dst,
                     double bandwidth, double latency = 0.0,
                     double energy_per_byte = 0.0) {
  LinkSpec l;
  l.src = src;
  l.dst = dst;
  l.bandwidth_bytes_per_s = bandwidth;
  l.latency_s = latency;
  l.energy_per_byte_j = energy_per_byte;
  return l;
}

/// Adds the link in both directions.
inline void connect(Fleet& fleet, const std::string& a, const std::string& b,
                    double bandwidth, double latency = 0.0,
                    double energy_per_byte = 0.0) {
  fleet.links.push_back(link(a, b, bandwidth, latency, energy_per_byte));
  fleet.links.push_back(link(b, a, bandwidth, latency, energy_per_byte));
}

inline LayerSpec layer(const std::string& id, std::uint64_t macs,
                       std::uint64_t weights, std::uint64_t out_bytes,
                       std::uint64_t bias = 0) {
  LayerSpec l;
  l.id = id;
  l.macs = macs;
  l.weight_count = weights;
  l.bias_count = bias;
  l.out_activation_bytes = out_bytes;
  return l;
}

/// n identical layers.
inline std::shared_ptr<ModelGraph> chain(const std::string& name, std::size_t n,
                                         std::uint64_t macs,
                                         std::uint64_t weights,
                                         std::uint64_t act_bytes,
                                         std::uint64_t input_bytes = 1000) {
  auto m = std::make_shared<ModelGraph>();
  m->name = name;
  m->input_bytes = input_bytes;
  for (std::size_t i = 0; i < n; ++i) {
    m->layers.push_back(layer(name + std::to_string(i), macs, weights, act_bytes));
  }
  return m;
}

inline AppSpec app(const std::string& id, std::shared_ptr<const ModelGraph> model,
                   const std::string& sensor, const std::string& output) {
  AppSpec a;
  a.id = id;
  a.sensor.tag = sensor;
  a.output.tag = output;
  a.model_name = model->name;
  a.model = std::move(model);
  a.postprocess = "none";
  return a;
}

inline PlannedApp planned(const AppSpec& a, const Binding& b,
                          std::vector<Segment> segments) {
  PlannedApp p;
  p.plan.app = a.id;
  p.plan.segments = std::move(segments);
  p.binding = b;
  p.model = a.model;
  p.postprocess_latency_s = a.postprocess_latency_s;
  return p;
}

}  // namespace bodynet::testing

#endif  // BODYNET_TESTS_BUILDERS_HPP_
