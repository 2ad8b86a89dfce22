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

#ifndef BODYNET_PLAN_HPP_
#define BODYNET_PLAN_HPP_

#include <memory>
#include <string>
#include <vector>

#include "bodynet/fleet.hpp"
#include "bodynet/model_ir.hpp"

namespace bodynet {

/// A contiguous layer range resident on one device.
struct Segment {
  std::string device;
  LayerRange layers;

  bool operator==(const Segment&) const = default;
};

/// Ordered segments covering a model's layers exactly once. Transfers are
/// implied between consecutive segments on different devices, plus the
/// input and output transfers given by the app's Binding.
struct ExecutionPlan {
  std::string app;
  std::vector<Segment> segments;

  /// Throws ValidationError unless segments cover [0, layer_count) in order.
  void validate_structure(const ModelGraph& model) const;

  bool operator==(const ExecutionPlan&) const = default;
};

/// A plan together with everything needed to price it.
struct PlannedApp {
  ExecutionPlan plan;
  Binding binding;
  std::shared_ptr<const ModelGraph> model;
  double postprocess_latency_s = 0.0;
};

}  // namespace bodynet

#endif  // BODYNET_PLAN_HPP_
