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

#include "bodynet/plan.hpp"

#include "bodynet/error.hpp"

namespace bodynet {

void ExecutionPlan::validate_structure(const ModelGraph& model) const {
  if (segments.empty()) {
    throw ValidationError("plan " + app, "has no segments");
  }
  std::size_t expected = 0;
  for (const Segment& seg : segments) {
    if (seg.device.empty()) {
      throw ValidationError("plan " + app, "segment without a device");
    }
    if (seg.layers.begin != expected || seg.layers.empty()) {
      throw ValidationError("plan " + app,
                            "segments must cover the layers in order");
    }
    expected = seg.layers.end;
  }
  if (expected != model.layer_count()) {
    throw ValidationError("plan " + app, "segments do not reach the last layer");
  }
}

}  // namespace bodynet
