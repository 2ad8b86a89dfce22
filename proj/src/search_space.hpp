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

// Index-based view of a planning problem shared by the beam search, the
// exhaustive oracle and the baseline. Devices are the available ones, sorted
// by id; links are addressed by (src, dst) slots in an n x n table.

#ifndef BODYNET_SRC_SEARCH_SPACE_HPP_
#define BODYNET_SRC_SEARCH_SPACE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bodynet/orchestrator.hpp"

namespace bodynet::detail {

inline constexpr int kNoDevice = -1;

class Snapshot {
 public:
  Snapshot(const Fleet& fleet, const Availability& availability,
           const ThermalConfig& thermal);

  std::size_t size() const noexcept { return devices_.size(); }
  const Fleet& fleet() const noexcept { return *fleet_; }
  const DeviceSpec& device(int i) const { return *devices_[i]; }
  const std::string& id(int i) const { return devices_[i]->id; }
  int index_of(std::string_view id) const;

  const LinkSpec* link(int src, int dst) const {
    return links_[slot(src, dst)];
  }
  bool routable(int src, int dst) const {
    return src == dst || link(src, dst) != nullptr;
  }
  std::size_t slot(int src, int dst) const {
    return static_cast<std::size_t>(src) * devices_.size() +
           static_cast<std::size_t>(dst);
  }
  std::size_t slot_count() const { return devices_.size() * devices_.size(); }

  /// Device-temperature ceiling; nullopt when unconstrained.
  const std::optional<double>& ceiling(int i) const { return ceilings_[i]; }

 private:
  const Fleet* fleet_;
  std::vector<const DeviceSpec*> devices_;
  std::vector<const LinkSpec*> links_;
  std::vector<std::optional<double>> ceilings_;
};

/// One segment in index form.
struct SegChoice {
  int device = kNoDevice;
  std::uint16_t begin = 0;
  std::uint16_t end = 0;

  bool operator==(const SegChoice&) const = default;
};

/// Aggregate resource use of a set of placed segments.
struct Usage {
  std::vector<std::uint64_t> weight;
  std::vector<std::uint64_t> bias;
  std::vector<std::uint64_t> data;
  std::vector<double> device_busy;
  std::vector<double> link_busy;
  double energy = 0.0;

  Usage() = default;
  explicit Usage(const Snapshot& snap);

  double period() const;
  double load_sum() const;
};

/// Per-app lookup tables over a snapshot.
class AppTables {
 public:
  AppTables(const ModelGraph& model, const Binding& binding,
            double postprocess_latency_s, const Snapshot& snap);

  std::size_t layers() const noexcept { return n_; }
  int sensor() const noexcept { return sensor_; }
  int output() const noexcept { return output_; }
  const ModelGraph& model() const noexcept { return *model_; }

  double compute(int device, std::size_t begin, std::size_t end) const {
    return compute_[(static_cast<std::size_t>(device) * (n_ + 1) + begin) *
                        (n_ + 1) +
                    end];
  }
  std::uint64_t weight(std::size_t begin, std::size_t end) const {
    return weight_[begin * (n_ + 1) + end];
  }
  std::uint64_t bias(std::size_t begin, std::size_t end) const {
    return bias_[begin * (n_ + 1) + end];
  }
  /// Includes the app input buffer when the segment is the first one.
  std::uint64_t data(std::size_t begin, std::size_t end) const {
    return data_[begin * (n_ + 1) + end] + (begin == 0 ? input_bytes_ : 0);
  }
  /// Bytes crossing the boundary before layer i (i == n: final output).
  std::uint64_t boundary_bytes(std::size_t i) const { return boundary_[i]; }
  double postprocess() const noexcept { return postprocess_; }
  /// Lower bound on compute time for layers [pos, n) on the fastest device.
  double remaining_min_compute(std::size_t pos) const { return rem_min_[pos]; }
  /// Weight bytes needed by layers [pos, n) ignoring per-segment ceilings.
  std::uint64_t remaining_weight(std::size_t pos) const {
    return rem_weight_[pos];
  }
  std::uint64_t remaining_bias(std::size_t pos) const { return rem_bias_[pos]; }

  /// Transfer time of boundary i over src -> dst; 0 on one device.
  double hop_time(const Snapshot& snap, int src, int dst, std::size_t i) const;
  double hop_energy(const Snapshot& snap, int src, int dst,
                    std::size_t i) const;

 private:
  const ModelGraph* model_;
  std::size_t n_;
  int sensor_;
  int output_;
  double postprocess_;
  std::uint64_t input_bytes_;
  std::vector<double> compute_;
  std::vector<std::uint64_t> weight_;
  std::vector<std::uint64_t> bias_;
  std::vector<std::uint64_t> data_;
  std::vector<std::uint64_t> boundary_;
  std::vector<double> rem_min_;
  std::vector<std::uint64_t> rem_weight_;
  std::vector<std::uint64_t> rem_bias_;
};

/// Rejection counts by constraint, used to explain out-of-resource outcomes.
struct RejectTally {
  std::array<std::size_t, 7> counts{};
  std::size_t thermal_at_completion = 0;

  void add(Constraint c) { ++counts[static_cast<std::size_t>(c)]; }
  Constraint dominant() const;
};

/// Checks the memory of one segment against usage; sets *why on failure.
bool segment_fits(const Usage& usage, const Snapshot& snap,
                  const AppTables& app, const SegChoice& seg,
                  Constraint* why);

/// Adds a whole assignment (routes + memory checked). Returns false and sets
/// *why when it does not fit; usage is then unspecified.
bool add_assignment(Usage& usage, const Snapshot& snap, const AppTables& app,
                    std::span<const SegChoice> segs, Constraint* why);

/// Every loaded device under its ceiling at utilization busy / period.
bool thermal_ok(const Usage& usage, const Snapshot& snap);

/// Converts an index-form assignment into a plan.
PlannedApp to_planned(const BoundApp& app, const Snapshot& snap,
                      std::span<const SegChoice> segs);

/// Index-form segments of an existing plan; nullopt if a device is missing
/// from the snapshot.
std::optional<std::vector<SegChoice>> to_choices(const ExecutionPlan& plan,
                                                 const Snapshot& snap);

/// Usage of the fixed plans in a context. Throws if they do not fit.
Usage fixed_usage(const PlanningContext& ctx, const Snapshot& snap);

/// Ranks plans with a total order tolerant to last-bit float noise.
std::pair<int, double> quantize(double value);

/// Prices the plans and sorts apps by id.
JointPlan make_joint_plan(std::vector<PlannedApp> apps, const Fleet& fleet);

/// Total order used for ranking and selection: quantized primary value,
/// then segment count, then device sequence.
bool joint_less(const JointPlan& a, const JointPlan& b, double a_key,
                double b_key);

}  // namespace bodynet::detail

#endif  // BODYNET_SRC_SEARCH_SPACE_HPP_
