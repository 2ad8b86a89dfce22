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

// Device fleet, interconnect, time-varying availability, and the binding of
// an application's virtual sensing/output needs to physical devices.

#ifndef BODYNET_FLEET_HPP_
#define BODYNET_FLEET_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bodynet/model_ir.hpp"

namespace bodynet {

enum class DeviceClass { kAccelerator, kMcu };

enum class WearStatus { kWorn, kDoffed };

std::string_view to_string(DeviceClass cls);
std::string_view to_string(WearStatus status);

struct DeviceSpec {
  std::string id;
  DeviceClass device_class = DeviceClass::kAccelerator;
  std::uint64_t weight_mem_bytes = 0;
  std::uint64_t bias_mem_bytes = 0;
  std::uint64_t data_mem_bytes = 0;
  std::uint32_t num_processors = 1;
  std::uint32_t macs_per_cycle_per_processor = 1;
  double clock_hz = 0.0;
  double per_layer_overhead_s = 0.0;
  double idle_power_w = 0.0;
  double active_power_w = 0.0;
  double r_th = 0.0;  // degC / W
  double c_th = 0.0;  // J / degC
  bool skin_contact = true;
  std::set<std::string> sensors;
  std::set<std::string> outputs;
  std::optional<std::string> body_location;

  /// MACs per second with every processor busy.
  double mac_rate() const noexcept {
    return static_cast<double>(num_processors) *
           static_cast<double>(macs_per_cycle_per_processor) * clock_hz;
  }

  void validate() const;
};

struct LinkSpec {
  std::string src;
  std::string dst;
  double bandwidth_bytes_per_s = 0.0;
  double latency_s = 0.0;
  double energy_per_byte_j = 0.0;

  /// Fixed per-message latency plus serialization time.
  double transfer_seconds(std::uint64_t bytes) const noexcept {
    return latency_s + static_cast<double>(bytes) / bandwidth_bytes_per_s;
  }

  void validate() const;
};

struct InitialDeviceState {
  bool available = true;
  WearStatus wear = WearStatus::kWorn;

  bool operator==(const InitialDeviceState&) const = default;
};

struct Fleet {
  double ambient_c = 25.0;
  std::vector<DeviceSpec> devices;
  // Directed: a transfer from a to b uses the (a, b) link.
  std::vector<LinkSpec> links;
  // Devices not listed start joined and worn.
  std::map<std::string, InitialDeviceState> initial_status;

  const DeviceSpec* find_device(std::string_view id) const noexcept;
  const DeviceSpec& device(std::string_view id) const;
  const LinkSpec* find_link(std::string_view src,
                            std::string_view dst) const noexcept;

  void validate() const;
};

Fleet parse_fleet(std::string_view json_text);
Fleet load_fleet(const std::filesystem::path& path);

enum class AvailabilityChange { kJoin, kLeave, kWorn, kDoffed };

std::string_view to_string(AvailabilityChange change);
AvailabilityChange parse_availability_change(std::string_view text);

struct AvailabilityEvent {
  double time_s = 0.0;
  std::string device;
  AvailabilityChange change = AvailabilityChange::kJoin;

  bool operator==(const AvailabilityEvent&) const = default;
};

/// Rejects negative times and unknown devices.
void validate_events(const Fleet& fleet,
                     std::span<const AvailabilityEvent> events);

/// Per-device presence and wear status at one instant.
class Availability {
 public:
  Availability() = default;
  explicit Availability(const Fleet& fleet);

  void apply(const AvailabilityEvent& event);

  bool is_available(std::string_view id) const;
  WearStatus wear(std::string_view id) const;

  /// Sorted by id.
  std::vector<std::string> available_ids() const;
  /// Wear status of every available device.
  std::map<std::string, WearStatus> available_wear() const;

  bool operator==(const Availability&) const = default;

 private:
  std::map<std::string, InitialDeviceState, std::less<>> state_;
};

/// Applies, in (time, input order), every event with time <= t to the
/// fleet's initial state.
Availability available_at(const Fleet& fleet,
                          std::span<const AvailabilityEvent> events, double t);

/// A capability tag plus an optional body-location preference.
struct CapabilityNeed {
  std::string tag;
  std::optional<std::string> body_location;

  bool operator==(const CapabilityNeed&) const = default;
};

struct AppSpec {
  std::string id;
  CapabilityNeed sensor;
  std::string model_name;
  std::shared_ptr<const ModelGraph> model;
  // Opaque post-processing label with a fixed latency charge on the output
  // device.
  std::string postprocess;
  double postprocess_latency_s = 0.0;
  CapabilityNeed output;

  void validate() const;
};

struct Binding {
  std::string app;
  std::string sensor_device;
  std::string output_device;

  bool operator==(const Binding&) const = default;
};

/// Chooses, among available devices offering the needed capability, an exact
/// body-location match first, then the device with the cheapest transfer to
/// or from the largest-weight-memory available device, then the smallest id.
/// Throws NoSensorError / NoOutputError when no available device qualifies.
Binding bind_virtual(const AppSpec& app, const Fleet& fleet,
                     const Availability& availability);

}  // namespace bodynet

#endif  // BODYNET_FLEET_HPP_
