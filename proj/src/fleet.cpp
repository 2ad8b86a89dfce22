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

#include "bodynet/fleet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "bodynet/error.hpp"
#include "json_util.hpp"

namespace bodynet {

using detail::Json;

std::string_view to_string(DeviceClass cls) {
  return cls == DeviceClass::kMcu ? "mcu" : "accelerator";
}

std::string_view to_string(WearStatus status) {
  return status == WearStatus::kDoffed ? "doffed" : "worn";
}

std::string_view to_string(AvailabilityChange change) {
  switch (change) {
    case AvailabilityChange::kJoin:
      return "join";
    case AvailabilityChange::kLeave:
      return "leave";
    case AvailabilityChange::kWorn:
      return "worn";
    case AvailabilityChange::kDoffed:
      return "doffed";
  }
  return "join";
}

AvailabilityChange parse_availability_change(std::string_view text) {
  if (text == "join") return AvailabilityChange::kJoin;
  if (text == "leave") return AvailabilityChange::kLeave;
  if (text == "worn") return AvailabilityChange::kWorn;
  if (text == "doffed") return AvailabilityChange::kDoffed;
  throw ValidationError("change", "unknown availability change '" +
                                      std::string(text) + "'");
}

void DeviceSpec::validate() const {
  auto positive = [this](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError(id + "." + field, "must be > 0");
    }
  };
  if (id.empty()) throw ValidationError("devices[].id", "must be non-empty");
  positive(static_cast<double>(weight_mem_bytes), "weight_mem_bytes");
  positive(static_cast<double>(bias_mem_bytes), "bias_mem_bytes");
  positive(static_cast<double>(data_mem_bytes), "data_mem_bytes");
  positive(num_processors, "num_processors");
  positive(macs_per_cycle_per_processor, "macs_per_cycle_per_processor");
  positive(clock_hz, "clock_hz");
  if (!(idle_power_w >= 0.0) || !std::isfinite(idle_power_w)) {
    throw ValidationError(id + ".idle_power_w", "must be >= 0");
  }
  positive(active_power_w, "active_power_w");
  positive(r_th, "r_th");
  positive(c_th, "c_th");
  if (!(per_layer_overhead_s >= 0.0)) {
    throw ValidationError(id + ".per_layer_overhead_s", "must be >= 0");
  }
  if (active_power_w < idle_power_w) {
    throw ValidationError(id + ".active_power_w", "must be >= idle_power_w");
  }
}

void LinkSpec::validate() const {
  const std::string name = "link " + src + "->" + dst;
  if (src == dst) throw ValidationError(name, "src and dst must differ");
  if (!(bandwidth_bytes_per_s > 0.0)) {
    throw ValidationError(name + ".bandwidth_bytes_per_s", "must be > 0");
  }
  if (!(latency_s >= 0.0)) {
    throw ValidationError(name + ".latency_s", "must be >= 0");
  }
  if (!(energy_per_byte_j >= 0.0)) {
    throw ValidationError(name + ".energy_per_byte_j", "must be >= 0");
  }
}

const DeviceSpec* Fleet::find_device(std::string_view id) const noexcept {
  for (const DeviceSpec& d : devices) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

const DeviceSpec& Fleet::device(std::string_view id) const {
  if (const DeviceSpec* d = find_device(id)) return *d;
  throw ValidationError(std::string(id), "unknown device");
}

const LinkSpec* Fleet::find_link(std::string_view src,
                                 std::string_view dst) const noexcept {
  for (const LinkSpec& l : links) {
    if (l.src == src && l.dst == dst) return &l;
  }
  return nullptr;
}

void Fleet::validate() const {
  if (devices.empty()) {
    throw ValidationError("devices", "fleet must contain >=1 device");
  }
  std::set<std::string> ids;
  for (const DeviceSpec& d : devices) {
    d.validate();
    if (!ids.insert(d.id).second) {
      throw ValidationError(d.id, "duplicate device id '" + d.id + "'");
    }
  }
  std::set<std::pair<std::string, std::string>> pairs;
  for (const LinkSpec& l : links) {
    l.validate();
    for (const std::string* end : {&l.src, &l.dst}) {
      if (!ids.contains(*end)) {
        throw ValidationError("link " + l.src + "->" + l.dst,
                              "unknown device '" + *end + "'");
      }
    }
    if (!pairs.emplace(l.src, l.dst).second) {
      throw ValidationError("link " + l.src + "->" + l.dst,
                            "duplicate link for ordered pair");
    }
  }
  for (const auto& [id, state] : initial_status) {
    if (!ids.contains(id)) {
      throw ValidationError("initial_status." + id, "unknown device");
    }
  }
}

namespace {

std::set<std::string> get_tags(const Json& obj, std::string_view key,
                               const std::string& ctx) {
  std::set<std::string> tags;
  const Json* v = detail::optional_field(obj, key);
  if (v == nullptr) return tags;
  if (!v->is_array()) {
    throw ParseError(detail::field_name(ctx, key) + ": expected an array");
  }
  for (const Json& t : *v) {
    if (!t.is_string() || t.get<std::string>().empty()) {
      throw ValidationError(detail::field_name(ctx, key),
                            "tags must be non-empty strings");
    }
    tags.insert(t.get<std::string>());
  }
  return tags;
}

std::uint32_t get_count(const Json& obj, std::string_view key,
                        const std::string& ctx) {
  const std::uint64_t v = detail::get_uint(obj, key, ctx);
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    throw ValidationError(detail::field_name(ctx, key), "too large");
  }
  return static_cast<std::uint32_t>(v);
}

DeviceSpec parse_device(const Json& j, std::size_t index) {
  const std::string ctx = "devices[" + std::to_string(index) + "]";
  DeviceSpec d;
  d.id = detail::get_string(j, "id", ctx);
  const std::string cls = detail::get_string(j, "class", ctx);
  if (cls == "accelerator") {
    d.device_class = DeviceClass::kAccelerator;
  } else if (cls == "mcu") {
    d.device_class = DeviceClass::kMcu;
  } else {
    throw ValidationError(ctx + ".class", "must be 'accelerator' or 'mcu'");
  }
  d.weight_mem_bytes = detail::get_uint(j, "weight_mem_bytes", ctx);
  d.bias_mem_bytes = detail::get_uint(j, "bias_mem_bytes", ctx);
  d.data_mem_bytes = detail::get_uint(j, "data_mem_bytes", ctx);
  d.num_processors = get_count(j, "num_processors", ctx);
  d.macs_per_cycle_per_processor =
      get_count(j, "macs_per_cycle_per_processor", ctx);
  d.clock_hz = detail::get_number(j, "clock_hz", ctx);
  d.per_layer_overhead_s =
      detail::get_optional_number(j, "per_layer_overhead_s", ctx).value_or(0.0);
  d.idle_power_w = detail::get_number(j, "idle_power_w", ctx);
  d.active_power_w = detail::get_number(j, "active_power_w", ctx);
  d.r_th = detail::get_number(j, "r_th", ctx);
  d.c_th = detail::get_number(j, "c_th", ctx);
  if (detail::optional_field(j, "skin_contact") != nullptr) {
    d.skin_contact = detail::get_bool(j, "skin_contact", ctx);
  }
  d.sensors = get_tags(j, "sensors", ctx);
  d.outputs = get_tags(j, "outputs", ctx);
  d.body_location = detail::get_optional_string(j, "body_location", ctx);
  return d;
}

}  // namespace

Fleet parse_fleet(std::string_view json_text) {
  const Json doc = detail::parse_json_text(json_text, "fleet");
  if (!doc.is_object()) throw ParseError("fleet: expected an object");
  Fleet fleet;
  fleet.ambient_c = detail::get_number(doc, "ambient_c", "");

  const Json& devices = detail::require(doc, "devices", "");
  if (!devices.is_array()) throw ParseError("devices: expected an array");
  for (std::size_t i = 0; i < devices.size(); ++i) {
    fleet.devices.push_back(parse_device(devices[i], i));
  }

  if (const Json* links = detail::optional_field(doc, "links")) {
    if (!links->is_array()) throw ParseError("links: expected an array");
    for (std::size_t i = 0; i < links->size(); ++i) {
      const Json& j = (*links)[i];
      const std::string ctx = "links[" + std::to_string(i) + "]";
      LinkSpec l;
      l.src = detail::get_string(j, "src", ctx);
      l.dst = detail::get_string(j, "dst", ctx);
      l.bandwidth_bytes_per_s =
          detail::get_number(j, "bandwidth_bytes_per_s", ctx);
      l.latency_s = detail::get_optional_number(j, "latency_s", ctx).value_or(0);
      l.energy_per_byte_j =
          detail::get_optional_number(j, "energy_per_byte_j", ctx).value_or(0);
      const bool both = detail::optional_field(j, "bidirectional") != nullptr &&
                        detail::get_bool(j, "bidirectional", ctx);
      fleet.links.push_back(l);
      if (both) {
        std::swap(l.src, l.dst);
        fleet.links.push_back(std::move(l));
      }
    }
  }

  if (const Json* status = detail::optional_field(doc, "initial_status")) {
    if (!status->is_object()) {
      throw ParseError("initial_status: expected an object");
    }
    for (const auto& [id, value] : status->items()) {
      if (!value.is_string()) {
        throw ParseError("initial_status." + id + ": expected a string");
      }
      const std::string s = value.get<std::string>();
      InitialDeviceState state;
      if (s == "worn") {
        state.wear = WearStatus::kWorn;
      } else if (s == "doffed") {
        state.wear = WearStatus::kDoffed;
      } else if (s == "absent") {
        state.available = false;
      } else {
        throw ValidationError("initial_status." + id,
                              "must be 'worn', 'doffed' or 'absent'");
      }
      fleet.initial_status[id] = state;
    }
  }
  fleet.validate();
  return fleet;
}

Fleet load_fleet(const std::filesystem::path& path) {
  return parse_fleet(detail::read_text_file(path));
}

void validate_events(const Fleet& fleet,
                     std::span<const AvailabilityEvent> events) {
  for (const AvailabilityEvent& e : events) {
    if (!(e.time_s >= 0.0) || !std::isfinite(e.time_s)) {
      throw ValidationError("events.time_s", "must be >= 0");
    }
    if (fleet.find_device(e.device) == nullptr) {
      throw ValidationError("events.device",
                            "unknown device '" + e.device + "'");
    }
  }
}

Availability::Availability(const Fleet& fleet) {
  for (const DeviceSpec& d : fleet.devices) {
    auto it = fleet.initial_status.find(d.id);
    state_[d.id] =
        it == fleet.initial_status.end() ? InitialDeviceState{} : it->second;
  }
}

void Availability::apply(const AvailabilityEvent& event) {
  auto it = state_.find(event.device);
  if (it == state_.end()) {
    throw ValidationError(event.device, "unknown device");
  }
  switch (event.change) {
    case AvailabilityChange::kJoin:
      it->second.available = true;
      break;
    case AvailabilityChange::kLeave:
      it->second.available = false;
      break;
    case AvailabilityChange::kWorn:
      it->second.wear = WearStatus::kWorn;
      break;
    case AvailabilityChange::kDoffed:
      it->second.wear = WearStatus::kDoffed;
      break;
  }
}

bool Availability::is_available(std::string_view id) const {
  auto it = state_.find(id);
  return it != state_.end() && it->second.available;
}

WearStatus Availability::wear(std::string_view id) const {
  auto it = state_.find(id);
  if (it == state_.end()) {
    throw ValidationError(std::string(id), "unknown device");
  }
  return it->second.wear;
}

std::vector<std::string> Availability::available_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, s] : state_) {
    if (s.available) ids.push_back(id);
  }
  return ids;
}

std::map<std::string, WearStatus> Availability::available_wear() const {
  std::map<std::string, WearStatus> out;
  for (const auto& [id, s] : state_) {
    if (s.available) out.emplace(id, s.wear);
  }
  return out;
}

Availability available_at(const Fleet& fleet,
                          std::span<const AvailabilityEvent> events, double t) {
  std::vector<std::size_t> order(events.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return events[a].time_s < events[b].time_s;
                   });
  Availability availability(fleet);
  for (std::size_t i : order) {
    if (events[i].time_s > t) break;
    availability.apply(events[i]);
  }
  return availability;
}

void AppSpec::validate() const {
  if (id.empty()) throw ValidationError("apps[].id", "must be non-empty");
  if (sensor.tag.empty()) {
    throw ValidationError(id + ".sensor", "modality tag must be non-empty");
  }
  if (output.tag.empty()) {
    throw ValidationError(id + ".output", "interface tag must be non-empty");
  }
  if (postprocess.empty()) {
    throw ValidationError(id + ".postprocess", "tag must be non-empty");
  }
  if (!model) {
    throw ValidationError(id + ".model",
                          "model '" + model_name + "' does not resolve");
  }
  if (!(postprocess_latency_s >= 0.0)) {
    throw ValidationError(id + ".postprocess_latency_s", "must be >= 0");
  }
}

namespace {

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

const DeviceSpec* largest_compute_device(const Fleet& fleet,
                                         const Availability& availability) {
  const DeviceSpec* best = nullptr;
  for (const DeviceSpec& d : fleet.devices) {
    if (!availability.is_available(d.id)) continue;
    if (best == nullptr || d.weight_mem_bytes > best->weight_mem_bytes ||
        (d.weight_mem_bytes == best->weight_mem_bytes && d.id < best->id)) {
      best = &d;
    }
  }
  return best;
}

double hop_cost(const Fleet& fleet, const std::string& src,
                const std::string& dst, std::uint64_t bytes) {
  if (src == dst) return 0.0;
  const LinkSpec* link = fleet.find_link(src, dst);
  return link == nullptr ? kUnreachable : link->transfer_seconds(bytes);
}

template <typename CostFn>
const DeviceSpec* choose(const std::vector<const DeviceSpec*>& candidates,
                         const std::optional<std::string>& location,
                         CostFn cost) {
  std::vector<const DeviceSpec*> pool;
  if (location) {
    for (const DeviceSpec* d : candidates) {
      if (d->body_location == location) pool.push_back(d);
    }
  }
  if (pool.empty()) pool = candidates;
  const DeviceSpec* best = nullptr;
  double best_cost = kUnreachable;
  for (const DeviceSpec* d : pool) {
    const double c = cost(*d);
    if (best == nullptr || std::tie(c, d->id) < std::tie(best_cost, best->id)) {
      best = d;
      best_cost = c;
    }
  }
  return best;
}

}  // namespace

Binding bind_virtual(const AppSpec& app, const Fleet& fleet,
                     const Availability& availability) {
  std::vector<const DeviceSpec*> sensors;
  std::vector<const DeviceSpec*> outputs;
  for (const DeviceSpec& d : fleet.devices) {
    if (!availability.is_available(d.id)) continue;
    if (d.sensors.contains(app.sensor.tag)) sensors.push_back(&d);
    if (d.outputs.contains(app.output.tag)) outputs.push_back(&d);
  }
  if (sensors.empty()) {
    throw NoSensorError("app '" + app.id + "': no available device offers '" +
                        app.sensor.tag + "'");
  }
  if (outputs.empty()) {
    throw NoOutputError("app '" + app.id + "': no available device offers '" +
                        app.output.tag + "'");
  }
  const DeviceSpec* compute = largest_compute_device(fleet, availability);
  const std::uint64_t in_bytes = app.model ? app.model->input_bytes : 0;
  const std::uint64_t out_bytes =
      app.model && !app.model->layers.empty()
          ? app.model->layers.back().out_activation_bytes
          : 0;

  const DeviceSpec* sensor =
      choose(sensors, app.sensor.body_location, [&](const DeviceSpec& d) {
        return hop_cost(fleet, d.id, compute->id, in_bytes);
      });
  const DeviceSpec* output =
      choose(outputs, app.output.body_location, [&](const DeviceSpec& d) {
        return hop_cost(fleet, compute->id, d.id, out_bytes);
      });
  return Binding{app.id, sensor->id, output->id};
}

}  // namespace bodynet
