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

#include "bodynet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "app_json.hpp"
#include "json_util.hpp"

namespace bodynet {

using detail::Json;

double Scenario::step_s() const {
  if (dt_s) return *dt_s;
  double tau = std::numeric_limits<double>::infinity();
  for (const DeviceSpec& d : fleet.devices) tau = std::min(tau, time_constant_s(d));
  return 0.05 * tau;
}

void Scenario::validate() const {
  try {
    fleet.validate();
    if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
      throw ValidationError("duration_s", "must be > 0");
    }
    if (dt_s && !(*dt_s > 0.0)) throw ValidationError("dt_s", "must be > 0");
    if (!(step_s() > 0.0)) throw ValidationError("dt_s", "must be > 0");
    thermal.validate(fleet.ambient_c);
    if (!(wear_thresholds.motion_g >= 0.0)) {
      throw ValidationError("thermal.wear_motion_g", "must be >= 0");
    }
    search.validate();
    objective.validate();
    validate_events(fleet, events);
    std::set<std::string> ids;
    for (const AppSpec& app : apps) {
      app.validate();
      if (!ids.insert(app.id).second) {
        throw ValidationError("apps." + app.id, "duplicate app id");
      }
    }
    for (const TimedSensorWindow& w : sensor_windows) {
      w.window.validate();
      if (!(w.time_s >= 0.0)) {
        throw ValidationError("sensor_windows.time_s", "must be >= 0");
      }
      if (fleet.find_device(w.window.device) == nullptr) {
        throw ValidationError("sensor_windows.device",
                              "unknown device '" + w.window.device + "'");
      }
    }
  } catch (const ScenarioError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ScenarioError(e.field(), e.message());
  }
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& ref) {
  const std::filesystem::path p(ref);
  return p.is_absolute() ? p : base / p;
}

template <typename Fn>
auto referenced(const std::string& field, Fn load) {
  try {
    return load();
  } catch (const IoError& e) {
    throw ScenarioError(field, e.what());
  } catch (const ScenarioError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ScenarioError(field, e.what());
  } catch (const ParseError& e) {
    throw ScenarioError(field, e.what());
  }
}

Objective parse_objective(const Json& j) {
  Objective o;
  std::string kind;
  if (j.is_string()) {
    kind = j.get<std::string>();
  } else if (j.is_object()) {
    kind = detail::get_string(j, "kind", "objective");
    o.throughput_floor =
        detail::get_optional_number(j, "throughput_floor", "objective");
  } else {
    throw ParseError("objective: expected a string or an object");
  }
  if (kind == "max_throughput") {
    o.kind = Objective::Kind::kMaxThroughput;
  } else if (kind == "min_energy") {
    o.kind = Objective::Kind::kMinEnergy;
  } else {
    throw ScenarioError("objective.kind", "must be max_throughput or min_energy");
  }
  return o;
}

}  // namespace

Scenario parse_scenario(std::string_view json_text,
                        const std::filesystem::path& base_dir) {
  const Json doc = detail::parse_json_text(json_text, "scenario");
  if (!doc.is_object()) throw ParseError("scenario: expected an object");
  Scenario s;

  const std::string fleet_ref = detail::get_string(doc, "fleet", "");
  s.fleet_path = resolve(base_dir, fleet_ref);
  s.fleet = referenced("fleet", [&] { return load_fleet(s.fleet_path); });

  if (const Json* models = detail::optional_field(doc, "models")) {
    if (!models->is_array()) throw ParseError("models: expected an array");
    for (const Json& m : *models) {
      if (!m.is_string()) throw ParseError("models: expected file paths");
      const auto path = resolve(base_dir, m.get<std::string>());
      auto graph = referenced("models", [&] {
        return std::make_shared<const ModelGraph>(load_model(path));
      });
      const std::string name = graph->name;
      if (!s.models.emplace(name, std::move(graph)).second) {
        throw ScenarioError("models", "duplicate model name '" + name + "'");
      }
    }
  }

  if (const Json* apps = detail::optional_field(doc, "apps")) {
    if (!apps->is_array()) throw ParseError("apps: expected an array");
    for (std::size_t i = 0; i < apps->size(); ++i) {
      AppSpec app = detail::parse_app((*apps)[i], "apps[" + std::to_string(i) + "]");
      auto it = s.models.find(app.model_name);
      if (it == s.models.end()) {
        throw ScenarioError("apps." + app.id + ".model",
                            "model '" + app.model_name + "' does not resolve");
      }
      app.model = it->second;
      s.apps.push_back(std::move(app));
    }
  }

  if (const Json* events = detail::optional_field(doc, "events")) {
    if (!events->is_array()) throw ParseError("events: expected an array");
    for (std::size_t i = 0; i < events->size(); ++i) {
      const std::string ctx = "events[" + std::to_string(i) + "]";
      const Json& e = (*events)[i];
      AvailabilityEvent ev;
      ev.time_s = detail::get_number(e, "time_s", ctx);
      ev.device = detail::get_string(e, "device", ctx);
      ev.change = parse_availability_change(detail::get_string(e, "change", ctx));
      s.events.push_back(std::move(ev));
    }
  }

  if (const Json* windows = detail::optional_field(doc, "sensor_windows")) {
    if (!windows->is_array()) {
      throw ParseError("sensor_windows: expected an array");
    }
    for (std::size_t i = 0; i < windows->size(); ++i) {
      const std::string ctx = "sensor_windows[" + std::to_string(i) + "]";
      const Json& w = (*windows)[i];
      TimedSensorWindow tw;
      tw.time_s = detail::get_number(w, "time_s", ctx);
      tw.window.device = detail::get_string(w, "device", ctx);
      tw.window.imu_std_g =
          detail::get_optional_number(w, "imu_std_g", ctx).value_or(0.0);
      tw.window.proximity = parse_proximity(
          detail::get_optional_string(w, "proximity", ctx).value_or("absent"));
      tw.window.window_s =
          detail::get_optional_number(w, "window_s", ctx).value_or(1.0);
      s.sensor_windows.push_back(std::move(tw));
    }
  }

  s.duration_s = detail::get_number(doc, "duration_s", "");
  s.dt_s = detail::get_optional_number(doc, "dt_s", "");

  if (const Json* t = detail::optional_field(doc, "thermal")) {
    if (!t->is_object()) throw ParseError("thermal: expected an object");
    s.thermal.t_skin_max_c = detail::get_optional_number(*t, "t_skin_max_c", "thermal")
                                 .value_or(s.thermal.t_skin_max_c);
    s.thermal.t_doffed_max_c =
        detail::get_optional_number(*t, "t_doffed_max_c", "thermal")
            .value_or(s.thermal.t_doffed_max_c);
    s.thermal.skin_offset_c = detail::get_optional_number(*t, "skin_offset_c", "thermal")
                                  .value_or(s.thermal.skin_offset_c);
    s.wear_thresholds.motion_g =
        detail::get_optional_number(*t, "wear_motion_g", "thermal")
            .value_or(s.wear_thresholds.motion_g);
  }

  if (const Json* c = detail::optional_field(doc, "search")) {
    if (!c->is_object()) throw ParseError("search: expected an object");
    if (detail::optional_field(*c, "max_segments")) {
      s.search.max_segments = detail::get_uint(*c, "max_segments", "search");
    }
    if (detail::optional_field(*c, "beam_width")) {
      s.search.beam_width = detail::get_uint(*c, "beam_width", "search");
    }
    if (detail::optional_field(*c, "local_search_iters")) {
      s.search.local_search_iters =
          detail::get_uint(*c, "local_search_iters", "search");
    }
  }
  if (const Json* o = detail::optional_field(doc, "objective")) {
    s.objective = parse_objective(*o);
  }
  if (detail::optional_field(doc, "seed")) {
    s.seed = detail::get_uint(doc, "seed", "");
  }
  s.search.seed = s.seed;
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  const std::string text = detail::read_text_file(path);
  try {
    return parse_scenario(text, path.parent_path());
  } catch (const ScenarioError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ScenarioError(e.field(), e.message());
  }
}

}  // namespace bodynet
