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

#include "bodynet/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

#include <spdlog/spdlog.h>

#include "json_util.hpp"

namespace bodynet {

std::string_view to_string(AppRunState state) {
  return state == AppRunState::kRunning ? "running" : "suspended";
}

namespace {

struct Happening {
  double t = 0.0;
  int kind = 0;  // 0: availability event, 1: sensor window
  std::size_t index = 0;
};

std::string oor_detail(const OorReport& r) {
  return std::string(to_string(r.constraint)) + ": " + r.detail;
}

class Runner {
 public:
  Runner(const Scenario& scenario, Policy policy)
      : s_(scenario),
        planner_(make_planner(policy, scenario)),
        availability_(scenario.fleet) {
    trace_.policy = policy;
    trace_.dt_s = scenario.step_s();
    for (const DeviceSpec& d : scenario.fleet.devices) {
      trace_.device_ids.push_back(d.id);
    }
    std::sort(trace_.device_ids.begin(), trace_.device_ids.end());
    for (const AppSpec& a : scenario.apps) trace_.app_ids.push_back(a.id);
    std::sort(trace_.app_ids.begin(), trace_.app_ids.end());
    for (const std::string& id : trace_.device_ids) {
      devices_.push_back(&scenario.fleet.device(id));
      temps_.push_back(scenario.fleet.ambient_c);
    }
  }

  Trace run() {
    initial_plan();
    std::vector<Happening> happenings;
    for (std::size_t i = 0; i < s_.events.size(); ++i) {
      happenings.push_back({s_.events[i].time_s, 0, i});
    }
    for (std::size_t i = 0; i < s_.sensor_windows.size(); ++i) {
      happenings.push_back({s_.sensor_windows[i].time_s, 1, i});
    }
    std::sort(happenings.begin(), happenings.end(),
              [](const Happening& a, const Happening& b) {
                return std::tie(a.t, a.kind, a.index) < std::tie(b.t, b.kind, b.index);
              });

    const double dt = trace_.dt_s;
    const auto steps = static_cast<std::size_t>(std::floor(s_.duration_s / dt + 1e-9));
    std::size_t next = 0;
    double energy = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
      const double t0 = static_cast<double>(k - 1) * dt;
      while (next < happenings.size() && happenings[next].t <= t0) {
        handle(happenings[next]);
        ++next;
      }
      TraceRow row = step(dt);
      row.t_s = static_cast<double>(k) * dt;
      energy += row.energy_increment_j;
      row.energy_j = energy;
      trace_.rows.push_back(std::move(row));
    }
    trace_.summary = summarize(trace_);
    return std::move(trace_);
  }

 private:
  void initial_plan() {
    std::vector<OorReport> unbound;
    const auto bound = bind_apps(s_.apps, s_.fleet, availability_, unbound);
    PlanOutcome outcome;
    if (!bound.empty()) {
      PlanningContext ctx;
      ctx.fleet = &s_.fleet;
      ctx.availability = availability_;
      ctx.thermal = s_.thermal;
      outcome = planner_(bound, ctx);
    }
    plans_ = std::move(outcome.plans);
    std::sort(plans_.begin(), plans_.end(), [](const PlannedApp& a, const PlannedApp& b) {
      return a.plan.app < b.plan.app;
    });
    suspended_ = std::move(unbound);
    suspended_.insert(suspended_.end(), outcome.oor.begin(), outcome.oor.end());
    std::sort(suspended_.begin(), suspended_.end(),
              [](const OorReport& a, const OorReport& b) { return a.app < b.app; });
    options_ = std::move(outcome.cost_options);
    log(0.0, "plan", "*",
        "running " + std::to_string(plans_.size()) + ", suspended " +
            std::to_string(suspended_.size()));
    for (const OorReport& r : suspended_) log(0.0, "oor", r.app, oor_detail(r));
    PlanRecord record;
    record.plans = plans_;
    record.suspended = suspended_;
    trace_.plans.push_back(std::move(record));
    reprice();
  }

  void handle(const Happening& h) {
    if (h.kind == 0) {
      apply(s_.events[h.index], "");
      return;
    }
    const TimedSensorWindow& w = s_.sensor_windows[h.index];
    const WearStatus predicted = predict_wear_status(w.window, s_.wear_thresholds);
    if (!availability_.is_available(w.window.device) ||
        availability_.wear(w.window.device) == predicted) {
      return;
    }
    AvailabilityEvent ev;
    ev.time_s = w.time_s;
    ev.device = w.window.device;
    ev.change = predicted == WearStatus::kWorn ? AvailabilityChange::kWorn
                                               : AvailabilityChange::kDoffed;
    apply(ev, "sensor ");
  }

  void apply(const AvailabilityEvent& ev, const std::string& origin) {
    const Availability before = availability_;
    availability_.apply(ev);
    const std::string kind = origin + std::string(to_string(ev.change));
    if (availability_ == before) {
      log(ev.time_s, kind, ev.device, "no change");
      return;
    }
    ReplanResult r = replan_on_event(plans_, suspended_, ev, s_.apps, s_.fleet,
                                     availability_, s_.thermal, planner_, options_);
    log(ev.time_s, kind, ev.device,
        "replanned " + std::to_string(r.diff.size()) + " app(s)");
    for (const ReplanEntry& e : r.diff) {
      log(ev.time_s, "replan", e.app,
          e.reason + " -> " + (e.after ? "running" : "suspended"));
      if (e.oor) log(ev.time_s, "oor", e.app, oor_detail(*e.oor));
    }
    plans_ = r.plans;
    suspended_ = r.suspended;
    options_ = r.cost_options;
    PlanRecord record;
    record.t_s = ev.time_s;
    record.event = ev;
    record.plans = std::move(r.plans);
    record.suspended = std::move(r.suspended);
    record.diff = std::move(r.diff);
    trace_.plans.push_back(std::move(record));
    reprice();
  }

  void reprice() {
    cost_ = workload_cost(plans_, s_.fleet, options_);
    link_power_w_ = 0.0;
    if (cost_.shared_period_s > 0.0) {
      for (const auto& [id, c] : cost_.per_app) {
        link_power_w_ += c.link_energy_j / cost_.shared_period_s;
      }
    }
  }

  TraceRow step(double dt) {
    TraceRow row;
    double increment = 0.0;
    for (std::size_t i = 0; i < devices_.size(); ++i) {
      const DeviceSpec& dev = *devices_[i];
      const bool up = availability_.is_available(dev.id);
      const double util = up ? cost_.utilization(dev.id) : 0.0;
      const double power =
          up ? dvfs_power(dev, options_.scale_of(dev.id), util) : 0.0;
      temps_[i] = temp_step(temps_[i], dev, power, s_.fleet.ambient_c, dt);
      increment += power * dt;
      row.temp_c.push_back(temps_[i]);
      row.util.push_back(util);
      row.available.push_back(up);
      row.wear.push_back(availability_.wear(dev.id));
    }
    increment += link_power_w_ * dt;
    for (const std::string& app : trace_.app_ids) {
      const bool running = cost_.per_app.contains(app);
      row.tput.push_back(running ? cost_.throughput() : 0.0);
      row.state.push_back(running ? AppRunState::kRunning : AppRunState::kSuspended);
    }
    row.energy_increment_j = increment;
    return row;
  }

  void log(double t, std::string kind, std::string subject, std::string detail) {
    trace_.events.push_back({t, std::move(kind), std::move(subject), std::move(detail)});
  }

  const Scenario& s_;
  Planner planner_;
  Availability availability_;
  Trace trace_;
  std::vector<const DeviceSpec*> devices_;
  std::vector<double> temps_;
  std::vector<PlannedApp> plans_;
  std::vector<OorReport> suspended_;
  CostOptions options_;
  WorkloadCost cost_;
  double link_power_w_ = 0.0;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double ratio(double a, double b) { return b > 0.0 ? a / b : 0.0; }

}  // namespace

TraceSummary summarize(const Trace& trace) {
  TraceSummary s;
  s.policy = std::string(to_string(trace.policy));
  s.rows = trace.rows.size();
  for (std::size_t i = 0; i < trace.device_ids.size(); ++i) {
    DeviceSummary d;
    if (!trace.rows.empty()) {
      double sum = 0.0;
      d.max_temp_c = trace.rows.front().temp_c[i];
      for (const TraceRow& r : trace.rows) {
        sum += r.temp_c[i];
        d.max_temp_c = std::max(d.max_temp_c, r.temp_c[i]);
      }
      d.mean_temp_c = sum / static_cast<double>(trace.rows.size());
    }
    s.devices[trace.device_ids[i]] = d;
  }
  for (std::size_t j = 0; j < trace.app_ids.size(); ++j) {
    double sum = 0.0;
    for (const TraceRow& r : trace.rows) sum += r.tput[j];
    const double mean =
        trace.rows.empty() ? 0.0 : sum / static_cast<double>(trace.rows.size());
    s.mean_throughput[trace.app_ids[j]] = mean;
    s.total_mean_throughput += mean;
  }
  s.total_energy_j = trace.rows.empty() ? 0.0 : trace.rows.back().energy_j;
  for (const EventLogRow& e : trace.events) {
    if (e.kind == "replan") ++s.replan_count;
    if (e.kind == "oor") ++s.oor_count;
  }
  return s;
}

Trace run(const Scenario& scenario, Policy policy,
          std::optional<std::uint64_t> seed) {
  scenario.validate();
  Scenario s = scenario;
  if (seed) {
    s.seed = *seed;
    s.search.seed = *seed;
  }
  spdlog::info("running {} for {} s, dt {} s", to_string(policy), s.duration_s,
               s.step_s());
  return Runner(s, policy).run();
}

const Trace& PolicyComparison::of(Policy policy) const {
  for (const Trace& t : traces) {
    if (t.policy == policy) return t;
  }
  throw ValidationError("policy", "not part of the comparison");
}

PolicyComparison compare_policies(const Scenario& scenario,
                                  std::optional<std::uint64_t> seed) {
  PolicyComparison c;
  for (Policy p : {Policy::kOrchestrator, Policy::kNeurosurgeon, Policy::kDvfsOnly}) {
    c.traces.push_back(run(scenario, p, seed));
  }
  const double orch = c.traces[0].summary.total_mean_throughput;
  c.vs_baseline = ratio(orch, c.traces[1].summary.total_mean_throughput);
  c.vs_dvfs = ratio(orch, c.traces[2].summary.total_mean_throughput);
  return c;
}

void write_trace(const Trace& trace, const std::filesystem::path& path) {
  std::string out = "t_s";
  for (const auto& id : trace.device_ids) out += ",dev:" + id + ":temp_c";
  for (const auto& id : trace.device_ids) out += ",dev:" + id + ":util";
  for (const auto& id : trace.app_ids) out += ",app:" + id + ":tput";
  for (const auto& id : trace.app_ids) out += ",app:" + id + ":state";
  out += ",energy_j\n";
  for (const TraceRow& r : trace.rows) {
    out += num(r.t_s);
    for (double v : r.temp_c) out += "," + num(v);
    for (double v : r.util) out += "," + num(v);
    for (double v : r.tput) out += "," + num(v);
    for (AppRunState s : r.state) out += "," + std::string(to_string(s));
    out += "," + num(r.energy_j) + "\n";
  }
  detail::write_text_file(path, out);
}

void write_event_log(const Trace& trace, const std::filesystem::path& path) {
  std::string out = "t_s,kind,subject,detail\n";
  for (const EventLogRow& e : trace.events) {
    out += num(e.t_s) + "," + csv_field(e.kind) + "," + csv_field(e.subject) +
           "," + csv_field(e.detail) + "\n";
  }
  detail::write_text_file(path, out);
}

namespace {

detail::OrderedJson summary_json(const TraceSummary& s) {
  detail::OrderedJson j;
  j["policy"] = s.policy;
  j["rows"] = s.rows;
  detail::OrderedJson devices = detail::OrderedJson::object();
  for (const auto& [id, d] : s.devices) {
    devices[id] = {{"mean_temp_c", d.mean_temp_c}, {"max_temp_c", d.max_temp_c}};
  }
  j["devices"] = std::move(devices);
  detail::OrderedJson apps = detail::OrderedJson::object();
  for (const auto& [id, t] : s.mean_throughput) {
    apps[id] = {{"mean_throughput_per_s", t}};
  }
  j["apps"] = std::move(apps);
  j["total_mean_throughput_per_s"] = s.total_mean_throughput;
  j["total_energy_j"] = s.total_energy_j;
  j["replan_count"] = s.replan_count;
  j["oor_count"] = s.oor_count;
  return j;
}

}  // namespace

std::string summary_to_json(const TraceSummary& summary) {
  return summary_json(summary).dump(2) + "\n";
}

void write_summary(const TraceSummary& summary, const std::filesystem::path& path) {
  detail::write_text_file(path, summary_to_json(summary));
}

void write_run(const Trace& trace, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  write_trace(trace, dir / "trace.csv");
  write_event_log(trace, dir / "events.csv");
  write_summary(trace.summary, dir / "summary.json");
}

std::string comparison_to_json(const PolicyComparison& comparison) {
  detail::OrderedJson j;
  detail::OrderedJson policies = detail::OrderedJson::array();
  for (const Trace& t : comparison.traces) policies.push_back(summary_json(t.summary));
  j["policies"] = std::move(policies);
  j["orchestrator_vs_neurosurgeon"] = comparison.vs_baseline;
  j["orchestrator_vs_dvfs_only"] = comparison.vs_dvfs;
  return j.dump(2) + "\n";
}

void write_comparison(const PolicyComparison& comparison,
                      const std::filesystem::path& dir) {
  for (const Trace& t : comparison.traces) {
    write_run(t, dir / std::string(to_string(t.policy)));
  }
  detail::write_text_file(dir / "comparison.json", comparison_to_json(comparison));
}

}  // namespace bodynet
