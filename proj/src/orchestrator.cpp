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

#include "bodynet/orchestrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <tuple>

#include <spdlog/spdlog.h>

#include "search_space.hpp"

namespace bodynet {

std::string_view to_string(Constraint constraint) {
  switch (constraint) {
    case Constraint::kWeightMemory:
      return "weight_memory";
    case Constraint::kBiasMemory:
      return "bias_memory";
    case Constraint::kDataMemory:
      return "data_memory";
    case Constraint::kRoute:
      return "route";
    case Constraint::kThermal:
      return "thermal";
    case Constraint::kBinding:
      return "binding";
    case Constraint::kThroughputFloor:
      return "throughput_floor";
  }
  return "route";
}

Constraint parse_constraint(std::string_view text) {
  for (int i = 0; i <= static_cast<int>(Constraint::kThroughputFloor); ++i) {
    const auto c = static_cast<Constraint>(i);
    if (to_string(c) == text) return c;
  }
  throw ValidationError("constraint",
                        "unknown constraint '" + std::string(text) + "'");
}

namespace {

std::string describe(const std::vector<OorReport>& reports) {
  std::string out = "out of resource:";
  for (const OorReport& r : reports) {
    out += " ";
    out += r.app;
    out += " (";
    out += to_string(r.constraint);
    out += ")";
  }
  return out;
}

}  // namespace

OutOfResource::OutOfResource(std::vector<OorReport> reports)
    : Error(describe(reports)), reports_(std::move(reports)) {}

void Objective::validate() const {
  if (throughput_floor) {
    if (kind != Kind::kMinEnergy) {
      throw ValidationError("objective.throughput_floor",
                            "only valid with min_energy");
    }
    if (!(*throughput_floor > 0.0)) {
      throw ValidationError("objective.throughput_floor", "must be > 0");
    }
  }
}

void SearchConfig::validate() const {
  if (max_segments < 1) {
    throw ValidationError("search.max_segments", "must be >= 1");
  }
  if (beam_width < 1) throw ValidationError("search.beam_width", "must be >= 1");
}

std::size_t JointPlan::total_segments() const {
  std::size_t n = 0;
  for (const PlannedApp& a : apps) n += a.plan.segments.size();
  return n;
}

std::vector<std::string> JointPlan::device_sequence() const {
  std::vector<std::string> seq;
  for (const PlannedApp& a : apps) {
    for (const Segment& s : a.plan.segments) seq.push_back(s.device);
  }
  return seq;
}

const PlannedApp* JointPlan::find(std::string_view app) const {
  for (const PlannedApp& a : apps) {
    if (a.plan.app == app) return &a;
  }
  return nullptr;
}

std::vector<std::vector<std::size_t>> enumerate_cut_candidates(
    const ModelGraph& model, std::size_t k_max) {
  if (k_max < 1) throw RangeError("k_max must be >= 1");
  const std::size_t n = model.layer_count();
  std::vector<std::vector<std::size_t>> out;
  if (n == 0) return out;
  const std::size_t max_cuts = std::min(k_max - 1, n - 1);
  for (std::size_t j = 0; j <= max_cuts; ++j) {
    std::vector<std::size_t> cuts(j);
    std::iota(cuts.begin(), cuts.end(), std::size_t{1});
    while (true) {
      out.push_back(cuts);
      // next combination of j values from 1..n-1 in lexicographic order
      std::size_t i = j;
      while (i > 0 && cuts[i - 1] == n - 1 - (j - i)) --i;
      if (i == 0) break;
      ++cuts[i - 1];
      for (std::size_t k = i; k < j; ++k) cuts[k] = cuts[k - 1] + 1;
    }
  }
  return out;
}

JointPlan select_plan(std::span<const JointPlan> candidates,
                      const Objective& objective) {
  if (candidates.empty()) throw InfeasibleError("no plan candidates");
  objective.validate();
  const bool energy = objective.kind == Objective::Kind::kMinEnergy;
  auto key = [&](const JointPlan& p) {
    return energy ? p.cost.total_energy_j : p.cost.shared_period_s;
  };
  const JointPlan* best = nullptr;
  for (const JointPlan& c : candidates) {
    if (energy && objective.throughput_floor &&
        c.cost.throughput() < *objective.throughput_floor) {
      continue;
    }
    if (best == nullptr || detail::joint_less(c, *best, key(c), key(*best))) {
      best = &c;
    }
  }
  if (best == nullptr) {
    throw NoCandidateMeetsFloor("no candidate reaches " +
                                std::to_string(*objective.throughput_floor) +
                                " inferences/s");
  }
  return *best;
}

namespace detail {
namespace {

enum class Mode { kPeriod, kCompact };

constexpr double kInf = std::numeric_limits<double>::infinity();

// Joint state: usage of everything placed so far plus per-app assignments
// (indexed by processing order; empty when the app is not placed).
struct JointState {
  Usage usage;
  std::vector<std::vector<SegChoice>> assign;
  double weight_frac = 0.0;  // max weight-memory fraction, compact mode
};

struct AppState {
  std::size_t joint = 0;
  std::vector<SegChoice> segs;
  Usage usage;
  std::size_t pos = 0;
  double period = 0.0;
  double in_cost = 0.0;
  double latency = 0.0;
  double weight_frac = 0.0;
  std::uint64_t free_weight = 0;
  std::uint64_t free_bias = 0;
};

struct Child {
  std::size_t parent = 0;
  int device = 0;
  std::uint16_t end = 0;
  double primary = 0.0;
  double secondary = 0.0;
  double in_cost = 0.0;
  double latency = 0.0;
  double energy = 0.0;
  bool stuck = false;  // greedy fill found no way to finish the app
  double estimate = 0.0;  // optimistic period once the app is complete
  // Quantized estimate, primary, secondary, in_cost, latency.
  std::array<std::pair<int, double>, 5> key{};
  std::pair<int, double> energy_key{};

  void seal() {
    key = {quantize(estimate), quantize(primary), quantize(secondary),
           quantize(in_cost), quantize(latency)};
    energy_key = quantize(energy);
  }
};

bool child_less(const Child& a, const Child& b) {
  if (a.stuck != b.stuck) return b.stuck;
  if (a.key != b.key) return a.key < b.key;
  return std::tie(a.parent, a.device, a.end) <
         std::tie(b.parent, b.device, b.end);
}

std::vector<int> signature(const std::vector<std::vector<SegChoice>>& assign) {
  std::vector<int> sig;
  for (const auto& segs : assign) {
    for (const SegChoice& s : segs) {
      sig.push_back(s.device);
      sig.push_back(s.begin);
      sig.push_back(s.end);
    }
    sig.push_back(-1);
  }
  return sig;
}

double max_weight_fraction(const Usage& usage, const Snapshot& snap) {
  double frac = 0.0;
  for (std::size_t d = 0; d < snap.size(); ++d) {
    const auto cap = snap.device(static_cast<int>(d)).weight_mem_bytes;
    if (cap == 0) continue;
    frac = std::max(frac, static_cast<double>(usage.weight[d]) /
                              static_cast<double>(cap));
  }
  return frac;
}

// Places one segment [pos, end) on `device` after `state`, closing the app
// when end == layers().
void apply_segment(AppState& state, const Snapshot& snap,
                   const AppTables& app, int device, std::size_t end) {
  Usage& u = state.usage;
  const int prev = state.segs.empty() ? app.sensor() : state.segs.back().device;
  const auto d = static_cast<std::size_t>(device);
  const std::size_t begin = state.pos;
  u.weight[d] += app.weight(begin, end);
  u.bias[d] += app.bias(begin, end);
  u.data[d] += app.data(begin, end);
  state.free_weight -= app.weight(begin, end);
  state.free_bias -= app.bias(begin, end);
  if (prev != device) {
    const double t = app.hop_time(snap, prev, device, begin);
    u.link_busy[snap.slot(prev, device)] += t;
    u.energy += app.hop_energy(snap, prev, device, begin);
    state.latency += t;
    if (state.segs.empty()) state.in_cost = t;
  }
  const double c = app.compute(device, begin, end);
  u.device_busy[d] += c;
  const DeviceSpec& dev = snap.device(device);
  u.energy += (dev.active_power_w - dev.idle_power_w) * c;
  state.latency += c;
  if (end == app.layers() && device != app.output()) {
    const double t = app.hop_time(snap, device, app.output(), end);
    u.link_busy[snap.slot(device, app.output())] += t;
    u.energy += app.hop_energy(snap, device, app.output(), end);
    state.latency += t;
  }
  state.segs.push_back(SegChoice{device, static_cast<std::uint16_t>(begin),
                                 static_cast<std::uint16_t>(end)});
  state.pos = end;
  state.period = u.period();
  state.weight_frac = max_weight_fraction(u, snap);
}

class BeamSearch {
 public:
  BeamSearch(std::span<const BoundApp> apps, const PlanningContext& ctx,
             const SearchConfig& cfg, const Snapshot& snap, Mode mode,
             std::vector<std::size_t> order)
      : apps_(apps), ctx_(ctx), cfg_(cfg), snap_(snap), mode_(mode),
        order_(std::move(order)) {
    for (std::size_t i : order_) {
      tables_.emplace_back(*apps[i].app.model, apps[i].binding,
                           apps[i].app.postprocess_latency_s, snap);
    }
  }

  void run() {
    JointState root;
    root.usage = fixed_usage(ctx_, snap_);
    root.assign.assign(order_.size(), {});
    root.weight_frac = max_weight_fraction(root.usage, snap_);
    beam_.push_back(std::move(root));
    for (std::size_t k = 0; k < order_.size(); ++k) place_app(k);
  }

  std::size_t oor_count() const { return oor_.size(); }
  const std::vector<OorReport>& oor() const { return oor_; }
  const std::vector<JointState>& beam() const { return beam_; }
  const std::vector<std::size_t>& order() const { return order_; }
  const AppTables& tables(std::size_t k) const { return tables_[k]; }

 private:
  double score_primary(double bound, double frac) const {
    return mode_ == Mode::kPeriod ? bound : frac;
  }
  double score_secondary(double bound) const {
    return mode_ == Mode::kPeriod ? 0.0 : bound;
  }

  void place_app(std::size_t k) {
    const AppTables& app = tables_[k];
    const BoundApp& bound = apps_[order_[k]];
    RejectTally tally;
    if (app.sensor() == kNoDevice || app.output() == kNoDevice) {
      oor_.push_back({bound.app.id, Constraint::kBinding,
                      "bound device is not available"});
      return;
    }
    const std::size_t n = app.layers();
    const std::size_t width = cfg_.beam_width;
    const std::size_t k_max = cfg_.max_segments;

    std::vector<AppState> arena;
    std::vector<Child> completions;
    std::uint64_t cap_weight = 0;
    std::uint64_t cap_bias = 0;
    for (std::size_t d = 0; d < snap_.size(); ++d) {
      cap_weight += snap_.device(static_cast<int>(d)).weight_mem_bytes;
      cap_bias += snap_.device(static_cast<int>(d)).bias_mem_bytes;
    }

    for (std::size_t j = 0; j < beam_.size(); ++j) {
      AppState start;
      start.joint = j;
      start.usage = beam_[j].usage;
      if (app.postprocess() > 0.0) {
        start.usage.device_busy[static_cast<std::size_t>(app.output())] +=
            app.postprocess();
        start.latency = app.postprocess();
      }
      start.period = start.usage.period();
      start.weight_frac = beam_[j].weight_frac;
      const std::uint64_t used_w = std::accumulate(
          start.usage.weight.begin(), start.usage.weight.end(), std::uint64_t{0});
      const std::uint64_t used_b = std::accumulate(
          start.usage.bias.begin(), start.usage.bias.end(), std::uint64_t{0});
      start.free_weight = cap_weight - std::min(cap_weight, used_w);
      start.free_bias = cap_bias - std::min(cap_bias, used_b);
      if (app.remaining_weight(0) > start.free_weight) {
        tally.add(Constraint::kWeightMemory);
        continue;
      }
      if (app.remaining_bias(0) > start.free_bias) {
        tally.add(Constraint::kBiasMemory);
        continue;
      }

      std::vector<std::size_t> level{arena.size()};
      arena.push_back(std::move(start));
      for (std::size_t depth = 0; depth < k_max && !level.empty(); ++depth) {
        const bool last_level = depth + 1 == k_max;
        std::vector<Child> children;
        for (std::size_t idx : level) {
          expand(arena, idx, app, last_level, children, completions, tally);
        }
        if (last_level || children.empty()) break;
        children = prune_level(std::move(children), width);
        std::vector<std::size_t> next;
        for (const Child& c : children) {
          AppState s = arena[c.parent];
          apply_segment(s, snap_, app, c.device, c.end);
          next.push_back(arena.size());
          arena.push_back(std::move(s));
        }
        level = std::move(next);
      }
    }
    (void)n;

    std::vector<JointState> next_beam;
    std::set<std::vector<int>> seen;
    auto take = [&](std::vector<Child>& sorted) {
      std::size_t accepted = 0;
      for (const Child& c : sorted) {
        if (accepted >= width) break;
        AppState s = arena[c.parent];
        apply_segment(s, snap_, app, c.device, c.end);
        if (!thermal_ok(s.usage, snap_)) {
          ++tally.thermal_at_completion;
          continue;
        }
        JointState js;
        js.assign = beam_[s.joint].assign;
        js.assign[k] = s.segs;
        js.usage = std::move(s.usage);
        js.weight_frac = s.weight_frac;
        ++accepted;
        if (!seen.insert(signature(js.assign)).second) continue;
        next_beam.push_back(std::move(js));
      }
    };
    if (mode_ == Mode::kPeriod) {
      std::sort(completions.begin(), completions.end(), child_less);
    } else {
      std::sort(completions.begin(), completions.end(),
                [](const Child& a, const Child& b) {
                  const auto ka = std::make_pair(a.key[1], a.key[2]);
                  const auto kb = std::make_pair(b.key[1], b.key[2]);
                  if (ka != kb) return ka < kb;
                  return child_less(a, b);
                });
    }
    take(completions);
    std::sort(completions.begin(), completions.end(),
              [](const Child& a, const Child& b) {
                if (a.energy_key != b.energy_key) return a.energy_key < b.energy_key;
                return child_less(a, b);
              });
    take(completions);

    if (next_beam.empty()) {
      oor_.push_back(diagnose(bound, app, tally, cap_weight));
      return;
    }
    beam_ = std::move(next_beam);
  }

  // Every feasible next segment after `s`, scored; rejections go to `tally`
  // when given.
  template <class Emit>
  void options(const AppState& s, const AppTables& app, bool last_level,
               RejectTally* tally, Emit&& emit) const {
    auto reject = [tally](Constraint c) {
      if (tally != nullptr) tally->add(c);
    };
    const double devices = static_cast<double>(snap_.size());
    const std::size_t n = app.layers();
    const std::size_t pos = s.pos;
    const int prev = s.segs.empty() ? app.sensor() : s.segs.back().device;
    const double load = s.usage.load_sum();
    for (int d = 0; d < static_cast<int>(snap_.size()); ++d) {
      if (!s.segs.empty() && d == prev) continue;
      if (!snap_.routable(prev, d)) {
        reject(Constraint::kRoute);
        continue;
      }
      const auto du = static_cast<std::size_t>(d);
      const DeviceSpec& dev = snap_.device(d);
      const double hop_in = app.hop_time(snap_, prev, d, pos);
      const double link_in =
          prev == d ? 0.0 : s.usage.link_busy[snap_.slot(prev, d)] + hop_in;
      const double hop_in_energy = app.hop_energy(snap_, prev, d, pos);
      const double in_cost = s.segs.empty() ? hop_in : s.in_cost;
      const std::size_t first_end = last_level ? n : pos + 1;
      for (std::size_t e = first_end; e <= n; ++e) {
        const std::uint64_t w = app.weight(pos, e);
        if (s.usage.weight[du] + w > dev.weight_mem_bytes) {
          reject(Constraint::kWeightMemory);
          break;
        }
        const std::uint64_t b = app.bias(pos, e);
        if (s.usage.bias[du] + b > dev.bias_mem_bytes) {
          reject(Constraint::kBiasMemory);
          break;
        }
        if (s.usage.data[du] + app.data(pos, e) > dev.data_mem_bytes) {
          reject(Constraint::kDataMemory);
          break;
        }
        if (e < n) {
          if (app.remaining_weight(e) > s.free_weight - w) {
            reject(Constraint::kWeightMemory);
            continue;
          }
          if (app.remaining_bias(e) > s.free_bias - b) {
            reject(Constraint::kBiasMemory);
            continue;
          }
        }
        const double c = app.compute(d, pos, e);
        double period = std::max({s.period, s.usage.device_busy[du] + c, link_in});
        double latency = s.latency + hop_in + c;
        double energy = s.usage.energy + hop_in_energy +
                        (dev.active_power_w - dev.idle_power_w) * c;
        if (e == n) {
          if (!snap_.routable(d, app.output())) {
            reject(Constraint::kRoute);
            continue;
          }
          if (d != app.output()) {
            const double hop_out = app.hop_time(snap_, d, app.output(), n);
            period = std::max(
                period, s.usage.link_busy[snap_.slot(d, app.output())] + hop_out);
            latency += hop_out;
            energy += app.hop_energy(snap_, d, app.output(), n);
          }
        }
        const double bound =
            std::max(period, (load + c + app.remaining_min_compute(e)) / devices);
        const double frac =
            dev.weight_mem_bytes == 0
                ? s.weight_frac
                : std::max(s.weight_frac,
                           static_cast<double>(s.usage.weight[du] + w) /
                               static_cast<double>(dev.weight_mem_bytes));
        emit(Child{0, d, static_cast<std::uint16_t>(e), bound, frac, in_cost,
                   latency, energy});
      }
    }
  }

  void expand(const std::vector<AppState>& arena, std::size_t idx,
              const AppTables& app, bool last_level,
              std::vector<Child>& children, std::vector<Child>& completions,
              RejectTally& tally) const {
    const AppState& s = arena[idx];
    const std::size_t n = app.layers();
    const std::size_t left = cfg_.max_segments - s.segs.size() - 1;
    const std::size_t dn = snap_.size();
    const std::vector<double> table =
        mode_ == Mode::kPeriod && left > 0 ? completion_table(s, app, left)
                                           : std::vector<double>{};
    options(s, app, last_level, &tally, [&](Child c) {
      const double bound = c.primary;
      const double frac = c.secondary;
      c.parent = idx;
      c.primary = score_primary(bound, frac);
      c.secondary = score_secondary(bound);
      c.estimate = mode_ == Mode::kPeriod ? bound : 0.0;
      if (c.end < n) {
        c.stuck = !completable(s, app, c.device, s.pos, c.end, left);
        if (mode_ == Mode::kPeriod) {
          c.estimate = std::max(
              bound, table[(left * (n + 1) + c.end) * dn +
                           static_cast<std::size_t>(c.device)]);
        }
      }
      c.seal();
      (c.end == n ? completions : children).push_back(c);
    });
  }

  // Optimistic completion periods against the usage in `s`: entry
  // [left][p][prev] is the best period for layers [p, n) in at most `left`
  // segments after a segment on `prev`. Busy time and memory added by the
  // completion itself are not accumulated, so revisits look cheaper than
  // they are.
  std::vector<double> completion_table(const AppState& s, const AppTables& app,
                                       std::size_t segments) const {
    const std::size_t n = app.layers();
    const std::size_t dn = snap_.size();
    std::vector<double> v((segments + 1) * (n + 1) * dn, kInf);
    auto at = [&](std::size_t left, std::size_t p, std::size_t prev) -> double& {
      return v[(left * (n + 1) + p) * dn + prev];
    };
    const int out = app.output();
    const std::size_t first = s.pos + 1;
    // Finishing on d: the hop to the output, or infinity when unroutable.
    std::vector<double> tail_out(dn, kInf);
    for (std::size_t d = 0; d < dn; ++d) {
      const int di = static_cast<int>(d);
      if (di == out) {
        tail_out[d] = 0.0;
      } else if (snap_.routable(di, out)) {
        tail_out[d] = s.usage.link_busy[snap_.slot(di, out)] +
                      app.hop_time(snap_, di, out, n);
      }
    }
    // Last end that fits on d when starting at p.
    std::vector<std::size_t> fit(n * dn, 0);
    for (std::size_t p = first; p < n; ++p) {
      for (std::size_t d = 0; d < dn; ++d) {
        const DeviceSpec& dev = snap_.device(static_cast<int>(d));
        std::size_t e = p;
        while (e < n && s.usage.weight[d] + app.weight(p, e + 1) <= dev.weight_mem_bytes &&
               s.usage.bias[d] + app.bias(p, e + 1) <= dev.bias_mem_bytes &&
               s.usage.data[d] + app.data(p, e + 1) <= dev.data_mem_bytes) {
          ++e;
        }
        fit[p * dn + d] = e;
      }
    }
    // Best completion starting with a segment on d at p, entry hop excluded.
    std::vector<double> inner(n * dn);
    for (std::size_t left = 1; left <= segments; ++left) {
      for (std::size_t p = first; p < n; ++p) {
        for (std::size_t d = 0; d < dn; ++d) {
          const int di = static_cast<int>(d);
          double best = kInf;
          for (std::size_t e = p + 1; e <= fit[p * dn + d]; ++e) {
            const double tail = e == n ? tail_out[d] : at(left - 1, e, d);
            if (tail == kInf) continue;
            best = std::min(best, std::max(tail, s.usage.device_busy[d] +
                                                     app.compute(di, p, e)));
          }
          inner[p * dn + d] = best;
        }
      }
      for (std::size_t p = first; p < n; ++p) {
        for (std::size_t prev = 0; prev < dn; ++prev) {
          double best = kInf;
          for (std::size_t d = 0; d < dn; ++d) {
            const double rest = inner[p * dn + d];
            if (d == prev || rest == kInf) continue;
            const int di = static_cast<int>(d);
            const int pi = static_cast<int>(prev);
            if (!snap_.routable(pi, di)) continue;
            best = std::min(best, std::max(rest, s.usage.link_busy[snap_.slot(pi, di)] +
                                                     app.hop_time(snap_, pi, di, p)));
          }
          at(left, p, prev) = best;
        }
      }
    }
    return v;
  }

  // Best child per (device, end) first, then the rest in score order.
  static std::vector<Child> prune_level(std::vector<Child> children,
                                        std::size_t width) {
    std::sort(children.begin(), children.end(), child_less);
    std::vector<Child> kept;
    std::vector<Child> rest;
    std::set<std::pair<int, std::uint16_t>> seen;
    for (const Child& c : children) {
      if (kept.size() < width && seen.emplace(c.device, c.end).second) {
        kept.push_back(c);
      } else {
        rest.push_back(c);
      }
    }
    for (const Child& c : rest) {
      if (kept.size() >= width) break;
      kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end(), child_less);
    return kept;
  }

  // Fills the layers after [pos, e) on d greedily, each segment on the
  // reachable device that takes the most layers.
  bool completable(const AppState& s, const AppTables& app, int d,
                   std::size_t pos, std::size_t e, std::size_t segments) const {
    const std::size_t n = app.layers();
    std::vector<std::uint64_t>& w = scratch_w_;
    std::vector<std::uint64_t>& b = scratch_b_;
    std::vector<std::uint64_t>& m = scratch_m_;
    w.assign(s.usage.weight.begin(), s.usage.weight.end());
    b.assign(s.usage.bias.begin(), s.usage.bias.end());
    m.assign(s.usage.data.begin(), s.usage.data.end());
    const auto du = static_cast<std::size_t>(d);
    w[du] += app.weight(pos, e);
    b[du] += app.bias(pos, e);
    m[du] += app.data(pos, e);
    int prev = d;
    std::size_t at = e;
    for (std::size_t seg = 0; seg < segments && at < n; ++seg) {
      int best = kNoDevice;
      std::size_t best_end = at;
      for (int x = 0; x < static_cast<int>(snap_.size()); ++x) {
        if (x == prev || !snap_.routable(prev, x)) continue;
        const auto xu = static_cast<std::size_t>(x);
        const DeviceSpec& dev = snap_.device(x);
        std::size_t end = at;
        while (end < n && w[xu] + app.weight(at, end + 1) <= dev.weight_mem_bytes &&
               b[xu] + app.bias(at, end + 1) <= dev.bias_mem_bytes &&
               m[xu] + app.data(at, end + 1) <= dev.data_mem_bytes) {
          ++end;
        }
        if (end == n && !snap_.routable(x, app.output())) continue;
        if (end > best_end) {
          best = x;
          best_end = end;
        }
      }
      if (best == kNoDevice) return false;
      const auto bu = static_cast<std::size_t>(best);
      w[bu] += app.weight(at, best_end);
      b[bu] += app.bias(at, best_end);
      m[bu] += app.data(at, best_end);
      prev = best;
      at = best_end;
    }
    return at == n;
  }

  OorReport diagnose(const BoundApp& bound, const AppTables& app,
                     const RejectTally& tally, std::uint64_t cap_weight) const {
    OorReport r;
    r.app = bound.app.id;
    std::uint64_t free_weight = 0;
    for (const JointState& js : beam_) {
      const std::uint64_t used = std::accumulate(
          js.usage.weight.begin(), js.usage.weight.end(), std::uint64_t{0});
      free_weight = std::max(free_weight, cap_weight - std::min(cap_weight, used));
    }
    const std::uint64_t need = app.remaining_weight(0);
    if (tally.thermal_at_completion > 0) {
      r.constraint = Constraint::kThermal;
      r.detail = "every placement exceeds a temperature ceiling";
    } else if (need > free_weight) {
      r.constraint = Constraint::kWeightMemory;
      r.detail = "needs " + std::to_string(need) + " weight bytes, " +
                 std::to_string(free_weight) + " free across " +
                 std::to_string(snap_.size()) + " device(s)";
    } else {
      const bool empty = std::all_of(tally.counts.begin(), tally.counts.end(),
                                     [](std::size_t c) { return c == 0; });
      r.constraint = empty ? Constraint::kRoute : tally.dominant();
      r.detail = "no placement satisfies " + std::string(to_string(r.constraint));
    }
    return r;
  }

  std::span<const BoundApp> apps_;
  const PlanningContext& ctx_;
  const SearchConfig& cfg_;
  const Snapshot& snap_;
  Mode mode_;
  std::vector<std::size_t> order_;
  std::vector<AppTables> tables_;
  std::vector<JointState> beam_;
  std::vector<OorReport> oor_;
  mutable std::vector<std::uint64_t> scratch_w_, scratch_b_, scratch_m_;
};

// Heaviest weight footprint first, ids breaking ties.
std::vector<std::size_t> footprint_order(std::span<const BoundApp> apps) {
  std::vector<std::size_t> order(apps.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto fa = total_weight_footprint(*apps[a].app.model);
    const auto fb = total_weight_footprint(*apps[b].app.model);
    if (fa != fb) return fa > fb;
    return apps[a].app.id < apps[b].app.id;
  });
  return order;
}

// The footprint order, then that order with each other app pulled to the front.
std::vector<std::vector<std::size_t>> search_orders(std::span<const BoundApp> apps) {
  const std::vector<std::size_t> base = footprint_order(apps);
  std::vector<std::vector<std::size_t>> out{base};
  for (std::size_t i = 1; i < base.size(); ++i) {
    std::vector<std::size_t> o = base;
    std::rotate(o.begin(), o.begin() + static_cast<std::ptrdiff_t>(i),
                o.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    out.push_back(std::move(o));
  }
  return out;
}

// Rebuilds usage for a full assignment; nullopt when infeasible.
std::optional<Usage> rebuild(const Usage& base, const Snapshot& snap,
                             const BeamSearch& search,
                             const std::vector<std::vector<SegChoice>>& assign) {
  Usage u = base;
  for (std::size_t k = 0; k < assign.size(); ++k) {
    if (assign[k].empty()) continue;
    if (!add_assignment(u, snap, search.tables(k), assign[k], nullptr)) {
      return std::nullopt;
    }
  }
  if (!thermal_ok(u, snap)) return std::nullopt;
  return u;
}

// Merges neighbours on one device; false on an empty segment.
bool normalize(std::vector<SegChoice>& segs) {
  std::vector<SegChoice> out;
  for (const SegChoice& c : segs) {
    if (c.begin >= c.end) return false;
    if (!out.empty() && out.back().device == c.device) {
      out.back().end = c.end;
    } else {
      out.push_back(c);
    }
  }
  segs = std::move(out);
  return true;
}

// Seeded move / swap / shift descent on the best beam state.
std::vector<std::vector<SegChoice>> local_search(
    const BeamSearch& search, const Snapshot& snap, const Usage& base,
    std::vector<std::vector<SegChoice>> assign, const SearchConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  auto pick = [&rng](std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
  };
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  auto refresh = [&] {
    slots.clear();
    for (std::size_t k = 0; k < assign.size(); ++k) {
      for (std::size_t i = 0; i < assign[k].size(); ++i) slots.emplace_back(k, i);
    }
  };
  refresh();
  const auto current = rebuild(base, snap, search, assign);
  if (!current || slots.empty() || snap.size() == 0) return assign;
  auto best_key = quantize(current->period());
  for (std::size_t it = 0; it < cfg.local_search_iters; ++it) {
    auto trial = assign;
    const auto [k, i] = slots[pick(slots.size())];
    switch (pick(3)) {
      case 0:
        trial[k][i].device = static_cast<int>(pick(snap.size()));
        break;
      case 1: {
        const auto [k2, i2] = slots[pick(slots.size())];
        std::swap(trial[k][i].device, trial[k2][i2].device);
        break;
      }
      default: {
        if (i + 1 >= trial[k].size()) continue;
        if (pick(2) == 0) {
          ++trial[k][i].end;
          ++trial[k][i + 1].begin;
        } else {
          --trial[k][i].end;
          --trial[k][i + 1].begin;
        }
        break;
      }
    }
    bool ok = true;
    for (auto& segs : trial) ok = ok && normalize(segs);
    if (!ok || trial == assign) continue;
    const auto u = rebuild(base, snap, search, trial);
    if (!u) continue;
    const auto key = quantize(u->period());
    if (key < best_key) {
      best_key = key;
      assign = std::move(trial);
      refresh();
    }
  }
  return assign;
}

}  // namespace
}  // namespace detail

CandidateSet search_plan_candidates(std::span<const BoundApp> apps,
                                    const PlanningContext& ctx,
                                    const SearchConfig& cfg) {
  using namespace detail;
  cfg.validate();
  if (ctx.fleet == nullptr) throw ValidationError("fleet", "missing fleet");
  for (const BoundApp& a : apps) {
    if (!a.app.model) throw ValidationError("app " + a.app.id, "model not resolved");
  }
  const Snapshot snap(*ctx.fleet, ctx.availability, ctx.thermal);

  // One period-mode pass per order; the fewest OOR apps wins and, when
  // everything is placed, every pass contributes candidates.
  std::vector<BeamSearch> passes;
  for (auto& order : search_orders(apps)) {
    passes.emplace_back(apps, ctx, cfg, snap, Mode::kPeriod, std::move(order));
    passes.back().run();
    if (passes.back().oor_count() > 0) break;
  }
  std::size_t chosen_at = 0;
  for (std::size_t i = 1; i < passes.size(); ++i) {
    if (passes[i].oor_count() < passes[chosen_at].oor_count()) chosen_at = i;
  }
  if (passes[chosen_at].oor_count() > 0) {
    BeamSearch compact(apps, ctx, cfg, snap, Mode::kCompact, footprint_order(apps));
    compact.run();
    spdlog::debug("compact pass placed {} of {} apps",
                  apps.size() - compact.oor_count(), apps.size());
    BeamSearch kept = compact.oor_count() < passes[chosen_at].oor_count()
                          ? std::move(compact)
                          : std::move(passes[chosen_at]);
    passes.clear();
    passes.push_back(std::move(kept));
    chosen_at = 0;
  }
  const BeamSearch& chosen = passes[chosen_at];

  CandidateSet out;
  out.oor = chosen.oor();
  std::sort(out.oor.begin(), out.oor.end(),
            [](const OorReport& a, const OorReport& b) { return a.app < b.app; });
  if (chosen.oor_count() == apps.size() && !apps.empty()) return out;

  const Usage base = fixed_usage(ctx, snap);
  // (pass, assignment in that pass's processing order)
  std::vector<std::pair<std::size_t, std::vector<std::vector<SegChoice>>>> finals;
  const JointState* best = nullptr;
  std::size_t best_pass = 0;
  for (std::size_t p = 0; p < passes.size(); ++p) {
    for (const JointState& js : passes[p].beam()) {
      finals.emplace_back(p, js.assign);
      if (best == nullptr ||
          quantize(js.usage.period()) < quantize(best->usage.period())) {
        best = &js;
        best_pass = p;
      }
    }
  }
  if (best != nullptr && cfg.local_search_iters > 0) {
    finals.emplace_back(best_pass, local_search(passes[best_pass], snap, base,
                                                best->assign, cfg));
  }

  std::set<std::vector<int>> seen;
  for (const auto& [p, assign] : finals) {
    // Signatures in app index order so passes with other orders compare.
    std::vector<std::vector<SegChoice>> by_app(apps.size());
    for (std::size_t k = 0; k < assign.size(); ++k) {
      by_app[passes[p].order()[k]] = assign[k];
    }
    if (!seen.insert(signature(by_app)).second) continue;
    std::vector<PlannedApp> planned;
    for (std::size_t i = 0; i < by_app.size(); ++i) {
      if (by_app[i].empty()) continue;
      planned.push_back(to_planned(apps[i], snap, by_app[i]));
    }
    out.ranked.push_back(make_joint_plan(std::move(planned), *ctx.fleet));
  }
  std::sort(out.ranked.begin(), out.ranked.end(),
            [](const JointPlan& a, const JointPlan& b) {
              return joint_less(a, b, a.cost.shared_period_s,
                                b.cost.shared_period_s);
            });
  return out;
}

std::vector<JointPlan> generate_plan_candidates(std::span<const BoundApp> apps,
                                                const PlanningContext& ctx,
                                                const SearchConfig& cfg) {
  CandidateSet set = search_plan_candidates(apps, ctx, cfg);
  if (!set.oor.empty()) throw OutOfResource(std::move(set.oor));
  return std::move(set.ranked);
}

Planner orchestrator_planner(const SearchConfig& cfg, const Objective& objective) {
  cfg.validate();
  objective.validate();
  return [cfg, objective](std::span<const BoundApp> apps,
                          const PlanningContext& ctx) {
    PlanOutcome outcome;
    if (apps.empty()) return outcome;
    CandidateSet set = search_plan_candidates(apps, ctx, cfg);
    outcome.oor = std::move(set.oor);
    if (set.ranked.empty()) return outcome;
    try {
      outcome.plans = select_plan(set.ranked, objective).apps;
    } catch (const NoCandidateMeetsFloor& e) {
      for (const PlannedApp& p : set.ranked.front().apps) {
        outcome.oor.push_back(
            {p.plan.app, Constraint::kThroughputFloor, e.what()});
      }
      std::sort(outcome.oor.begin(), outcome.oor.end(),
                [](const OorReport& a, const OorReport& b) { return a.app < b.app; });
    }
    return outcome;
  };
}

std::vector<BoundApp> bind_apps(std::span<const AppSpec> apps,
                                const Fleet& fleet,
                                const Availability& availability,
                                std::vector<OorReport>& unbound) {
  std::vector<BoundApp> bound;
  for (const AppSpec& app : apps) {
    try {
      bound.push_back({app, bind_virtual(app, fleet, availability)});
    } catch (const NoSensorError& e) {
      unbound.push_back({app.id, Constraint::kBinding, e.what()});
    } catch (const NoOutputError& e) {
      unbound.push_back({app.id, Constraint::kBinding, e.what()});
    }
  }
  return bound;
}

}  // namespace bodynet
