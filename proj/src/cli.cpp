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

#include "bodynet/cli.hpp"

#include <optional>
#include <string>

#include "CLI11.hpp"
#include "bodynet/logging.hpp"
#include "bodynet/report.hpp"
#include "bodynet/scenario.hpp"
#include "bodynet/simulator.hpp"

namespace bodynet {

namespace {

struct Options {
  std::string scenario;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string policy = "orchestrator";
};

struct InitialPlan {
  std::vector<PlannedApp> plans;
  std::vector<OorReport> oor;
  CostOptions options;
};

PlanningContext context_of(const Scenario& s, const Availability& availability) {
  PlanningContext ctx;
  ctx.fleet = &s.fleet;
  ctx.availability = availability;
  ctx.thermal = s.thermal;
  return ctx;
}

int cmd_plan(const Options& o, std::ostream& out) {
  const Scenario s = load_scenario(o.scenario);
  const Availability availability(s.fleet);
  std::vector<OorReport> oor;
  const auto bound = bind_apps(s.apps, s.fleet, availability, oor);
  PlanOutcome outcome;
  if (!bound.empty()) {
    outcome = make_planner(parse_policy(o.policy), s)(bound, context_of(s, availability));
  }
  oor.insert(oor.end(), outcome.oor.begin(), outcome.oor.end());
  out << plan_report_to_json(make_plan_report(outcome.plans, oor, s.fleet,
                                              availability, outcome.cost_options));
  return oor.empty() ? kExitOk : kExitOutOfResource;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const Scenario s = load_scenario(o.scenario);
  const Availability availability(s.fleet);
  std::vector<OorReport> oor;
  const auto bound = bind_apps(s.apps, s.fleet, availability, oor);
  if (!oor.empty()) throw OutOfResource(oor);
  const JointPlan best = brute_force_optimal(bound, context_of(s, availability),
                                             s.objective, s.search.max_segments);
  out << plan_report_to_json(
      make_plan_report(best.apps, {}, s.fleet, availability));
  return kExitOk;
}

int cmd_run(const Options& o) {
  const Scenario s = load_scenario(o.scenario);
  write_run(run(s, parse_policy(o.policy), o.seed), o.out_dir);
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const Scenario s = load_scenario(o.scenario);
  const PolicyComparison c = compare_policies(s, o.seed);
  write_comparison(c, o.out_dir);
  out << comparison_to_json(c);
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  init_logging();
  CLI::App app{"On-body accelerator fleet planner and simulator", "bodynet"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> policies{"orchestrator", "neurosurgeon",
                                          "dvfs_only"};

  auto* validate = app.add_subcommand("validate", "Check a scenario; silent on success");
  validate->add_option("scenario", o.scenario)->required();

  auto* plan = app.add_subcommand("plan", "Print the initial plan report");
  plan->add_option("scenario", o.scenario)->required();
  plan->add_option("--policy", o.policy)->check(CLI::IsMember(policies));

  auto* run_cmd = app.add_subcommand("run", "Simulate and write trace files");
  run_cmd->add_option("scenario", o.scenario)->required();
  run_cmd->add_option("--out", o.out_dir)->required();
  run_cmd->add_option("--seed", o.seed);
  run_cmd->add_option("--policy", o.policy)->check(CLI::IsMember(policies));

  auto* compare = app.add_subcommand("compare", "Run every policy side by side");
  compare->add_option("scenario", o.scenario)->required();
  compare->add_option("--out", o.out_dir)->required();
  compare->add_option("--seed", o.seed);

  auto* oracle = app.add_subcommand("oracle", "Exhaustive search on small instances");
  oracle->add_option("scenario", o.scenario)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) {
      load_scenario(o.scenario);
      return kExitOk;
    }
    if (*plan) return cmd_plan(o, out);
    if (*run_cmd) return cmd_run(o);
    if (*compare) return cmd_compare(o, out);
    if (*oracle) return cmd_oracle(o, out);
  } catch (const OutOfResource& e) {
    err << "error: " << e.what() << "\n";
    return kExitOutOfResource;
  } catch (const NoCandidateMeetsFloor& e) {
    err << "error: " << e.what() << "\n";
    return kExitOutOfResource;
  } catch (const InstanceTooLarge& e) {
    err << "error: " << e.what() << "\n";
    return kExitTooLarge;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace bodynet
