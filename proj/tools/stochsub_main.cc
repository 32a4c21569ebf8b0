// Copyright 2026 The Authors.
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

// Command-line front end. Exit status: 0 success, 1 input or other error,
// 2 capacity error, 3 bound violation in `experiment --strict`.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stochsub/constraints.h"
#include "stochsub/continuous_greedy.h"
#include "stochsub/errors.h"
#include "stochsub/harness.h"
#include "stochsub/independence.h"
#include "stochsub/instance_io.h"
#include "stochsub/multilinear.h"
#include "stochsub/policies.h"

namespace stochsub {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCapacity = 2;
constexpr int kExitViolation = 3;

void Emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
  } else {
    io::WriteFile(path, text);
  }
}

Constraint ResolveConstraint(const io::Problem& problem,
                             const std::string& flag) {
  if (!flag.empty()) return io::ParseConstraint(flag, problem.instance);
  if (problem.constraint) return *problem.constraint;
  throw InputError("no constraint: pass --constraint or add one to the file");
}

std::string SetString(const Instance& instance, ItemMask set) {
  std::string out = "{";
  bool first = true;
  for (ItemId e : MaskItems(set)) {
    out += (first ? "" : ",") + instance.items()[e];
    first = false;
  }
  return out + "}";
}

int RunIndependence(const std::string& path, bool gamma,
                    const std::string& variant, bool json, bool serial) {
  const io::Problem problem = io::LoadProblem(path);
  IndependenceOptions options;
  if (serial) options.execution = Execution::kSerial;
  if (variant == "conditioned") {
    options.kappa_variant = KappaVariant::kConditioned;
  } else if (variant != "literal") {
    throw InputError("variant must be literal or conditioned");
  }
  const IndependenceReport report = gamma ? Gamma(problem.instance, options)
                                          : Kappa(problem.instance, options);
  if (json) {
    std::cout << io::IndependenceReportToJson(problem.instance, report).dump(2)
              << "\n";
    return kExitOk;
  }
  std::cout << report.value.get_str() << "\n";
  std::cout << "clamped\t" << report.clamped.get_str() << "\n";
  std::cout << "approx\t" << FormatDouble(report.value.get_d()) << "\n";
  std::cout << "ratios_examined\t" << report.ratios_examined << "\n";
  if (!std::holds_alternative<std::monostate>(report.witness)) {
    std::cout << "witness\t"
              << io::IndependenceReportToJson(problem.instance, report)
                     .at("witness")
                     .dump()
              << "\n";
  }
  return kExitOk;
}

struct GreedyFlags {
  std::string constraint;
  double delta = 0.05;
  std::string mode = "exact";
  std::uint64_t seed = 0;
  std::int64_t samples = 0;
  std::string variant = "optimistic";
  bool paper = false;
  std::string trajectory;
};

int RunGreedy(const std::string& path, const GreedyFlags& flags) {
  const io::Problem problem = io::LoadProblem(path);
  const Instance& instance = problem.instance;
  const Constraint constraint = ResolveConstraint(problem, flags.constraint);
  GreedyConfig config;
  if (flags.paper) {
    config = GreedyConfig::PaperFaithful(instance.num_items());
  } else {
    config.delta = flags.delta;
    if (flags.mode == "sampled") {
      config.weight_mode = WeightMode::kSampled;
    } else if (flags.mode != "exact") {
      throw InputError("mode must be exact or sampled");
    }
  }
  if (flags.samples > 0) config.sample_count = flags.samples;
  config.seed = flags.seed;
  if (flags.variant == "standard") {
    config.weight_variant = WeightVariant::kStandard;
  } else if (flags.variant != "optimistic") {
    throw InputError("variant must be optimistic or standard");
  }
  const MultilinearOracle oracle(instance);
  const Trajectory trajectory = RunContinuousGreedy(oracle, constraint, config);
  std::cout << "rounds\t" << trajectory.rounds.size() << "\n";
  std::cout << "y1";
  for (double v : trajectory.final_point.coords()) {
    std::cout << "\t" << FormatDouble(v);
  }
  std::cout << "\n";
  if (trajectory.final_value) {
    std::cout << "F\t" << FormatDouble(*trajectory.final_value) << "\n";
  }
  if (!flags.trajectory.empty()) {
    io::WriteFile(flags.trajectory, TrajectoryToTsv(instance, trajectory));
  }
  return kExitOk;
}

int RunOracle(const std::string& which, const std::string& path,
              const std::string& constraint_flag, const std::string& policy_out) {
  const io::Problem problem = io::LoadProblem(path);
  const Instance& instance = problem.instance;
  const Constraint constraint = ResolveConstraint(problem, constraint_flag);
  if (which == "adaptive") {
    const AdaptiveSolution best = OptimalAdaptive(instance, constraint);
    std::cout << "value\t" << FormatDouble(best.value) << "\n";
    std::cout << "depth\t" << best.policy.Depth() << "\n";
    const std::string policy =
        io::PolicyToJson(instance, best.policy).dump(2) + "\n";
    if (policy_out.empty()) {
      std::cout << policy;
    } else {
      io::WriteFile(policy_out, policy);
    }
    return kExitOk;
  }
  const NonadaptiveSolution best = BestNonadaptive(instance, constraint);
  std::cout << "value\t" << FormatDouble(best.value) << "\n";
  std::cout << "set\t" << SetString(instance, best.set) << "\n";
  return kExitOk;
}

int RunGap(const std::string& path, const std::string& constraint_flag) {
  const io::Problem problem = io::LoadProblem(path);
  const Instance& instance = problem.instance;
  const Constraint constraint = ResolveConstraint(problem, constraint_flag);
  const AdaptiveSolution adaptive = OptimalAdaptive(instance, constraint);
  const NonadaptiveSolution fixed = BestNonadaptive(instance, constraint);
  const IndependenceReport gamma = Gamma(instance);
  const double virt =
      VirtualNonadaptiveValue(instance, constraint, adaptive.policy);
  std::cout << "adaptive\t" << FormatDouble(adaptive.value) << "\n";
  std::cout << "nonadaptive\t" << FormatDouble(fixed.value) << "\n";
  std::cout << "virtual\t" << FormatDouble(virt) << "\n";
  if (fixed.value > 0.0) {
    std::cout << "gap\t" << FormatDouble(adaptive.value / fixed.value) << "\n";
  }
  std::cout << "gamma\t" << gamma.clamped.get_str() << "\n";
  if (gamma.clamped > 0) {
    std::cout << "gap_bound\t"
              << FormatDouble(AdaptivityGapBound(gamma.clamped_double()))
              << "\n";
  }
  return kExitOk;
}

struct ExperimentFlags {
  bool strict = false;
  std::string out;
  std::string json;
  bool timing = false;
  bool serial = false;
};

int RunExperiment(const std::string& path, const ExperimentFlags& flags) {
  const Suite suite = LoadSuite(path);
  PipelineOptions options;
  if (flags.serial) options.execution = Execution::kSerial;
  const std::vector<ReportRow> rows = RunSuite(suite, options);
  std::string out = flags.out;
  if (out.empty() && suite.output) out = *suite.output;
  Emit(ReportToTsv(rows, flags.timing), out);
  if (!flags.json.empty()) {
    io::WriteFile(flags.json, ReportToJson(rows, flags.timing));
  }
  int failed = 0;
  for (const ReportRow& row : rows) {
    if (!row.AllFlagsHold()) {
      ++failed;
      std::cerr << "scenario " << row.scenario << ": "
                << (row.error.empty() ? "bound flag violated" : row.error)
                << "\n";
    }
  }
  return flags.strict && failed > 0 ? kExitViolation : kExitOk;
}

std::vector<std::vector<mpq_class>> ParseMarginals(const std::string& text) {
  std::vector<std::vector<mpq_class>> out;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ';')) {
    std::vector<mpq_class> row;
    std::stringstream probs(item);
    std::string p;
    while (std::getline(probs, p, ',')) {
      mpq_class q;
      if (q.set_str(p, 10) != 0) throw InputError("bad probability '" + p + "'");
      q.canonicalize();
      row.push_back(q);
    }
    out.push_back(std::move(row));
  }
  return out;
}

int Dispatch(int argc, char** argv) {
  CLI::App app{"Stochastic submodular maximization with dependent states"};
  app.require_subcommand(1);

  std::string instance_path;
  bool json = false;
  bool serial = false;
  std::string variant = "literal";

  auto* kappa = app.add_subcommand("kappa", "Degree of independence");
  kappa->add_option("instance", instance_path)->required();
  kappa->add_option("--variant", variant, "literal or conditioned");
  kappa->add_flag("--json", json);
  kappa->add_flag("--serial", serial);

  auto* gamma = app.add_subcommand("gamma", "Second-form degree of independence");
  gamma->add_option("instance", instance_path)->required();
  gamma->add_flag("--json", json);
  gamma->add_flag("--serial", serial);

  GreedyFlags gflags;
  auto* greedy = app.add_subcommand("greedy", "Optimistic continuous greedy");
  greedy->add_option("instance", instance_path)->required();
  greedy->add_option("--constraint", gflags.constraint,
                     "uniform:K or a JSON constraint object");
  greedy->add_option("--delta", gflags.delta);
  greedy->add_option("--mode", gflags.mode, "exact or sampled");
  greedy->add_option("--seed", gflags.seed);
  greedy->add_option("--samples", gflags.samples);
  greedy->add_option("--variant", gflags.variant, "optimistic or standard");
  greedy->add_flag("--paper-faithful", gflags.paper);
  greedy->add_option("--trajectory", gflags.trajectory, "write rounds as TSV");

  std::string which;
  std::string constraint_flag;
  std::string policy_out;
  auto* oracle = app.add_subcommand("oracle", "Brute-force optimal policies");
  oracle->add_option("which", which, "adaptive or nonadaptive")
      ->required()
      ->check(CLI::IsMember({"adaptive", "nonadaptive"}));
  oracle->add_option("instance", instance_path)->required();
  oracle->add_option("--constraint", constraint_flag);
  oracle->add_option("--policy-out", policy_out);

  auto* gap = app.add_subcommand("gap", "Adaptivity gap on one instance");
  gap->add_option("instance", instance_path)->required();
  gap->add_option("--constraint", constraint_flag);

  std::string scenario_path;
  ExperimentFlags eflags;
  auto* experiment = app.add_subcommand("experiment", "Run a scenario suite");
  experiment->add_option("scenarios", scenario_path)->required();
  experiment->add_flag("--strict", eflags.strict,
                       "exit 3 when any bound flag fails");
  experiment->add_option("--out", eflags.out, "TSV report path");
  experiment->add_option("--json", eflags.json, "JSON report path");
  experiment->add_flag("--timing", eflags.timing, "add runtimes to reports");
  experiment->add_flag("--serial", eflags.serial);

  auto* generate = app.add_subcommand("generate", "Write a generated instance");
  generate->require_subcommand(1);
  std::string out;
  std::string gen_constraint;
  CommonCauseSpec cc;
  auto* gen_cc = generate->add_subcommand("common-cause");
  gen_cc->add_option("--m", cc.num_items);
  gen_cc->add_option("--states", cc.states_per_item);
  gen_cc->add_option("--worlds", cc.worlds);
  gen_cc->add_option("--seed", cc.seed);
  gen_cc->add_option("--noise", cc.noise);
  ProductSpec ps;
  std::string marginals;
  auto* gen_product = generate->add_subcommand("product");
  gen_product->add_option("--m", ps.num_items);
  gen_product->add_option("--states", ps.states_per_item);
  gen_product->add_option("--seed", ps.seed);
  gen_product->add_option("--marginals", marginals,
                          "per-item p/q lists, e.g. 1/2,1/2;1/3,2/3");
  gen_product->add_flag("--modular", ps.modular);
  auto* gen_cc2 = generate->add_subcommand("common-cause2");
  for (auto* sub : {gen_cc, gen_product, gen_cc2}) {
    sub->add_option("--out", out);
    sub->add_option("--constraint", gen_constraint);
  }

  auto* validate = app.add_subcommand("validate", "Check an instance file");
  validate->add_option("instance", instance_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitInput;
  }

  if (*kappa) return RunIndependence(instance_path, false, variant, json, serial);
  if (*gamma) return RunIndependence(instance_path, true, "literal", json, serial);
  if (*greedy) return RunGreedy(instance_path, gflags);
  if (*oracle) return RunOracle(which, instance_path, constraint_flag, policy_out);
  if (*gap) return RunGap(instance_path, constraint_flag);
  if (*experiment) return RunExperiment(scenario_path, eflags);
  if (*generate) {
    std::optional<Instance> instance;
    if (*gen_cc) {
      instance.emplace(GenerateCommonCause(cc));
    } else if (*gen_product) {
      if (!marginals.empty()) ps.marginals = ParseMarginals(marginals);
      instance.emplace(GenerateProduct(ps));
    } else {
      instance.emplace(CommonCause2());
    }
    std::optional<Constraint> constraint;
    if (!gen_constraint.empty()) {
      constraint = io::ParseConstraint(gen_constraint, *instance);
    }
    Emit(io::DumpProblem(*instance, constraint), out);
    return kExitOk;
  }
  if (*validate) {
    const io::Problem problem = io::LoadProblem(instance_path);
    const Instance& instance = problem.instance;
    const UtilityReport report = ValidateUtility(instance.utility());
    if (!report.monotone || !report.submodular) {
      throw InputError(std::string("utility is not ") +
                       (report.monotone ? "submodular" : "monotone"));
    }
    std::cout << "ok\titems=" << instance.num_items()
              << "\tstates=" << instance.num_states()
              << "\tsupport=" << instance.distribution().size();
    if (problem.constraint) {
      std::cout << "\tconstraint=" << ConstraintKindName(problem.constraint->kind());
    }
    std::cout << "\n";
    if (!report.note.empty()) std::cout << "note\t" << report.note << "\n";
    return kExitOk;
  }
  return kExitInput;
}

}  // namespace
}  // namespace stochsub

int main(int argc, char** argv) {
  try {
    return stochsub::Dispatch(argc, argv);
  } catch (const stochsub::Error& e) {
    std::cerr << "error (" << stochsub::ErrorCodeName(e.code())
              << "): " << e.what() << "\n";
    return e.code() == stochsub::ErrorCode::kCapacity ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
