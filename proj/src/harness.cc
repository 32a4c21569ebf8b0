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

#include "stochsub/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "stochsub/constraints.h"
#include "stochsub/counter_rng.h"
#include "stochsub/errors.h"
#include "stochsub/independence.h"
#include "stochsub/kernels.h"
#include "stochsub/multilinear.h"
#include "stochsub/policies.h"
#include "stochsub/rounding.h"

namespace stochsub {
namespace {

using io::Json;

// Stream tags keep the generators' draws apart.
enum Stream : std::uint64_t {
  kWorldWeights = 1,
  kWorldStates,
  kTargetWeights,
  kCoverage,
  kMarginals,
  kRounding,
  kSweep,
};

std::vector<std::string> Names(const char* prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Every pair covers each target with probability 1/2, and at least one.
UtilityFunction SeededCoverage(int m, int k, std::uint64_t seed) {
  const int num_targets = std::min(kMaxTargets, 2 * m + 1);
  std::vector<double> weights;
  for (int t = 0; t < num_targets; ++t) {
    weights.push_back(1.0 + CounterIndex({seed, kTargetWeights, 0,
                                          static_cast<std::uint64_t>(t)},
                                         0, 5));
  }
  std::vector<std::vector<std::vector<int>>> coverage(
      m, std::vector<std::vector<int>>(k));
  for (int e = 0; e < m; ++e) {
    for (int s = 0; s < k; ++s) {
      const RngKey key{seed, kCoverage, static_cast<std::uint64_t>(e),
                       static_cast<std::uint64_t>(s)};
      for (int t = 0; t < num_targets; ++t) {
        if (CounterBits(key, t) & 1u) coverage[e][s].push_back(t);
      }
      if (coverage[e][s].empty()) {
        coverage[e][s].push_back(
            static_cast<int>(CounterIndex(key, num_targets, num_targets)));
      }
    }
  }
  return UtilityFunction::Coverage(m, k, Names("t", num_targets),
                                   std::move(weights), coverage);
}

void CheckShape(int m, int k) {
  if (m < 1 || k < 1) throw InputError("need at least one item and state");
  if (m > kMaxItems) throw CapacityError("more than 64 items");
}

}  // namespace

Instance GenerateCommonCause(const CommonCauseSpec& spec) {
  const int m = spec.num_items;
  const int k = spec.states_per_item;
  CheckShape(m, k);
  if (spec.worlds < 1) throw InputError("worlds must be at least 1");
  if (!(spec.noise >= 0.0 && spec.noise <= 1.0)) {
    throw InputError("noise must lie in [0, 1]");
  }
  std::map<Realization, mpq_class> support;
  mpq_class total = 0;
  std::vector<mpq_class> weight(spec.worlds);
  for (int w = 0; w < spec.worlds; ++w) {
    weight[w] = 1 + static_cast<long>(CounterIndex(
                        {spec.seed, kWorldWeights, 0,
                         static_cast<std::uint64_t>(w)},
                        0, 9));
    total += weight[w];
  }
  for (int w = 0; w < spec.worlds; ++w) {
    Realization phi(m);
    for (int e = 0; e < m; ++e) {
      const RngKey key{spec.seed, kWorldStates, static_cast<std::uint64_t>(e),
                       static_cast<std::uint64_t>(w)};
      phi[e] = w % k;
      if (spec.noise > 0.0 && CounterUniform(key, 0) < spec.noise) {
        phi[e] = static_cast<StateId>(CounterIndex(key, 1, k));
      }
    }
    mpq_class p = weight[w] / total;
    p.canonicalize();
    support[phi] += p;
  }
  std::vector<Realization> realizations;
  std::vector<mpq_class> probs;
  for (auto& [phi, p] : support) {
    realizations.push_back(phi);
    probs.push_back(p);
  }
  return Instance(Names("i", m), Names("s", k),
                  JointDistribution(m, k, std::move(realizations),
                                    std::move(probs)),
                  SeededCoverage(m, k, spec.seed));
}

Instance CommonCause2() {
  JointDistribution distribution(2, 2, {{0, 0}, {1, 1}},
                                 {mpq_class(1, 2), mpq_class(1, 2)});
  // coverage[item][state], states good = 0, bad = 1.
  std::vector<std::vector<std::vector<int>>> coverage = {
      {{0, 1}, {0}},
      {{1, 2}, {2}},
  };
  return Instance({"a", "b"}, {"good", "bad"}, std::move(distribution),
                  UtilityFunction::Coverage(2, 2, {"t1", "t2", "t3"},
                                            {1.0, 1.0, 1.0}, coverage));
}

Instance GenerateProduct(const ProductSpec& spec) {
  const int m = spec.num_items;
  const int k = spec.states_per_item;
  CheckShape(m, k);
  std::size_t points = 1;
  for (int e = 0; e < m; ++e) {
    points *= static_cast<std::size_t>(k);
    if (points > kMaxProductSupport) {
      throw CapacityError("product support exceeds 4096 points");
    }
  }
  std::vector<std::vector<mpq_class>> marginals = spec.marginals;
  if (marginals.empty()) {
    for (int e = 0; e < m; ++e) {
      std::vector<mpq_class> row(k);
      mpq_class sum = 0;
      for (int s = 0; s < k; ++s) {
        row[s] = 1 + static_cast<long>(CounterIndex(
                         {spec.seed, kMarginals, static_cast<std::uint64_t>(e),
                          static_cast<std::uint64_t>(s)},
                         0, 6));
        sum += row[s];
      }
      for (mpq_class& p : row) {
        p /= sum;
        p.canonicalize();
      }
      marginals.push_back(std::move(row));
    }
  }
  if (static_cast<int>(marginals.size()) != m) {
    throw InputError("need one marginal per item");
  }
  for (const auto& row : marginals) {
    if (static_cast<int>(row.size()) != k) {
      throw InputError("each marginal needs one probability per state");
    }
    mpq_class sum = 0;
    for (const mpq_class& p : row) {
      if (p < 0) throw InputError("negative marginal probability");
      sum += p;
    }
    if (sum != 1) throw InputError("marginal does not sum to 1");
  }

  std::vector<Realization> realizations;
  std::vector<mpq_class> probs;
  Realization phi(m, 0);
  for (std::size_t i = 0; i < points; ++i) {
    std::size_t rest = i;
    mpq_class p = 1;
    for (int e = m - 1; e >= 0; --e) {
      phi[e] = static_cast<StateId>(rest % k);
      rest /= k;
      p *= marginals[e][phi[e]];
    }
    if (p > 0) {
      realizations.push_back(phi);
      probs.push_back(p);
    }
  }
  JointDistribution distribution(m, k, std::move(realizations),
                                 std::move(probs));

  if (!spec.modular) {
    return Instance(Names("i", m), Names("s", k), std::move(distribution),
                    SeededCoverage(m, k, spec.seed));
  }
  if (m * k > kMaxTargets) {
    throw CapacityError("modular utility needs one target per pair");
  }
  std::vector<std::string> targets;
  std::vector<double> weights;
  std::vector<std::vector<std::vector<int>>> coverage(
      m, std::vector<std::vector<int>>(k));
  for (int e = 0; e < m; ++e) {
    for (int s = 0; s < k; ++s) {
      coverage[e][s] = {static_cast<int>(targets.size())};
      targets.push_back("t" + std::to_string(e) + "_" + std::to_string(s));
      weights.push_back(1.0 + CounterIndex({spec.seed, kTargetWeights,
                                            static_cast<std::uint64_t>(e),
                                            static_cast<std::uint64_t>(s)},
                                           0, 9));
    }
  }
  return Instance(Names("i", m), Names("s", k), std::move(distribution),
                  UtilityFunction::Coverage(m, k, std::move(targets),
                                            std::move(weights), coverage));
}

const char* ExperimentKindName(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kRatioCheck:
      return "ratio-check";
    case ExperimentKind::kAdaptivityGap:
      return "adaptivity-gap";
    case ExperimentKind::kIndependenceProfile:
      return "independence-profile";
    case ExperimentKind::kCertificate:
      return "certificate";
  }
  return "?";
}

namespace {

ExperimentKind ParseKind(const std::string& name) {
  for (ExperimentKind k :
       {ExperimentKind::kRatioCheck, ExperimentKind::kAdaptivityGap,
        ExperimentKind::kIndependenceProfile, ExperimentKind::kCertificate}) {
    if (name == ExperimentKindName(k)) return k;
  }
  throw InputError("unknown experiment kind '" + name + "'");
}

void RejectUnknownKeys(const Json& doc, std::initializer_list<const char*> keys,
                       const std::string& where) {
  for (const auto& [key, value] : doc.items()) {
    if (std::find_if(keys.begin(), keys.end(), [&](const char* k) {
          return key == k;
        }) == keys.end()) {
      throw InputError("unknown key '" + key + "' in " + where);
    }
  }
}

GreedyConfig ParseGreedy(const Json& doc) {
  if (!doc.is_object()) throw InputError("greedy must be an object");
  RejectUnknownKeys(doc, {"delta", "mode", "samples", "seed", "variant"},
                    "greedy");
  GreedyConfig config;
  config.delta = doc.value("delta", config.delta);
  if (!(config.delta > 0.0 && config.delta <= 1.0)) {
    throw InputError("delta must lie in (0, 1]");
  }
  const std::string mode = doc.value("mode", std::string("exact"));
  if (mode == "exact") {
    config.weight_mode = WeightMode::kExact;
  } else if (mode == "sampled") {
    config.weight_mode = WeightMode::kSampled;
  } else {
    throw InputError("greedy mode must be exact or sampled");
  }
  if (doc.contains("samples")) {
    const Json& s = doc.at("samples");
    if (s.is_string() && s.get<std::string>() == "paper") {
      config.sample_count = std::nullopt;
    } else if (s.is_number_integer() && s.get<std::int64_t>() > 0) {
      config.sample_count = s.get<std::int64_t>();
    } else {
      throw InputError("samples must be a positive integer or \"paper\"");
    }
  }
  config.seed = doc.value("seed", config.seed);
  const std::string variant = doc.value("variant", std::string("optimistic"));
  if (variant == "optimistic") {
    config.weight_variant = WeightVariant::kOptimistic;
  } else if (variant == "standard") {
    config.weight_variant = WeightVariant::kStandard;
  } else {
    throw InputError("greedy variant must be optimistic or standard");
  }
  return config;
}

Scenario ParseScenario(const Json& doc, const std::string& base_dir) {
  RejectUnknownKeys(doc,
                    {"name", "instance", "constraint", "greedy", "kind",
                     "rounding_seeds", "sweep_points", "seed"},
                    "scenario");
  Scenario sc;
  if (!doc.contains("name") || !doc.at("name").is_string()) {
    throw InputError("scenario needs a name");
  }
  sc.name = doc.at("name").get<std::string>();
  if (!doc.contains("instance")) {
    throw InputError("scenario '" + sc.name + "' needs an instance");
  }
  const Json& source = doc.at("instance");
  if (source.is_string()) {
    std::filesystem::path p = source.get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    sc.instance_path = p.lexically_normal().string();
  } else if (source.is_object()) {
    sc.generator = source;
  } else {
    throw InputError("instance must be a path or a generator object");
  }
  if (doc.contains("constraint")) sc.constraint = doc.at("constraint");
  if (doc.contains("greedy")) sc.greedy = ParseGreedy(doc.at("greedy"));
  if (doc.contains("kind")) sc.kind = ParseKind(doc.at("kind").get<std::string>());
  sc.rounding_seeds = doc.value("rounding_seeds", sc.rounding_seeds);
  sc.sweep_points = doc.value("sweep_points", sc.sweep_points);
  sc.seed = doc.value("seed", sc.seed);
  if (sc.rounding_seeds < 1) throw InputError("rounding_seeds must be positive");
  if (sc.sweep_points < 0) throw InputError("sweep_points must be nonnegative");
  return sc;
}

}  // namespace

Suite ParseSuite(const std::string& text, const std::string& base_dir) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed scenario file: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw InputError("scenario file must be an object");
    RejectUnknownKeys(doc, {"output", "defaults", "scenarios"}, "scenario file");
    Json defaults = doc.value("defaults", Json::object());
    if (!defaults.is_object()) throw InputError("defaults must be an object");
    if (!doc.contains("scenarios") || !doc.at("scenarios").is_array()) {
      throw InputError("scenario file needs a scenarios list");
    }
    Suite suite;
    if (doc.contains("output")) suite.output = doc.at("output").get<std::string>();
    std::set<std::string> names;
    for (const Json& entry : doc.at("scenarios")) {
      if (!entry.is_object()) throw InputError("scenario must be an object");
      Json merged = defaults;
      for (const auto& [key, value] : entry.items()) merged[key] = value;
      Scenario sc = ParseScenario(merged, base_dir);
      if (!names.insert(sc.name).second) {
        throw InputError("duplicate scenario name '" + sc.name + "'");
      }
      suite.scenarios.push_back(std::move(sc));
    }
    return suite;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed scenario file: ") + e.what());
  }
}

Suite LoadSuite(const std::string& path) {
  const std::string base = std::filesystem::path(path).parent_path().string();
  return ParseSuite(io::ReadFile(path), base.empty() ? "." : base);
}

Instance GenerateFromJson(const Json& spec) {
  try {
    const std::string kind = spec.at("generator").get<std::string>();
    if (kind == "common-cause2") {
      RejectUnknownKeys(spec, {"generator"}, "generator");
      return CommonCause2();
    }
    if (kind == "common-cause") {
      RejectUnknownKeys(spec, {"generator", "m", "states", "worlds", "seed",
                               "noise"},
                        "generator");
      CommonCauseSpec cc;
      cc.num_items = spec.value("m", cc.num_items);
      cc.states_per_item = spec.value("states", cc.states_per_item);
      cc.worlds = spec.value("worlds", cc.worlds);
      cc.seed = spec.value("seed", cc.seed);
      cc.noise = spec.value("noise", cc.noise);
      return GenerateCommonCause(cc);
    }
    if (kind == "product") {
      RejectUnknownKeys(spec, {"generator", "m", "states", "seed", "marginals",
                               "modular"},
                        "generator");
      ProductSpec ps;
      ps.num_items = spec.value("m", ps.num_items);
      ps.states_per_item = spec.value("states", ps.states_per_item);
      ps.seed = spec.value("seed", ps.seed);
      ps.modular = spec.value("modular", ps.modular);
      if (spec.contains("marginals")) {
        for (const Json& row : spec.at("marginals")) {
          std::vector<mpq_class> probs;
          for (const Json& p : row) {
            mpq_class q;
            if (!p.is_string() || q.set_str(p.get<std::string>(), 10) != 0) {
              throw InputError("marginals must be \"p/q\" strings");
            }
            q.canonicalize();
            probs.push_back(q);
          }
          ps.marginals.push_back(std::move(probs));
        }
      }
      return GenerateProduct(ps);
    }
    throw InputError("unknown generator '" + kind + "'");
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed generator spec: ") + e.what());
  }
}

Instance BuildInstance(const Scenario& scenario) {
  if (scenario.instance_path) {
    return io::LoadProblem(*scenario.instance_path).instance;
  }
  return GenerateFromJson(*scenario.generator);
}

bool ReportRow::AllFlagsHold() const {
  if (!error.empty()) return false;
  for (const auto& flag : {rounded_all_feasible, inner_ok, rounding_ok,
                           ratio_ok, virtual_ok, line3_ok}) {
    if (flag && !*flag) return false;
  }
  return true;
}

namespace {

void RunScenario(const Scenario& sc, const PipelineOptions& options,
                 ReportRow& row) {
  std::optional<Constraint> constraint;
  std::optional<Instance> loaded;
  if (sc.instance_path) {
    io::Problem problem = io::LoadProblem(*sc.instance_path);
    loaded.emplace(std::move(problem.instance));
    constraint = std::move(problem.constraint);
  } else {
    loaded.emplace(GenerateFromJson(*sc.generator));
  }
  const Instance& instance = *loaded;
  if (sc.constraint) constraint = io::ConstraintFromJson(*sc.constraint, instance);
  const int m = instance.num_items();
  row.num_items = m;
  row.support_size = instance.distribution().size();

  IndependenceOptions ind;
  ind.execution = options.execution;
  const IndependenceReport kappa = Kappa(instance, ind);
  row.kappa_raw = kappa.value;
  row.kappa_clamped = kappa.clamped;
  const double kappa_c = kappa.clamped_double();

  auto need_gamma = [&] {
    const IndependenceReport gamma = Gamma(instance, ind);
    row.gamma_raw = gamma.value;
    row.gamma_clamped = gamma.clamped;
  };

  if (sc.kind == ExperimentKind::kIndependenceProfile) {
    ind.kappa_variant = KappaVariant::kConditioned;
    row.kappa_conditioned = Kappa(instance, ind).value;
    need_gamma();
    return;
  }
  if (!constraint) {
    throw InputError("scenario '" + sc.name + "' has no constraint");
  }

  const AdaptiveSolution best = OptimalAdaptive(instance, *constraint);
  const double opt = best.value;
  row.adaptive_value = opt;

  MultilinearOptions ml;
  ml.execution = options.execution;
  const MultilinearOracle oracle(instance, ml);

  if (sc.kind == ExperimentKind::kRatioCheck ||
      sc.kind == ExperimentKind::kAdaptivityGap) {
    need_gamma();
    row.nonadaptive_value = BestNonadaptive(instance, *constraint).value;
    const double gamma_c = row.gamma_clamped->get_d();
    const double virt = VirtualNonadaptiveValue(instance, *constraint,
                                                best.policy);
    row.virtual_value = virt;
    row.virtual_ok =
        virt >= gamma_c / (1.0 + gamma_c) * opt - kBoundTolerance;
    if (gamma_c > 0.0) {
      row.gap_bound = AdaptivityGapBound(gamma_c);
      row.gap_ok = opt <= *row.gap_bound * *row.nonadaptive_value +
                              kBoundTolerance;
    }
    if (sc.kind == ExperimentKind::kAdaptivityGap) return;
  }

  const GreedyConfig& config = sc.greedy;
  const Trajectory trajectory = RunContinuousGreedy(oracle, *constraint, config);
  const FractionalPoint& y1 = trajectory.final_point;
  const double fy = oracle.Exact(y1);
  row.greedy_value = fy;

  if (!(kappa_c > 0.0)) {
    throw DegenerateBoundError("bounds undefined for kappa = 0");
  }

  if (sc.kind == ExperimentKind::kCertificate) {
    const CertificateReport cert = LowerBoundCertificate(
        oracle, trajectory, config.delta, opt, kappa_c);
    row.certificate_rounds = static_cast<int>(cert.rounds.size());
    row.certificate_violations = cert.violations;
    double slack = INFINITY;
    for (const auto& r : cert.rounds) slack = std::min(slack, r.lhs - r.rhs);
    row.certificate_min_slack = cert.rounds.empty() ? 0.0 : slack;
    return;
  }

  // ratio-check
  row.inner_bound = RatioBound(kappa_c, m, 1.0);
  row.inner_vacuous = *row.inner_bound < 0.0;
  row.inner_ok = fy >= *row.inner_bound * opt - kBoundTolerance;

  const bool matroid = constraint->kind() == ConstraintKind::kUniform ||
                       constraint->kind() == ConstraintKind::kPartition;
  if (matroid) {
    std::atomic<bool> feasible{true};
    const Constraint& c = *constraint;
    const kernels::SampleStats stats = kernels::SampleMean(
        sc.rounding_seeds,
        [&](std::int64_t i) {
          const std::uint64_t seed = CounterBits(
              {sc.seed, kRounding, 0, static_cast<std::uint64_t>(i)}, 0);
          const ItemMask set = PipageRound(c, y1, seed);
          if (!IsFeasible(c, set)) feasible.store(false);
          return oracle.SetValue(set);
        },
        options.execution);
    row.rounded_mean = stats.mean;
    row.rounded_std_error = stats.std_error;
    row.rounded_all_feasible = feasible.load();
    const double margin = kStandardErrors * stats.std_error + kBoundTolerance;
    row.rounding_ok = stats.mean >= fy - margin;
    row.alpha = AlphaFor(c);
    row.ratio_bound = RatioBound(kappa_c, m, *row.alpha);
    row.ratio_ok = stats.mean >= *row.ratio_bound * opt - margin;
  }

  row.line3_points = sc.sweep_points;
  double slack = INFINITY;
  for (int p = 0; p < sc.sweep_points; ++p) {
    std::vector<double> coords(m);
    for (int e = 0; e < m; ++e) {
      coords[e] = CounterUniform({sc.seed, kSweep, static_cast<std::uint64_t>(e),
                                  static_cast<std::uint64_t>(p)},
                                 0);
    }
    const UpperBoundCheck check = OptimalUpperBoundCheck(
        oracle, best.policy, FractionalPoint(std::move(coords)), kappa_c);
    slack = std::min(slack, check.rhs - check.lhs);
  }
  if (sc.sweep_points > 0) {
    row.line3_min_slack = slack;
    row.line3_ok = slack >= -kBoundTolerance;
  }

  const CertificateReport cert =
      LowerBoundCertificate(oracle, trajectory, config.delta, opt, kappa_c);
  row.certificate_rounds = static_cast<int>(cert.rounds.size());
  row.certificate_violations = cert.violations;
  double cert_slack = INFINITY;
  for (const auto& r : cert.rounds) cert_slack = std::min(cert_slack, r.lhs - r.rhs);
  row.certificate_min_slack = cert.rounds.empty() ? 0.0 : cert_slack;
}

}  // namespace

ReportRow RunPipeline(const Scenario& scenario, const PipelineOptions& options) {
  ReportRow row;
  row.scenario = scenario.name;
  row.kind = scenario.kind;
  const auto start = std::chrono::steady_clock::now();
  try {
    RunScenario(scenario, options, row);
  } catch (const Error& e) {
    row.error = std::string(ErrorCodeName(e.code())) + ": " + e.what();
  }
  row.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return row;
}

std::vector<ReportRow> RunSuite(const Suite& suite,
                                const PipelineOptions& options) {
  std::vector<ReportRow> rows;
  rows.reserve(suite.scenarios.size());
  for (const Scenario& sc : suite.scenarios) {
    rows.push_back(RunPipeline(sc, options));
  }
  return rows;
}

std::string FormatDouble(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

// Column name and a cell renderer; absent values print as "-" in TSV and
// null in JSON.
struct Cell {
  std::optional<std::string> text;
  Json json;
};

Cell Of(const std::string& s) { return {s, Json(s)}; }
Cell Of(int v) { return {std::to_string(v), Json(v)}; }
Cell Of(std::size_t v) { return {std::to_string(v), Json(v)}; }
template <typename T>
Cell Of(const std::optional<T>& v);
template <>
Cell Of(const std::optional<double>& v) {
  if (!v) return {std::nullopt, Json(nullptr)};
  if (!std::isfinite(*v)) return {FormatDouble(*v), Json(FormatDouble(*v))};
  return {FormatDouble(*v), Json(*v)};
}
template <>
Cell Of(const std::optional<bool>& v) {
  if (!v) return {std::nullopt, Json(nullptr)};
  return {*v ? "true" : "false", Json(*v)};
}
template <>
Cell Of(const std::optional<int>& v) {
  if (!v) return {std::nullopt, Json(nullptr)};
  return Of(*v);
}
template <>
Cell Of(const std::optional<mpq_class>& v) {
  if (!v) return {std::nullopt, Json(nullptr)};
  return Of(v->get_str());
}

std::vector<std::pair<const char*, Cell>> Columns(const ReportRow& r,
                                                  bool timing) {
  std::vector<std::pair<const char*, Cell>> cols = {
      {"scenario", Of(r.scenario)},
      {"kind", Of(std::string(ExperimentKindName(r.kind)))},
      {"m", Of(r.num_items)},
      {"support", Of(r.support_size)},
      {"kappa_raw", Of(r.kappa_raw)},
      {"kappa", Of(r.kappa_clamped)},
      {"kappa_conditioned", Of(r.kappa_conditioned)},
      {"gamma_raw", Of(r.gamma_raw)},
      {"gamma", Of(r.gamma_clamped)},
      {"adaptive_opt", Of(r.adaptive_value)},
      {"nonadaptive_opt", Of(r.nonadaptive_value)},
      {"greedy_F", Of(r.greedy_value)},
      {"rounded_mean", Of(r.rounded_mean)},
      {"rounded_se", Of(r.rounded_std_error)},
      {"rounded_feasible", Of(r.rounded_all_feasible)},
      {"alpha", Of(r.alpha)},
      {"inner_bound", Of(r.inner_bound)},
      {"ratio_bound", Of(r.ratio_bound)},
      {"virtual_value", Of(r.virtual_value)},
      {"gap_bound", Of(r.gap_bound)},
      {"inner_ok", Of(r.inner_ok)},
      {"inner_vacuous", Of(r.inner_vacuous)},
      {"rounding_ok", Of(r.rounding_ok)},
      {"ratio_ok", Of(r.ratio_ok)},
      {"virtual_ok", Of(r.virtual_ok)},
      {"gap_ok", Of(r.gap_ok)},
      {"line3_points", Of(r.line3_points)},
      {"line3_min_slack", Of(r.line3_min_slack)},
      {"line3_ok", Of(r.line3_ok)},
      {"cert_rounds", Of(r.certificate_rounds)},
      {"cert_violations", Of(r.certificate_violations)},
      {"cert_min_slack", Of(r.certificate_min_slack)},
      {"error", r.error.empty() ? Cell{std::nullopt, Json(nullptr)}
                                : Of(r.error)},
  };
  if (timing) cols.push_back({"runtime_s", Of(std::optional(r.runtime_seconds))});
  return cols;
}

std::string TsvSafe(std::string s) {
  std::replace_if(s.begin(), s.end(),
                  [](char c) { return c == '\t' || c == '\n' || c == '\r'; },
                  ' ');
  return s;
}

}  // namespace

std::string ReportToTsv(const std::vector<ReportRow>& rows, bool timing) {
  std::ostringstream out;
  const auto header = Columns(ReportRow{}, timing);
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "\t" : "") << header[i].first;
  }
  out << "\n";
  for (const ReportRow& row : rows) {
    const auto cols = Columns(row, timing);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out << (i ? "\t" : "")
          << (cols[i].second.text ? TsvSafe(*cols[i].second.text) : "-");
    }
    out << "\n";
  }
  return out.str();
}

std::string ReportToJson(const std::vector<ReportRow>& rows, bool timing) {
  Json doc;
  Json list = Json::array();
  for (const ReportRow& row : rows) {
    Json obj = Json::object();
    for (auto& [name, cell] : Columns(row, timing)) obj[name] = cell.json;
    obj["all_flags_hold"] = row.AllFlagsHold();
    list.push_back(std::move(obj));
  }
  doc["scenarios"] = std::move(list);
  return doc.dump(2) + "\n";
}

}  // namespace stochsub
