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

#ifndef STOCHSUB_HARNESS_H_
#define STOCHSUB_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "stochsub/continuous_greedy.h"
#include "stochsub/instance.h"
#include "stochsub/instance_io.h"

namespace stochsub {

// Instances where a latent world W is drawn from a seeded categorical and
// each item's state is a function of W. With noise > 0 each (item, world)
// reading is replaced by a uniformly drawn state with that probability, so
// the support never exceeds `worlds` points. Utility is weighted coverage
// over a seeded target universe.
struct CommonCauseSpec {
  int num_items = 2;
  int states_per_item = 2;
  int worlds = 2;
  std::uint64_t seed = 0;
  double noise = 0.0;
};

Instance GenerateCommonCause(const CommonCauseSpec& spec);

// The fixed two-sensor instance: items a, b with states good/bad, two
// equally likely worlds (good, good) and (bad, bad), three unit targets.
Instance CommonCause2();

// Independent items. Marginals are given per item (each summing to 1) or,
// when empty, drawn from the seed with positive integer weights. The
// support is the full product, capped at 4096 points. `modular` gives every
// pair a private target, which makes f additive over items.
struct ProductSpec {
  int num_items = 2;
  int states_per_item = 2;
  std::uint64_t seed = 0;
  std::vector<std::vector<mpq_class>> marginals;
  bool modular = false;
};

inline constexpr std::size_t kMaxProductSupport = 4096;

Instance GenerateProduct(const ProductSpec& spec);

enum class ExperimentKind {
  kRatioCheck,
  kAdaptivityGap,
  kIndependenceProfile,
  kCertificate,
};

const char* ExperimentKindName(ExperimentKind kind);

struct Scenario {
  std::string name;
  // Exactly one of the two sources is set.
  std::optional<std::string> instance_path;
  std::optional<io::Json> generator;
  // Overrides the constraint carried by the instance file, if any.
  std::optional<io::Json> constraint;
  GreedyConfig greedy;
  ExperimentKind kind = ExperimentKind::kRatioCheck;
  std::int64_t rounding_seeds = 20000;
  int sweep_points = 50;
  std::uint64_t seed = 0;
};

struct Suite {
  std::vector<Scenario> scenarios;
  // Report path from the suite file; the command line takes precedence.
  std::optional<std::string> output;
};

// Relative instance paths resolve against `base_dir`.
Suite ParseSuite(const std::string& text, const std::string& base_dir = ".");
Suite LoadSuite(const std::string& path);

Instance BuildInstance(const Scenario& scenario);
Instance GenerateFromJson(const io::Json& spec);

inline constexpr double kBoundTolerance = 1e-9;
inline constexpr double kStandardErrors = 4.0;

// One report row. Optional fields are absent when the experiment kind does
// not compute them; every flag is recomputable from the values in its row.
struct ReportRow {
  std::string scenario;
  ExperimentKind kind = ExperimentKind::kRatioCheck;
  int num_items = 0;
  std::size_t support_size = 0;

  std::optional<mpq_class> kappa_raw;
  std::optional<mpq_class> kappa_clamped;
  std::optional<mpq_class> kappa_conditioned;
  std::optional<mpq_class> gamma_raw;
  std::optional<mpq_class> gamma_clamped;

  std::optional<double> adaptive_value;       // f(pi*)
  std::optional<double> nonadaptive_value;    // best fixed set
  std::optional<double> greedy_value;         // F(y(1))
  std::optional<double> rounded_mean;         // E[f(rounded)]
  std::optional<double> rounded_std_error;
  std::optional<bool> rounded_all_feasible;
  std::optional<double> alpha;
  std::optional<double> inner_bound;          // ratio bound with alpha = 1
  std::optional<double> ratio_bound;
  std::optional<double> virtual_value;
  std::optional<double> gap_bound;            // (1 + gamma) / gamma

  std::optional<bool> inner_ok;
  std::optional<bool> inner_vacuous;
  std::optional<bool> rounding_ok;            // E[f(rounded)] vs F(y(1))
  std::optional<bool> ratio_ok;               // E[f(rounded)] vs bound
  std::optional<bool> virtual_ok;
  std::optional<bool> gap_ok;

  std::optional<int> line3_points;
  std::optional<double> line3_min_slack;
  std::optional<bool> line3_ok;

  std::optional<int> certificate_rounds;
  std::optional<int> certificate_violations;
  std::optional<double> certificate_min_slack;

  std::string error;  // cause of a partial failure, empty when none
  double runtime_seconds = 0.0;

  // True unless some computed flag is false or the row failed.
  bool AllFlagsHold() const;
};

struct PipelineOptions {
  Execution execution = Execution::kParallel;
};

ReportRow RunPipeline(const Scenario& scenario,
                      const PipelineOptions& options = {});

std::vector<ReportRow> RunSuite(const Suite& suite,
                                const PipelineOptions& options = {});

// Tab-separated, one header line. Runtimes appear only with `timing`, so
// untimed reports of identical runs are byte-identical.
std::string ReportToTsv(const std::vector<ReportRow>& rows, bool timing);
std::string ReportToJson(const std::vector<ReportRow>& rows, bool timing);

// %.17g, which round-trips every double.
std::string FormatDouble(double value);

}  // namespace stochsub

#endif  // STOCHSUB_HARNESS_H_
