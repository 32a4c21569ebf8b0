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

#ifndef STOCHSUB_CONTINUOUS_GREEDY_H_
#define STOCHSUB_CONTINUOUS_GREEDY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stochsub/constraints.h"
#include "stochsub/instance.h"
#include "stochsub/multilinear.h"

namespace stochsub {

enum class WeightMode { kExact, kSampled };
enum class WeightVariant { kOptimistic, kStandard };

struct GreedyConfig {
  double delta = 0.05;
  WeightMode weight_mode = WeightMode::kExact;
  // Samples per weight in sampled mode; nullopt uses PaperSampleCount.
  std::optional<std::int64_t> sample_count;
  std::uint64_t seed = 0;
  WeightVariant weight_variant = WeightVariant::kOptimistic;

  // delta = 1/(9 m^2) with the prescribed sample count.
  static GreedyConfig PaperFaithful(int m);
  // delta = 0.05 with exact weights.
  static GreedyConfig Desk() { return GreedyConfig{}; }
};

struct RoundRecord {
  double t = 0.0;
  double step = 0.0;
  FractionalPoint y;             // y(t)
  std::vector<double> weights;   // weights fed to the LP
  LPSolution direction;          // optimal solution of the round's LP
  std::optional<double> value;   // F(y(t)) when exact evaluation is possible
};

struct Trajectory {
  std::vector<RoundRecord> rounds;
  FractionalPoint final_point;          // y(1)
  std::optional<double> final_value;    // F(y(1))
};

struct StepResult {
  FractionalPoint next;
  LPSolution direction;
  std::vector<double> weights;
  double step = 0.0;
};

// Step sizes: delta until the last step, which is shortened to land on 1.
// round(1/delta) rounds, at least one.
std::int64_t RoundCount(double delta);

// Every step is delta except the last, which is 1 - t.
std::vector<double> StepSchedule(double delta);

// One round at time t: weights, LP, ascent.
StepResult GreedyStep(const MultilinearOracle& oracle,
                      const Constraint& constraint, const FractionalPoint& y,
                      double t, const GreedyConfig& config);

Trajectory RunContinuousGreedy(const MultilinearOracle& oracle,
                               const Constraint& constraint,
                               const GreedyConfig& config);
Trajectory RunContinuousGreedy(const Instance& instance,
                               const Constraint& constraint,
                               const GreedyConfig& config);

struct CertificateRound {
  double t = 0.0;
  double lhs = 0.0;  // F(y(t + step)) - F(y(t))
  double rhs = 0.0;  // (1 - t) step kappa ((1 - (kappa+2) m delta/kappa) opt - F(y(t)))
  bool holds = true;
};

struct CertificateReport {
  std::vector<CertificateRound> rounds;
  int violations = 0;
};

// Per-round check of the ascent lower bound against an optimal value.
CertificateReport LowerBoundCertificate(const MultilinearOracle& oracle,
                                        const Trajectory& trajectory,
                                        double delta, double optimal_value,
                                        double kappa);

// Tab-separated export, one row per round.
std::string TrajectoryToTsv(const Instance& instance,
                            const Trajectory& trajectory);

}  // namespace stochsub

#endif  // STOCHSUB_CONTINUOUS_GREEDY_H_
