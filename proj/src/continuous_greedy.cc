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

#include "stochsub/continuous_greedy.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "stochsub/errors.h"

namespace stochsub {

GreedyConfig GreedyConfig::PaperFaithful(int m) {
  GreedyConfig config;
  config.delta = 1.0 / (9.0 * m * m);
  config.weight_mode = WeightMode::kSampled;
  config.sample_count = std::nullopt;
  return config;
}

std::int64_t RoundCount(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw InputError("delta must lie in (0, 1]");
  }
  return std::max<std::int64_t>(1, std::llround(1.0 / delta));
}

std::vector<double> StepSchedule(double delta) {
  const std::int64_t n = RoundCount(delta);
  std::vector<double> steps(n, delta);
  // The last step lands exactly on t = 1.
  steps.back() = 1.0 - static_cast<double>(n - 1) * delta;
  return steps;
}

StepResult GreedyStep(const MultilinearOracle& oracle,
                      const Constraint& constraint, const FractionalPoint& y,
                      double t, const GreedyConfig& config) {
  const int m = oracle.num_items();
  if (constraint.num_items() != m) {
    throw InputError("constraint and instance disagree on item count");
  }
  if (!(t >= 0.0 && t < 1.0 - 1e-12)) {
    throw InputError("greedy step requires 0 <= t < 1");
  }
  const std::int64_t index = std::llround(t / config.delta);
  const double step =
      index + 1 >= RoundCount(config.delta) ? 1.0 - t : config.delta;
  const auto round = static_cast<std::uint64_t>(index);
  const bool optimistic = config.weight_variant == WeightVariant::kOptimistic;

  std::vector<double> weights(m);
  if (config.weight_mode == WeightMode::kExact) {
    for (ItemId e = 0; e < m; ++e) {
      weights[e] = optimistic ? oracle.OptimisticWeight(y, e)
                              : oracle.StandardWeight(y, e);
    }
  } else {
    const std::int64_t n = config.sample_count.value_or(
        PaperSampleCount(config.delta, m));
    for (ItemId e = 0; e < m; ++e) {
      const Estimate est =
          optimistic
              ? oracle.SampleOptimisticWeight(y, e, n, config.seed, round)
              : oracle.SampleStandardWeight(y, e, n, config.seed, round);
      weights[e] = est.mean;
    }
  }
  for (double w : weights) {
    if (!std::isfinite(w)) throw InternalError("non-finite greedy weight");
  }

  LPSolution direction = LpMaximize(constraint, weights);
  std::vector<double> next(m);
  for (ItemId e = 0; e < m; ++e) {
    next[e] = std::min(1.0, y[e] + step * direction.point[e]);
  }
  return StepResult{FractionalPoint(std::move(next)), std::move(direction),
                    std::move(weights), step};
}

Trajectory RunContinuousGreedy(const MultilinearOracle& oracle,
                               const Constraint& constraint,
                               const GreedyConfig& config) {
  const std::vector<double> steps = StepSchedule(config.delta);
  Trajectory trajectory;
  FractionalPoint y = FractionalPoint::Zeros(oracle.num_items());
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const double t = static_cast<double>(k) * config.delta;
    StepResult r = GreedyStep(oracle, constraint, y, t, config);
    RoundRecord record;
    record.t = t;
    record.step = r.step;
    record.y = y;
    record.weights = std::move(r.weights);
    record.direction = std::move(r.direction);
    if (oracle.has_exact()) record.value = oracle.Exact(y);
    trajectory.rounds.push_back(std::move(record));
    y = std::move(r.next);
  }
  trajectory.final_point = y;
  if (oracle.has_exact()) trajectory.final_value = oracle.Exact(y);
  return trajectory;
}

Trajectory RunContinuousGreedy(const Instance& instance,
                               const Constraint& constraint,
                               const GreedyConfig& config) {
  return RunContinuousGreedy(MultilinearOracle(instance), constraint, config);
}

CertificateReport LowerBoundCertificate(const MultilinearOracle& oracle,
                                        const Trajectory& trajectory,
                                        double delta, double optimal_value,
                                        double kappa) {
  if (!(kappa > 0.0)) {
    throw DegenerateBoundError("certificate undefined for kappa = 0");
  }
  constexpr double kTol = 1e-9;
  const double m = oracle.num_items();
  const double target = (1.0 - (kappa + 2.0) * m * delta / kappa) * optimal_value;
  CertificateReport report;
  const auto& rounds = trajectory.rounds;
  for (std::size_t k = 0; k < rounds.size(); ++k) {
    const double now = oracle.Exact(rounds[k].y);
    const double next = k + 1 < rounds.size()
                            ? oracle.Exact(rounds[k + 1].y)
                            : oracle.Exact(trajectory.final_point);
    CertificateRound row;
    row.t = rounds[k].t;
    row.lhs = next - now;
    row.rhs = (1.0 - rounds[k].t) * rounds[k].step * kappa * (target - now);
    row.holds = row.lhs >= row.rhs - kTol;
    if (!row.holds) ++report.violations;
    report.rounds.push_back(row);
  }
  return report;
}

namespace {

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string TrajectoryToTsv(const Instance& instance,
                            const Trajectory& trajectory) {
  std::ostringstream out;
  out << "t";
  for (const auto& name : instance.items()) out << "\ty[" << name << "]";
  for (const auto& name : instance.items()) out << "\tw[" << name << "]";
  out << "\tlp_objective\tF\n";
  auto row = [&](double t, const FractionalPoint& y,
                 const std::vector<double>* weights, const double* objective,
                 const std::optional<double>& value) {
    out << Num(t);
    for (double v : y.coords()) out << '\t' << Num(v);
    for (int e = 0; e < y.size(); ++e) {
      out << '\t' << (weights ? Num((*weights)[e]) : std::string());
    }
    out << '\t' << (objective ? Num(*objective) : std::string());
    out << '\t' << (value ? Num(*value) : std::string()) << '\n';
  };
  for (const RoundRecord& r : trajectory.rounds) {
    row(r.t, r.y, &r.weights, &r.direction.objective, r.value);
  }
  row(1.0, trajectory.final_point, nullptr, nullptr, trajectory.final_value);
  return out.str();
}

}  // namespace stochsub
