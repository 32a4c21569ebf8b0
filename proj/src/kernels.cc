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

#include "stochsub/kernels.h"

#include <omp.h>

#include <cmath>

namespace stochsub::kernels {
namespace {

double SubsetProbability(std::span<const double> x, std::uint64_t set) {
  double p = 1.0;
  for (std::size_t e = 0; e < x.size(); ++e) {
    p *= ((set >> e) & 1u) ? x[e] : 1.0 - x[e];
  }
  return p;
}

// Probability of `set` under x with coordinate `skip` forced to 0; callers
// only pass sets without `skip`.
double ExcisedProbability(std::span<const double> x, std::uint64_t set,
                          std::size_t skip) {
  double p = 1.0;
  for (std::size_t e = 0; e < x.size(); ++e) {
    if (e == skip) continue;
    p *= ((set >> e) & 1u) ? x[e] : 1.0 - x[e];
  }
  return p;
}

double SetValue(const Instance& instance, ItemMask set) {
  const auto& support = instance.distribution().realizations();
  const auto& beta = instance.distribution().probabilities_double();
  double value = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    value +=
        beta[i] * instance.utility().Evaluate(instance.Pairs(support[i], set));
  }
  return value;
}

// Sums term(i) over [0, n) as in-order block partials.
template <typename Term>
double BlockedSum(std::size_t n, const Term& term) {
  const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlockSize;
    const std::size_t hi = std::min(n, lo + kBlockSize);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[b] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

std::vector<double> SetValueTableSerial(const Instance& instance) {
  const std::size_t n = std::size_t{1} << instance.num_items();
  std::vector<double> table(n);
  for (std::size_t s = 0; s < n; ++s) table[s] = SetValue(instance, s);
  return table;
}

std::vector<double> SetValueTableParallel(const Instance& instance) {
  const std::size_t n = std::size_t{1} << instance.num_items();
  std::vector<double> table(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s) {
    table[s] = SetValue(instance, static_cast<ItemMask>(s));
  }
  return table;
}

double MultilinearSumSerial(std::span<const double> values,
                            std::span<const double> x) {
  double total = 0.0;
  for (std::size_t s = 0; s < values.size(); ++s) {
    total += values[s] * SubsetProbability(x, s);
  }
  return total;
}

double MultilinearSumParallel(std::span<const double> values,
                              std::span<const double> x) {
  return BlockedSum(values.size(), [&](std::size_t s) {
    return values[s] * SubsetProbability(x, s);
  });
}

double ExcisedGainSerial(std::span<const double> values,
                         std::span<const double> x, ItemId e) {
  const std::uint64_t bit = std::uint64_t{1} << e;
  double total = 0.0;
  for (std::size_t s = 0; s < values.size(); ++s) {
    if (s & bit) continue;
    total += (values[s | bit] - values[s]) * ExcisedProbability(x, s, e);
  }
  return total;
}

double ExcisedGainParallel(std::span<const double> values,
                           std::span<const double> x, ItemId e) {
  const std::uint64_t bit = std::uint64_t{1} << e;
  return BlockedSum(values.size(), [&](std::size_t s) {
    if (s & bit) return 0.0;
    return (values[s | bit] - values[s]) * ExcisedProbability(x, s, e);
  });
}

namespace {

SampleStats Moments(const std::vector<double>& values) {
  // Two passes over the in-order samples; the one-pass sum of squares
  // cancels badly when the spread is tiny.
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  SampleStats stats;
  stats.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
    stats.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return stats;
}

}  // namespace

SampleStats SampleMeanSerial(std::int64_t n,
                             const std::function<double(std::int64_t)>& draw) {
  std::vector<double> values(n);
  for (std::int64_t i = 0; i < n; ++i) values[i] = draw(i);
  return Moments(values);
}

SampleStats SampleMeanParallel(
    std::int64_t n, const std::function<double(std::int64_t)>& draw) {
  std::vector<double> values(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) values[i] = draw(i);
  return Moments(values);
}

}  // namespace stochsub::kernels
