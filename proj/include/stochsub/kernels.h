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

#ifndef STOCHSUB_KERNELS_H_
#define STOCHSUB_KERNELS_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "stochsub/instance.h"
#include "stochsub/types.h"

// Data-parallel inner loops. Each kernel has a plain serial reference
// (`*Serial`) kept for testing and a parallel version. Parallel versions
// reduce fixed-size blocks and merge block partials in index order, so
// their output does not depend on the number of threads.
namespace stochsub::kernels {

inline constexpr std::size_t kBlockSize = 1024;

// Table of f(S) = E_Phi[f(Phi_S)] for every S subset of E.
std::vector<double> SetValueTableSerial(const Instance& instance);
std::vector<double> SetValueTableParallel(const Instance& instance);

// Sum over S of values[S] * prod_{e in S} x_e * prod_{e not in S} (1 - x_e).
double MultilinearSumSerial(std::span<const double> values,
                            std::span<const double> x);
double MultilinearSumParallel(std::span<const double> values,
                              std::span<const double> x);

// Sum over S not containing e of p_x(S) * (values[S + e] - values[S]),
// with p_x(S) taken under x with x_e forced to 0.
double ExcisedGainSerial(std::span<const double> values,
                         std::span<const double> x, ItemId e);
double ExcisedGainParallel(std::span<const double> values,
                           std::span<const double> x, ItemId e);

struct SampleStats {
  double mean = 0.0;
  double std_error = 0.0;
};

// Mean and standard error of draw(i) for i in [0, n).
SampleStats SampleMeanSerial(std::int64_t n,
                             const std::function<double(std::int64_t)>& draw);
SampleStats SampleMeanParallel(
    std::int64_t n, const std::function<double(std::int64_t)>& draw);

inline std::vector<double> SetValueTable(const Instance& instance,
                                         Execution exec) {
  return exec == Execution::kSerial ? SetValueTableSerial(instance)
                                    : SetValueTableParallel(instance);
}
inline double MultilinearSum(std::span<const double> values,
                             std::span<const double> x, Execution exec) {
  return exec == Execution::kSerial ? MultilinearSumSerial(values, x)
                                    : MultilinearSumParallel(values, x);
}
inline double ExcisedGain(std::span<const double> values,
                          std::span<const double> x, ItemId e,
                          Execution exec) {
  return exec == Execution::kSerial ? ExcisedGainSerial(values, x, e)
                                    : ExcisedGainParallel(values, x, e);
}
inline SampleStats SampleMean(std::int64_t n,
                              const std::function<double(std::int64_t)>& draw,
                              Execution exec) {
  return exec == Execution::kSerial ? SampleMeanSerial(n, draw)
                                    : SampleMeanParallel(n, draw);
}

}  // namespace stochsub::kernels

#endif  // STOCHSUB_KERNELS_H_
