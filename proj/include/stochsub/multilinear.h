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

#ifndef STOCHSUB_MULTILINEAR_H_
#define STOCHSUB_MULTILINEAR_H_

#include <cstdint>
#include <vector>

#include "stochsub/counter_rng.h"
#include "stochsub/instance.h"
#include "stochsub/types.h"

namespace stochsub {

// A point x in [0,1]^m.
class FractionalPoint {
 public:
  FractionalPoint() = default;
  explicit FractionalPoint(std::vector<double> coords);

  static FractionalPoint Zeros(int m) {
    return FractionalPoint(std::vector<double>(m, 0.0));
  }
  static FractionalPoint Indicator(int m, ItemMask set);

  int size() const { return static_cast<int>(coords_.size()); }
  double operator[](ItemId e) const { return coords_[e]; }
  const std::vector<double>& coords() const { return coords_; }

  // x \ e: coordinate e set to 0.
  FractionalPoint ZeroOut(ItemId e) const { return WithCoordinate(e, 0.0); }
  FractionalPoint WithCoordinate(ItemId e, double value) const;

  // Set of coordinates equal to exactly 1, when every coordinate is 0 or 1.
  bool IsIntegral() const;
  ItemMask Support() const;

  friend bool operator==(const FractionalPoint&,
                         const FractionalPoint&) = default;

 private:
  std::vector<double> coords_;
};

struct Estimate {
  double mean = 0.0;
  std::int64_t sample_count = 0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
};

struct MultilinearOptions {
  int exact_cap = 16;
  Execution execution = Execution::kParallel;
};

// Evaluates F and its marginal weights for one instance. The table of
// expected set values f(S) is built once when m is within the exact cap;
// above the cap only the sampled estimators are available.
class MultilinearOracle {
 public:
  explicit MultilinearOracle(const Instance& instance,
                             MultilinearOptions options = {});

  const Instance& instance() const { return *instance_; }
  int num_items() const { return instance_->num_items(); }
  bool has_exact() const { return !table_.empty(); }
  Execution execution() const { return options_.execution; }

  // f(S), from the table when available.
  double SetValue(ItemMask set) const;

  double Exact(const FractionalPoint& x) const;

  // F_x(e) = F(x with x_e = 1) - F(x).
  double StandardWeight(const FractionalPoint& x, ItemId e) const;

  // F_{x\e}(e) = E[f(R_e-bar + e)] - E[f(R_e-bar)], R_e-bar ~ x \ e.
  double OptimisticWeight(const FractionalPoint& x, ItemId e) const;

  // F_x(phi_e) = E_R[E_Phi[f(Phi_R + phi_e)] - f(R)].
  double StateWeight(const FractionalPoint& x, ItemId e, StateId state) const;

  // `round` keys the random stream so greedy rounds draw independent blocks.
  Estimate SampleValue(const FractionalPoint& x, std::int64_t sample_count,
                       std::uint64_t seed, std::uint64_t round = 0) const;
  Estimate SampleOptimisticWeight(const FractionalPoint& x, ItemId e,
                                  std::int64_t sample_count,
                                  std::uint64_t seed,
                                  std::uint64_t round = 0) const;
  Estimate SampleStandardWeight(const FractionalPoint& x, ItemId e,
                                std::int64_t sample_count, std::uint64_t seed,
                                std::uint64_t round = 0) const;

 private:
  void RequireExact() const;
  void CheckPoint(const FractionalPoint& x) const;
  ItemMask DrawSet(const FractionalPoint& x, const RngKey& key) const;

  const Instance* instance_;
  MultilinearOptions options_;
  std::vector<double> table_;
};

double FExact(const Instance& instance, const FractionalPoint& x);
Estimate FEstimate(const Instance& instance, const FractionalPoint& x,
                   std::int64_t sample_count, std::uint64_t seed);
double StandardWeight(const Instance& instance, const FractionalPoint& x,
                      ItemId e);
double OptimisticWeight(const Instance& instance, const FractionalPoint& x,
                        ItemId e);
Estimate OptimisticWeightEstimate(const Instance& instance,
                                  const FractionalPoint& x, ItemId e,
                                  std::int64_t sample_count,
                                  std::uint64_t seed);
double StateWeight(const Instance& instance, const FractionalPoint& x,
                   ItemId e, StateId state);

// ceil((10 / delta^2) * (1 + ln m)).
std::int64_t PaperSampleCount(double delta, int m);

}  // namespace stochsub

#endif  // STOCHSUB_MULTILINEAR_H_
