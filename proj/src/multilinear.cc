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

#include "stochsub/multilinear.h"

#include <cmath>
#include <limits>

#include "stochsub/counter_rng.h"
#include "stochsub/errors.h"
#include "stochsub/kernels.h"

namespace stochsub {

FractionalPoint::FractionalPoint(std::vector<double> coords)
    : coords_(std::move(coords)) {
  for (double c : coords_) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw InputError("fractional point coordinate outside [0, 1]");
    }
  }
}

FractionalPoint FractionalPoint::Indicator(int m, ItemMask set) {
  std::vector<double> coords(m, 0.0);
  for (int e = 0; e < m; ++e) coords[e] = Contains(set, e) ? 1.0 : 0.0;
  return FractionalPoint(std::move(coords));
}

FractionalPoint FractionalPoint::WithCoordinate(ItemId e, double value) const {
  if (e < 0 || e >= size()) throw InputError("unknown item id");
  std::vector<double> coords = coords_;
  coords[e] = value;
  return FractionalPoint(std::move(coords));
}

bool FractionalPoint::IsIntegral() const {
  for (double c : coords_) {
    if (c != 0.0 && c != 1.0) return false;
  }
  return true;
}

ItemMask FractionalPoint::Support() const {
  ItemMask mask = 0;
  for (int e = 0; e < size(); ++e) {
    if (coords_[e] > 0.0) mask = With(mask, e);
  }
  return mask;
}

MultilinearOracle::MultilinearOracle(const Instance& instance,
                                     MultilinearOptions options)
    : instance_(&instance), options_(options) {
  if (instance.num_items() <= options.exact_cap) {
    table_ = kernels::SetValueTable(instance, options.execution);
  }
}

void MultilinearOracle::RequireExact() const {
  if (!has_exact()) {
    throw CapacityError("exact multilinear evaluation needs m <= " +
                        std::to_string(options_.exact_cap));
  }
}

void MultilinearOracle::CheckPoint(const FractionalPoint& x) const {
  if (x.size() != num_items()) {
    throw InputError("fractional point has the wrong dimension");
  }
}

double MultilinearOracle::SetValue(ItemMask set) const {
  if (has_exact()) return table_[set];
  return ExpectedSetValue(*instance_, set);
}

double MultilinearOracle::Exact(const FractionalPoint& x) const {
  RequireExact();
  CheckPoint(x);
  return kernels::MultilinearSum(table_, x.coords(), options_.execution);
}

double MultilinearOracle::StandardWeight(const FractionalPoint& x,
                                         ItemId e) const {
  RequireExact();
  CheckPoint(x);
  if (e < 0 || e >= num_items()) throw InputError("unknown item id");
  return Exact(x.WithCoordinate(e, 1.0)) - Exact(x);
}

double MultilinearOracle::OptimisticWeight(const FractionalPoint& x,
                                           ItemId e) const {
  RequireExact();
  CheckPoint(x);
  if (e < 0 || e >= num_items()) throw InputError("unknown item id");
  return kernels::ExcisedGain(table_, x.coords(), e, options_.execution);
}

double MultilinearOracle::StateWeight(const FractionalPoint& x, ItemId e,
                                      StateId state) const {
  RequireExact();
  CheckPoint(x);
  if (e < 0 || e >= num_items()) throw InputError("unknown item id");
  if (state < 0 || state >= instance_->num_states()) {
    throw InputError("unknown state id");
  }
  // gains[S] = E_Phi[f(Phi_S + (e, state))] - f(S).
  const Instance& inst = *instance_;
  const PairMask extra = inst.utility().PairBit(e, state);
  const auto& support = inst.distribution().realizations();
  const auto& beta = inst.distribution().probabilities_double();
  std::vector<double> gains(table_.size());
#pragma omp parallel for schedule(dynamic, 64) if (options_.execution == Execution::kParallel)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(gains.size()); ++s) {
    double with = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
      with += beta[i] *
              inst.utility().Evaluate(inst.Pairs(support[i], s) | extra);
    }
    gains[s] = with - table_[s];
  }
  return kernels::MultilinearSum(gains, x.coords(), options_.execution);
}

ItemMask MultilinearOracle::DrawSet(const FractionalPoint& x,
                                    const RngKey& key) const {
  ItemMask set = 0;
  for (int v = 0; v < num_items(); ++v) {
    if (CounterUniform(key, static_cast<std::uint64_t>(v)) < x[v]) {
      set = With(set, v);
    }
  }
  return set;
}

namespace {

Estimate MakeEstimate(const kernels::SampleStats& stats, std::int64_t n,
                      std::uint64_t seed) {
  return Estimate{stats.mean, n, stats.std_error, seed};
}

// Item slot used in RNG keys for the whole-point estimator.
constexpr std::uint64_t kNoItem = std::numeric_limits<std::uint64_t>::max();

}  // namespace

Estimate MultilinearOracle::SampleValue(const FractionalPoint& x,
                                        std::int64_t sample_count,
                                        std::uint64_t seed,
                                        std::uint64_t round) const {
  CheckPoint(x);
  if (sample_count < 1) throw InputError("sample_count must be at least 1");
  auto draw = [&](std::int64_t i) {
    const RngKey key{seed, round, kNoItem, static_cast<std::uint64_t>(i)};
    return SetValue(DrawSet(x, key));
  };
  return MakeEstimate(
      kernels::SampleMean(sample_count, draw, options_.execution),
      sample_count, seed);
}

Estimate MultilinearOracle::SampleOptimisticWeight(const FractionalPoint& x,
                                                   ItemId e,
                                                   std::int64_t sample_count,
                                                   std::uint64_t seed,
                                                   std::uint64_t round) const {
  CheckPoint(x);
  if (e < 0 || e >= num_items()) throw InputError("unknown item id");
  if (sample_count < 1) throw InputError("sample_count must be at least 1");
  const FractionalPoint excised = x.ZeroOut(e);
  auto draw = [&](std::int64_t i) {
    const RngKey key{seed, round, static_cast<std::uint64_t>(e),
                     static_cast<std::uint64_t>(i)};
    const ItemMask r = DrawSet(excised, key);
    return SetValue(With(r, e)) - SetValue(r);
  };
  return MakeEstimate(
      kernels::SampleMean(sample_count, draw, options_.execution),
      sample_count, seed);
}

Estimate MultilinearOracle::SampleStandardWeight(const FractionalPoint& x,
                                                 ItemId e,
                                                 std::int64_t sample_count,
                                                 std::uint64_t seed,
                                                 std::uint64_t round) const {
  CheckPoint(x);
  if (e < 0 || e >= num_items()) throw InputError("unknown item id");
  if (sample_count < 1) throw InputError("sample_count must be at least 1");
  auto draw = [&](std::int64_t i) {
    const RngKey key{seed, round, static_cast<std::uint64_t>(e),
                     static_cast<std::uint64_t>(i)};
    const ItemMask r = DrawSet(x, key);
    return SetValue(With(r, e)) - SetValue(r);
  };
  return MakeEstimate(
      kernels::SampleMean(sample_count, draw, options_.execution),
      sample_count, seed);
}

double FExact(const Instance& instance, const FractionalPoint& x) {
  return MultilinearOracle(instance).Exact(x);
}

Estimate FEstimate(const Instance& instance, const FractionalPoint& x,
                   std::int64_t sample_count, std::uint64_t seed) {
  return MultilinearOracle(instance).SampleValue(x, sample_count, seed);
}

double StandardWeight(const Instance& instance, const FractionalPoint& x,
                      ItemId e) {
  return MultilinearOracle(instance).StandardWeight(x, e);
}

double OptimisticWeight(const Instance& instance, const FractionalPoint& x,
                        ItemId e) {
  return MultilinearOracle(instance).OptimisticWeight(x, e);
}

Estimate OptimisticWeightEstimate(const Instance& instance,
                                  const FractionalPoint& x, ItemId e,
                                  std::int64_t sample_count,
                                  std::uint64_t seed) {
  return MultilinearOracle(instance).SampleOptimisticWeight(x, e, sample_count,
                                                            seed);
}

double StateWeight(const Instance& instance, const FractionalPoint& x,
                   ItemId e, StateId state) {
  return MultilinearOracle(instance).StateWeight(x, e, state);
}

std::int64_t PaperSampleCount(double delta, int m) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw InputError("delta must lie in (0, 1]");
  }
  if (m < 1) throw InputError("m must be at least 1");
  const double raw = 10.0 / (delta * delta) * (1.0 + std::log(m));
  // 1/delta^2 picks up rounding noise (e.g. delta = 1/9); snap values that
  // are an integer up to that noise before taking the ceiling.
  const double nearest = std::round(raw);
  if (std::abs(raw - nearest) <= 1e-9 * raw) {
    return static_cast<std::int64_t>(nearest);
  }
  return static_cast<std::int64_t>(std::ceil(raw));
}

}  // namespace stochsub
