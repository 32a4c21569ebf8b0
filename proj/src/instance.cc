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

#include "stochsub/instance.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>

#include "stochsub/errors.h"

namespace stochsub {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInput:
      return "input error";
    case ErrorCode::kCapacity:
      return "capacity error";
    case ErrorCode::kConditioning:
      return "conditioning error";
    case ErrorCode::kDegenerateBound:
      return "degenerate bound";
    case ErrorCode::kConfiguration:
      return "configuration error";
    case ErrorCode::kPolicy:
      return "policy error";
    case ErrorCode::kUnsupportedKind:
      return "unsupported constraint kind";
    case ErrorCode::kInternal:
      return "internal error";
  }
  return "error";
}

std::vector<ItemId> MaskItems(ItemMask set) {
  std::vector<ItemId> items;
  while (set != 0) {
    items.push_back(std::countr_zero(set));
    set &= set - 1;
  }
  return items;
}

ItemMask ItemsMask(const std::vector<ItemId>& items) {
  ItemMask mask = 0;
  for (ItemId e : items) mask = With(mask, e);
  return mask;
}

bool LexLess(ItemMask a, ItemMask b) {
  while (a != 0 && b != 0) {
    const int x = std::countr_zero(a);
    const int y = std::countr_zero(b);
    if (x != y) return x < y;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

ItemMask Domain(const PartialRealization& partial) {
  ItemMask mask = 0;
  for (std::size_t e = 0; e < partial.size(); ++e) {
    if (partial[e] != kUnobserved) mask = With(mask, static_cast<ItemId>(e));
  }
  return mask;
}

PartialRealization Restrict(const Realization& phi, ItemMask items) {
  PartialRealization partial(phi.size(), kUnobserved);
  for (std::size_t e = 0; e < phi.size(); ++e) {
    if (Contains(items, static_cast<ItemId>(e))) partial[e] = phi[e];
  }
  return partial;
}

bool Consistent(const Realization& phi, const PartialRealization& partial) {
  for (std::size_t e = 0; e < partial.size(); ++e) {
    if (partial[e] != kUnobserved && partial[e] != phi[e]) return false;
  }
  return true;
}

// --- JointDistribution -----------------------------------------------------

JointDistribution::JointDistribution(int num_items, int num_states,
                                     std::vector<Realization> realizations,
                                     std::vector<mpq_class> probabilities)
    : num_items_(num_items),
      num_states_(num_states),
      realizations_(std::move(realizations)),
      probabilities_(std::move(probabilities)) {
  if (num_items < 1 || num_items > kMaxItems) {
    throw InputError("number of items must be in [1, 64]");
  }
  if (num_states < 1) throw InputError("state alphabet is empty");
  if (realizations_.empty()) throw InputError("distribution has no support");
  if (realizations_.size() != probabilities_.size()) {
    throw InputError("support and probability lists differ in length");
  }
  mpq_class total = 0;
  std::set<Realization> seen;
  for (std::size_t i = 0; i < realizations_.size(); ++i) {
    const Realization& phi = realizations_[i];
    if (static_cast<int>(phi.size()) != num_items) {
      throw InputError("realization does not assign every item");
    }
    for (StateId s : phi) {
      if (s < 0 || s >= num_states) throw InputError("unknown state id");
    }
    if (!seen.insert(phi).second) {
      throw InputError("duplicate realization in support");
    }
    probabilities_[i].canonicalize();
    if (probabilities_[i] < 0) throw InputError("negative probability");
    total += probabilities_[i];
  }
  if (total != 1) {
    throw InputError("probabilities sum to " + total.get_str() + ", not 1");
  }
  probabilities_double_.reserve(probabilities_.size());
  for (const mpq_class& p : probabilities_) {
    probabilities_double_.push_back(p.get_d());
  }
}

mpq_class JointDistribution::ObservationProbability(
    const PartialRealization& observed) const {
  mpq_class mass = 0;
  for (std::size_t i = 0; i < realizations_.size(); ++i) {
    if (Consistent(realizations_[i], observed)) mass += probabilities_[i];
  }
  return mass;
}

std::vector<PartialRealization> JointDistribution::Observations(
    ItemMask items) const {
  std::set<PartialRealization> out;
  for (std::size_t i = 0; i < realizations_.size(); ++i) {
    if (probabilities_[i] > 0) out.insert(Restrict(realizations_[i], items));
  }
  return {out.begin(), out.end()};
}

bool operator==(const JointDistribution& a, const JointDistribution& b) {
  return a.num_items_ == b.num_items_ && a.num_states_ == b.num_states_ &&
         a.realizations_ == b.realizations_ &&
         a.probabilities_ == b.probabilities_;
}

std::vector<mpq_class> ConditionalDistribution::Dense(int num_states) const {
  std::vector<mpq_class> dense(num_states, 0);
  for (const auto& [s, p] : marginal) dense[s] = p;
  return dense;
}

ConditionalDistribution Condition(const JointDistribution& distribution,
                                  ItemId e,
                                  const PartialRealization& observed) {
  if (e < 0 || e >= distribution.num_items()) {
    throw InputError("unknown item id");
  }
  if (static_cast<int>(observed.size()) != distribution.num_items()) {
    throw InputError("observation has the wrong length");
  }
  if (observed[e] != kUnobserved) {
    throw InputError("conditioned item is part of the observation");
  }
  std::vector<mpq_class> mass(distribution.num_states(), 0);
  mpq_class total = 0;
  const auto& support = distribution.realizations();
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!Consistent(support[i], observed)) continue;
    mass[support[i][e]] += distribution.probabilities()[i];
    total += distribution.probabilities()[i];
  }
  if (total == 0) {
    throw ConditioningError("observation has probability zero");
  }
  ConditionalDistribution out{e, observed, {}};
  for (StateId s = 0; s < distribution.num_states(); ++s) {
    if (mass[s] > 0) out.marginal.emplace_back(s, mass[s] / total);
  }
  return out;
}

// --- UtilityFunction -------------------------------------------------------

UtilityFunction UtilityFunction::Coverage(
    int num_items, int num_states, std::vector<std::string> targets,
    std::vector<double> weights,
    const std::vector<std::vector<std::vector<int>>>& coverage) {
  if (num_items * num_states > kMaxPairs) {
    throw CapacityError("more than 64 (item, state) pairs");
  }
  if (targets.size() > kMaxTargets) {
    throw CapacityError("more than 64 coverage targets");
  }
  if (weights.size() != targets.size()) {
    throw InputError("one weight per target required");
  }
  for (double w : weights) {
    if (!(w >= 0) || !std::isfinite(w)) {
      throw InputError("target weights must be finite and nonnegative");
    }
  }
  if (static_cast<int>(coverage.size()) != num_items) {
    throw InputError("coverage map must list every item");
  }
  WeightedCoverage rep{std::move(targets), std::move(weights),
                       std::vector<std::uint64_t>(num_items * num_states, 0)};
  for (int e = 0; e < num_items; ++e) {
    if (static_cast<int>(coverage[e].size()) != num_states) {
      throw InputError("coverage map must list every state");
    }
    for (int s = 0; s < num_states; ++s) {
      for (int t : coverage[e][s]) {
        if (t < 0 || t >= static_cast<int>(rep.targets.size())) {
          throw InputError("coverage refers to an unknown target");
        }
        rep.coverage[e * num_states + s] |= std::uint64_t{1} << t;
      }
    }
  }
  return UtilityFunction(num_items, num_states, std::move(rep));
}

UtilityFunction UtilityFunction::Table(int num_items, int num_states,
                                       std::vector<double> values) {
  const int pairs = num_items * num_states;
  if (pairs > kMaxTablePairs) {
    throw CapacityError("explicit tables are limited to 20 (item, state) pairs");
  }
  if (values.size() != (std::size_t{1} << pairs)) {
    throw InputError("explicit table must list every subset of E x O");
  }
  for (double v : values) {
    if (!(v >= 0) || !std::isfinite(v)) {
      throw InputError("utility values must be finite and nonnegative");
    }
  }
  return UtilityFunction(num_items, num_states, ExplicitTable{std::move(values)});
}

double UtilityFunction::Evaluate(PairMask pairs) const {
  if (const auto* cov = std::get_if<WeightedCoverage>(&rep_)) {
    std::uint64_t covered = 0;
    while (pairs != 0) {
      covered |= cov->coverage[std::countr_zero(pairs)];
      pairs &= pairs - 1;
    }
    double value = 0.0;
    while (covered != 0) {
      value += cov->weights[std::countr_zero(covered)];
      covered &= covered - 1;
    }
    return value;
  }
  return std::get<ExplicitTable>(rep_).values[pairs];
}

double Evaluate(const UtilityFunction& utility,
                std::span<const ItemState> pairs) {
  PairMask mask = 0;
  for (const ItemState& p : pairs) {
    if (p.item < 0 || p.item >= utility.num_items()) {
      throw InputError("unknown item id");
    }
    if (p.state < 0 || p.state >= utility.num_states()) {
      throw InputError("unknown state id");
    }
    mask |= utility.PairBit(p.item, p.state);
  }
  return utility.Evaluate(mask);
}

// --- Instance --------------------------------------------------------------

Instance::Instance(std::vector<std::string> items,
                   std::vector<std::string> states,
                   JointDistribution distribution, UtilityFunction utility)
    : items_(std::move(items)),
      states_(std::move(states)),
      distribution_(std::move(distribution)),
      utility_(std::move(utility)) {
  if (items_.empty()) throw InputError("instance has no items");
  if (states_.empty()) throw InputError("instance has no states");
  if (std::set<std::string>(items_.begin(), items_.end()).size() !=
      items_.size()) {
    throw InputError("duplicate item name");
  }
  if (std::set<std::string>(states_.begin(), states_.end()).size() !=
      states_.size()) {
    throw InputError("duplicate state name");
  }
  if (distribution_.num_items() != num_items() ||
      distribution_.num_states() != num_states() ||
      utility_.num_items() != num_items() ||
      utility_.num_states() != num_states()) {
    throw InputError("distribution/utility dimensions disagree with names");
  }
}

std::optional<ItemId> Instance::FindItem(const std::string& name) const {
  auto it = std::find(items_.begin(), items_.end(), name);
  if (it == items_.end()) return std::nullopt;
  return static_cast<ItemId>(it - items_.begin());
}

std::optional<StateId> Instance::FindState(const std::string& name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) return std::nullopt;
  return static_cast<StateId>(it - states_.begin());
}

PairMask Instance::Pairs(const Realization& phi, ItemMask items) const {
  PairMask mask = 0;
  while (items != 0) {
    const ItemId v = std::countr_zero(items);
    mask |= utility_.PairBit(v, phi[v]);
    items &= items - 1;
  }
  return mask;
}

PairMask Instance::Pairs(const PartialRealization& partial) const {
  PairMask mask = 0;
  for (std::size_t v = 0; v < partial.size(); ++v) {
    if (partial[v] != kUnobserved) {
      mask |= utility_.PairBit(static_cast<ItemId>(v), partial[v]);
    }
  }
  return mask;
}

namespace {

void CheckSet(const Instance& instance, ItemMask set) {
  if ((set & ~FullMask(instance.num_items())) != 0) {
    throw InputError("set refers to an unknown item");
  }
}

void CheckItem(const Instance& instance, ItemId e) {
  if (e < 0 || e >= instance.num_items()) throw InputError("unknown item id");
}

}  // namespace

double ExpectedSetValue(const Instance& instance, ItemMask set) {
  CheckSet(instance, set);
  const auto& support = instance.distribution().realizations();
  const auto& beta = instance.distribution().probabilities_double();
  double value = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    value += beta[i] * instance.utility().Evaluate(instance.Pairs(support[i], set));
  }
  return value;
}

double Marginal(const Instance& instance, ItemMask set, ItemId e) {
  CheckItem(instance, e);
  if (Contains(set, e)) throw InputError("item already in the base set");
  return ExpectedSetValue(instance, With(set, e)) -
         ExpectedSetValue(instance, set);
}

double StateMarginal(const Instance& instance, ItemMask set, ItemId e,
                     StateId state) {
  CheckItem(instance, e);
  CheckSet(instance, set);
  if (Contains(set, e)) throw InputError("item already in the base set");
  if (state < 0 || state >= instance.num_states()) {
    throw InputError("unknown state id");
  }
  const PairMask extra = instance.utility().PairBit(e, state);
  const auto& support = instance.distribution().realizations();
  const auto& beta = instance.distribution().probabilities_double();
  double with = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    with += beta[i] *
            instance.utility().Evaluate(instance.Pairs(support[i], set) | extra);
  }
  return with - ExpectedSetValue(instance, set);
}

// --- Validation ------------------------------------------------------------

UtilityReport ValidateUtility(const UtilityFunction& utility, int max_pairs) {
  UtilityReport report;
  if (utility.is_coverage()) {
    report.note = "weighted coverage is monotone submodular by construction";
    return report;
  }
  const int n = utility.num_pairs();
  if (n > max_pairs) {
    throw CapacityError("ground set of " + std::to_string(n) +
                        " pairs exceeds validation cap " +
                        std::to_string(max_pairs));
  }
  constexpr double kTol = 1e-12;
  const PairMask full = FullMask(n);
  // Y ranges over all sets, X over subsets of Y, x over pairs outside Y.
  for (PairMask y = 0; y <= full; ++y) {
    const double fy = utility.Evaluate(y);
    for (PairMask x = y;; x = (x - 1) & y) {
      const double fx = utility.Evaluate(x);
      if (report.monotone && fx > fy + kTol) {
        report.monotone = false;
        if (!report.witness) report.witness = UtilityWitness{x, y, -1};
      }
      for (PairMask rest = full & ~y; rest != 0; rest &= rest - 1) {
        const int el = std::countr_zero(rest);
        const PairMask bit = PairMask{1} << el;
        const double gain_x = utility.Evaluate(x | bit) - fx;
        const double gain_y = utility.Evaluate(y | bit) - fy;
        if (report.submodular && gain_x + kTol < gain_y) {
          report.submodular = false;
          if (!report.witness) report.witness = UtilityWitness{x, y, el};
        }
      }
      if (!report.monotone && !report.submodular) return report;
      if (x == 0) break;
    }
    if (y == full) break;
  }
  return report;
}

}  // namespace stochsub
