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

#ifndef STOCHSUB_INSTANCE_H_
#define STOCHSUB_INSTANCE_H_

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "stochsub/types.h"

namespace stochsub {

struct ItemState {
  ItemId item;
  StateId state;

  friend bool operator==(const ItemState&, const ItemState&) = default;
};

// Explicit prior over full realizations. Probabilities are exact rationals
// that sum to exactly one; a double copy is kept for the real-valued paths.
class JointDistribution {
 public:
  JointDistribution(int num_items, int num_states,
                    std::vector<Realization> realizations,
                    std::vector<mpq_class> probabilities);

  int num_items() const { return num_items_; }
  int num_states() const { return num_states_; }
  std::size_t size() const { return realizations_.size(); }

  const std::vector<Realization>& realizations() const {
    return realizations_;
  }
  const std::vector<mpq_class>& probabilities() const {
    return probabilities_;
  }
  const std::vector<double>& probabilities_double() const {
    return probabilities_double_;
  }

  // Pr[Phi_V = phi_V].
  mpq_class ObservationProbability(const PartialRealization& observed) const;

  // Distinct positive-probability restrictions of the support to `items`,
  // in lexicographic order of the restricted state vectors.
  std::vector<PartialRealization> Observations(ItemMask items) const;

  friend bool operator==(const JointDistribution& a,
                         const JointDistribution& b);

 private:
  int num_items_;
  int num_states_;
  std::vector<Realization> realizations_;
  std::vector<mpq_class> probabilities_;
  std::vector<double> probabilities_double_;
};

// D_e(phi_V): the law of one item's state given an observation.
struct ConditionalDistribution {
  ItemId item;
  PartialRealization conditioning;
  // (state, probability) for every state with positive probability,
  // in increasing state order.
  std::vector<std::pair<StateId, mpq_class>> marginal;

  // Dense per-state probabilities (zeros included).
  std::vector<mpq_class> Dense(int num_states) const;
};

ConditionalDistribution Condition(const JointDistribution& distribution,
                                  ItemId e,
                                  const PartialRealization& observed);

struct WeightedCoverage {
  std::vector<std::string> targets;
  std::vector<double> weights;
  // Target bitmask for every (item, state) pair, indexed by pair index.
  std::vector<std::uint64_t> coverage;

  friend bool operator==(const WeightedCoverage&,
                         const WeightedCoverage&) = default;
};

struct ExplicitTable {
  // One value per subset of E x O, indexed by PairMask.
  std::vector<double> values;

  friend bool operator==(const ExplicitTable&, const ExplicitTable&) = default;
};

inline constexpr int kMaxTargets = 64;
inline constexpr int kMaxTablePairs = 20;

// Monotone submodular f: 2^{E x O} -> R>=0.
class UtilityFunction {
 public:
  // `coverage[item][state]` lists covered target indices.
  static UtilityFunction Coverage(
      int num_items, int num_states, std::vector<std::string> targets,
      std::vector<double> weights,
      const std::vector<std::vector<std::vector<int>>>& coverage);
  static UtilityFunction Table(int num_items, int num_states,
                               std::vector<double> values);

  int num_items() const { return num_items_; }
  int num_states() const { return num_states_; }
  int num_pairs() const { return num_items_ * num_states_; }
  bool is_coverage() const {
    return std::holds_alternative<WeightedCoverage>(rep_);
  }
  const WeightedCoverage& coverage() const {
    return std::get<WeightedCoverage>(rep_);
  }
  const ExplicitTable& table() const { return std::get<ExplicitTable>(rep_); }

  int PairIndex(ItemId e, StateId s) const { return e * num_states_ + s; }
  PairMask PairBit(ItemId e, StateId s) const {
    return PairMask{1} << PairIndex(e, s);
  }

  double Evaluate(PairMask pairs) const;

  friend bool operator==(const UtilityFunction&,
                         const UtilityFunction&) = default;

 private:
  UtilityFunction(int num_items, int num_states,
                  std::variant<WeightedCoverage, ExplicitTable> rep)
      : num_items_(num_items), num_states_(num_states), rep_(std::move(rep)) {}

  int num_items_;
  int num_states_;
  std::variant<WeightedCoverage, ExplicitTable> rep_;
};

// f on a set of (item, state) pairs; unknown identifiers are input errors.
double Evaluate(const UtilityFunction& utility,
                std::span<const ItemState> pairs);

class Instance {
 public:
  Instance(std::vector<std::string> items, std::vector<std::string> states,
           JointDistribution distribution, UtilityFunction utility);

  int num_items() const { return static_cast<int>(items_.size()); }
  int num_states() const { return static_cast<int>(states_.size()); }
  const std::vector<std::string>& items() const { return items_; }
  const std::vector<std::string>& states() const { return states_; }
  const JointDistribution& distribution() const { return distribution_; }
  const UtilityFunction& utility() const { return utility_; }

  std::optional<ItemId> FindItem(const std::string& name) const;
  std::optional<StateId> FindState(const std::string& name) const;

  // Pairs {(v, phi_v) : v in items}.
  PairMask Pairs(const Realization& phi, ItemMask items) const;
  PairMask Pairs(const PartialRealization& partial) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<std::string> items_;
  std::vector<std::string> states_;
  JointDistribution distribution_;
  UtilityFunction utility_;
};

// f(S) = E_Phi[f(U_{v in S} Phi_v)].
double ExpectedSetValue(const Instance& instance, ItemMask set);

// f_S(e) = f(S + e) - f(S); requires e not in S.
double Marginal(const Instance& instance, ItemMask set, ItemId e);

// f_S(phi_e) = E_Phi[f(Phi_S + (e, phi_e))] - f(S), Phi unconditional.
double StateMarginal(const Instance& instance, ItemMask set, ItemId e,
                     StateId state);

struct UtilityWitness {
  PairMask smaller;   // X
  PairMask larger;    // Y, X subset of Y
  int element = -1;   // x, a pair index not in Y (submodularity only)
};

struct UtilityReport {
  bool monotone = true;
  bool submodular = true;
  std::optional<UtilityWitness> witness;
  std::string note;
};

inline constexpr int kDefaultValidationCap = 14;

// Exhaustive monotonicity and submodularity check over all (X, Y, x).
UtilityReport ValidateUtility(const UtilityFunction& utility,
                              int max_pairs = kDefaultValidationCap);

}  // namespace stochsub

#endif  // STOCHSUB_INSTANCE_H_
