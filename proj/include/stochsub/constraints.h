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

#ifndef STOCHSUB_CONSTRAINTS_H_
#define STOCHSUB_CONSTRAINTS_H_

#include <optional>
#include <span>
#include <vector>

#include "stochsub/multilinear.h"
#include "stochsub/types.h"

namespace stochsub {

enum class ConstraintKind { kUniform, kPartition, kKnapsack, kExplicit };

const char* ConstraintKindName(ConstraintKind kind);

// Downward-closed (or, for explicit sequence families, prefix-closed)
// feasibility family I over m items, with its polytope P_I.
//
// For knapsacks P_I is the LP relaxation {y in [0,1]^m : c.y <= B}, the
// polytope the fractional-greedy oracle optimizes over.
class Constraint {
 public:
  static Constraint Uniform(int num_items, int rank);
  // Blocks must partition the items.
  static Constraint Partition(int num_items,
                              std::vector<std::vector<ItemId>> blocks,
                              std::vector<int> capacities);
  static Constraint Knapsack(std::vector<double> costs, double budget);
  // Downward-closed family; must contain every subset of a listed set.
  static Constraint ExplicitSets(int num_items,
                                 std::vector<ItemMask> feasible_sets);
  // Prefix-closed family of item sequences; must contain every prefix of a
  // listed sequence (the empty sequence included).
  static Constraint ExplicitSequences(
      int num_items, std::vector<std::vector<ItemId>> feasible_sequences);

  ConstraintKind kind() const { return kind_; }
  int num_items() const { return num_items_; }
  bool is_matroid() const {
    return kind_ == ConstraintKind::kUniform ||
           kind_ == ConstraintKind::kPartition;
  }
  // False only for sequence families.
  bool is_downward_closed() const { return sequences_.empty(); }

  int rank() const { return rank_; }
  const std::vector<std::vector<ItemId>>& blocks() const { return blocks_; }
  const std::vector<int>& capacities() const { return capacities_; }
  const std::vector<double>& costs() const { return costs_; }
  double budget() const { return budget_; }
  // Feasible sets, sorted in LexLess order.
  const std::vector<ItemMask>& feasible_sets() const { return sets_; }
  const std::vector<std::vector<ItemId>>& feasible_sequences() const {
    return sequences_;
  }

  // Rounding loss factor declared for kinds without a rounding scheme.
  const std::optional<double>& configured_alpha() const { return alpha_; }
  Constraint WithAlpha(double alpha) const;

  friend bool operator==(const Constraint&, const Constraint&) = default;

 private:
  Constraint(ConstraintKind kind, int num_items)
      : kind_(kind), num_items_(num_items) {}

  ConstraintKind kind_;
  int num_items_;
  int rank_ = 0;
  std::vector<std::vector<ItemId>> blocks_;
  std::vector<int> capacities_;
  std::vector<int> block_of_;
  std::vector<double> costs_;
  double budget_ = 0.0;
  std::vector<ItemMask> sets_;
  std::vector<std::vector<ItemId>> sequences_;
  std::optional<double> alpha_;

  friend bool IsFeasible(const Constraint&, ItemMask);
};

bool IsFeasible(const Constraint& constraint, ItemMask set);

// True iff every prefix of `sequence` is feasible. Duplicate items are an
// input error.
bool IsPrefixFeasible(const Constraint& constraint,
                      std::span<const ItemId> sequence);

struct LPSolution {
  FractionalPoint point;
  double objective = 0.0;
  // Set whose indicator is `point`, when the optimum is integral.
  std::optional<ItemMask> vertex_set;
};

// max sum_e w_e y_e over y in P_I; negative weights are clamped to 0.
LPSolution LpMaximize(const Constraint& constraint,
                      std::span<const double> weights);

// 1 for matroid kinds; the configured value otherwise.
double AlphaFor(const Constraint& constraint);

// Membership of y in P_I up to `tol` (uniform, partition, knapsack only).
bool InPolytope(const Constraint& constraint, const FractionalPoint& y,
                double tol = 1e-9);

}  // namespace stochsub

#endif  // STOCHSUB_CONSTRAINTS_H_
