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

#include "stochsub/constraints.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "stochsub/errors.h"

namespace stochsub {

const char* ConstraintKindName(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kUniform:
      return "uniform";
    case ConstraintKind::kPartition:
      return "partition";
    case ConstraintKind::kKnapsack:
      return "knapsack";
    case ConstraintKind::kExplicit:
      return "explicit";
  }
  return "unknown";
}

namespace {

void CheckItems(int num_items) {
  if (num_items < 1 || num_items > kMaxItems) {
    throw InputError("number of items must be in [1, 64]");
  }
}

void SortLex(std::vector<ItemMask>& sets) {
  std::sort(sets.begin(), sets.end(), LexLess);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

}  // namespace

Constraint Constraint::Uniform(int num_items, int rank) {
  CheckItems(num_items);
  if (rank < 0) throw InputError("uniform matroid rank must be nonnegative");
  Constraint c(ConstraintKind::kUniform, num_items);
  c.rank_ = rank;
  return c;
}

Constraint Constraint::Partition(int num_items,
                                 std::vector<std::vector<ItemId>> blocks,
                                 std::vector<int> capacities) {
  CheckItems(num_items);
  if (blocks.size() != capacities.size()) {
    throw InputError("one capacity per partition block required");
  }
  Constraint c(ConstraintKind::kPartition, num_items);
  c.block_of_.assign(num_items, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (capacities[b] < 0) throw InputError("negative block capacity");
    std::sort(blocks[b].begin(), blocks[b].end());
    for (ItemId e : blocks[b]) {
      if (e < 0 || e >= num_items) throw InputError("unknown item in block");
      if (c.block_of_[e] != -1) throw InputError("item in two blocks");
      c.block_of_[e] = static_cast<int>(b);
    }
  }
  for (int b : c.block_of_) {
    if (b == -1) throw InputError("partition blocks must cover every item");
  }
  c.blocks_ = std::move(blocks);
  c.capacities_ = std::move(capacities);
  return c;
}

Constraint Constraint::Knapsack(std::vector<double> costs, double budget) {
  CheckItems(static_cast<int>(costs.size()));
  for (double cost : costs) {
    if (!(cost >= 0) || !std::isfinite(cost)) {
      throw InputError("knapsack costs must be finite and nonnegative");
    }
  }
  if (!(budget >= 0) || !std::isfinite(budget)) {
    throw InputError("knapsack budget must be finite and nonnegative");
  }
  Constraint c(ConstraintKind::kKnapsack, static_cast<int>(costs.size()));
  c.costs_ = std::move(costs);
  c.budget_ = budget;
  return c;
}

Constraint Constraint::ExplicitSets(int num_items,
                                    std::vector<ItemMask> feasible_sets) {
  CheckItems(num_items);
  const ItemMask full = FullMask(num_items);
  std::set<ItemMask> family(feasible_sets.begin(), feasible_sets.end());
  if (!family.contains(0)) throw InputError("explicit family must contain {}");
  for (ItemMask s : family) {
    if ((s & ~full) != 0) throw InputError("feasible set has unknown items");
    for (ItemMask sub = s; sub != 0; sub = (sub - 1) & s) {
      if (!family.contains(sub)) {
        throw InputError("explicit family is not downward-closed");
      }
    }
  }
  Constraint c(ConstraintKind::kExplicit, num_items);
  c.sets_.assign(family.begin(), family.end());
  SortLex(c.sets_);
  return c;
}

Constraint Constraint::ExplicitSequences(
    int num_items, std::vector<std::vector<ItemId>> feasible_sequences) {
  CheckItems(num_items);
  std::set<std::vector<ItemId>> family(feasible_sequences.begin(),
                                       feasible_sequences.end());
  if (!family.contains({})) {
    throw InputError("explicit family must contain the empty sequence");
  }
  std::vector<ItemMask> sets;
  for (const auto& seq : family) {
    ItemMask seen = 0;
    for (ItemId e : seq) {
      if (e < 0 || e >= num_items) throw InputError("unknown item in sequence");
      if (Contains(seen, e)) throw InputError("sequence repeats an item");
      seen = With(seen, e);
    }
    if (!seq.empty() &&
        !family.contains(std::vector<ItemId>(seq.begin(), seq.end() - 1))) {
      throw InputError("explicit sequence family is not prefix-closed");
    }
    sets.push_back(seen);
  }
  Constraint c(ConstraintKind::kExplicit, num_items);
  c.sequences_.assign(family.begin(), family.end());
  c.sets_ = std::move(sets);
  SortLex(c.sets_);
  return c;
}

Constraint Constraint::WithAlpha(double alpha) const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InputError("alpha must lie in (0, 1]");
  }
  Constraint c = *this;
  c.alpha_ = alpha;
  return c;
}

bool IsFeasible(const Constraint& c, ItemMask set) {
  if ((set & ~FullMask(c.num_items())) != 0) {
    throw InputError("set refers to an unknown item");
  }
  switch (c.kind()) {
    case ConstraintKind::kUniform:
      return Size(set) <= c.rank_;
    case ConstraintKind::kPartition: {
      std::vector<int> used(c.blocks_.size(), 0);
      for (ItemId e : MaskItems(set)) {
        if (++used[c.block_of_[e]] > c.capacities_[c.block_of_[e]]) {
          return false;
        }
      }
      return true;
    }
    case ConstraintKind::kKnapsack: {
      double total = 0.0;
      for (ItemId e : MaskItems(set)) total += c.costs_[e];
      return total <= c.budget_;
    }
    case ConstraintKind::kExplicit:
      return std::binary_search(c.sets_.begin(), c.sets_.end(), set, LexLess);
  }
  return false;
}

bool IsPrefixFeasible(const Constraint& c, std::span<const ItemId> sequence) {
  ItemMask seen = 0;
  for (ItemId e : sequence) {
    if (e < 0 || e >= c.num_items()) throw InputError("unknown item id");
    if (Contains(seen, e)) throw InputError("sequence repeats an item");
    seen = With(seen, e);
  }
  if (c.is_downward_closed()) return IsFeasible(c, seen);
  const auto& seqs = c.feasible_sequences();
  return std::binary_search(seqs.begin(), seqs.end(),
                            std::vector<ItemId>(sequence.begin(),
                                                sequence.end()));
}

namespace {

// Items ordered by decreasing weight, ties by index.
std::vector<ItemId> ByWeight(std::span<const double> w,
                             const std::vector<ItemId>& items) {
  std::vector<ItemId> order = items;
  std::stable_sort(order.begin(), order.end(),
                   [&](ItemId a, ItemId b) { return w[a] > w[b]; });
  return order;
}

LPSolution IntegralSolution(int m, ItemMask set, std::span<const double> w) {
  double objective = 0.0;
  for (ItemId e : MaskItems(set)) objective += w[e];
  return LPSolution{FractionalPoint::Indicator(m, set), objective, set};
}

}  // namespace

LPSolution LpMaximize(const Constraint& c, std::span<const double> weights) {
  const int m = c.num_items();
  if (static_cast<int>(weights.size()) != m) {
    throw InputError("one weight per item required");
  }
  std::vector<double> w(m);
  for (int e = 0; e < m; ++e) {
    if (std::isnan(weights[e])) throw InputError("NaN weight");
    w[e] = std::max(0.0, weights[e]);
  }
  std::vector<ItemId> all(m);
  std::iota(all.begin(), all.end(), 0);

  switch (c.kind()) {
    case ConstraintKind::kUniform: {
      ItemMask chosen = 0;
      int taken = 0;
      for (ItemId e : ByWeight(w, all)) {
        if (taken == c.rank() || w[e] <= 0.0) break;
        chosen = With(chosen, e);
        ++taken;
      }
      return IntegralSolution(m, chosen, w);
    }
    case ConstraintKind::kPartition: {
      ItemMask chosen = 0;
      for (std::size_t b = 0; b < c.blocks().size(); ++b) {
        int taken = 0;
        for (ItemId e : ByWeight(w, c.blocks()[b])) {
          if (taken == c.capacities()[b] || w[e] <= 0.0) break;
          chosen = With(chosen, e);
          ++taken;
        }
      }
      return IntegralSolution(m, chosen, w);
    }
    case ConstraintKind::kKnapsack: {
      // Fractional greedy by density; free items with positive weight first.
      std::vector<ItemId> order;
      for (ItemId e : all) {
        if (w[e] > 0.0) order.push_back(e);
      }
      const auto& cost = c.costs();
      std::stable_sort(order.begin(), order.end(), [&](ItemId a, ItemId b) {
        // w_a / c_a > w_b / c_b without dividing by zero.
        return w[a] * cost[b] > w[b] * cost[a];
      });
      std::vector<double> y(m, 0.0);
      double remaining = c.budget();
      double objective = 0.0;
      bool integral = true;
      for (ItemId e : order) {
        if (cost[e] <= remaining) {
          y[e] = 1.0;
          remaining -= cost[e];
          objective += w[e];
        } else {
          y[e] = remaining / cost[e];
          objective += w[e] * y[e];
          integral = y[e] == 0.0;
          break;
        }
      }
      LPSolution sol{FractionalPoint(std::move(y)), objective, std::nullopt};
      if (integral) sol.vertex_set = sol.point.Support();
      return sol;
    }
    case ConstraintKind::kExplicit: {
      // Sets are in LexLess order; the first strict maximum wins.
      ItemMask best = 0;
      double best_value = -1.0;
      for (ItemMask s : c.feasible_sets()) {
        double value = 0.0;
        for (ItemId e : MaskItems(s)) value += w[e];
        if (value > best_value) {
          best_value = value;
          best = s;
        }
      }
      return IntegralSolution(m, best, w);
    }
  }
  throw InternalError("unhandled constraint kind");
}

double AlphaFor(const Constraint& c) {
  if (c.is_matroid()) return 1.0;
  if (!c.configured_alpha()) {
    throw ConfigurationError(std::string("no rounding scheme for ") +
                             ConstraintKindName(c.kind()) +
                             " constraints; configure alpha");
  }
  return *c.configured_alpha();
}

bool InPolytope(const Constraint& c, const FractionalPoint& y, double tol) {
  if (y.size() != c.num_items()) {
    throw InputError("point has the wrong dimension");
  }
  for (double v : y.coords()) {
    if (v < -tol || v > 1.0 + tol) return false;
  }
  switch (c.kind()) {
    case ConstraintKind::kUniform: {
      double total = 0.0;
      for (double v : y.coords()) total += v;
      return total <= c.rank() + tol;
    }
    case ConstraintKind::kPartition:
      for (std::size_t b = 0; b < c.blocks().size(); ++b) {
        double total = 0.0;
        for (ItemId e : c.blocks()[b]) total += y[e];
        if (total > c.capacities()[b] + tol) return false;
      }
      return true;
    case ConstraintKind::kKnapsack: {
      double total = 0.0;
      for (int e = 0; e < c.num_items(); ++e) total += c.costs()[e] * y[e];
      return total <= c.budget() + tol;
    }
    case ConstraintKind::kExplicit:
      throw UnsupportedKindError(
          "polytope membership is not implemented for explicit families");
  }
  return false;
}

}  // namespace stochsub
