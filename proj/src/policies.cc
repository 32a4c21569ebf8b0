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

#include "stochsub/policies.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "stochsub/errors.h"

namespace stochsub {

Policy Policy::Pick(ItemId item, int num_states,
                    std::vector<std::pair<StateId, Policy>> branches) {
  if (item < 0) throw InputError("pick node needs an item");
  Policy p;
  p.nodes_[0].item = item;
  p.nodes_[0].children.assign(num_states, kNoChild);
  for (auto& [state, sub] : branches) {
    if (state < 0 || state >= num_states) throw InputError("unknown state id");
    if (p.nodes_[0].children[state] != kNoChild) {
      throw InputError("duplicate branch state");
    }
    const int offset = static_cast<int>(p.nodes_.size());
    p.nodes_[0].children[state] = offset;
    for (Node n : sub.nodes_) {
      for (int& c : n.children) {
        if (c != kNoChild) c += offset;
      }
      p.nodes_.push_back(std::move(n));
    }
  }
  return p;
}

int Policy::Depth() const {
  std::vector<int> depth(nodes_.size(), 0);
  // Children always follow their parent in the arena.
  for (int i = static_cast<int>(nodes_.size()) - 1; i >= 0; --i) {
    if (nodes_[i].is_stop()) continue;
    int below = 0;
    for (int c : nodes_[i].children) {
      if (c != kNoChild) below = std::max(below, depth[c]);
    }
    depth[i] = below + 1;
  }
  return depth[0];
}

std::vector<ItemId> Policy::Walk(const Realization& phi) const {
  std::vector<ItemId> sequence;
  ItemMask seen = 0;
  int at = 0;
  while (!nodes_[at].is_stop()) {
    const ItemId e = nodes_[at].item;
    if (e >= static_cast<int>(phi.size())) {
      throw PolicyError("policy refers to an unknown item");
    }
    if (Contains(seen, e)) throw PolicyError("policy repeats an item");
    seen = With(seen, e);
    sequence.push_back(e);
    const auto& children = nodes_[at].children;
    const int next = phi[e] < static_cast<int>(children.size())
                         ? children[phi[e]]
                         : kNoChild;
    if (next == kNoChild) {
      throw PolicyError("policy has no branch for an observed state");
    }
    at = next;
  }
  return sequence;
}

bool IsFeasiblePolicy(const Constraint& constraint, const Policy& policy) {
  std::vector<std::pair<int, std::vector<ItemId>>> stack{{0, {}}};
  while (!stack.empty()) {
    auto [at, seq] = std::move(stack.back());
    stack.pop_back();
    const Policy::Node& n = policy.node(at);
    if (n.is_stop()) continue;
    if (std::find(seq.begin(), seq.end(), n.item) != seq.end()) return false;
    seq.push_back(n.item);
    if (n.item >= constraint.num_items() ||
        !IsPrefixFeasible(constraint, seq)) {
      return false;
    }
    for (int c : n.children) {
      if (c != Policy::kNoChild) stack.emplace_back(c, seq);
    }
  }
  return true;
}

PolicyValue EvaluatePolicy(const Instance& instance, const Policy& policy) {
  const auto& support = instance.distribution().realizations();
  const auto& beta = instance.distribution().probabilities_double();
  const auto& exact = instance.distribution().probabilities();
  PolicyValue out;
  out.per_realization.resize(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    RealizationOutcome& o = out.per_realization[i];
    try {
      o.sequence = policy.Walk(support[i]);
    } catch (const Error&) {
      if (exact[i] > 0) throw;
      // Unreachable realization: keep the picks made before the gap.
      int at = 0;
      while (!policy.node(at).is_stop()) {
        const auto& n = policy.node(at);
        if (Contains(o.picked, n.item)) break;
        o.sequence.push_back(n.item);
        o.picked = With(o.picked, n.item);
        const int next = n.children[support[i][n.item]];
        if (next == Policy::kNoChild) break;
        at = next;
      }
    }
    o.picked = ItemsMask(o.sequence);
    o.utility = instance.utility().Evaluate(instance.Pairs(support[i], o.picked));
    out.value += beta[i] * o.utility;
  }
  return out;
}

namespace {

class AdaptiveSolver {
 public:
  AdaptiveSolver(const Instance& instance, const Constraint& constraint)
      : instance_(instance),
        constraint_(constraint),
        support_(instance.distribution().realizations()),
        beta_(instance.distribution().probabilities_double()) {}

  struct Entry {
    double value = 0.0;
    ItemId choice = kStopItem;
  };

  double Solve(const PartialRealization& obs, std::vector<ItemId>& seq,
               const std::vector<std::size_t>& members) {
    const std::vector<int> key = Key(obs, seq);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.value;

    double mass = 0.0;
    for (std::size_t i : members) mass += beta_[i];
    const double stop_value = instance_.utility().Evaluate(instance_.Pairs(obs));
    const ItemMask picked = Domain(obs);

    Entry best{0.0, kStopItem};
    bool have_pick = false;
    for (ItemId e = 0; e < instance_.num_items(); ++e) {
      if (Contains(picked, e) || !Feasible(picked, seq, e)) continue;
      double total = 0.0;
      for (StateId o = 0; o < instance_.num_states(); ++o) {
        std::vector<std::size_t> branch;
        double branch_mass = 0.0;
        for (std::size_t i : members) {
          if (support_[i][e] == o) {
            branch.push_back(i);
            branch_mass += beta_[i];
          }
        }
        if (branch.empty()) continue;
        PartialRealization next = obs;
        next[e] = o;
        seq.push_back(e);
        total += branch_mass * Solve(next, seq, branch);
        seq.pop_back();
      }
      const double value = total / mass;
      if (!have_pick || value > best.value + Tol(best.value)) {
        best = Entry{value, e};
        have_pick = true;
      }
    }
    if (!have_pick || stop_value > best.value + Tol(best.value)) {
      best = Entry{stop_value, kStopItem};
    }
    memo_[key] = best;
    return best.value;
  }

  Policy Build(const PartialRealization& obs, std::vector<ItemId>& seq,
               const std::vector<std::size_t>& members) {
    const Entry& entry = memo_.at(Key(obs, seq));
    if (entry.choice == kStopItem) return Policy();
    const ItemId e = entry.choice;
    std::vector<std::pair<StateId, Policy>> branches;
    for (StateId o = 0; o < instance_.num_states(); ++o) {
      std::vector<std::size_t> branch;
      for (std::size_t i : members) {
        if (support_[i][e] == o) branch.push_back(i);
      }
      if (branch.empty()) continue;
      PartialRealization next = obs;
      next[e] = o;
      seq.push_back(e);
      branches.emplace_back(o, Build(next, seq, branch));
      seq.pop_back();
    }
    return Policy::Pick(e, instance_.num_states(), std::move(branches));
  }

 private:
  static double Tol(double v) { return 1e-12 * std::max(1.0, std::abs(v)); }

  bool Feasible(ItemMask picked, std::vector<ItemId>& seq, ItemId e) const {
    if (constraint_.is_downward_closed()) {
      return IsFeasible(constraint_, With(picked, e));
    }
    seq.push_back(e);
    const bool ok = IsPrefixFeasible(constraint_, seq);
    seq.pop_back();
    return ok;
  }

  // Histories with the same observed pairs are interchangeable under a
  // downward-closed family; sequence families also key on pick order.
  std::vector<int> Key(const PartialRealization& obs,
                       const std::vector<ItemId>& seq) const {
    std::vector<int> key(obs.begin(), obs.end());
    if (!constraint_.is_downward_closed()) {
      key.push_back(-2);
      key.insert(key.end(), seq.begin(), seq.end());
    }
    return key;
  }

  const Instance& instance_;
  const Constraint& constraint_;
  const std::vector<Realization>& support_;
  const std::vector<double>& beta_;
  std::map<std::vector<int>, Entry> memo_;
};

}  // namespace

AdaptiveSolution OptimalAdaptive(const Instance& instance,
                                 const Constraint& constraint,
                                 const OracleOptions& options) {
  if (constraint.num_items() != instance.num_items()) {
    throw InputError("constraint and instance disagree on item count");
  }
  if (instance.num_items() > options.max_items ||
      instance.distribution().size() > options.max_support) {
    throw CapacityError("optimal adaptive oracle needs m <= " +
                        std::to_string(options.max_items) +
                        " and support <= " +
                        std::to_string(options.max_support));
  }
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < instance.distribution().size(); ++i) {
    if (instance.distribution().probabilities()[i] > 0) members.push_back(i);
  }
  AdaptiveSolver solver(instance, constraint);
  const PartialRealization root(instance.num_items(), kUnobserved);
  std::vector<ItemId> seq;
  AdaptiveSolution out;
  out.value = solver.Solve(root, seq, members);
  out.policy = solver.Build(root, seq, members);
  return out;
}

NonadaptiveSolution BestNonadaptive(const Instance& instance,
                                    const Constraint& constraint,
                                    int max_items) {
  const int m = instance.num_items();
  if (constraint.num_items() != m) {
    throw InputError("constraint and instance disagree on item count");
  }
  if (m > max_items) {
    throw CapacityError("best non-adaptive enumeration needs m <= " +
                        std::to_string(max_items));
  }
  std::vector<ItemMask> sets;
  if (constraint.kind() == ConstraintKind::kExplicit) {
    sets = constraint.feasible_sets();
  } else {
    for (ItemMask s = 0; s <= FullMask(m); ++s) {
      if (IsFeasible(constraint, s)) sets.push_back(s);
    }
    std::sort(sets.begin(), sets.end(), LexLess);
  }
  NonadaptiveSolution best{0, -1.0};
  for (ItemMask s : sets) {
    const double v = ExpectedSetValue(instance, s);
    if (v > best.value + 1e-12 * std::max(1.0, std::abs(best.value))) {
      best = NonadaptiveSolution{s, v};
    }
  }
  return best;
}

double VirtualNonadaptiveValue(const Instance& instance,
                               const Constraint& constraint,
                               const Policy& policy) {
  if (!IsFeasiblePolicy(constraint, policy)) {
    throw InputError("virtual non-adaptive policy needs a feasible policy");
  }
  const auto& support = instance.distribution().realizations();
  const auto& beta = instance.distribution().probabilities_double();
  const auto& exact = instance.distribution().probabilities();
  double value = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (exact[i] == 0) continue;
    const ItemMask picked = ItemsMask(policy.Walk(support[i]));
    value += beta[i] * ExpectedSetValue(instance, picked);
  }
  return value;
}

FractionalPoint PolicyPickProbabilities(const Instance& instance,
                                        const Policy& policy) {
  const PolicyValue pv = EvaluatePolicy(instance, policy);
  const auto& beta = instance.distribution().probabilities_double();
  std::vector<double> y(instance.num_items(), 0.0);
  for (std::size_t i = 0; i < pv.per_realization.size(); ++i) {
    for (ItemId e : MaskItems(pv.per_realization[i].picked)) y[e] += beta[i];
  }
  for (double& v : y) v = std::min(1.0, v);
  return FractionalPoint(std::move(y));
}

UpperBoundCheck OptimalUpperBoundCheck(const MultilinearOracle& oracle,
                                       const Policy& policy,
                                       const FractionalPoint& x,
                                       double kappa) {
  if (!(kappa > 0.0)) {
    throw DegenerateBoundError("upper bound undefined for kappa = 0");
  }
  const Instance& instance = oracle.instance();
  const FractionalPoint picks = PolicyPickProbabilities(instance, policy);
  UpperBoundCheck check;
  check.lhs = EvaluatePolicy(instance, policy).value;
  double sum = 0.0;
  for (ItemId e = 0; e < instance.num_items(); ++e) {
    if (picks[e] > 0.0) sum += picks[e] * oracle.OptimisticWeight(x, e);
  }
  check.rhs = oracle.Exact(x) + sum / kappa;
  check.holds = check.lhs <= check.rhs + 1e-9;
  return check;
}

UpperBoundCheck OptimalUpperBoundCheck(const Instance& instance,
                                       const Policy& policy,
                                       const FractionalPoint& x,
                                       double kappa) {
  return OptimalUpperBoundCheck(MultilinearOracle(instance), policy, x, kappa);
}

}  // namespace stochsub
