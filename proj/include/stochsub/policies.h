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

#ifndef STOCHSUB_POLICIES_H_
#define STOCHSUB_POLICIES_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "stochsub/constraints.h"
#include "stochsub/instance.h"
#include "stochsub/multilinear.h"
#include "stochsub/types.h"

namespace stochsub {

inline constexpr ItemId kStopItem = -1;

// An adaptive policy as a decision tree. Nodes live in an arena with the
// root at index 0; a node either stops or picks an item and branches on
// the observed state.
class Policy {
 public:
  static constexpr int kNoChild = -1;

  struct Node {
    ItemId item = kStopItem;
    std::vector<int> children;  // per state; kNoChild where absent

    bool is_stop() const { return item == kStopItem; }
    friend bool operator==(const Node&, const Node&) = default;
  };

  // The stop-only policy.
  Policy() : nodes_(1) {}

  static Policy Pick(ItemId item, int num_states,
                     std::vector<std::pair<StateId, Policy>> branches);

  const Node& root() const { return nodes_[0]; }
  const Node& node(int index) const { return nodes_[index]; }
  std::size_t num_nodes() const { return nodes_.size(); }

  // Longest root-to-leaf item count.
  int Depth() const;

  // Item sequence picked on a realization. Throws PolicyError on a missing
  // branch or a repeated item.
  std::vector<ItemId> Walk(const Realization& phi) const;

  friend bool operator==(const Policy&, const Policy&) = default;

 private:
  std::vector<Node> nodes_;
};

// Every root-to-node item sequence passes IsPrefixFeasible.
bool IsFeasiblePolicy(const Constraint& constraint, const Policy& policy);

struct RealizationOutcome {
  std::vector<ItemId> sequence;
  ItemMask picked = 0;
  double utility = 0.0;
};

struct PolicyValue {
  double value = 0.0;
  // Parallel to the distribution's support. Zero-probability realizations
  // that hit a missing branch record the items picked up to that point.
  std::vector<RealizationOutcome> per_realization;
};

// f(pi) = sum_phi beta_phi f(U_{e in E(pi, phi)} phi_e).
PolicyValue EvaluatePolicy(const Instance& instance, const Policy& policy);

struct OracleOptions {
  int max_items = 5;
  std::size_t max_support = 64;
};

struct AdaptiveSolution {
  Policy policy;
  double value = 0.0;
};

// Optimal feasible adaptive policy by backward induction over observation
// histories. Ties prefer picking over stopping, then the lowest item index.
AdaptiveSolution OptimalAdaptive(const Instance& instance,
                                 const Constraint& constraint,
                                 const OracleOptions& options = {});

struct NonadaptiveSolution {
  ItemMask set = 0;
  double value = 0.0;
};

// argmax of f(S) over feasible S; LexLess-first on ties.
NonadaptiveSolution BestNonadaptive(const Instance& instance,
                                    const Constraint& constraint,
                                    int max_items = 20);

// Runs the policy on a virtual realization phi ~ D and scores the picked
// items on an independent true realization phi' ~ D:
// sum_{phi, phi'} beta_phi beta_phi' f(U_{e in E(pi, phi)} phi'_e).
double VirtualNonadaptiveValue(const Instance& instance,
                               const Constraint& constraint,
                               const Policy& policy);

// y_e = Pr[e is picked by the policy].
FractionalPoint PolicyPickProbabilities(const Instance& instance,
                                        const Policy& policy);

struct UpperBoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

// f(pi) <= F(x) + (1/kappa) sum_e y_e F_{x\e}(e), with y the policy's pick
// probabilities.
UpperBoundCheck OptimalUpperBoundCheck(const MultilinearOracle& oracle,
                                       const Policy& policy,
                                       const FractionalPoint& x, double kappa);
UpperBoundCheck OptimalUpperBoundCheck(const Instance& instance,
                                       const Policy& policy,
                                       const FractionalPoint& x, double kappa);

}  // namespace stochsub

#endif  // STOCHSUB_POLICIES_H_
