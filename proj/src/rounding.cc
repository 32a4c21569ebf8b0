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

#include "stochsub/rounding.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "stochsub/counter_rng.h"
#include "stochsub/errors.h"

namespace stochsub {
namespace {

constexpr double kSnap = 1e-12;

double Snap(double v) {
  if (v < kSnap) return 0.0;
  if (v > 1.0 - kSnap) return 1.0;
  return v;
}

bool Fractional(double v) { return v > 0.0 && v < 1.0; }

// Rounds the coordinates of one group (a partition block, or every item of a
// uniform matroid) in place.
void RoundGroup(const std::vector<ItemId>& group, int capacity,
                std::vector<double>& y, std::uint64_t seed,
                std::uint64_t group_index) {
  std::uint64_t draw = 0;
  auto uniform = [&] {
    return CounterUniform(RngKey{seed, group_index, 0, draw++}, 0);
  };
  for (;;) {
    // Lowest-index fractional pair first.
    ItemId i = -1;
    ItemId j = -1;
    for (ItemId e : group) {
      if (!Fractional(y[e])) continue;
      if (i == -1) {
        i = e;
      } else {
        j = e;
        break;
      }
    }
    if (i == -1) return;
    if (j == -1) {
      // A lone fractional coordinate; the integral count is below the
      // capacity unless y sat on the boundary within tolerance.
      int ones = 0;
      for (ItemId e : group) ones += y[e] == 1.0 ? 1 : 0;
      y[i] = (ones < capacity && uniform() < y[i]) ? 1.0 : 0.0;
      return;
    }
    const double up = std::min(1.0 - y[i], y[j]);    // i gains, j loses
    const double down = std::min(y[i], 1.0 - y[j]);  // i loses, j gains
    if (uniform() * (up + down) < down) {
      y[i] = Snap(y[i] + up);
      y[j] = Snap(y[j] - up);
    } else {
      y[i] = Snap(y[i] - down);
      y[j] = Snap(y[j] + down);
    }
  }
}

}  // namespace

ItemMask PipageRound(const Constraint& constraint, const FractionalPoint& y,
                     std::uint64_t seed) {
  if (!constraint.is_matroid()) {
    throw UnsupportedKindError(
        std::string("pipage rounding needs a matroid constraint, got ") +
        ConstraintKindName(constraint.kind()));
  }
  if (y.size() != constraint.num_items()) {
    throw InputError("point has the wrong dimension");
  }
  if (!InPolytope(constraint, y)) {
    throw InputError("point lies outside the matroid polytope");
  }
  std::vector<double> work(y.coords());
  for (double& v : work) v = Snap(v);

  if (constraint.kind() == ConstraintKind::kUniform) {
    std::vector<ItemId> all(constraint.num_items());
    std::iota(all.begin(), all.end(), 0);
    RoundGroup(all, constraint.rank(), work, seed, 0);
  } else {
    for (std::size_t b = 0; b < constraint.blocks().size(); ++b) {
      RoundGroup(constraint.blocks()[b], constraint.capacities()[b], work, seed,
                 b);
    }
  }
  ItemMask out = 0;
  for (int e = 0; e < constraint.num_items(); ++e) {
    if (work[e] == 1.0) out = With(out, e);
  }
  if (!IsFeasible(constraint, out)) {
    throw InternalError("pipage rounding produced an infeasible set");
  }
  return out;
}

ItemMask IndependentRound(const FractionalPoint& y, std::uint64_t seed) {
  ItemMask out = 0;
  const RngKey key{seed, 0, 0, 0};
  for (int e = 0; e < y.size(); ++e) {
    if (CounterUniform(key, static_cast<std::uint64_t>(e)) < y[e]) {
      out = With(out, e);
    }
  }
  return out;
}

}  // namespace stochsub
