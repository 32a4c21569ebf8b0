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

#ifndef STOCHSUB_TESTS_GENERATORS_H_
#define STOCHSUB_TESTS_GENERATORS_H_

// Hand-rolled random instances for property tests.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "stochsub/constraints.h"
#include "stochsub/instance.h"

namespace stochsub::gen {

using Rng = std::mt19937_64;

inline int Uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::vector<std::string> Names(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// A correlated distribution: a random subset of realizations with random
// integer weights.
inline JointDistribution RandomJoint(Rng& rng, int m, int k, int max_support) {
  int total = 1;
  for (int e = 0; e < m; ++e) total *= k;
  const int n = Uniform(rng, 1, std::min(total, max_support));
  std::set<Realization> chosen;
  while (static_cast<int>(chosen.size()) < n) {
    Realization phi(m);
    for (int e = 0; e < m; ++e) phi[e] = Uniform(rng, 0, k - 1);
    chosen.insert(phi);
  }
  std::vector<Realization> support(chosen.begin(), chosen.end());
  std::vector<mpq_class> probs;
  mpq_class sum = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    probs.push_back(Uniform(rng, 1, 9));
    sum += probs.back();
  }
  for (mpq_class& p : probs) {
    p /= sum;
    p.canonicalize();
  }
  return JointDistribution(m, k, std::move(support), std::move(probs));
}

// Product distribution from random integer marginals.
inline JointDistribution RandomProduct(Rng& rng, int m, int k) {
  std::vector<std::vector<mpq_class>> marg(m, std::vector<mpq_class>(k));
  for (auto& row : marg) {
    mpq_class sum = 0;
    for (mpq_class& p : row) {
      p = Uniform(rng, 0, 4);
      sum += p;
    }
    if (sum == 0) {
      row[0] = 1;
      sum = 1;
    }
    for (mpq_class& p : row) {
      p /= sum;
      p.canonicalize();
    }
  }
  std::vector<Realization> support;
  std::vector<mpq_class> probs;
  int total = 1;
  for (int e = 0; e < m; ++e) total *= k;
  for (int i = 0; i < total; ++i) {
    Realization phi(m);
    int rest = i;
    mpq_class p = 1;
    for (int e = 0; e < m; ++e) {
      phi[e] = rest % k;
      rest /= k;
      p *= marg[e][phi[e]];
    }
    if (p == 0) continue;
    support.push_back(phi);
    probs.push_back(p);
  }
  return JointDistribution(m, k, std::move(support), std::move(probs));
}

inline UtilityFunction RandomCoverage(Rng& rng, int m, int k) {
  const int targets = Uniform(rng, 1, 6);
  std::vector<double> weights;
  for (int t = 0; t < targets; ++t) weights.push_back(Uniform(rng, 1, 8) * 0.5);
  std::vector<std::vector<std::vector<int>>> cov(
      m, std::vector<std::vector<int>>(k));
  for (auto& item : cov) {
    for (auto& state : item) {
      for (int t = 0; t < targets; ++t) {
        if (Uniform(rng, 0, 2) == 0) state.push_back(t);
      }
    }
  }
  return UtilityFunction::Coverage(m, k, Names("t", targets),
                                   std::move(weights), cov);
}

// sqrt of a nonnegative modular function: monotone submodular, stored as a
// full table.
inline UtilityFunction RandomConcaveTable(Rng& rng, int m, int k) {
  const int pairs = m * k;
  std::vector<double> w(pairs);
  for (double& v : w) v = Uniform(rng, 0, 9);
  std::vector<double> values(std::size_t{1} << pairs);
  for (std::size_t s = 0; s < values.size(); ++s) {
    double total = 0.0;
    for (int p = 0; p < pairs; ++p) {
      if ((s >> p) & 1u) total += w[p];
    }
    values[s] = std::sqrt(total);
  }
  return UtilityFunction::Table(m, k, std::move(values));
}

inline Instance MakeInstance(JointDistribution d, UtilityFunction f) {
  const int m = d.num_items();
  const int k = d.num_states();
  return Instance(Names("i", m), Names("s", k), std::move(d), std::move(f));
}

inline Instance RandomInstance(Rng& rng, int m, int k, bool table = false) {
  JointDistribution d = RandomJoint(rng, m, k, 12);
  UtilityFunction f =
      table ? RandomConcaveTable(rng, m, k) : RandomCoverage(rng, m, k);
  return MakeInstance(std::move(d), std::move(f));
}

inline Instance RandomProductInstance(Rng& rng, int m, int k) {
  return MakeInstance(RandomProduct(rng, m, k), RandomCoverage(rng, m, k));
}

inline std::vector<double> RandomPoint(Rng& rng, int m) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(m);
  for (double& v : x) v = u(rng);
  return x;
}

// Every subset of a random base family, which makes it downward-closed.
inline Constraint RandomExplicit(Rng& rng, int m) {
  std::set<ItemMask> sets{0};
  const int bases = Uniform(rng, 1, 3);
  for (int b = 0; b < bases; ++b) {
    const ItemMask base =
        static_cast<ItemMask>(Uniform(rng, 0, (1 << m) - 1));
    for (ItemMask s = base;; s = (s - 1) & base) {
      sets.insert(s);
      if (s == 0) break;
    }
  }
  return Constraint::ExplicitSets(m, {sets.begin(), sets.end()});
}

inline Constraint RandomPartition(Rng& rng, int m) {
  const int blocks = Uniform(rng, 1, m);
  std::vector<std::vector<ItemId>> parts(blocks);
  for (int e = 0; e < m; ++e) parts[e < blocks ? e : Uniform(rng, 0, blocks - 1)].push_back(e);
  std::vector<int> caps;
  for (const auto& p : parts) caps.push_back(Uniform(rng, 0, static_cast<int>(p.size())));
  return Constraint::Partition(m, std::move(parts), std::move(caps));
}

inline Constraint RandomKnapsack(Rng& rng, int m) {
  std::vector<double> costs(m);
  for (double& c : costs) c = Uniform(rng, 1, 6);
  return Constraint::Knapsack(std::move(costs), Uniform(rng, 1, 12));
}

inline Constraint RandomConstraint(Rng& rng, int m, int kind) {
  switch (kind % 4) {
    case 0:
      return Constraint::Uniform(m, Uniform(rng, 0, m));
    case 1:
      return RandomPartition(rng, m);
    case 2:
      return RandomKnapsack(rng, m);
    default:
      return RandomExplicit(rng, m);
  }
}

}  // namespace stochsub::gen

#endif  // STOCHSUB_TESTS_GENERATORS_H_
