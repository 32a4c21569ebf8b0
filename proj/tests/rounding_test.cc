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

#include <cmath>
#include <vector>

#include "generators.h"
#include "gtest/gtest.h"
#include "stochsub/constraints.h"
#include "stochsub/errors.h"
#include "stochsub/multilinear.h"

namespace stochsub {
namespace {

// A random point of a matroid polytope: a convex combination of feasible
// indicators.
FractionalPoint RandomPolytopePoint(gen::Rng& rng, const Constraint& c, int m) {
  std::vector<double> y(m, 0.0);
  const int parts = 4;
  for (int p = 0; p < parts; ++p) {
    std::vector<double> w = gen::RandomPoint(rng, m);
    const LPSolution vertex = LpMaximize(c, w);
    for (int e = 0; e < m; ++e) y[e] += vertex.point[e] / parts;
  }
  return FractionalPoint(y);
}

void ExpectMarginals(const Constraint& c, const FractionalPoint& y, int seeds) {
  const int m = y.size();
  std::vector<int> hits(m, 0);
  for (int s = 0; s < seeds; ++s) {
    const ItemMask set = PipageRound(c, y, static_cast<std::uint64_t>(s));
    ASSERT_TRUE(IsFeasible(c, set));
    for (int e = 0; e < m; ++e) hits[e] += Contains(set, e);
  }
  for (int e = 0; e < m; ++e) {
    const double p = y[e];
    const double sigma = std::sqrt(p * (1.0 - p) / seeds);
    EXPECT_NEAR(static_cast<double>(hits[e]) / seeds, p, 4.0 * sigma + 1e-12)
        << "item " << e;
  }
}

TEST(PipageRoundTest, IntegralPointIsUnchanged) {
  const Constraint c = Constraint::Uniform(4, 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(PipageRound(c, FractionalPoint::Indicator(4, 0b1001), seed), 0b1001u);
    EXPECT_EQ(PipageRound(c, FractionalPoint::Zeros(4), seed), 0u);
  }
}

TEST(PipageRoundTest, SymmetricRankOne) {
  const Constraint c = Constraint::Uniform(2, 1);
  const FractionalPoint y({0.5, 0.5});
  int first = 0;
  const int seeds = 20000;
  for (int s = 0; s < seeds; ++s) {
    const ItemMask set = PipageRound(c, y, s);
    ASSERT_EQ(Size(set), 1);
    first += set == 1;
  }
  EXPECT_NEAR(first / static_cast<double>(seeds), 0.5, 4.0 * std::sqrt(0.25 / seeds));
}

TEST(PipageRoundTest, LoneFractionalCoordinateRespectsCapacity) {
  const Constraint rank2 = Constraint::Uniform(3, 2);
  ExpectMarginals(rank2, FractionalPoint({1.0, 1.0, 0.0}), 100);
  ExpectMarginals(rank2, FractionalPoint({1.0, 0.5, 0.0}), 5000);
  const Constraint part = Constraint::Partition(4, {{0, 1}, {2, 3}}, {1, 1});
  ExpectMarginals(part, FractionalPoint({0.3, 0.7, 0.5, 0.2}), 20000);
}

TEST(PipageRoundTest, PreservesMarginalsOnRandomPoints) {
  gen::Rng rng(61);
  for (int trial = 0; trial < 6; ++trial) {
    const int m = gen::Uniform(rng, 2, 5);
    const Constraint c = trial % 2 ? Constraint::Uniform(m, gen::Uniform(rng, 1, m))
                                   : gen::RandomPartition(rng, m);
    ExpectMarginals(c, RandomPolytopePoint(rng, c, m), 10000);
  }
}

TEST(PipageRoundTest, ExpectationAtLeastMultilinear) {
  gen::Rng rng(62);
  for (int trial = 0; trial < 4; ++trial) {
    const Instance inst = gen::RandomInstance(rng, 4, 2);
    const Constraint c = Constraint::Uniform(4, 2);
    const FractionalPoint y = RandomPolytopePoint(rng, c, 4);
    const MultilinearOracle oracle(inst);
    const int n = 20000;
    double sum = 0.0;
    double sq = 0.0;
    for (int s = 0; s < n; ++s) {
      const double v = oracle.SetValue(PipageRound(c, y, s));
      sum += v;
      sq += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt(std::max(0.0, sq / n - mean * mean) / (n - 1));
    EXPECT_GE(mean, oracle.Exact(y) - 4.0 * se - 1e-12);
  }
}

TEST(PipageRoundTest, DeterministicGivenSeed) {
  const Constraint c = Constraint::Uniform(5, 2);
  const FractionalPoint y({0.4, 0.4, 0.4, 0.4, 0.4});
  for (std::uint64_t s = 0; s < 50; ++s) {
    EXPECT_EQ(PipageRound(c, y, s), PipageRound(c, y, s));
  }
}

TEST(PipageRoundTest, Errors) {
  try {
    PipageRound(Constraint::Knapsack({1, 1}, 1), FractionalPoint({0.5, 0.5}), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedKind);
  }
  try {
    PipageRound(Constraint::Uniform(2, 1), FractionalPoint({0.9, 0.9}), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInput);
  }
}

TEST(IndependentRoundTest, Frequencies) {
  EXPECT_EQ(IndependentRound(FractionalPoint::Zeros(3), 1), 0u);
  EXPECT_EQ(IndependentRound(FractionalPoint({1.0, 1.0, 1.0}), 1), 0b111u);
  const FractionalPoint y({0.3, 0.3, 0.8});
  const int seeds = 10000;
  std::vector<int> hits(3, 0);
  for (int s = 0; s < seeds; ++s) {
    const ItemMask set = IndependentRound(y, s);
    for (int e = 0; e < 3; ++e) hits[e] += Contains(set, e);
  }
  for (int e = 0; e < 3; ++e) {
    const double sigma = std::sqrt(y[e] * (1 - y[e]) / seeds);
    EXPECT_NEAR(hits[e] / static_cast<double>(seeds), y[e], 4 * sigma);
  }
}

}  // namespace
}  // namespace stochsub
