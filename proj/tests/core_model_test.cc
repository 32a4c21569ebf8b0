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

#include <gmpxx.h>

#include <vector>

#include "generators.h"
#include "gtest/gtest.h"
#include "oracles.h"
#include "stochsub/errors.h"
#include "stochsub/harness.h"

namespace stochsub {
namespace {

mpq_class Half() { return mpq_class(1, 2); }

JointDistribution TwoCoins() {
  return JointDistribution(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}},
                           {mpq_class(1, 4), mpq_class(1, 4), mpq_class(1, 4),
                            mpq_class(1, 4)});
}

TEST(JointDistributionTest, RejectsBadProbabilities) {
  EXPECT_THROW(JointDistribution(1, 2, {{0}, {1}}, {Half(), mpq_class(1, 3)}),
               Error);
  EXPECT_THROW(JointDistribution(1, 2, {{0}, {0}}, {Half(), Half()}), Error);
  EXPECT_THROW(JointDistribution(1, 2, {{0}, {1}}, {mpq_class(-1), mpq_class(2)}),
               Error);
  EXPECT_THROW(JointDistribution(1, 2, {{2}}, {mpq_class(1)}), Error);
  EXPECT_THROW(JointDistribution(2, 2, {{0}}, {mpq_class(1)}), Error);
}

TEST(JointDistributionTest, ErrorCodesAreInput) {
  try {
    JointDistribution(1, 2, {{0}, {1}}, {Half(), mpq_class(1, 3)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInput);
  }
}

TEST(JointDistributionTest, ObservationProbability) {
  const JointDistribution d = TwoCoins();
  EXPECT_EQ(d.ObservationProbability({0, kUnobserved}), Half());
  EXPECT_EQ(d.ObservationProbability({1, 1}), mpq_class(1, 4));
  EXPECT_EQ(d.ObservationProbability({kUnobserved, kUnobserved}), 1);
  EXPECT_EQ(d.Observations(ItemMask{1}).size(), 2u);
  EXPECT_EQ(d.Observations(0).size(), 1u);
}

TEST(ConditionTest, ProductConditionalIsMarginal) {
  const auto c = Condition(TwoCoins(), 1, {0, kUnobserved});
  ASSERT_EQ(c.marginal.size(), 2u);
  EXPECT_EQ(c.marginal[0].second, Half());
  EXPECT_EQ(c.Dense(2), (std::vector<mpq_class>{Half(), Half()}));
}

TEST(ConditionTest, CommonCauseConditionalIsDegenerate) {
  const Instance cc = CommonCause2();
  const auto c = Condition(cc.distribution(), 1, {1, kUnobserved});
  ASSERT_EQ(c.marginal.size(), 1u);
  EXPECT_EQ(c.marginal[0].first, 1);
  EXPECT_EQ(c.marginal[0].second, 1);
}

TEST(ConditionTest, ObservedItemIsInputError) {
  const JointDistribution d(2, 2, {{0, 0}, {1, 1}}, {Half(), Half()});
  try {
    Condition(d, 1, {0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInput);
  }
  EXPECT_EQ(Condition(d, 1, {kUnobserved, kUnobserved}).marginal.size(), 2u);
}

TEST(ConditionTest, ZeroMassIsConditioningError) {
  const JointDistribution skew(2, 2, {{0, 0}, {0, 1}}, {Half(), Half()});
  try {
    Condition(skew, 1, {1, kUnobserved});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConditioning);
  }
}

TEST(UtilityTest, CoverageEvaluation) {
  const Instance cc = CommonCause2();
  const UtilityFunction& f = cc.utility();
  EXPECT_EQ(f.Evaluate(0), 0.0);
  EXPECT_EQ(f.Evaluate(f.PairBit(0, 0)), 2.0);
  EXPECT_EQ(f.Evaluate(f.PairBit(0, 0) | f.PairBit(1, 0)), 3.0);
  EXPECT_EQ(f.Evaluate(f.PairBit(0, 1) | f.PairBit(1, 1)), 2.0);
  const std::vector<ItemState> pairs = {{0, 0}, {0, 1}};
  EXPECT_EQ(Evaluate(f, pairs), 2.0);
  const std::vector<ItemState> bad = {{0, 5}};
  EXPECT_THROW(Evaluate(f, bad), Error);
}

TEST(UtilityTest, TableEvaluation) {
  // One item, two states: f over subsets of {(0,0), (0,1)}.
  const UtilityFunction f = UtilityFunction::Table(1, 2, {0.0, 1.0, 2.0, 2.5});
  EXPECT_EQ(f.Evaluate(3), 2.5);
  EXPECT_THROW(UtilityFunction::Table(1, 2, {0.0, 1.0}), Error);
}

TEST(ExpectedSetValueTest, CommonCause2) {
  const Instance cc = CommonCause2();
  EXPECT_DOUBLE_EQ(ExpectedSetValue(cc, 0b01), 1.5);
  EXPECT_DOUBLE_EQ(ExpectedSetValue(cc, 0b10), 1.5);
  // 1/2 * f(a good, b good) + 1/2 * f(a bad, b bad) = 1/2 * 3 + 1/2 * 2.
  EXPECT_DOUBLE_EQ(ExpectedSetValue(cc, 0b11), 2.5);
  EXPECT_DOUBLE_EQ(Marginal(cc, 0b01, 1), 1.0);
  EXPECT_THROW(Marginal(cc, 0b01, 0), Error);
  // f_{a}((b, good)) = E[f(Phi_a + (b, good))] - f({a}) = 3 - 1.5.
  EXPECT_DOUBLE_EQ(StateMarginal(cc, 0b01, 1, 0), 1.5);
}

TEST(ExpectedSetValueTest, MatchesOracleOnRandomInstances) {
  gen::Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = gen::Uniform(rng, 1, 4);
    const int k = gen::Uniform(rng, 1, 3);
    const Instance inst = gen::RandomInstance(rng, m, k, trial % 3 == 0 && m * k <= 12);
    for (ItemMask s = 0; s < (ItemMask{1} << m); ++s) {
      EXPECT_NEAR(ExpectedSetValue(inst, s), oracle::SetValue(inst, s), 1e-12);
    }
  }
}

TEST(ExpectedSetValueTest, IsMonotoneAndSubmodularInItems) {
  gen::Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = gen::Uniform(rng, 2, 4);
    const Instance inst = gen::RandomInstance(rng, m, gen::Uniform(rng, 1, 3));
    const ItemMask full = FullMask(m);
    for (ItemMask b = 0; b <= full; ++b) {
      for (ItemMask a = b;; a = (a - 1) & b) {
        for (ItemId e = 0; e < m; ++e) {
          if (Contains(b, e)) continue;
          EXPECT_GE(Marginal(inst, a, e), Marginal(inst, b, e) - 1e-12);
          EXPECT_GE(Marginal(inst, b, e), -1e-12);
        }
        if (a == 0) break;
      }
    }
  }
}

TEST(ValidateUtilityTest, AcceptsConcaveOfModular) {
  gen::Rng rng(13);
  const UtilityFunction f = gen::RandomConcaveTable(rng, 2, 3);
  const UtilityReport r = ValidateUtility(f);
  EXPECT_TRUE(r.monotone);
  EXPECT_TRUE(r.submodular);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(ValidateUtilityTest, FindsViolations) {
  // f(S) = |S|^2 over two pairs is monotone but supermodular.
  const UtilityFunction sq = UtilityFunction::Table(1, 2, {0, 1, 1, 4});
  const UtilityReport r = ValidateUtility(sq);
  EXPECT_TRUE(r.monotone);
  EXPECT_FALSE(r.submodular);
  ASSERT_TRUE(r.witness.has_value());
  const UtilityWitness w = *r.witness;
  const PairMask bit = PairMask{1} << w.element;
  EXPECT_LT(sq.Evaluate(w.smaller | bit) - sq.Evaluate(w.smaller),
            sq.Evaluate(w.larger | bit) - sq.Evaluate(w.larger));

  const UtilityFunction down = UtilityFunction::Table(1, 2, {0, 2, 1, 1});
  EXPECT_FALSE(ValidateUtility(down).monotone);
}

TEST(ValidateUtilityTest, CapAndCoverage) {
  gen::Rng rng(14);
  const UtilityFunction big = gen::RandomConcaveTable(rng, 3, 5);
  try {
    ValidateUtility(big, 14);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapacity);
  }
  EXPECT_FALSE(ValidateUtility(CommonCause2().utility()).note.empty());
}

TEST(InstanceTest, LookupAndEquality) {
  const Instance a = CommonCause2();
  EXPECT_EQ(a.FindItem("b"), 1);
  EXPECT_EQ(a.FindState("bad"), 1);
  EXPECT_FALSE(a.FindItem("zz").has_value());
  EXPECT_EQ(a, CommonCause2());
  EXPECT_EQ(a.Pairs({1, kUnobserved}), a.utility().PairBit(0, 1));
}

}  // namespace
}  // namespace stochsub
