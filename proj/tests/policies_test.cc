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

#include <vector>

#include "generators.h"
#include "gtest/gtest.h"
#include "oracles.h"
#include "stochsub/errors.h"
#include "stochsub/harness.h"
#include "stochsub/independence.h"

namespace stochsub {
namespace {

Constraint AnyConstraint(gen::Rng& rng, int m, int trial) {
  if (trial % 5 == 4 && m >= 2) {
    // Prefix-closed but not downward-closed: item 0 must come first.
    return Constraint::ExplicitSequences(m, {{}, {0}, {0, 1}});
  }
  return gen::RandomConstraint(rng, m, trial);
}

TEST(PolicyTest, StopOnly) {
  const Instance cc = CommonCause2();
  const Policy stop;
  EXPECT_EQ(EvaluatePolicy(cc, stop).value, 0.0);
  EXPECT_EQ(PolicyPickProbabilities(cc, stop), FractionalPoint::Zeros(2));
  EXPECT_EQ(stop.Depth(), 0);
}

TEST(PolicyTest, DepthOnePick) {
  const Instance cc = CommonCause2();
  const Policy pick = Policy::Pick(1, 2, {{0, Policy()}, {1, Policy()}});
  EXPECT_DOUBLE_EQ(EvaluatePolicy(cc, pick).value, ExpectedSetValue(cc, 0b10));
  EXPECT_EQ(PolicyPickProbabilities(cc, pick), FractionalPoint({0.0, 1.0}));
  EXPECT_EQ(pick.Depth(), 1);
  const PolicyValue v = EvaluatePolicy(cc, pick);
  ASSERT_EQ(v.per_realization.size(), 2u);
  EXPECT_EQ(v.per_realization[0].picked, 0b10u);
}

TEST(PolicyTest, MissingBranchAndRepeats) {
  gen::Rng rng(70);
  const Instance inst = gen::MakeInstance(gen::RandomProduct(rng, 2, 2),
                                          gen::RandomCoverage(rng, 2, 2));
  const Policy partial = Policy::Pick(0, 2, {{0, Policy()}});
  bool reachable = inst.distribution().ObservationProbability({1, kUnobserved}) > 0;
  if (reachable) {
    try {
      EvaluatePolicy(inst, partial);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kPolicy);
    }
  }
  const Policy twice =
      Policy::Pick(0, 2, {{0, Policy::Pick(0, 2, {})}, {1, Policy()}});
  EXPECT_THROW(twice.Walk({0, 0}), Error);
}

TEST(OptimalAdaptiveTest, MatchesDecisionTreeEnumeration) {
  gen::Rng rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = gen::Uniform(rng, 1, 3);
    const int k = gen::Uniform(rng, 1, 2);
    const Instance inst = gen::RandomInstance(rng, m, k);
    const Constraint c = AnyConstraint(rng, m, trial);
    const AdaptiveSolution best = OptimalAdaptive(inst, c);
    EXPECT_NEAR(best.value, oracle::Adaptive(inst, c), 1e-12) << "trial " << trial;
    EXPECT_NEAR(EvaluatePolicy(inst, best.policy).value, best.value, 1e-12);
    EXPECT_NEAR(oracle::PolicyValue(inst, best.policy), best.value, 1e-12);
    EXPECT_TRUE(IsFeasiblePolicy(c, best.policy));
    const NonadaptiveSolution fixed = BestNonadaptive(inst, c);
    EXPECT_NEAR(fixed.value, oracle::Nonadaptive(inst, c), 1e-12);
    EXPECT_TRUE(oracle::Feasible(c, fixed.set));
    EXPECT_GE(best.value, fixed.value - 1e-12);
  }
}

TEST(OptimalAdaptiveTest, CommonCause2) {
  const Instance cc = CommonCause2();
  const Constraint c = Constraint::Uniform(2, 1);
  const AdaptiveSolution best = OptimalAdaptive(cc, c);
  EXPECT_DOUBLE_EQ(best.value, 1.5);
  EXPECT_DOUBLE_EQ(best.value, oracle::Adaptive(cc, c));
  // Ties go to the lowest item index.
  EXPECT_EQ(best.policy.root().item, 0);
  const NonadaptiveSolution fixed = BestNonadaptive(cc, c);
  EXPECT_EQ(fixed.set, 0b01u);
  EXPECT_DOUBLE_EQ(fixed.value, 1.5);
  const AdaptiveSolution both = OptimalAdaptive(cc, Constraint::Uniform(2, 2));
  EXPECT_DOUBLE_EQ(both.value, 2.5);
}

TEST(OptimalAdaptiveTest, SingleItemAndModular) {
  gen::Rng rng(72);
  const Instance one = gen::RandomInstance(rng, 1, 3);
  EXPECT_DOUBLE_EQ(OptimalAdaptive(one, Constraint::Uniform(1, 1)).value,
                   ExpectedSetValue(one, 1));

  ProductSpec spec;
  spec.num_items = 4;
  spec.seed = 8;
  spec.modular = true;
  const Instance modular = GenerateProduct(spec);
  std::vector<double> singles;
  for (int e = 0; e < 4; ++e) singles.push_back(ExpectedSetValue(modular, ItemMask{1} << e));
  std::sort(singles.rbegin(), singles.rend());
  const Constraint rank2 = Constraint::Uniform(4, 2);
  EXPECT_NEAR(OptimalAdaptive(modular, rank2).value, singles[0] + singles[1], 1e-12);
  EXPECT_NEAR(BestNonadaptive(modular, rank2).value, singles[0] + singles[1], 1e-12);
}

TEST(OptimalAdaptiveTest, SequenceFamilyForcesOrder) {
  const Instance cc = CommonCause2();
  const Constraint seq = Constraint::ExplicitSequences(2, {{}, {1}, {1, 0}});
  const AdaptiveSolution best = OptimalAdaptive(cc, seq);
  EXPECT_EQ(best.policy.root().item, 1);
  EXPECT_DOUBLE_EQ(best.value, 2.5);
  EXPECT_TRUE(IsFeasiblePolicy(seq, best.policy));
  EXPECT_FALSE(IsFeasiblePolicy(seq, Policy::Pick(0, 2, {{0, Policy()}, {1, Policy()}})));
}

TEST(OptimalAdaptiveTest, Caps) {
  gen::Rng rng(73);
  const Instance big = gen::RandomInstance(rng, 6, 2);
  try {
    OptimalAdaptive(big, Constraint::Uniform(6, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapacity);
  }
  OracleOptions wide;
  wide.max_items = 6;
  EXPECT_NO_THROW(OptimalAdaptive(big, Constraint::Uniform(6, 1), wide));
  OracleOptions narrow;
  narrow.max_support = 1;
  const Instance cc = CommonCause2();
  EXPECT_THROW(OptimalAdaptive(cc, Constraint::Uniform(2, 1), narrow), Error);
}

TEST(VirtualTest, MatchesDoubleEnumeration) {
  gen::Rng rng(74);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = gen::Uniform(rng, 1, 3);
    const Instance inst = gen::RandomInstance(rng, m, 2);
    const Constraint c = gen::RandomConstraint(rng, m, trial % 2);
    const AdaptiveSolution best = OptimalAdaptive(inst, c);
    const double virt = VirtualNonadaptiveValue(inst, c, best.policy);
    EXPECT_NEAR(virt, oracle::Virtual(inst, best.policy), 1e-12);
    const double gamma = Gamma(inst).clamped_double();
    EXPECT_GE(virt, gamma / (1.0 + gamma) * best.value - 1e-9) << "trial " << trial;
    EXPECT_LE(virt, BestNonadaptive(inst, c).value + 1e-12);
  }
}

TEST(VirtualTest, SpecialCases) {
  gen::Rng rng(75);
  // Independent items, depth one.
  const Instance prod = gen::RandomProductInstance(rng, 3, 2);
  const Policy pick = Policy::Pick(2, 2, {{0, Policy()}, {1, Policy()}});
  const Constraint rank1 = Constraint::Uniform(3, 1);
  EXPECT_NEAR(VirtualNonadaptiveValue(prod, rank1, pick),
              EvaluatePolicy(prod, pick).value, 1e-12);
  // Single support point.
  const Instance fixed = gen::MakeInstance(
      JointDistribution(2, 2, {{1, 0}}, {mpq_class(1)}), gen::RandomCoverage(rng, 2, 2));
  const AdaptiveSolution best = OptimalAdaptive(fixed, Constraint::Uniform(2, 2));
  EXPECT_EQ(VirtualNonadaptiveValue(fixed, Constraint::Uniform(2, 2), best.policy),
            best.value);
  // Infeasible policy.
  const Policy two = Policy::Pick(0, 2, {{0, Policy::Pick(1, 2, {{0, Policy()}, {1, Policy()}})},
                                        {1, Policy()}});
  EXPECT_THROW(VirtualNonadaptiveValue(CommonCause2(), Constraint::Uniform(2, 1), two),
               Error);
}

TEST(VirtualTest, ProductInstancesReachHalf) {
  gen::Rng rng(76);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = gen::Uniform(rng, 1, 4);
    const Instance inst = gen::RandomProductInstance(rng, m, gen::Uniform(rng, 1, m == 4 ? 2 : 3));
    const Constraint c = Constraint::Uniform(m, gen::Uniform(rng, 1, m));
    const AdaptiveSolution best = OptimalAdaptive(inst, c);
    EXPECT_GE(VirtualNonadaptiveValue(inst, c, best.policy), 0.5 * best.value - 1e-9);
  }
}

TEST(PickProbabilitiesTest, MatchPerRealizationSetsAndLieInPolytope) {
  gen::Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = gen::Uniform(rng, 1, 4);
    const Instance inst = gen::RandomInstance(rng, m, 2);
    const Constraint c = gen::RandomConstraint(rng, m, trial % 3);
    const AdaptiveSolution best = OptimalAdaptive(inst, c);
    const FractionalPoint y = PolicyPickProbabilities(inst, best.policy);
    const auto& d = inst.distribution();
    for (int e = 0; e < m; ++e) {
      double p = 0.0;
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (Contains(oracle::Picked(best.policy, d.realizations()[i]), e)) {
          p += d.probabilities()[i].get_d();
        }
      }
      EXPECT_NEAR(y[e], p, 1e-12);
    }
    EXPECT_TRUE(InPolytope(c, y, 1e-9));
  }
}

TEST(UpperBoundCheckTest, HoldsOnRandomPoints) {
  gen::Rng rng(78);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = gen::Uniform(rng, 1, 4);
    const Instance inst = gen::RandomInstance(rng, m, 2);
    const Constraint c = gen::RandomConstraint(rng, m, trial % 4);
    const AdaptiveSolution best = OptimalAdaptive(inst, c);
    const double kappa = Kappa(inst).clamped_double();
    if (kappa == 0.0) continue;
    const MultilinearOracle oracle(inst);
    for (int p = 0; p < 10; ++p) {
      const FractionalPoint x(p == 0 ? std::vector<double>(m, 0.0)
                                     : gen::RandomPoint(rng, m));
      const UpperBoundCheck check = OptimalUpperBoundCheck(oracle, best.policy, x, kappa);
      EXPECT_TRUE(check.holds) << "trial " << trial << " lhs " << check.lhs
                               << " rhs " << check.rhs;
      EXPECT_DOUBLE_EQ(check.lhs, best.value);
    }
  }
}

TEST(UpperBoundCheckTest, CommonCause2SweepAndErrors) {
  const Instance cc = CommonCause2();
  const AdaptiveSolution best = OptimalAdaptive(cc, Constraint::Uniform(2, 1));
  gen::Rng rng(79);
  for (int p = 0; p < 50; ++p) {
    EXPECT_TRUE(OptimalUpperBoundCheck(cc, best.policy,
                                       FractionalPoint(gen::RandomPoint(rng, 2)),
                                       2.0 / 3.0)
                    .holds);
  }
  // F(1, 1) = 2.5 >= f(pi*) makes the check trivial.
  EXPECT_TRUE(OptimalUpperBoundCheck(cc, best.policy, FractionalPoint({1.0, 1.0}), 1.0).holds);
  try {
    OptimalUpperBoundCheck(cc, best.policy, FractionalPoint({0.0, 0.0}), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateBound);
  }
}

}  // namespace
}  // namespace stochsub
