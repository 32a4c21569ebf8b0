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

#include "stochsub/harness.h"

#include <string>

#include "gtest/gtest.h"
#include "oracles.h"
#include "stochsub/errors.h"
#include "stochsub/independence.h"
#include "stochsub/instance_io.h"

namespace stochsub {
namespace {

const std::string kSuitePath =
    std::string(STOCHSUB_SOURCE_DIR) + "/scenarios/suite.json";

ErrorCode SuiteError(const std::string& text) {
  try {
    ParseSuite(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorCode::kInternal;
}

TEST(GenerateProductTest, IndependentMarginals) {
  ProductSpec one;
  one.num_items = 1;
  one.states_per_item = 3;
  one.marginals = {{mpq_class(1, 6), mpq_class(1, 3), mpq_class(1, 2)}};
  const Instance single = GenerateProduct(one);
  EXPECT_EQ(single.distribution().probabilities(),
            (std::vector<mpq_class>{mpq_class(1, 6), mpq_class(1, 3), mpq_class(1, 2)}));

  ProductSpec coins;
  coins.marginals = {{mpq_class(1, 2), mpq_class(1, 2)},
                     {mpq_class(1, 2), mpq_class(1, 2)}};
  const Instance two = GenerateProduct(coins);
  ASSERT_EQ(two.distribution().size(), 4u);
  for (const auto& p : two.distribution().probabilities()) {
    EXPECT_EQ(p, mpq_class(1, 4));
  }

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ProductSpec spec;
    spec.num_items = 1 + static_cast<int>(seed % 4);
    spec.states_per_item = 1 + static_cast<int>(seed % 3);
    spec.seed = seed;
    const Instance inst = GenerateProduct(spec);
    EXPECT_EQ(Kappa(inst).value, 1) << "seed " << seed;
    EXPECT_EQ(Gamma(inst).value, 1) << "seed " << seed;
    EXPECT_EQ(GenerateProduct(spec), inst);
  }

  ProductSpec huge;
  huge.num_items = 13;
  try {
    GenerateProduct(huge);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapacity);
  }
  ProductSpec bad = coins;
  bad.marginals[1][0] = mpq_class(1, 3);
  EXPECT_THROW(GenerateProduct(bad), Error);
}

TEST(GenerateCommonCauseTest, SupportAndDeterminism) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CommonCauseSpec spec;
    spec.num_items = 2 + static_cast<int>(seed % 3);
    spec.worlds = 1 + static_cast<int>(seed % 5);
    spec.noise = seed % 2 == 0 ? 0.0 : 0.3;
    spec.seed = seed;
    const Instance inst = GenerateCommonCause(spec);
    EXPECT_LE(inst.distribution().size(), static_cast<std::size_t>(spec.worlds));
    EXPECT_EQ(GenerateCommonCause(spec), inst);
    EXPECT_TRUE(ValidateUtility(inst.utility()).submodular);
  }
  CommonCauseSpec single;
  single.num_items = 3;
  single.worlds = 1;
  single.seed = 5;
  const Instance fixed = GenerateCommonCause(single);
  EXPECT_EQ(Kappa(fixed).value, 1);
  EXPECT_EQ(Gamma(fixed).value, 1);
  CommonCauseSpec none;
  none.worlds = 0;
  EXPECT_THROW(GenerateCommonCause(none), Error);
}

TEST(CommonCause2Test, MatchesOracles) {
  const Instance cc = CommonCause2();
  EXPECT_EQ(cc.distribution().size(), 2u);
  EXPECT_EQ(Kappa(cc).value, oracle::Kappa(cc, false));
  EXPECT_EQ(Gamma(cc).value, oracle::Gamma(cc));
  EXPECT_EQ(Kappa(cc).value, mpq_class(2, 3));
}

TEST(SuiteTest, ParseErrors) {
  EXPECT_EQ(SuiteError("{"), ErrorCode::kInput);
  EXPECT_EQ(SuiteError(R"({"scenarios": 3})"), ErrorCode::kInput);
  EXPECT_EQ(SuiteError(R"({"scenarios": [{"name": "x"}]})"), ErrorCode::kInput);
  const std::string gen = R"("instance": {"generator": "product", "m": 2})";
  EXPECT_EQ(SuiteError(R"({"scenarios": [{"name": "x", )" + gen +
                       R"(, "bogus": 1}]})"),
            ErrorCode::kInput);
  EXPECT_EQ(SuiteError(R"({"scenarios": [{"name": "x", )" + gen +
                       R"(}, {"name": "x", )" + gen + "}]}"),
            ErrorCode::kInput);
  EXPECT_EQ(SuiteError(R"({"scenarios": [{"name": "x", )" + gen +
                       R"(, "kind": "plot"}]})"),
            ErrorCode::kInput);
  EXPECT_EQ(SuiteError(R"({"scenarios": [{"name": "x", )" + gen +
                       R"(, "greedy": {"delta": 0}}]})"),
            ErrorCode::kInput);
}

TEST(SuiteTest, DefaultsMerge) {
  const Suite suite = ParseSuite(R"({
    "defaults": {"greedy": {"delta": 0.25}, "rounding_seeds": 10},
    "scenarios": [
      {"name": "a", "instance": {"generator": "common-cause2"}},
      {"name": "b", "instance": {"generator": "common-cause2"}, "rounding_seeds": 3}
    ]})");
  ASSERT_EQ(suite.scenarios.size(), 2u);
  EXPECT_EQ(suite.scenarios[0].greedy.delta, 0.25);
  EXPECT_EQ(suite.scenarios[0].rounding_seeds, 10);
  EXPECT_EQ(suite.scenarios[1].rounding_seeds, 3);
  EXPECT_EQ(BuildInstance(suite.scenarios[0]), CommonCause2());
}

Scenario Generated(const std::string& name, const std::string& generator,
                   const std::string& constraint) {
  Scenario sc;
  sc.name = name;
  sc.generator = io::Json::parse(generator);
  sc.constraint = io::Json::parse(constraint);
  sc.rounding_seeds = 2000;
  sc.sweep_points = 20;
  sc.seed = 3;
  return sc;
}

TEST(PipelineTest, ProductModularRankOne) {
  const ReportRow row = RunPipeline(Generated(
      "modular", R"({"generator": "product", "m": 3, "seed": 4, "modular": true})",
      R"({"kind": "uniform", "k": 1})"));
  EXPECT_TRUE(row.error.empty()) << row.error;
  EXPECT_TRUE(row.AllFlagsHold());
  EXPECT_EQ(row.kappa_raw, mpq_class(1));
  ASSERT_TRUE(row.rounded_mean.has_value());
  // A modular rank-one objective is maximized by the best single item, which
  // greedy finds exactly.
  EXPECT_NEAR(*row.rounded_mean / *row.adaptive_value, 1.0, 1e-9);
  EXPECT_GE(*row.rounded_mean / *row.adaptive_value, *row.ratio_bound);
}

TEST(PipelineTest, CommonCause2RatioCheck) {
  Scenario sc;
  sc.name = "cc2";
  sc.instance_path = std::string(STOCHSUB_SOURCE_DIR) + "/data/common_cause2.json";
  sc.rounding_seeds = 1000;
  const ReportRow row = RunPipeline(sc);
  EXPECT_TRUE(row.error.empty()) << row.error;
  EXPECT_TRUE(row.AllFlagsHold());
  EXPECT_EQ(row.kappa_clamped, mpq_class(2, 3));
  EXPECT_DOUBLE_EQ(*row.adaptive_value, 1.5);
  EXPECT_TRUE(*row.inner_vacuous);
}

TEST(PipelineTest, DeterministicScenario) {
  const ReportRow row = RunPipeline(Generated(
      "fixed", R"({"generator": "common-cause", "m": 3, "worlds": 1, "seed": 9})",
      R"({"kind": "uniform", "k": 2})"));
  EXPECT_TRUE(row.AllFlagsHold()) << row.error;
  EXPECT_NEAR(*row.adaptive_value, *row.nonadaptive_value, 1e-12);
  EXPECT_NEAR(*row.rounded_mean, *row.adaptive_value, 1e-9);
}

TEST(PipelineTest, ErrorsAreRecordedInRow) {
  Scenario sc = Generated("big", R"({"generator": "product", "m": 7})",
                          R"({"kind": "uniform", "k": 2})");
  const ReportRow row = RunPipeline(sc);
  EXPECT_NE(row.error.find("capacity"), std::string::npos) << row.error;
  EXPECT_FALSE(row.AllFlagsHold());
  Scenario missing = Generated("nc", R"({"generator": "common-cause2"})", "{}");
  missing.constraint.reset();
  EXPECT_FALSE(RunPipeline(missing).error.empty());
}

TEST(ReportTest, BundledSuiteIsGreenAndReproducible) {
  const Suite suite = LoadSuite(kSuitePath);
  ASSERT_GE(suite.scenarios.size(), 10u);
  const std::vector<ReportRow> rows = RunSuite(suite);
  for (const ReportRow& row : rows) {
    EXPECT_TRUE(row.AllFlagsHold()) << row.scenario << ": " << row.error;
  }
  PipelineOptions serial;
  serial.execution = Execution::kSerial;
  const std::vector<ReportRow> again = RunSuite(suite, serial);
  EXPECT_EQ(ReportToTsv(rows, false), ReportToTsv(again, false));
  EXPECT_EQ(ReportToJson(rows, false), ReportToJson(again, false));

  const std::string tsv = ReportToTsv(rows, false);
  EXPECT_EQ(tsv.rfind("scenario\tkind\t", 0), 0u);
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'),
            static_cast<std::ptrdiff_t>(rows.size() + 1));
  EXPECT_EQ(tsv.find("runtime"), std::string::npos);
  EXPECT_NE(ReportToTsv(rows, true).find("runtime"), std::string::npos);
  const io::Json doc = io::Json::parse(ReportToJson(rows, false));
  EXPECT_EQ(doc["scenarios"].size(), rows.size());
}

TEST(ReportTest, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 12.714285714285715}) {
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
}

}  // namespace
}  // namespace stochsub
