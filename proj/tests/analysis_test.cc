// Copyright 2026 The hwalks Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hwalks/analysis.h"

#include <gtest/gtest.h>

#include <map>
#include <string>

#include "hwalks/builders.h"
#include "test_support.h"

namespace hwalks {
namespace {

using ::hwalks::testing::O;

std::string Summarize(const SuiteReport& r) {
  std::map<std::string, std::pair<int, int>> counts;
  std::string firsts;
  for (const LemmaOutcome& o : r.outcomes) {
    auto& c = counts[o.lemma];
    (o.pass ? c.first : c.second)++;
    if (!o.pass && c.second == 1) {
      firsts += o.lemma + " " + FormatTuple(o.instance) + ": " +
                o.detail.substr(0, 600) + "\n";
    }
  }
  std::string out;
  for (const auto& [name, c] : counts) {
    out += name + " pass=" + std::to_string(c.first) +
           " fail=" + std::to_string(c.second) + "\n";
  }
  return out + firsts;
}

SamplingPlan Plan(const NCSeq& seq, std::size_t cap) {
  SamplingPlan plan = DefaultPlan(seq);
  plan.max_instances = cap;
  return plan;
}

TEST(SuiteTest, MaximalTwoOnOmegaSquaredPasses) {
  auto seq = BuildMaximal(2, O("w^2"));
  SuiteReport r = RunLemmaSuite(*seq, Plan(*seq, 60));
  EXPECT_TRUE(r.ok()) << Summarize(r);
}

TEST(SuiteTest, MinimalTwoOnOmegaSquaredPasses) {
  auto seq = BuildOrderMinimal(2, O("w^2"));
  SuiteReport r = RunLemmaSuite(*seq, Plan(*seq, 60));
  EXPECT_TRUE(r.ok()) << Summarize(r);
}

TEST(SuiteTest, MaximalThreeOnOmegaCubedPasses) {
  auto seq = BuildMaximal(3, O("w^3"));
  SuiteReport r = RunLemmaSuite(*seq, Plan(*seq, 40));
  EXPECT_TRUE(r.ok()) << Summarize(r);
}

TEST(SuiteTest, MinimalThreeOnOmegaCubedPasses) {
  auto seq = BuildOrderMinimal(3, O("w^3"));
  SuiteReport r = RunLemmaSuite(*seq, Plan(*seq, 40));
  EXPECT_TRUE(r.ok()) << Summarize(r);
}

TEST(SuiteTest, OneDimensionalUniversesPass) {
  for (auto seq : {BuildMaximal(1, O("w^2")), BuildOrderMinimal(1, O("w^2"))}) {
    SuiteReport r = RunLemmaSuite(*seq, Plan(*seq, 60));
    EXPECT_TRUE(r.ok()) << seq->kind() << "\n" << Summarize(r);
  }
}

TEST(SemiConstantTest, ConstantAndInjective) {
  const Ordinal alpha = O("w*2");
  StabilizationOptions opts{0, 12, 8};
  auto constant = [](const Ordinal&) { return FreeAbelian::Basis({}, 3); };
  StabilizationReport c = CheckSemiConstant(constant, alpha, opts, Ordinal());
  EXPECT_TRUE(c.stabilized());
  EXPECT_EQ(c.samples.size(), 12u);
  EXPECT_EQ(*c.witness, O("w"));  // fs(w*2)(0), already above xi* = 0
  EXPECT_TRUE(CheckSemiConstant(constant, alpha, opts).stabilized());

  auto injective = [](const Ordinal& xi) { return FreeAbelian::Basis({xi}); };
  EXPECT_FALSE(CheckSemiConstant(injective, alpha, opts).stabilized());
  EXPECT_FALSE(CheckSemiConstant(injective, alpha, opts, Ordinal()).stabilized());
  EXPECT_THROW(CheckSemiConstant(constant, O("w+1"), opts), DomainError);
}

TEST(SemiConstantTest, ThresholdLeavesTooFewSamples) {
  auto constant = [](const Ordinal&) { return FreeAbelian(); };
  StabilizationOptions opts{0, 10, 8};
  EXPECT_FALSE(CheckSemiConstant(constant, O("w"), opts, O("5")).stabilized());
  EXPECT_TRUE(CheckSemiConstant(constant, O("w"), opts, O("1")).stabilized());
}

TEST(XiStarTest, Examples) {
  auto fs2 = BuildOrderMinimal(2, O("w^2"));
  SamplingPlan plan = DefaultPlan(*fs2);
  for (const Tuple& in : SampleInputs(*fs2, 2, plan, 50, true)) {
    XiStar xs = ComputeXiStar(*fs2, in, plan);
    EXPECT_TRUE(xs.bad.empty());
    EXPECT_TRUE(xs.complete);
    EXPECT_EQ(xs.value, LowerTraceBelowAlpha(Walk(*fs2, 1, in)));
  }

  auto max2 = BuildMaximal(2, O("w^2"));
  const Tuple in = ParseTuple("w,w*2,w*3");
  XiStar xs = ComputeXiStar(*max2, in, plan);
  ASSERT_EQ(xs.bad.size(), 1u);
  ASSERT_TRUE(xs.complete);
  // Certified: the clauses hold at xi* and at min_confirm samples above it.
  WalkTree t = Walk(*max2, 1, in);
  std::size_t checked = 0;
  for (const Ordinal& xi : FsSamples(O("w"), 0, plan.fs_budget)) {
    if (xi < *xs.bad[0].xi) continue;
    EXPECT_EQ(BadNodeClausesAt(*max2, t, 0, xi), "") << xi;
    ++checked;
  }
  EXPECT_GE(checked, plan.min_confirm + 1);
  EXPECT_THROW(ComputeXiStar(*max2, ParseTuple("w+1,w*2,w*3"), plan), DomainError);
}

TEST(FamilyCoherenceTest, Examples) {
  auto max2 = BuildMaximal(2, O("w^2"));
  SamplingPlan plan = DefaultPlan(*max2);
  StabilizationReport r =
      VerifyFamilyCoherence(*max2, ParseTuple("w,w*2,w*3"), O("w"), plan);
  EXPECT_TRUE(r.stabilized());
  ASSERT_TRUE(r.xi_star.has_value());
  for (const auto& [xi, v] : r.samples) {
    EXPECT_GT(xi, *r.xi_star);
    EXPECT_EQ(v, r.samples.front().second);
  }

  auto max1 = BuildMaximal(1, O("w^2"));
  EXPECT_TRUE(VerifyFamilyCoherence(*max1, ParseTuple("w*2,w*3+1"), O("w*2"),
                                    DefaultPlan(*max1))
                  .stabilized());
  EXPECT_THROW(VerifyFamilyCoherence(*max2, ParseTuple("w,w*2"), O("w"), plan),
               DomainError);
  EXPECT_THROW(VerifyFamilyCoherence(*max2, ParseTuple("w,w*2,w*3"), O("w*2"), plan),
               DomainError);
}

TEST(FamilyCoherenceTest, LargerBudgetKeepsTheVerdict) {
  auto max2 = BuildMaximal(2, O("w^2"));
  SamplingPlan plan = DefaultPlan(*max2);
  for (const Tuple& in : SampleInputs(*max2, 3, plan, 20, true)) {
    for (std::size_t budget : {8u, 12u, 20u}) {
      StabilizationReport r = VerifyFamilyCoherence(
          *max2, Tail(in), in.front(), plan, {0, budget, 8}, false);
      EXPECT_TRUE(r.stabilized()) << FormatTuple(in) << " budget " << budget;
    }
  }
}

TEST(FamilyCoherenceTest, IncoherentSequenceIsRejected) {
  auto base = BuildMaximal(2, O("w^2"));
  Mutation m = MutateOneClub(base, O("w^2"), 0);
  EXPECT_THROW(VerifyFamilyCoherence(*m.seq, ParseTuple("w,w*2,w*3"), O("w"),
                                     DefaultPlan(*m.seq)),
               DomainError);
}

TEST(SuiteTest, FilterAndReportFormat) {
  auto seq = BuildMaximal(2, O("w^2"));
  SuiteReport r = RunLemmaSuite(*seq, Plan(*seq, 5), {"restart"});
  ASSERT_EQ(r.outcomes.size(), 5u);
  for (const LemmaOutcome& o : r.outcomes) EXPECT_EQ(o.lemma, "restart");
  std::string text = r.ToText();
  EXPECT_EQ(text.rfind("LEMMA restart instance=(", 0), 0u);
  EXPECT_NE(text.find(") verdict=pass\n"), std::string::npos);
  EXPECT_NE(r.ToJson().find("\"restart\""), std::string::npos);
  EXPECT_THROW(RunLemmaSuite(*seq, Plan(*seq, 5), {"no-such-lemma"}), DomainError);
}

TEST(SuiteTest, ReportsAreDeterministic) {
  auto seq = BuildMaximal(2, O("w^2"));
  EXPECT_EQ(RunLemmaSuite(*seq, Plan(*seq, 20)).ToText(),
            RunLemmaSuite(*seq, Plan(*seq, 20)).ToText());
}

TEST(SuiteTest, MutantFailsFamilyCoherence) {
  auto base = BuildMaximal(2, O("w^2"));
  Mutation m = MutateOneClub(base, O("w^2"), 0);
  SuiteReport r = RunLemmaSuite(*m.seq, Plan(*m.seq, 20), {"family-coherence"});
  EXPECT_FALSE(r.ok());
  EXPECT_NE(r.ToJson().find("not coherent"), std::string::npos);
}

TEST(SamplingTest, InputsAreWellFormedAndCapped) {
  auto seq = BuildMaximal(2, O("w^2"));
  SamplingPlan plan = DefaultPlan(*seq);
  EXPECT_EQ(plan.universe.size(), 36u);
  std::vector<Tuple> in = SampleInputs(*seq, 2, plan, 100);
  EXPECT_EQ(in.size(), 100u);
  for (const Tuple& t : in) EXPECT_TRUE(IsAlphaTensor(t));
  for (const Tuple& t : SampleInputs(*seq, 2, plan, 100, true)) {
    EXPECT_TRUE(t.front().IsLimit());
  }
  EXPECT_EQ(SampleInputs(*seq, 2, plan, 100), in);
  SamplingPlan other = plan;
  other.seed = 1;
  EXPECT_NE(SampleInputs(*seq, 2, other, 100), in);
  EXPECT_EQ(DefaultUniverse(O("w^3")).size(), 39u);
}

TEST(ProbeTest, Examples) {
  auto fs3 = BuildOrderMinimal(3, O("w^3"));
  std::vector<Ordinal> a;
  for (std::uint64_t k = 1; k <= 9; ++k) a.push_back(Ordinal::OmegaPow(2, k));
  EXPECT_TRUE(UnboundednessProbe(*fs3, a, 0).has_value());
  EXPECT_FALSE(UnboundednessProbe(*fs3, {O("w")}, 0).has_value());
  EXPECT_TRUE(UnboundednessProbe(*fs3, {O("w"), O("w+1")}, -1).has_value());
  EXPECT_FALSE(UnboundednessProbe(*fs3, a, 1000).has_value());
}

}  // namespace
}  // namespace hwalks
