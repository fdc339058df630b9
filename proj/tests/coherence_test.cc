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

#include "hwalks/coherence.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "hwalks/ncseq.h"
#include "test_support.h"

namespace hwalks {
namespace {

using ::hwalks::testing::Grid;
using ::hwalks::testing::O;

Club C(std::string_view s) { return Club::Parse(s); }

bool HasViolationAt(const CoherenceReport& r, const Ordinal& a) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const CoherenceViolation& v) { return v.alpha == a; });
}

TEST(CoherenceTest, OrderMinimalHasEmptyX) {
  for (int n = 1; n <= 3; ++n) {
    const Ordinal lambda = n == 3 ? O("w^3") : O("w^2");
    CoherenceReport r = CheckCoherence(*BuildOrderMinimal(n, lambda), lambda);
    EXPECT_TRUE(r.ok()) << "n=" << n << " " << r.violations.front().detail;
    EXPECT_TRUE(r.x_set.empty()) << "n=" << n;
  }
}

TEST(CoherenceTest, MaximalIsCoherentWithEveryLimitInX) {
  CoherenceReport r = CheckCoherence(*BuildMaximal(2, O("w^2")), O("w^2"));
  EXPECT_TRUE(r.ok());
  // The domain has infinitely many limits, so the scan runs on the grid and
  // only limits well inside it show up in X.
  EXPECT_FALSE(r.exhaustive);
  for (const Ordinal& a : Grid(2, 2)) {
    if (!a.IsLimit()) continue;
    EXPECT_TRUE(std::binary_search(r.x_set.begin(), r.x_set.end(), a)) << a;
  }
  for (const Ordinal& a : r.x_set) EXPECT_TRUE(a.IsLimit());
}

TEST(CoherenceTest, MaximalOnSmallWindowIsExhaustive) {
  CoherenceReport r = CheckCoherence(*BuildMaximal(2, O("w*6")), O("w*6"));
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.exhaustive);
  // Full-length clubs are interval(b) for limits b < g < w*6.
  EXPECT_EQ(r.x_set, (std::vector<Ordinal>{O("w"), O("w*2"), O("w*3")}));
}

TEST(CoherenceTest, MaximalThreeSequenceIsCoherent) {
  CoherenceReport r = CheckCoherence(*BuildMaximal(3, O("w^3")), O("w^3"));
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.indices_scanned, 100u);
}

TEST(CoherenceTest, MutatedClubAtOmegaIsCaught) {
  auto base = BuildMaximal(2, O("w^2"));
  OverrideSeq mutated(base, {{{O("w")}, C("interval(1,w)")}});
  CoherenceReport r = CheckCoherence(mutated, O("w^2"));
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(HasViolationAt(r, O("w")));
}

TEST(CoherenceTest, FsShapedClubAtOmegaTimesTwoIsCaught) {
  auto base = BuildMaximal(2, O("w^2"));
  OverrideSeq mutated(base, {{{O("w*2")}, C("fs(w*2)")}});
  CoherenceReport r = CheckCoherence(mutated, O("w^2"));
  EXPECT_TRUE(HasViolationAt(r, O("w*2")));
}

TEST(CoherenceTest, StructuralProblemsAreReported) {
  auto base = BuildMaximal(1, O("w^2"));
  OverrideSeq bad(base, {{{O("w*2")}, C("finite[3,w+1]")}});
  CoherenceReport r = CheckCoherence(bad, O("w^2"));
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations.front().kind, "structure");
}

TEST(CoherenceTest, MissingClubIsReported) {
  ExplicitSeq seq(1, C("interval(w*2+1)"), {{{O("w")}, C("interval(w)")}});
  CoherenceReport r = CheckCoherence(seq, O("w*2+1"));
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations.front().kind, "missing");
}

TEST(CoherenceTest, RestrictionOfCoherentSequenceIsCoherent) {
  NCSeqPtr seq = BuildMaximal(3, O("w^3"));
  for (const char* d : {"w^2", "w^2*2+w", "w*4", "w+1"}) {
    NCSeqPtr r = Restrict(seq, O(d));
    EXPECT_TRUE(CheckCoherence(*r, r->domain().StrictSup()).ok()) << d;
  }
}

TEST(WeakWitnessTest, MaximalIsTrivializedByTheFullInterval) {
  auto seq = BuildMaximal(2, O("w^2"));
  WeakWitnessResult r =
      CheckWeakNontrivialityWitness(*seq, C("interval(w^2)"), O("w^2"));
  EXPECT_FALSE(r.refuted);
}

TEST(WeakWitnessTest, OrderMinimalRefutesAtOmegaTimesTwo) {
  auto seq = BuildOrderMinimal(2, O("w^2"));
  WeakWitnessResult r =
      CheckWeakNontrivialityWitness(*seq, C("interval(w^2)"), O("w^2"));
  ASSERT_TRUE(r.refuted);
  EXPECT_EQ(r.alpha, O("w*2"));
}

TEST(WeakWitnessTest, NoAccumulationPointsIsVacuous) {
  auto seq = BuildOrderMinimal(2, O("w^2"));
  WeakWitnessResult r =
      CheckWeakNontrivialityWitness(*seq, C("finite[1,5,w+2]"), O("w^2"));
  EXPECT_FALSE(r.refuted);
  EXPECT_TRUE(r.exhaustive);
}

TEST(WeakWitnessTest, CandidateMustLieInDomain) {
  auto seq = BuildMaximal(1, O("w*2"));
  EXPECT_THROW(CheckWeakNontrivialityWitness(*seq, C("interval(w*3)"), O("w*2")),
               DomainError);
}

}  // namespace
}  // namespace hwalks
