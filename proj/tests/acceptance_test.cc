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

// Desk-scale acceptance gate. Each criterion records one line; the whole
// table is printed when the binary exits.

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hwalks/analysis.h"
#include "hwalks/builders.h"
#include "hwalks/characteristics.h"
#include "hwalks/coherence.h"
#include "hwalks/ncseq.h"
#include "hwalks/ordinal.h"
#include "hwalks/tuple.h"
#include "hwalks/walks.h"
#include "test_support.h"

namespace hwalks {
namespace {

using ::hwalks::testing::O;

struct Line {
  bool pass = false;
  std::string name;
  std::string detail;
  double seconds = 0;
  double limit = 0;
};

std::map<int, Line>& Lines() {
  static std::map<int, Line> lines;
  return lines;
}

class Timer {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Records criterion `id` and fails the current test when it does not hold.
void Record(int id, const std::string& name, bool ok, const std::string& detail,
            const Timer& timer, double limit) {
  Line line{ok, name, detail, timer.Seconds(), limit};
  line.pass = ok && line.seconds < limit;
  Lines()[id] = line;
  EXPECT_TRUE(ok) << name << ": " << detail;
  EXPECT_LT(line.seconds, limit) << name << " exceeded its time limit";
}

class PrintTable : public ::testing::Environment {
 public:
  void TearDown() override {
    std::printf("\n");
    for (const auto& [id, l] : Lines()) {
      std::printf("CRITERION %2d %-22s %s  %.2fs/%.0fs  %s\n", id, l.name.c_str(),
                  l.pass ? "PASS" : "FAIL", l.seconds, l.limit, l.detail.c_str());
    }
    std::fflush(stdout);
  }
};

const auto* const kTable = ::testing::AddGlobalTestEnvironment(new PrintTable);

NCSeqPtr Builtin(bool maximal, int n, const char* lambda) {
  if (maximal) return BuildMaximal(n, O(lambda));
  return BuildOrderMinimal(n, O(lambda));
}

// The builtin universes: n = 1, 2 on w^2 and n = 3 on w^3.
struct Universe {
  std::string name;
  NCSeqPtr seq;
};

std::vector<Universe> Builtins(std::initializer_list<int> dims) {
  std::vector<Universe> out;
  for (bool maximal : {true, false}) {
    for (int n : dims) {
      const char* lambda = n == 3 ? "w^3" : "w^2";
      out.push_back({std::string(maximal ? "maximal" : "minimal-fs") + " n=" +
                         std::to_string(n),
                     Builtin(maximal, n, lambda)});
    }
  }
  return out;
}

struct Tally {
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void Add(const SuiteReport& r) {
    for (const LemmaOutcome& o : r.outcomes) {
      ++instances;
      if (o.pass) continue;
      if (failures++ == 0) {
        first_failure = o.lemma + " " + FormatTuple(o.instance) + ": " +
                        o.detail.substr(0, 200);
      }
    }
  }
  void Add(const Tally& other) {
    instances += other.instances;
    if (failures == 0) first_failure = other.first_failure;
    failures += other.failures;
  }
  std::string Summary() const {
    std::string s = std::to_string(instances) + " instances, " +
                    std::to_string(failures) + " failures";
    if (failures > 0) s += "; " + first_failure;
    return s;
  }
};

SuiteReport Suite(const NCSeq& seq, const std::set<std::string>& lemmas,
                  std::size_t cap = 300) {
  SamplingPlan plan = DefaultPlan(seq);
  plan.max_instances = cap;
  return RunLemmaSuite(seq, plan, lemmas);
}

// ---------------------------------------------------------------------------
// 1. Oracle on triples w^2*a + w*b + c, independent of the ordinal library.

using Cnf = std::tuple<int, int, int>;

Ordinal ToOrdinal(const Cnf& x) {
  const auto [a, b, c] = x;
  Ordinal::Terms terms;
  if (a > 0) terms.push_back(Term{2, static_cast<std::uint64_t>(a)});
  if (b > 0) terms.push_back(Term{1, static_cast<std::uint64_t>(b)});
  if (c > 0) terms.push_back(Term{0, static_cast<std::uint64_t>(c)});
  return Ordinal::FromTerms(terms);
}

// min(C_gamma \ beta) for beta < gamma.
Cnf OracleStep(bool maximal, const Cnf& beta, const Cnf& gamma) {
  const auto [a, b, c] = gamma;
  if (c > 0) return {a, b, c - 1};
  if (maximal) return beta;
  const auto [ba, bb, bc] = beta;
  if (b > 0) {  // fs(k) = w^2*a + w*(b-1) + k
    if (ba == a && bb == b - 1) return beta;
    return {a, b - 1, 0};
  }
  // fs(k) = w^2*(a-1) + w*k
  if (ba == a - 1) return {a - 1, bc == 0 ? bb : bb + 1, 0};
  return {a - 1, 0, 0};
}

std::int64_t ClassicalRho2(bool maximal, const Cnf& beta, Cnf gamma) {
  std::int64_t steps = 0;
  while (gamma != beta) {
    gamma = OracleStep(maximal, beta, gamma);
    ++steps;
  }
  return steps;
}

TEST(Acceptance, C01ClassicalEquivalence) {
  Timer timer;
  std::vector<Cnf> landmarks;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 5; ++b) {
      for (int c = 0; c < 10; ++c) landmarks.emplace_back(a, b, c);
    }
  }
  std::sort(landmarks.begin(), landmarks.end());
  std::size_t pairs = 0, mismatches = 0;
  std::string first;
  for (bool maximal : {true, false}) {
    NCSeqPtr seq = Builtin(maximal, 1, "w^3");
    for (std::size_t i = 0; i < landmarks.size(); ++i) {
      const Ordinal beta = ToOrdinal(landmarks[i]);
      for (std::size_t j = i; j < landmarks.size(); ++j) {
        ++pairs;
        const std::int64_t got = Rho2(*seq, 1, {beta, ToOrdinal(landmarks[j])});
        const std::int64_t want = ClassicalRho2(maximal, landmarks[i], landmarks[j]) + 1;
        if (got != want && mismatches++ == 0) {
          first = std::string(maximal ? "maximal" : "minimal-fs") + " (" +
                  beta.ToString() + "," + ToOrdinal(landmarks[j]).ToString() +
                  "): " + std::to_string(got) + " vs " + std::to_string(want);
        }
      }
    }
  }
  Record(1, "classical-rho2", mismatches == 0 && landmarks.size() == 150,
         std::to_string(landmarks.size()) + " landmarks, " + std::to_string(pairs) +
             " pairs in two universes, " + std::to_string(mismatches) + " mismatches" +
             (first.empty() ? "" : "; " + first),
         timer, 10);
}

// ---------------------------------------------------------------------------

TEST(Acceptance, C02ProjectionOfResh) {
  Timer timer;
  bool ok = true;
  std::ostringstream detail;
  for (const Universe& u : Builtins({1, 2, 3})) {
    SamplingPlan plan = DefaultPlan(*u.seq);
    const std::vector<Tuple> inputs =
        SampleInputs(*u.seq, static_cast<std::size_t>(u.seq->n()), plan, 500);
    std::size_t bad = 0;
    for (const Tuple& in : inputs) {
      if (Varpi(Resh(*u.seq, in)) != Integer(Rho2(*u.seq, 1, in))) ++bad;
    }
    ok = ok && inputs.size() >= 500 && bad == 0;
    detail << u.name << ":" << inputs.size() << "/" << bad << " ";
  }
  Record(2, "projection-of-resh", ok, detail.str() + "(tuples/mismatches)", timer, 30);
}

// Runs `lemmas` on each universe and requires `min_per_universe` instances
// in each with no failures.
void SuiteCriterion(int id, const std::string& name, const std::set<std::string>& lemmas,
                    const std::vector<Universe>& universes, std::size_t min_per_universe,
                    double limit) {
  Timer timer;
  bool ok = true;
  Tally total;
  std::ostringstream counts;
  for (const Universe& u : universes) {
    Tally t;
    t.Add(Suite(*u.seq, lemmas));
    total.Add(t);
    ok = ok && t.failures == 0 && t.instances >= min_per_universe;
    counts << u.name << ":" << t.instances << " ";
  }
  Record(id, name, ok, counts.str() + "| " + total.Summary(), timer, limit);
}

TEST(Acceptance, C03Restart) {
  SuiteCriterion(3, "restart", {"restart"}, Builtins({1, 2, 3}), 300, 60);
}

TEST(Acceptance, C04LowerTraceExtension) {
  SuiteCriterion(4, "lower-trace-extension", {"lower-trace"}, Builtins({1, 2, 3}), 1, 60);
}

TEST(Acceptance, C05Pairing) {
  SuiteCriterion(5, "pairing", {"pairing"}, Builtins({1, 2}), 200, 60);
}

// ---------------------------------------------------------------------------

TEST(Acceptance, C06BadNodeBattery) {
  Timer timer;
  bool ok = true;
  Tally tally;
  std::size_t bad_nodes = 0, certified = 0;
  std::string first;
  for (int n : {2, 3}) {
    NCSeqPtr seq = Builtin(true, n, n == 3 ? "w^3" : "w^2");
    SamplingPlan plan = DefaultPlan(*seq);
    tally.Add(RunLemmaSuite(*seq, plan,
                            {"bad-once", "spectacled", "bad-tail", "end-extension",
                             "easy-nodes"}));
    // Independent re-check of every bad-node threshold: the clauses at xi*
    // and at the next min_confirm fs samples above it.
    for (const Tuple& in : SampleInputs(*seq, static_cast<std::size_t>(n), plan,
                                        plan.max_instances, true)) {
      WalkTree t = Walk(*seq, 1, in, plan.walk);
      for (const BadThreshold& b : FindBadThresholds(*seq, t, plan)) {
        ++bad_nodes;
        std::string why = b.failure.empty() ? "no threshold" : b.failure;
        if (b.xi) {
          const std::size_t node = *t.Find(b.node);
          std::vector<Ordinal> xis = {*b.xi};
          for (const Ordinal& f : FsSamples(t.alpha(), 0, plan.fs_budget)) {
            if (f > *b.xi && xis.size() <= plan.min_confirm) xis.push_back(f);
          }
          why.clear();
          if (xis.size() != plan.min_confirm + 1) why = "too few samples above xi*";
          for (const Ordinal& xi : xis) {
            if (why.empty()) why = BadNodeClausesAt(*seq, t, node, xi, plan.walk);
          }
        }
        if (why.empty()) {
          ++certified;
        } else if (first.empty()) {
          first = FormatTuple(in) + " node " + FormatAddress(b.node) + ": " + why;
        }
      }
    }
  }
  ok = tally.failures == 0 && certified == bad_nodes;
  Record(6, "bad-node-battery", ok,
         tally.Summary() + "; " + std::to_string(certified) + "/" +
             std::to_string(bad_nodes) + " bad-node thresholds certified" +
             (first.empty() ? "" : "; " + first),
         timer, 300);
}

TEST(Acceptance, C07Simulation) {
  SuiteCriterion(7, "simulation", {"simulation"},
                 {{"maximal n=3", Builtin(true, 3, "w^3")}}, 100, 120);
}

// ---------------------------------------------------------------------------

TEST(Acceptance, C08FamilyCoherence) {
  Timer timer;
  bool ok = true;
  std::ostringstream detail;
  std::size_t total = 0, unstable = 0;
  std::string first;
  // (n, lambda, required instances)
  const std::vector<std::tuple<int, const char*, std::size_t>> cases = {
      {1, "w^2", 100}, {2, "w^2", 100}, {3, "w^3", 40}};
  for (bool maximal : {true, false}) {
    for (const auto& [n, lambda, need] : cases) {
      NCSeqPtr seq = Builtin(maximal, n, lambda);
      SamplingPlan plan = DefaultPlan(*seq);
      plan.min_confirm = 8;
      const bool coherent = CheckCoherence(*seq, seq->domain().StrictSup()).ok();
      std::vector<Tuple> inputs;
      for (const Tuple& in : SampleInputs(*seq, static_cast<std::size_t>(n) + 1, plan,
                                          4 * plan.max_instances, true)) {
        if (IsStrictlyIncreasing(Tail(in))) inputs.push_back(in);
        if (inputs.size() >= plan.max_instances) break;
      }
      std::size_t here = 0;
      for (const Tuple& in : inputs) {
        StabilizationReport r = VerifyFamilyCoherence(
            *seq, Tail(in), in.front(), plan, StabilizationOptions{0, 16, 8}, false);
        ++total;
        if (!r.stabilized() || !r.witness) {
          ++here;
          if (first.empty()) first = FormatTuple(in);
        }
      }
      unstable += here;
      ok = ok && coherent && here == 0 && inputs.size() >= need;
      detail << (maximal ? "maximal" : "minimal-fs") << " n=" << n << ":" << inputs.size()
             << " ";
    }
  }
  Record(8, "family-coherence", ok,
         detail.str() + "| " + std::to_string(total) + " instances, " +
             std::to_string(unstable) + " without a witness" +
             (first.empty() ? "" : "; first " + first),
         timer, 600);
}

// ---------------------------------------------------------------------------

TEST(Acceptance, C09Builders) {
  Timer timer;
  std::vector<std::string> problems;
  auto coherent = [&](const std::string& what, const NCSeq& seq, const Ordinal& window) {
    CoherenceReport r = CheckCoherence(seq, window);
    if (!r.ok()) problems.push_back(what + ": " + r.violations.front().detail);
  };
  std::size_t om = 0, games = 0, stepped = 0;
  for (int n = 1; n <= 3; ++n) {
    for (const char* lambda : {"w^2", "w^3"}) {
      auto seq = BuildOrderMinimal(n, O(lambda));
      coherent("order-minimal", *seq, O(lambda));
      ++om;
    }
  }
  RandomAdversary adversary;
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      GameOptions opts;
      opts.n = n;
      opts.rounds = 60;
      opts.seed = seed;
      opts.adversary = &adversary;
      GameResult g = BuildByGame(opts);
      const std::string what = "game n=" + std::to_string(n) + " seed=" + std::to_string(seed);
      coherent(what, *g.seq, g.top + 1);
      for (const std::string& p : CheckGameTranscript(g)) problems.push_back(what + ": " + p);
      ++games;
    }
  }
  const std::vector<std::function<NCSeqPtr()>> configs = {
      [] { return BuildSteppedUp(BuildOrderMinimal(1, O("w^2")), BuildOrderMinimal(1, O("w")),
                                 {O("w*2")}, O("w")); },
      [] { return BuildSteppedUp(BuildMaximal(1, O("w^2")), BuildOrderMinimal(1, O("w")), {},
                                 O("w")); },
      [] { return BuildSteppedUp(BuildMaximal(1, O("w^2")), BuildMaximal(1, O("w*2")),
                                 {O("w*2")}, O("w*2")); },
      [] { return BuildSteppedUp(BuildMaximal(1, O("w^3")), BuildMaximal(1, O("w^2")),
                                 {O("w^2")}, O("w^2")); },
      [] { return BuildSteppedUp(BuildMaximal(1, O("w^3")), BuildOrderMinimal(1, O("w^2")), {},
                                 O("w^2")); },
      [] { return BuildSteppedUp(BuildMaximal(1, O("w^3")), BuildMaximal(2, O("w^2")), {},
                                 O("w^2")); },
  };
  for (const auto& make : configs) {
    NCSeqPtr seq = make();
    coherent("stepped-up #" + std::to_string(stepped), *seq, seq->domain().StrictSup());
    ++stepped;
  }
  Record(9, "builders", problems.empty(),
         std::to_string(om) + " order-minimal, " + std::to_string(games) + " games, " +
             std::to_string(stepped) + " stepped-up; " + std::to_string(problems.size()) +
             " problems" + (problems.empty() ? "" : "; " + problems.front()),
         timer, 120);
}

// ---------------------------------------------------------------------------

TEST(Acceptance, C10MutationSensitivity) {
  Timer timer;
  auto base = BuildMaximal(2, O("w^2"));
  std::size_t detected = 0, by_coherence = 0, by_suite = 0, by_family = 0;
  constexpr int kMutants = 20;
  for (std::uint64_t seed = 0; seed < kMutants; ++seed) {
    Mutation m = MutateOneClub(base, O("w^2"), seed);
    const bool coh = !CheckCoherence(*m.seq, O("w^2")).ok();
    SamplingPlan plan = DefaultPlan(*m.seq);
    const bool suite = !RunLemmaSuite(*m.seq, plan).ok();
    // The family verifier on its own, with the up-front coherence check off.
    bool family = false;
    for (const Tuple& in : SampleInputs(*m.seq, 3, plan, plan.max_instances, true)) {
      if (!IsStrictlyIncreasing(Tail(in))) continue;
      StabilizationReport r = VerifyFamilyCoherence(*m.seq, Tail(in), in.front(), plan,
                                                    StabilizationOptions{0, 16, 8}, false);
      if (!r.stabilized()) {
        family = true;
        break;
      }
    }
    by_coherence += coh;
    by_suite += suite;
    by_family += family;
    detected += coh || suite || family;
  }
  Record(10, "mutation-sensitivity", detected == kMutants,
         std::to_string(detected) + "/" + std::to_string(kMutants) +
             " detected (coherence " + std::to_string(by_coherence) + ", suite " +
             std::to_string(by_suite) + ", ungated family verifier " +
             std::to_string(by_family) + ")",
         timer, 300);
}

TEST(Acceptance, C11DimensionReduction) {
  Timer timer;
  Tally tally;
  std::ostringstream counts;
  for (const Universe& u : Builtins({2, 3})) {
    Tally t;
    t.Add(Suite(*u.seq, {"dimension-reduction"}));
    tally.Add(t);
    counts << u.name << ":" << t.instances << " ";
  }
  Record(11, "dimension-reduction", tally.failures == 0 && tally.instances >= 200,
         counts.str() + "| " + tally.Summary(), timer, 120);
}

TEST(Acceptance, C12MaxEntryDichotomy) {
  // Walks of dimension n + 1 for n = 1, 2 live in sequences of those dimensions.
  SuiteCriterion(12, "max-entry-dichotomy", {"max-entry"}, Builtins({2, 3}), 1, 60);
}

}  // namespace
}  // namespace hwalks
