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

#ifndef HWALKS_ANALYSIS_H_
#define HWALKS_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hwalks/characteristics.h"
#include "hwalks/ncseq.h"
#include "hwalks/ordinal.h"
#include "hwalks/tuple.h"
#include "hwalks/walks.h"

namespace hwalks {

struct SamplingPlan {
  // Candidate tuple entries; only those in the domain are used.
  std::vector<Ordinal> universe;
  std::size_t max_instances = 300;  // per lemma
  std::uint64_t seed = 0;
  // Threshold searches look at fs(alpha)(k) for k < fs_budget.
  std::size_t fs_budget = 32;
  std::size_t min_confirm = 8;
  WalkOptions walk;
};

// w*a + b for a, b < 6, and w^2*c for c = 1, 2, 3; entries >= bound dropped.
std::vector<Ordinal> DefaultUniverse(const Ordinal& bound);
SamplingPlan DefaultPlan(const NCSeq& seq);

// Deterministic sample of inputs (alpha, gamma) with gamma a strictly
// increasing `len`-tuple of universe points in the domain and
// alpha <= gamma_0 a universe point; with `limit_alpha`, alpha is a limit.
std::vector<Tuple> SampleInputs(const NCSeq& seq, std::size_t len,
                                const SamplingPlan& plan, std::size_t cap,
                                bool limit_alpha = false);

// fs(alpha)(k) for k in [from, to).
std::vector<Ordinal> FsSamples(const Ordinal& alpha, std::size_t from,
                               std::size_t to);

// ---------------------------------------------------------------------------
// Per-instance checks. Each returns an empty string on success and a
// description (with JSON trees for failed comparisons) otherwise.

std::string CheckRestart(const NCSeq& seq, const Tuple& input,
                         const WalkOptions& opts = {});
// For every xi in `xis` with 0 < xi <= alpha, every node x whose parent has
// L < xi survives in the walk from (xi, gamma) with its label's alpha
// replaced by xi.
std::string CheckLowerTraceExtension(const NCSeq& seq, const Tuple& input,
                                     const std::vector<Ordinal>& xis,
                                     const WalkOptions& opts = {});
std::string CheckIncreasing(const NCSeq& seq, const Tuple& input,
                            const WalkOptions& opts = {});
std::string CheckPairing(const NCSeq& seq, const Tuple& input,
                         const WalkOptions& opts = {});
std::string CheckBadOnce(const NCSeq& seq, const Tuple& input,
                         const WalkOptions& opts = {});
std::string CheckSpectacledTerminal(const NCSeq& seq, const Tuple& input,
                                    const SamplingPlan& plan);
std::string CheckMaxEntry(const NCSeq& seq, const Tuple& input,
                          const WalkOptions& opts = {});
// input = (gamma_0, ..., gamma_n) inside C_delta; seq.n() = n + 1.
std::string CheckDimensionReduction(const NCSeq& seq, const Tuple& input,
                                    const Ordinal& delta,
                                    const WalkOptions& opts = {});

// Threshold below a limit alpha for one bad node: the least sampled
// fs(alpha)(k) from which the bad-node clauses hold at every later sample,
// with at least min_confirm + 1 samples confirming.
struct BadThreshold {
  Address node;
  std::optional<Ordinal> xi;  // absent when no threshold was found
  std::string failure;        // the clause that broke at the top sample
};

// The bad-node clauses at a single xi < alpha: prefixes of the bad node keep
// their label with alpha -> xi, spectacled descendants get (xi, eta_xi) in
// front, other descendants alpha -> xi. Empty string when they hold.
std::string BadNodeClausesAt(const NCSeq& seq, const WalkTree& t,
                             std::size_t bad_node, const Ordinal& xi,
                             const WalkOptions& opts = {});

std::vector<BadThreshold> FindBadThresholds(const NCSeq& seq, const WalkTree& t,
                                            const SamplingPlan& plan);

struct XiStar {
  Ordinal value;
  // True when every bad node received a threshold; otherwise value only
  // covers the lower traces and the nodes that did.
  bool complete = true;
  Ordinal lower_trace_part;
  std::vector<BadThreshold> bad;
};

// The larger of (a) the lower traces below alpha and (b) the bad-node
// thresholds. alpha must be a limit.
XiStar ComputeXiStar(const NCSeq& seq, const Tuple& input,
                     const SamplingPlan& plan);

// End-extension, matching signs and matching truncated labels for every
// sampled xi in (xi*, alpha], plus the terminal-node and bad-node clauses.
std::string CheckBadTail(const NCSeq& seq, const Tuple& input,
                         const SamplingPlan& plan);
std::string CheckEndExtension(const NCSeq& seq, const Tuple& input,
                              const SamplingPlan& plan);
std::string CheckEasyNodes(const NCSeq& seq, const Tuple& input,
                           const SamplingPlan& plan);

// For alpha in X and input (alpha, gamma) with |gamma| = seq.n() - 2:
// for sampled xi with L-(alpha, gamma) < xi < alpha and eta = min(C_alpha \ xi),
// the walk from (xi, eta, alpha, gamma) is the stretched truncated walk with
// labels (xi, eta, alpha, ...).
std::string CheckSimulation(const NCSeq& seq, const Tuple& input,
                            const SamplingPlan& plan);

// ---------------------------------------------------------------------------
// Stabilization.

enum class Verdict { kStabilized, kNotStabilized };

struct StabilizationReport {
  Ordinal alpha;
  std::optional<Ordinal> xi_star;
  std::vector<std::pair<Ordinal, FreeAbelian>> samples;
  Verdict verdict = Verdict::kNotStabilized;
  std::optional<Ordinal> witness;  // first sample of the constant run

  bool stabilized() const { return verdict == Verdict::kStabilized; }
};

struct StabilizationOptions {
  std::size_t start = 0;
  std::size_t budget = 16;
  std::size_t min_confirm = 8;
};

// Samples f along fs(alpha). With a threshold, every sample above it must
// agree and there must be at least min_confirm of them; without one, the
// longest constant suffix must have min_confirm samples.
StabilizationReport CheckSemiConstant(
    const std::function<FreeAbelian(const Ordinal&)>& f, const Ordinal& alpha,
    const StabilizationOptions& opts, std::optional<Ordinal> xi_star = {});

// xi -> sum_i (-1)^i resh(xi, beta without beta_i) near the limit
// alpha <= beta_0, thresholded by the largest xi* over the n + 1 walks.
// Throws DomainError if seq fails the coherence check on beta_n + 1.
StabilizationReport VerifyFamilyCoherence(const NCSeq& seq, const Tuple& beta,
                                          const Ordinal& alpha,
                                          const SamplingPlan& plan,
                                          const StabilizationOptions& opts = {},
                                          bool check_coherence = true);

// ---------------------------------------------------------------------------
// Suite.

inline const std::vector<std::string>& AllLemmas() {
  static const std::vector<std::string> kNames = {
      "restart",        "lower-trace",  "increasing",   "pairing",
      "bad-once",       "spectacled",   "bad-tail",     "end-extension",
      "easy-nodes",     "simulation",   "max-entry",    "dimension-reduction",
      "family-coherence"};
  return kNames;
}

struct LemmaOutcome {
  std::string lemma;
  Tuple instance;
  bool pass = true;
  bool resource_limited = false;  // failed because a walk hit the node cap
  std::string detail;
};

struct SuiteReport {
  std::vector<LemmaOutcome> outcomes;
  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
  bool resource_limited() const;
  // One "LEMMA <name> instance=<tuple> verdict=<pass|fail>" line each.
  std::string ToText() const;
  // {"lemmas": {name: {"pass": p, "fail": f}}, "failures": [...]}.
  std::string ToJson() const;
};

// Runs the selected lemmas (all when empty) on instances drawn from `plan`.
// Lemmas that do not apply to seq.n() are skipped.
SuiteReport RunLemmaSuite(const NCSeq& seq, const SamplingPlan& plan,
                          const std::set<std::string>& lemmas = {});

// Pairs beta < gamma from `a` with rho2(beta, gamma) - 1 > k in the
// one-dimensional walk.
std::optional<std::pair<Ordinal, Ordinal>> UnboundednessProbe(
    const NCSeq& seq, std::vector<Ordinal> a, std::int64_t k,
    const WalkOptions& opts = {});

}  // namespace hwalks

#endif  // HWALKS_ANALYSIS_H_
