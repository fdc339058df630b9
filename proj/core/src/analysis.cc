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

#include <algorithm>
#include <atomic>
#include <exception>
#include <random>
#include <thread>

#include "hwalks/coherence.h"
#include "hwalks/errors.h"
#include "json.hpp"

namespace hwalks {

namespace {

using Json = nlohmann::ordered_json;

std::string TreeMismatch(const std::string& what, const WalkTree& expected,
                         const WalkTree& actual) {
  return what + "\nexpected: " + WalkToJson(expected) +
         "\nactual: " + WalkToJson(actual);
}

Tuple SigmaOf(const Label& l) {
  return Tuple(l.ords.begin() + std::min<std::ptrdiff_t>(2, l.ords.size()),
               l.ords.end());
}

// Universe points usable as tuple entries, ascending.
std::vector<Ordinal> DomainPoints(const NCSeq& seq,
                                  const std::vector<Ordinal>& universe) {
  std::vector<Ordinal> out;
  const Ordinal sup = seq.domain().StrictSup();
  for (const Ordinal& u : universe) {
    if (u < sup && seq.domain().Contains(u)) out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

enum class AlphaMode { kNone, kAny, kLimit };

// Reservoir sample of (alpha,) gamma index vectors over `pts`.
std::vector<Tuple> SampleCombos(const std::vector<Ordinal>& pts,
                                std::size_t len, AlphaMode mode,
                                std::size_t cap, std::uint64_t seed) {
  std::vector<Tuple> out;
  if (len == 0 || pts.size() < len || cap == 0) return out;
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + len * 31 +
                      static_cast<std::uint64_t>(mode));
  std::vector<std::vector<std::uint16_t>> reservoir;
  std::uint64_t seen = 0;
  auto offer = [&](const std::vector<std::uint16_t>& v) {
    ++seen;
    if (reservoir.size() < cap) {
      reservoir.push_back(v);
      return;
    }
    std::uint64_t r = rng() % seen;
    if (r < cap) reservoir[r] = v;
  };

  std::vector<std::uint16_t> idx(len);
  for (std::size_t i = 0; i < len; ++i) idx[i] = static_cast<std::uint16_t>(i);
  const std::size_t p = pts.size();
  while (true) {
    if (mode == AlphaMode::kNone) {
      offer(idx);
    } else {
      std::vector<std::uint16_t> v(len + 1);
      std::copy(idx.begin(), idx.end(), v.begin() + 1);
      for (std::size_t a = 0; a <= idx[0]; ++a) {
        if (mode == AlphaMode::kLimit && !pts[a].IsLimit()) continue;
        v[0] = static_cast<std::uint16_t>(a);
        offer(v);
      }
    }
    // Next combination in lexicographic order.
    std::size_t i = len;
    while (i > 0 && idx[i - 1] == p - len + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t k = i; k < len; ++k) idx[k] = idx[k - 1] + 1;
  }

  for (const auto& v : reservoir) {
    Tuple t;
    for (std::uint16_t k : v) t.push_back(pts[k]);
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Ordinal> UniverseBetween(const std::vector<Ordinal>& universe,
                                     const Ordinal& lo, const Ordinal& hi,
                                     bool lo_closed) {
  std::vector<Ordinal> out;
  for (const Ordinal& u : universe) {
    if ((lo_closed ? u >= lo : u > lo) && u < hi) out.push_back(u);
  }
  return out;
}

// Strict descendants of node i, in breadth-first order.
std::vector<std::size_t> Descendants(const WalkTree& t, std::size_t i) {
  std::vector<std::size_t> out;
  std::vector<std::size_t> frontier = {i};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t y : frontier) {
      if (t.node(y).terminal()) continue;
      for (int k = 0; k < t.dim(); ++k) next.push_back(t.Child(y, k));
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

WalkTree WalkAt(const NCSeq& seq, const WalkTree& t, const Ordinal& xi,
                const WalkOptions& opts) {
  return Walk(seq, t.root().label.sign, Prepend(xi, Tail(t.root().label.ords)),
              opts);
}

std::string ClausesAt(const WalkTree& t, std::size_t bad, const WalkTree& w,
                      const Ordinal& xi, const Ordinal& eta) {
  // Prefixes of the bad node, the node itself included.
  for (std::size_t y = bad;; y = t.node(y).parent) {
    const WalkNode& node = t.node(y);
    auto z = w.Find(node.address);
    Label want = SubFirst(node.label, xi);
    if (!z || w.node(*z).label != want) {
      return "at xi=" + xi.ToString() + " prefix " +
             FormatAddress(node.address) + " expected " + want.ToString() +
             (z ? " got " + w.node(*z).label.ToString() : " but it is missing");
    }
    if (node.parent == WalkNode::kNone) break;
  }
  for (std::size_t y : Descendants(t, bad)) {
    const WalkNode& node = t.node(y);
    auto z = w.Find(node.address);
    Label want = node.Has(kSpectacled) ? SubFirstTwo(node.label, xi, eta)
                                       : SubFirst(node.label, xi);
    if (!z || w.node(*z).label != want) {
      return "at xi=" + xi.ToString() + " descendant " +
             FormatAddress(node.address) + " expected " + want.ToString() +
             (z ? " got " + w.node(*z).label.ToString() : " but it is missing");
    }
  }
  return {};
}

std::optional<Ordinal> EtaAt(const NCSeq& seq, const Ordinal& alpha,
                             const Ordinal& xi) {
  ClubPtr c = seq.ClubOf({alpha});
  if (c == nullptr) return std::nullopt;
  return c->MinAtLeast(xi);
}

// Runs fn(i) for i < count on a small thread pool; results stay indexed.
template <typename Fn>
void ParallelFor(std::size_t count, Fn fn) {
  const std::size_t workers = std::min<std::size_t>(
      std::max(1u, std::thread::hardware_concurrency()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<Ordinal> DefaultUniverse(const Ordinal& bound) {
  std::vector<Ordinal> out;
  for (std::uint64_t a = 0; a < 6; ++a) {
    for (std::uint64_t b = 0; b < 6; ++b) {
      Ordinal o = (a == 0 ? Ordinal() : Ordinal::OmegaPow(1, a)) + b;
      if (o < bound) out.push_back(o);
    }
  }
  for (std::uint64_t c = 1; c <= 3; ++c) {
    Ordinal o = Ordinal::OmegaPow(2, c);
    if (o < bound) out.push_back(o);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SamplingPlan DefaultPlan(const NCSeq& seq) {
  SamplingPlan plan;
  plan.universe = DefaultUniverse(seq.domain().StrictSup());
  return plan;
}

std::vector<Tuple> SampleInputs(const NCSeq& seq, std::size_t len,
                                const SamplingPlan& plan, std::size_t cap,
                                bool limit_alpha) {
  return SampleCombos(DomainPoints(seq, plan.universe), len,
                      limit_alpha ? AlphaMode::kLimit : AlphaMode::kAny, cap,
                      plan.seed);
}

std::vector<Ordinal> FsSamples(const Ordinal& alpha, std::size_t from,
                               std::size_t to) {
  std::vector<Ordinal> out;
  for (std::size_t k = from; k < to; ++k) out.push_back(alpha.FundamentalSequence(k));
  return out;
}

std::string CheckRestart(const NCSeq& seq, const Tuple& input,
                         const WalkOptions& opts) {
  WalkTree t = Walk(seq, 1, input, opts);
  for (std::size_t i = 1; i < t.size(); ++i) {
    const WalkNode& x = t.node(i);
    if (x.terminal()) continue;
    WalkTree fresh = Walk(seq, x.label.sign, x.label.ords, opts);
    // Parallel descent through both trees.
    std::vector<std::pair<std::size_t, std::size_t>> stack = {{i, 0}};
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      const WalkNode& u = t.node(a);
      const WalkNode& v = fresh.node(b);
      if (u.label != v.label || u.terminal() != v.terminal()) {
        return TreeMismatch("subtree at " + FormatAddress(x.address) +
                                " differs from the fresh walk at relative " +
                                FormatAddress(v.address),
                            fresh, t);
      }
      if (u.terminal()) continue;
      for (int k = 0; k < t.dim(); ++k) {
        stack.emplace_back(t.Child(a, k), fresh.Child(b, k));
      }
    }
  }
  return {};
}

std::string CheckLowerTraceExtension(const NCSeq& seq, const Tuple& input,
                                     const std::vector<Ordinal>& xis,
                                     const WalkOptions& opts) {
  WalkTree t = Walk(seq, 1, input, opts);
  const Ordinal& alpha = t.alpha();
  for (const Ordinal& xi : xis) {
    if (xi.IsZero() || xi > alpha) continue;
    WalkTree w = WalkAt(seq, t, xi, opts);
    for (std::size_t i = 1; i < t.size(); ++i) {
      const WalkNode& x = t.node(i);
      if (!(t.node(x.parent).lower_trace < xi)) continue;
      auto z = w.Find(x.address);
      Label want = SubFirst(x.label, xi);
      if (!z || w.node(*z).label != want) {
        return TreeMismatch("at xi=" + xi.ToString() + " node " +
                                FormatAddress(x.address) + " should carry " +
                                want.ToString(),
                            t, w);
      }
    }
  }
  return {};
}

std::string CheckIncreasing(const NCSeq& seq, const Tuple& input,
                            const WalkOptions& opts) {
  WalkTree t = Walk(seq, 1, input, opts);
  for (const WalkNode& x : t.nodes()) {
    if (!IsAlphaTensor(x.label.ords)) {
      return "label " + x.label.ToString() + " at " + FormatAddress(x.address) +
             " is not (alpha <= beta_1 < ... < beta_m)";
    }
  }
  return {};
}

std::string CheckPairing(const NCSeq& seq, const Tuple& input,
                         const WalkOptions& opts) {
  BoundaryPairing p = PairBoundaries(seq, input, opts);
  if (p.perfect) return {};
  std::string out = std::to_string(p.unmatched.size()) + " of " +
                    std::to_string(p.total) + " boundary nodes unmatched:";
  for (const BoundaryItem& b : p.unmatched) {
    out += " walk" + std::to_string(b.walk) + FormatAddress(b.address) +
           b.label.ToString();
  }
  return out;
}

std::string CheckBadOnce(const NCSeq& seq, const Tuple& input,
                         const WalkOptions& opts) {
  WalkTree t = Walk(seq, 1, input, opts);
  // Nodes are stored breadth first, so parents precede children.
  std::vector<char> below_bad(t.size(), 0);
  for (std::size_t i = 1; i < t.size(); ++i) {
    const WalkNode& p = t.node(t.node(i).parent);
    below_bad[i] = below_bad[t.node(i).parent] || p.Has(kBad);
    if (below_bad[i] && t.node(i).Has(kBad)) {
      return "bad node " + FormatAddress(t.node(i).address) +
             " lies below another bad node\n" + WalkToJson(t);
    }
  }
  return {};
}

std::string CheckSpectacledTerminal(const NCSeq& seq, const Tuple& input,
                                    const SamplingPlan& plan) {
  WalkTree t = Walk(seq, 1, input, plan.walk);
  const Ordinal& alpha = t.alpha();
  for (std::size_t z = 0; z < t.size(); ++z) {
    if (!t.node(z).Has(kSpectacled)) continue;
    for (std::size_t y : Descendants(t, z)) {
      const WalkNode& node = t.node(y);
      if (!(node.label.ords[0] < node.label.ords[1])) continue;
      if (!node.terminal()) {
        return "node " + FormatAddress(node.address) + " " +
               node.label.ToString() + " below spectacled " +
               FormatAddress(t.node(z).address) + " is not terminal\n" +
               WalkToJson(t);
      }
      if (!alpha.IsLimit()) continue;
      // Terminal for every xi on a final segment of the sampled fs(alpha).
      std::vector<Ordinal> fs = FsSamples(alpha, 0, plan.fs_budget);
      std::size_t k0 = fs.size();
      while (k0 > 0 && IsTerminalLabel(seq, Prepend(fs[k0 - 1], Tail(node.label.ords)))) {
        --k0;
      }
      if (fs.size() - k0 < plan.min_confirm) {
        return "node " + FormatAddress(node.address) + " " +
               node.label.ToString() + " stops being terminal at xi=" +
               fs[k0 == 0 ? 0 : k0 - 1].ToString();
      }
      for (const Ordinal& u : UniverseBetween(plan.universe, fs[k0], alpha, true)) {
        if (!IsTerminalLabel(seq, Prepend(u, Tail(node.label.ords)))) {
          return "node " + FormatAddress(node.address) + " with alpha -> " +
                 u.ToString() + " is not terminal";
        }
      }
    }
  }
  return {};
}

std::string CheckMaxEntry(const NCSeq& seq, const Tuple& input,
                          const WalkOptions& opts) {
  WalkTree t = Walk(seq, 1, input, opts);
  const Ordinal& top = input.back();
  const int n = t.dim() - 1;
  for (const WalkNode& x : t.nodes()) {
    const bool is_top = *std::max_element(x.label.ords.begin(), x.label.ords.end()) == top;
    const bool low = std::all_of(x.address.begin(), x.address.end(),
                                 [n](int k) { return k < n; });
    if (is_top != low) {
      return "node " + FormatAddress(x.address) + " " + x.label.ToString() +
             (is_top ? " keeps " : " loses ") + top.ToString() + "\n" +
             WalkToJson(t);
    }
  }
  return {};
}

std::string CheckDimensionReduction(const NCSeq& seq, const Tuple& input,
                                    const Ordinal& delta,
                                    const WalkOptions& opts) {
  // Non-owning handle; the restriction does not outlive this call.
  NCSeqPtr base(NCSeqPtr(), &seq);
  NCSeqPtr small = Restrict(base, delta);
  WalkTree w1 = Walk(*small, 1, input, opts);
  WalkTree w2 = Walk(seq, 1, Append(input, delta), opts);
  const int n = w1.dim();
  std::size_t low_count = 0;
  for (const WalkNode& x : w2.nodes()) {
    if (!std::all_of(x.address.begin(), x.address.end(),
                     [n](int k) { return k < n; })) {
      continue;
    }
    ++low_count;
    auto y = w1.Find(x.address);
    if (!y) {
      return TreeMismatch("node " + FormatAddress(x.address) +
                              " is missing from the restricted walk",
                          w2, w1);
    }
    const WalkNode& u = w1.node(*y);
    Label want{u.label.sign, Append(u.label.ords, delta)};
    if (x.label != want || x.lower_trace != u.lower_trace ||
        x.terminal() != u.terminal()) {
      return TreeMismatch("node " + FormatAddress(x.address) + " " +
                              x.label.ToString() + " vs restricted " +
                              u.label.ToString(),
                          w2, w1);
    }
  }
  if (low_count != w1.size()) {
    return TreeMismatch("restricted walk has extra nodes", w2, w1);
  }
  if (IsStrictlyIncreasing(input)) {
    FreeAbelian lhs = Resh(w1);
    FreeAbelian rhs = ProjectPi(Resh(w2), delta, *seq.RequireClub({delta}));
    if (lhs != rhs) {
      return "resh " + lhs.ToString() + " != projected " + rhs.ToString();
    }
  }
  return {};
}

std::string BadNodeClausesAt(const NCSeq& seq, const WalkTree& t,
                             std::size_t bad_node, const Ordinal& xi,
                             const WalkOptions& opts) {
  auto eta = EtaAt(seq, t.alpha(), xi);
  if (!eta) return "C_alpha has no point >= " + xi.ToString();
  return ClausesAt(t, bad_node, WalkAt(seq, t, xi, opts), xi, *eta);
}

std::vector<BadThreshold> FindBadThresholds(const NCSeq& seq, const WalkTree& t,
                                            const SamplingPlan& plan) {
  std::vector<BadThreshold> out;
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.node(i).Has(kBad)) bad.push_back(i);
  }
  if (bad.empty()) return out;
  const Ordinal& alpha = t.alpha();
  std::vector<Ordinal> fs = FsSamples(alpha, 0, plan.fs_budget);
  // Walks at each sample are shared between the bad nodes.
  std::vector<std::optional<WalkTree>> walks(fs.size());
  std::vector<std::optional<Ordinal>> etas(fs.size());
  auto clauses = [&](std::size_t b, std::size_t k) -> std::string {
    if (!walks[k]) {
      walks[k] = WalkAt(seq, t, fs[k], plan.walk);
      etas[k] = EtaAt(seq, alpha, fs[k]);
    }
    if (!etas[k]) return "C_alpha has no point >= " + fs[k].ToString();
    return ClausesAt(t, b, *walks[k], fs[k], *etas[k]);
  };
  for (std::size_t b : bad) {
    BadThreshold th;
    th.node = t.node(b).address;
    std::size_t k0 = fs.size();
    std::string last;
    while (k0 > 0) {
      last = clauses(b, k0 - 1);
      if (!last.empty()) break;
      --k0;
    }
    if (k0 == fs.size()) {
      th.failure = last;
    } else if (fs.size() - k0 < plan.min_confirm + 1) {
      th.failure = "clauses hold on only " + std::to_string(fs.size() - k0) +
                   " samples; below: " + last;
    } else {
      th.xi = fs[k0];
    }
    out.push_back(std::move(th));
  }
  return out;
}

XiStar ComputeXiStar(const NCSeq& seq, const Tuple& input,
                     const SamplingPlan& plan) {
  if (!input.front().IsLimit()) {
    throw DomainError("xi* needs a limit alpha, got " + input.front().ToString());
  }
  WalkTree t = Walk(seq, 1, input, plan.walk);
  XiStar out;
  out.lower_trace_part = LowerTraceBelowAlpha(t);
  out.value = out.lower_trace_part;
  out.bad = FindBadThresholds(seq, t, plan);
  for (const BadThreshold& b : out.bad) {
    if (b.xi) {
      out.value = std::max(out.value, *b.xi);
    } else {
      out.complete = false;
    }
  }
  return out;
}

namespace {

// xi values probed above a threshold: fs samples and universe points in
// (lo, alpha), plus alpha itself.
std::vector<Ordinal> ProbesAbove(const Ordinal& alpha, const Ordinal& lo,
                                 const SamplingPlan& plan) {
  std::vector<Ordinal> out;
  for (const Ordinal& f : FsSamples(alpha, 0, plan.fs_budget)) {
    if (f > lo) out.push_back(f);
  }
  for (const Ordinal& u : UniverseBetween(plan.universe, lo, alpha, false)) {
    out.push_back(u);
  }
  out.push_back(alpha);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string IncompleteXiStar(const XiStar& xs) {
  for (const BadThreshold& b : xs.bad) {
    if (!b.xi) return "no threshold for bad node " + FormatAddress(b.node) + ": " + b.failure;
  }
  return {};
}

}  // namespace

std::string CheckBadTail(const NCSeq& seq, const Tuple& input,
                         const SamplingPlan& plan) {
  WalkTree t = Walk(seq, 1, input, plan.walk);
  std::vector<BadThreshold> bad = FindBadThresholds(seq, t, plan);
  for (const BadThreshold& b : bad) {
    if (!b.xi) return "bad node " + FormatAddress(b.node) + ": " + b.failure;
    std::size_t i = *t.Find(b.node);
    for (const Ordinal& u : UniverseBetween(plan.universe, *b.xi, t.alpha(), true)) {
      std::string err = BadNodeClausesAt(seq, t, i, u, plan.walk);
      if (!err.empty()) return "bad node " + FormatAddress(b.node) + ": " + err;
    }
  }
  return {};
}

std::string CheckEndExtension(const NCSeq& seq, const Tuple& input,
                              const SamplingPlan& plan) {
  XiStar xs = ComputeXiStar(seq, input, plan);
  if (!xs.complete) return IncompleteXiStar(xs);
  WalkTree t = Walk(seq, 1, input, plan.walk);
  for (const Ordinal& xi : ProbesAbove(t.alpha(), xs.value, plan)) {
    WalkTree w = WalkAt(seq, t, xi, plan.walk);
    for (const WalkNode& x : t.nodes()) {
      auto z = w.Find(x.address);
      if (!z || w.node(*z).label.sign != x.label.sign ||
          SigmaOf(w.node(*z).label) != SigmaOf(x.label)) {
        return TreeMismatch("xi*=" + xs.value.ToString() + ", at xi=" +
                                xi.ToString() + " node " +
                                FormatAddress(x.address) + " is not extended",
                            t, w);
      }
    }
  }
  return {};
}

std::string CheckEasyNodes(const NCSeq& seq, const Tuple& input,
                           const SamplingPlan& plan) {
  XiStar xs = ComputeXiStar(seq, input, plan);
  if (!xs.complete) return IncompleteXiStar(xs);
  WalkTree t = Walk(seq, 1, input, plan.walk);
  for (const Ordinal& xi : ProbesAbove(t.alpha(), xs.value, plan)) {
    if (xi == t.alpha()) continue;
    WalkTree w = WalkAt(seq, t, xi, plan.walk);
    for (const WalkNode& x : t.nodes()) {
      if (!x.terminal() || x.Has(kSpectacled)) continue;
      auto z = w.Find(x.address);
      Label want = SubFirst(x.label, xi);
      if (!z || w.node(*z).label != want) {
        return TreeMismatch("xi*=" + xs.value.ToString() + ", at xi=" +
                                xi.ToString() + " terminal " +
                                FormatAddress(x.address) + " should carry " +
                                want.ToString(),
                            t, w);
      }
    }
  }
  return {};
}

std::string CheckSimulation(const NCSeq& seq, const Tuple& input,
                            const SamplingPlan& plan) {
  const int m = static_cast<int>(input.size()) - 1;
  if (m < 1 || m + 2 > seq.n()) {
    throw DomainError("simulation needs 1 <= m and m + 2 <= n");
  }
  const Ordinal& alpha = input.front();
  ClubPtr c_alpha = seq.ClubOf({alpha});
  if (c_alpha == nullptr || !alpha.IsLimit()) {
    return "alpha=" + alpha.ToString() + " has no club or is not a limit";
  }
  WalkTree tr = TruncatedWalk(seq, 1, input, plan.walk);
  const Ordinal lower = LowerTraceBelowAlpha(tr);
  TreeShape want_shape = StretchTree(tr.Shape(), m, m + 2);

  std::vector<Ordinal> xis;
  for (const Ordinal& f : FsSamples(alpha, 0, plan.fs_budget)) {
    if (f > lower) xis.push_back(f);
    if (xis.size() >= plan.min_confirm) break;
  }
  for (const Ordinal& u : UniverseBetween(plan.universe, lower, alpha, false)) {
    xis.push_back(u);
  }
  for (const Ordinal& xi : xis) {
    auto eta = c_alpha->MinAtLeast(xi);
    if (!eta) return "C_alpha has no point >= " + xi.ToString();
    Tuple big = Prepend(xi, Prepend(*eta, input));
    WalkTree w = Walk(seq, 1, big, plan.walk);
    if (w.Shape() != want_shape) {
      return TreeMismatch("L-=" + lower.ToString() + ", walk from " +
                              FormatTuple(big) +
                              " is not the stretched truncated walk",
                          tr, w);
    }
    for (const WalkNode& x : tr.nodes()) {
      Address s = x.address;
      for (int& k : s) k += 2;
      const WalkNode& y = w.node(*w.Find(s));
      Label want{x.label.sign, Prepend(xi, Prepend(*eta, x.label.ords))};
      if (y.label != want) {
        return TreeMismatch("at " + FormatAddress(s) + " expected " +
                                want.ToString() + " got " + y.label.ToString(),
                            tr, w);
      }
    }
  }
  return {};
}

StabilizationReport CheckSemiConstant(
    const std::function<FreeAbelian(const Ordinal&)>& f, const Ordinal& alpha,
    const StabilizationOptions& opts, std::optional<Ordinal> xi_star) {
  if (!alpha.IsLimit()) {
    throw DomainError("stabilization needs a limit, got " + alpha.ToString());
  }
  StabilizationReport r;
  r.alpha = alpha;
  r.xi_star = xi_star;
  for (const Ordinal& xi : FsSamples(alpha, opts.start, opts.start + opts.budget)) {
    r.samples.emplace_back(xi, f(xi));
  }
  if (xi_star) {
    std::size_t first = 0;
    while (first < r.samples.size() && !(r.samples[first].first > *xi_star)) ++first;
    const std::size_t count = r.samples.size() - first;
    bool equal = true;
    for (std::size_t i = first + 1; i < r.samples.size(); ++i) {
      equal = equal && r.samples[i].second == r.samples[first].second;
    }
    if (equal && count >= opts.min_confirm && count > 0) {
      r.verdict = Verdict::kStabilized;
      r.witness = r.samples[first].first;
    }
    return r;
  }
  if (r.samples.empty()) return r;
  std::size_t first = r.samples.size() - 1;
  while (first > 0 && r.samples[first - 1].second == r.samples.back().second) --first;
  if (r.samples.size() - first >= opts.min_confirm) {
    r.verdict = Verdict::kStabilized;
    r.witness = r.samples[first].first;
  }
  return r;
}

StabilizationReport VerifyFamilyCoherence(const NCSeq& seq, const Tuple& beta,
                                          const Ordinal& alpha,
                                          const SamplingPlan& plan,
                                          const StabilizationOptions& opts,
                                          bool check_coherence) {
  if (beta.empty() || static_cast<int>(beta.size()) != seq.n() + 1 ||
      !IsStrictlyIncreasing(beta)) {
    throw DomainError("family needs a strictly increasing " +
                      std::to_string(seq.n() + 1) + "-tuple, got " +
                      FormatTuple(beta));
  }
  if (!alpha.IsLimit() || alpha > beta.front()) {
    throw DomainError("family coherence needs a limit alpha <= beta_0, got " +
                      alpha.ToString());
  }
  if (check_coherence) {
    CoherenceReport cr = CheckCoherence(seq, beta.back().Succ());
    if (!cr.ok()) {
      const CoherenceViolation& v = cr.violations.front();
      throw DomainError("sequence is not coherent: " + v.kind + " at " +
                        v.alpha.ToString() + " " + FormatTuple(v.index) + ": " +
                        v.detail);
    }
  }
  std::optional<Ordinal> xi_star = Ordinal();
  for (std::size_t i = 0; i < beta.size(); ++i) {
    XiStar xs = ComputeXiStar(seq, Prepend(alpha, RemoveIndex(beta, i)), plan);
    if (!xs.complete) {
      xi_star.reset();
      break;
    }
    xi_star = std::max(*xi_star, xs.value);
  }
  StabilizationOptions o = opts;
  // Start sampling just above the threshold so that min_confirm samples fit.
  if (xi_star) {
    while (!(alpha.FundamentalSequence(o.start) > *xi_star)) ++o.start;
  }
  return CheckSemiConstant(
      [&](const Ordinal& xi) {
        return FamilyAlternatingSum(seq, beta, xi, plan.walk);
      },
      alpha, o, xi_star);
}

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(outcomes.begin(), outcomes.end(),
                    [](const LemmaOutcome& o) { return !o.pass; }));
}

bool SuiteReport::resource_limited() const {
  return std::any_of(outcomes.begin(), outcomes.end(),
                     [](const LemmaOutcome& o) { return o.resource_limited; });
}

std::string SuiteReport::ToText() const {
  std::string out;
  for (const LemmaOutcome& o : outcomes) {
    out += "LEMMA " + o.lemma + " instance=" + FormatTuple(o.instance) +
           " verdict=" + (o.pass ? "pass" : "fail") + "\n";
  }
  return out;
}

std::string SuiteReport::ToJson() const {
  Json lemmas = Json::object();
  Json fails = Json::array();
  for (const LemmaOutcome& o : outcomes) {
    Json& entry = lemmas[o.lemma];
    if (entry.is_null()) entry = Json{{"pass", 0}, {"fail", 0}};
    entry[o.pass ? "pass" : "fail"] = entry[o.pass ? "pass" : "fail"].get<int>() + 1;
    if (!o.pass) {
      fails.push_back(Json{{"lemma", o.lemma},
                           {"instance", FormatTuple(o.instance)},
                           {"detail", o.detail}});
    }
  }
  return Json{{"lemmas", lemmas}, {"failures", fails}, {"ok", ok()}}.dump(2);
}

SuiteReport RunLemmaSuite(const NCSeq& seq, const SamplingPlan& plan,
                          const std::set<std::string>& lemmas) {
  auto wanted = [&](const std::string& name) {
    return lemmas.empty() || lemmas.count(name) > 0;
  };
  for (const std::string& name : lemmas) {
    if (std::find(AllLemmas().begin(), AllLemmas().end(), name) == AllLemmas().end()) {
      throw DomainError("unknown lemma '" + name + "'");
    }
  }
  const int n = seq.n();
  const std::size_t cap = plan.max_instances;

  struct Job {
    std::string lemma;
    Tuple instance;
    std::function<std::string()> run;
  };
  std::vector<Job> jobs;
  auto add = [&](const std::string& lemma, const std::vector<Tuple>& inputs,
                 const std::function<std::string(const Tuple&)>& fn) {
    for (const Tuple& in : inputs) jobs.push_back({lemma, in, [fn, in] { return fn(in); }});
  };

  const std::vector<Tuple> walk_inputs = SampleInputs(seq, n, plan, cap);
  const std::vector<Tuple> limit_inputs = SampleInputs(seq, n, plan, cap, true);

  if (wanted("restart")) {
    add("restart", walk_inputs,
        [&](const Tuple& in) { return CheckRestart(seq, in, plan.walk); });
  }
  if (wanted("lower-trace")) {
    add("lower-trace", walk_inputs, [&](const Tuple& in) {
      std::vector<Ordinal> xis = UniverseBetween(plan.universe, Ordinal(), in.front(), false);
      xis.push_back(in.front());
      if (in.front().IsLimit()) {
        for (const Ordinal& f : FsSamples(in.front(), 0, plan.min_confirm)) xis.push_back(f);
      }
      return CheckLowerTraceExtension(seq, in, xis, plan.walk);
    });
  }
  if (wanted("increasing")) {
    add("increasing", walk_inputs,
        [&](const Tuple& in) { return CheckIncreasing(seq, in, plan.walk); });
  }
  if (wanted("pairing")) {
    add("pairing", SampleInputs(seq, n + 1, plan, cap),
        [&](const Tuple& in) { return CheckPairing(seq, in, plan.walk); });
  }
  if (n >= 2) {
    if (wanted("bad-once")) {
      add("bad-once", walk_inputs,
          [&](const Tuple& in) { return CheckBadOnce(seq, in, plan.walk); });
    }
    if (wanted("spectacled")) {
      add("spectacled", walk_inputs,
          [&](const Tuple& in) { return CheckSpectacledTerminal(seq, in, plan); });
    }
    if (wanted("bad-tail")) {
      add("bad-tail", limit_inputs,
          [&](const Tuple& in) { return CheckBadTail(seq, in, plan); });
    }
    if (wanted("easy-nodes")) {
      add("easy-nodes", limit_inputs,
          [&](const Tuple& in) { return CheckEasyNodes(seq, in, plan); });
    }
  }
  if (wanted("end-extension")) {
    add("end-extension", limit_inputs,
        [&](const Tuple& in) { return CheckEndExtension(seq, in, plan); });
  }

  if (n >= 3 && wanted("simulation")) {
    CoherenceReport cr = CheckCoherence(seq, seq.domain().StrictSup());
    std::vector<Tuple> sim;
    for (const Tuple& in : SampleInputs(seq, n - 2, plan, cap * 4, true)) {
      if (std::binary_search(cr.x_set.begin(), cr.x_set.end(), in.front())) sim.push_back(in);
      if (sim.size() >= cap) break;
    }
    add("simulation", sim,
        [&](const Tuple& in) { return CheckSimulation(seq, in, plan); });
  }
  if (n >= 2 && wanted("max-entry")) {
    std::vector<Tuple> inputs = SampleCombos(DomainPoints(seq, plan.universe),
                                             static_cast<std::size_t>(n) + 1,
                                             AlphaMode::kNone, cap, plan.seed);
    add("max-entry", inputs,
        [&](const Tuple& in) { return CheckMaxEntry(seq, in, plan.walk); });
  }
  if (n >= 2 && wanted("dimension-reduction")) {
    // Instances are (gamma, delta) with delta an accumulation point of the
    // domain and gamma inside C_delta.
    std::vector<Tuple> inputs;
    std::vector<Ordinal> deltas;
    for (const Ordinal& u : DomainPoints(seq, plan.universe)) {
      if (u.IsLimit() && seq.domain().IsAccPoint(u)) deltas.push_back(u);
    }
    const std::size_t per = deltas.empty() ? 0 : (cap + deltas.size() - 1) / deltas.size();
    for (const Ordinal& d : deltas) {
      ClubPtr cd = seq.ClubOf({d});
      if (cd == nullptr) continue;
      std::vector<Ordinal> pts;
      for (const Ordinal& u : plan.universe) {
        if (u < d && cd->Contains(u)) pts.push_back(u);
      }
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      for (Tuple g : SampleCombos(pts, static_cast<std::size_t>(n), AlphaMode::kNone,
                                  per, plan.seed)) {
        inputs.push_back(Append(g, d));
      }
    }
    add("dimension-reduction", inputs, [&](const Tuple& in) {
      return CheckDimensionReduction(seq, Tuple(in.begin(), in.end() - 1),
                                     in.back(), plan.walk);
    });
  }
  if (wanted("family-coherence")) {
    CoherenceReport cr = CheckCoherence(seq, seq.domain().StrictSup());
    std::string incoherent;
    if (!cr.ok()) {
      const CoherenceViolation& v = cr.violations.front();
      incoherent = "sequence is not coherent: " + v.kind + " at " +
                   v.alpha.ToString() + " " + FormatTuple(v.index);
    }
    std::vector<Tuple> inputs;
    for (const Tuple& in : SampleInputs(seq, static_cast<std::size_t>(n) + 1, plan, cap * 4, true)) {
      if (IsStrictlyIncreasing(Tail(in))) inputs.push_back(in);
      if (inputs.size() >= cap) break;
    }
    add("family-coherence", inputs, [&, incoherent](const Tuple& in) -> std::string {
      if (!incoherent.empty()) return incoherent;
      StabilizationReport r = VerifyFamilyCoherence(
          seq, Tail(in), in.front(), plan,
          StabilizationOptions{0, plan.min_confirm * 2, plan.min_confirm}, false);
      if (r.stabilized()) return {};
      std::string out = std::string("not stabilized; xi*=") +
                        (r.xi_star ? r.xi_star->ToString() : "absent") + ":";
      for (const auto& [xi, v] : r.samples) out += " " + xi.ToString() + "->" + v.ToString();
      return out;
    });
  }

  SuiteReport report;
  report.outcomes.resize(jobs.size());
  ParallelFor(jobs.size(), [&](std::size_t i) {
    LemmaOutcome& o = report.outcomes[i];
    o.lemma = jobs[i].lemma;
    o.instance = jobs[i].instance;
    try {
      o.detail = jobs[i].run();
    } catch (const ResourceLimitError& e) {
      o.detail = std::string("resource limit: ") + e.what();
      o.resource_limited = true;
    } catch (const std::exception& e) {
      o.detail = std::string("error: ") + e.what();
    }
    o.pass = o.detail.empty();
  });
  return report;
}

std::optional<std::pair<Ordinal, Ordinal>> UnboundednessProbe(
    const NCSeq& seq, std::vector<Ordinal> a, std::int64_t k,
    const WalkOptions& opts) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  for (std::size_t j = 1; j < a.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (Rho2(seq, 1, {a[i], a[j]}, opts) - 1 > k) return std::make_pair(a[i], a[j]);
    }
  }
  return std::nullopt;
}

}  // namespace hwalks
