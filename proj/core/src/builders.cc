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

#include "hwalks/builders.h"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "hwalks/errors.h"
#include "hwalks/sampling.h"

namespace hwalks {

// ---------------------------------------------------------------------------
// Stepped-up sequences.

namespace {

int SteppedUpArity(const NCSeqPtr& d, const NCSeqPtr& e) {
  if (d == nullptr || e == nullptr) throw DomainError("stepped-up: null input");
  if (d->n() != 1) throw DomainError("stepped-up: D must be a 1-sequence");
  return e->n() + 1;
}

}  // namespace

SteppedUpSeq::SteppedUpSeq(NCSeqPtr d_seq, NCSeqPtr e_seq,
                           std::vector<Ordinal> s_list, Ordinal kappa)
    : RecursiveSeq(SteppedUpArity(d_seq, e_seq), d_seq->domain(), "stepped-up"),
      d_(std::move(d_seq)),
      e_(std::move(e_seq)),
      kappa_(std::move(kappa)) {
  const Club& dom = d_->domain();
  if (!kappa_.IsLimit()) {
    throw DomainError("stepped-up: kappa must be a limit, got " +
                      kappa_.ToString());
  }
  if (dom != Club::Interval(dom.StrictSup())) {
    throw DomainError("stepped-up: D must live on an interval, got " +
                      dom.ToString());
  }
  if (e_->domain() != Club::Interval(kappa_)) {
    throw DomainError("stepped-up: E must live on interval(" +
                      kappa_.ToString() + "), got " + e_->domain().ToString());
  }
  for (const Ordinal& g : s_list) {
    if (!dom.IsAccPoint(g)) {
      throw DomainError("stepped-up: " + g.ToString() +
                        " is not a limit point of the domain");
    }
    const Ordinal otp = Eta(g);
    if (otp != kappa_) {
      throw DomainError("stepped-up: otp mismatch at " + g.ToString() + ": " +
                        otp.ToString() + " != " + kappa_.ToString());
    }
  }
  if (s_list.empty()) {
    bool realized = false;
    for (const Ordinal& g : LimitGrid(dom.StrictSup(), 8)) {
      if (Eta(g) == kappa_) {
        realized = true;
        break;
      }
    }
    if (!realized) {
      throw DomainError("stepped-up: kappa = " + kappa_.ToString() +
                        " not realized as otp(D_g)");
    }
  }
}

bool SteppedUpSeq::InS0(const Ordinal& g) const {
  return domain().IsAccPoint(g) && Eta(g) <= kappa_;
}

bool SteppedUpSeq::InS(const Ordinal& g) const {
  return domain().IsAccPoint(g) && Eta(g) == kappa_;
}

Club SteppedUpSeq::DPrime(const Ordinal& g) const {
  ClubPtr dg = D(g);
  if (dg->OrderType() <= kappa_) return *dg;
  return dg->AtLeast(dg->Enumerate(kappa_));
}

Tuple SteppedUpSeq::EtaSlice(const Tuple& idx, std::size_t from,
                             std::size_t to) const {
  Tuple out;
  for (std::size_t i = from; i < to; ++i) out.push_back(Eta(idx[i]));
  return out;
}

bool SteppedUpSeq::InExpandedSet(const Tuple& idx) const {
  if (idx.empty() || static_cast<int>(idx.size()) > n()) return false;
  const std::size_t k = idx.size();
  for (const Ordinal& g : idx) {
    if (!domain().IsAccPoint(g)) return false;
  }
  const Ordinal& last = idx.back();
  const bool s0 = InS0(last);
  for (const Ordinal& g : idx) {
    if (InS0(g) != s0) return false;
  }
  if (!s0) {
    const Club dp = DPrime(last);
    for (std::size_t j = 0; j + 1 < k; ++j) {
      if (!dp.IsAccPoint(idx[j])) return false;
    }
    return true;
  }
  ClubPtr d_last = D(last);
  const bool last_in_s = InS(last);
  for (std::size_t j = 0; j + 1 < k; ++j) {
    if (!d_last->IsAccPoint(idx[j])) return false;
    const Tuple e_idx = EtaSlice(idx, j + 1, last_in_s ? k - 1 : k);
    ClubPtr e_club = e_->ClubOf(e_idx);
    if (e_club == nullptr || !e_club->IsAccPoint(Eta(idx[j]))) return false;
  }
  return true;
}

ClubPtr SteppedUpSeq::RuleClub(const Tuple& idx, const Club& parent) const {
  if (!InExpandedSet(idx)) {
    throw DomainError("stepped-up: " + FormatTuple(idx) +
                      " accumulates but fails the membership conditions");
  }
  const std::size_t k = idx.size();
  const Ordinal& g0 = idx.front();
  const Ordinal& last = idx.back();
  if (!InS0(last)) return std::make_shared<const Club>(DPrime(g0));
  if (InS(last)) {
    if (k == 1) return D(g0);
    ClubPtr e_club = e_->RequireClub(EtaSlice(idx, 0, k - 1));
    return std::make_shared<const Club>(Club::Copy(*e_club, *D(g0)));
  }
  if (static_cast<int>(k) < n()) {
    ClubPtr e_club = e_->RequireClub(EtaSlice(idx, 0, k));
    return std::make_shared<const Club>(Club::Copy(*e_club, *D(g0)));
  }
  return std::make_shared<const Club>(parent.Below(g0));
}

std::shared_ptr<const SteppedUpSeq> BuildSteppedUp(NCSeqPtr d_seq,
                                                   NCSeqPtr e_seq,
                                                   std::vector<Ordinal> s_list,
                                                   const Ordinal& kappa) {
  return std::make_shared<const SteppedUpSeq>(std::move(d_seq),
                                              std::move(e_seq),
                                              std::move(s_list), kappa);
}

namespace {

Tuple MapAlong(const Tuple& t, const Club& along) {
  Tuple out;
  out.reserve(t.size());
  for (const Ordinal& x : t) out.push_back(along.Enumerate(x));
  return out;
}

bool Fail(std::string* why, std::string msg) {
  if (why != nullptr) *why = std::move(msg);
  return false;
}

}  // namespace

bool IsCopyAlong(const NCSeq& image, const NCSeq& source, const Club& along,
                 const ScanOptions& opts, std::string* why) {
  const Ordinal otp = along.OrderType();
  if (image.n() != source.n()) return Fail(why, "arity differs");
  if (image.domain() != along) {
    return Fail(why, "image domain " + image.domain().ToString() +
                         " is not " + along.ToString());
  }
  if (source.domain() != Club::Interval(otp)) {
    return Fail(why, "source domain is not interval(" + otp.ToString() + ")");
  }
  AccIndexScan src = EnumerateAccIndices(source, otp, opts);
  AccIndexScan img = EnumerateAccIndices(image, along.StrictSup(), opts);
  std::map<Tuple, ClubPtr> expected;
  for (const AccIndex& a : src.indices) {
    if (a.index.empty()) continue;
    expected.emplace(MapAlong(a.index, along), a.club);
  }
  std::set<Tuple> seen;
  for (const AccIndex& b : img.indices) {
    if (b.index.empty()) continue;
    ClubPtr parent = image.ClubOf(Tail(b.index));
    auto it = expected.find(b.index);
    if (it == expected.end()) {
      // Stored indices with minimal clubs have no counterpart to check.
      if (!parent->IsAccPoint(b.index.front())) continue;
      if (src.exhaustive && img.exhaustive) {
        return Fail(why, "image index " + FormatTuple(b.index) +
                             " has no source counterpart");
      }
      continue;
    }
    seen.insert(b.index);
    const Club want = Club::Copy(*it->second, along);
    if (want != *b.club) {
      return Fail(why, "club at " + FormatTuple(b.index) + " is " +
                           b.club->ToString() + ", expected " +
                           want.ToString());
    }
  }
  for (const auto& [t, club] : expected) {
    if (seen.contains(t)) continue;
    ClubPtr got;
    try {
      got = image.ClubOf(t);
    } catch (const DomainError& err) {
      return Fail(why, err.what());
    }
    if (got == nullptr || *got != Club::Copy(*club, along)) {
      return Fail(why, "source index maps to " + FormatTuple(t) +
                           " which does not carry the copied club");
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// The closure game.

Ordinal GamePosition::AsOrdinal() const {
  if (block == 0) return Ordinal(offset);
  return Ordinal::OmegaPow(1, block) + offset;
}

namespace {

std::string PositionText(const GamePosition& p) {
  return p.AsOrdinal().ToString();
}

// {delta^y : y < w*k} from the explicit turns: every explicit value, plus
// the default stretch from the last explicit value of each block up to the
// next limit.
Club SpineBelowLimit(const std::vector<GameTurn>& turns, std::uint64_t k) {
  std::vector<Ordinal> points{Ordinal()};
  std::vector<Club> runs;
  std::map<std::uint64_t, Ordinal> last_in_block;
  for (const GameTurn& t : turns) {
    if (t.position.block >= k) break;
    points.push_back(t.top);
    last_in_block[t.position.block] = t.top;
  }
  for (const auto& [b, top] : last_in_block) {
    runs.push_back(Club::Interval(top, Ordinal::OmegaPow(1, b + 1)));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Club> parts;
  std::vector<Ordinal> pending;
  // Points covered by a run are dropped; the rest form finite pieces.
  for (const Ordinal& x : points) {
    bool covered = false;
    for (const Club& run : runs) covered = covered || run.Contains(x);
    if (!covered) pending.push_back(x);
  }
  parts.push_back(Club::Finite(std::move(pending)));
  for (Club& run : runs) parts.push_back(std::move(run));
  return Club::Union(parts);
}

// Nonempty increasing lists of at most `max_len` entries from {1..k-1}.
void Subsets(std::uint64_t k, std::size_t max_len,
             std::vector<std::vector<std::uint64_t>>* out) {
  std::vector<std::uint64_t> cur;
  auto rec = [&](auto&& self, std::uint64_t from) -> void {
    if (!cur.empty()) out->push_back(cur);
    if (cur.size() == max_len) return;
    for (std::uint64_t j = from; j < k; ++j) {
      cur.push_back(j);
      self(self, j + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
}

}  // namespace

GameResult BuildByGame(const GameOptions& opts) {
  if (opts.n < 1) throw DomainError("game: n must be >= 1");
  if (opts.rounds == 0) throw DomainError("game: rounds must be >= 1");
  if (opts.block == 0) throw DomainError("game: block must be >= 1");
  static const TrivialAdversary kTrivial;
  const Adversary& adversary = opts.adversary ? *opts.adversary : kTrivial;
  std::mt19937_64 rng(opts.seed);

  GameResult result;
  std::map<Tuple, Club> table;
  Ordinal top;  // delta^0 = 0
  GamePosition pos{0, 0};
  for (std::size_t r = 0; r < opts.rounds; ++r) {
    if (pos.offset == opts.block) {
      pos = GamePosition{pos.block + 1, 0};
    } else {
      ++pos.offset;
    }
    GameTurn turn;
    turn.position = pos;
    if (pos.IsLimit()) {
      const std::uint64_t k = pos.block;
      top = Ordinal::OmegaPow(1, k);
      const Club spine = SpineBelowLimit(result.transcript, k);
      table[{top}] = spine;
      std::vector<std::vector<std::uint64_t>> subsets;
      Subsets(k, static_cast<std::size_t>(opts.n - 1), &subsets);
      for (const auto& s : subsets) {
        Tuple idx;
        for (std::uint64_t j : s) idx.push_back(Ordinal::OmegaPow(1, j));
        idx.push_back(top);
        table[idx] = spine.Below(Ordinal::OmegaPow(1, s.front()));
      }
    } else if (pos.PlayerOne()) {
      turn.player_one = true;
      Ordinal next = adversary.Move(top, pos, rng);
      if (next < top) {
        throw DomainError("game: " + adversary.name() + " adversary at " +
                          PositionText(pos) + " moved from " + top.ToString() +
                          " down to " + next.ToString() +
                          "; not an end-extension");
      }
      if (!Ordinal::LeftDifference(top, next).IsFinite()) {
        throw DomainError("game: " + adversary.name() + " adversary at " +
                          PositionText(pos) + " extended " + top.ToString() +
                          " to " + next.ToString() +
                          "; only finite extensions are supported");
      }
      top = next;
    } else {
      top = top + 1;
    }
    turn.top = top;
    result.transcript.push_back(turn);
  }
  result.top = top;
  result.seq = std::make_shared<const ExplicitSeq>(
      opts.n, Club::Interval(top + 1), std::move(table), nullptr, "game-built");
  return result;
}

SpecFile GameResult::ToSpec() const {
  SpecFile spec;
  spec.n = seq->n();
  spec.domain = seq->domain();
  for (const auto& [idx, club] : seq->table()) spec.entries.emplace(idx, *club);
  spec.comments.push_back("transcript: position player delta");
  for (const GameTurn& t : transcript) {
    spec.comments.push_back(PositionText(t.position) + " " +
                            (t.player_one ? "I" : "II") + " " +
                            t.top.ToString());
  }
  return spec;
}

std::vector<std::string> CheckGameTranscript(const GameResult& game) {
  std::vector<std::string> problems;
  const NCSeq& seq = *game.seq;
  // delta values by (block, offset) for the explicit positions.
  std::map<std::pair<std::uint64_t, std::uint64_t>, Ordinal> delta;
  std::map<std::uint64_t, std::uint64_t> block_end;  // last explicit offset
  for (const GameTurn& t : game.transcript) {
    delta[{t.position.block, t.position.offset}] = t.top;
    block_end[t.position.block] =
        std::max(block_end[t.position.block], t.position.offset);
  }
  auto expect_below = [&](const Club& c, std::uint64_t k,
                          const std::string& name) {
    // Block by block: the explicit values exactly, then every ordinal from
    // the last explicit value up to the next limit.
    for (std::uint64_t b = 0; b < k; ++b) {
      const Ordinal lo = b == 0 ? Ordinal() : Ordinal::OmegaPow(1, b);
      const Ordinal hi = Ordinal::OmegaPow(1, b + 1);
      std::set<Ordinal> want{lo};
      Ordinal last = lo;
      for (std::uint64_t j = 1; j <= block_end[b]; ++j) {
        want.insert(delta[{b, j}]);
        last = std::max(last, delta[{b, j}]);
      }
      std::vector<Ordinal> got =
          c.AtLeast(lo).Below(last).Elements();
      std::vector<Ordinal> want_head(want.begin(), want.end());
      want_head.erase(std::remove_if(want_head.begin(), want_head.end(),
                                     [&](const Ordinal& x) { return x >= last; }),
                      want_head.end());
      if (got != want_head ||
          c.AtLeast(last).Below(hi) != Club::Interval(last, hi)) {
        problems.push_back(name + " differs from {delta^y} in block " +
                           std::to_string(b));
        return;
      }
    }
  };
  for (const GameTurn& t : game.transcript) {
    if (!t.position.IsLimit()) continue;
    const std::uint64_t k = t.position.block;
    ClubPtr c = seq.ClubOf({t.top});
    if (c == nullptr) {
      problems.push_back("position " + PositionText(t.position) +
                         ": index invalid");
      continue;
    }
    if (*c != c->Below(t.top)) {
      problems.push_back("club at " + t.top.ToString() + " reaches past it");
    }
    expect_below(*c, k, "C" + FormatTuple({t.top}));
    std::vector<std::vector<std::uint64_t>> subsets;
    Subsets(k, static_cast<std::size_t>(seq.n() - 1), &subsets);
    for (const auto& s : subsets) {
      Tuple idx;
      for (std::uint64_t j : s) idx.push_back(Ordinal::OmegaPow(1, j));
      idx.push_back(t.top);
      ClubPtr cs = seq.ClubOf(idx);
      if (cs == nullptr) {
        problems.push_back("index " + FormatTuple(idx) + " invalid");
        continue;
      }
      if (cs->Sup() != idx.front() || cs->Max().has_value()) {
        problems.push_back("C" + FormatTuple(idx) + " not cofinal in " +
                           idx.front().ToString());
      }
      expect_below(*cs, s.front(), "C" + FormatTuple(idx));
    }
  }
  return problems;
}

// ---------------------------------------------------------------------------
// Mutation.

Mutation MutateOneClub(std::shared_ptr<const RecursiveSeq> base,
                       const Ordinal& window, std::uint64_t seed,
                       const ScanOptions& opts) {
  AccIndexScan scan = EnumerateAccIndices(*base, window, opts);
  // Only heads in X are constrained inside the window, so a change elsewhere
  // could go unnoticed by a windowed check.
  const std::vector<Ordinal> x = CheckCoherence(*base, window, opts).x_set;
  std::vector<AccIndex> candidates;
  for (AccIndex& a : scan.indices) {
    if (a.index.empty()) continue;
    if (!std::binary_search(x.begin(), x.end(), a.index.front())) continue;
    ClubPtr parent = base->ClubOf(Tail(a.index));
    if (parent->IsAccPoint(a.index.front())) candidates.push_back(std::move(a));
  }
  if (candidates.empty()) {
    throw DomainError("mutation: no accumulation index with head in X below " +
                      window.ToString());
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const AccIndex& pick = candidates[rng() % candidates.size()];
    const Club& c = *pick.club;
    const Ordinal head = pick.index.front();
    const int how = static_cast<int>(rng() % 3);
    Club next;
    std::string name;
    if (how == 0) {
      // Drop the least element; the rest is still closed and cofinal.
      next = c.AtLeast(c.Min()->Succ());
      name = "drop-min";
    } else if (how == 1) {
      // Thin out to the image of the fundamental sequence of otp.
      next = Club::Copy(Club::FundamentalRange(c.OrderType()), c);
      name = "thin-to-fs";
    } else {
      // Drop a short initial segment.
      const Ordinal cut = c.Enumerate(Ordinal(1 + rng() % 5));
      if (c.AtLeast(cut).empty()) continue;
      next = c.AtLeast(cut);
      name = "tail";
    }
    if (next == c || next.empty() || next.Sup() != head) continue;
    Mutation m;
    m.index = pick.index;
    m.before = c;
    m.after = next;
    m.how = name;
    m.seq = std::make_shared<const OverrideSeq>(
        base, std::map<Tuple, Club>{{pick.index, next}});
    return m;
  }
  throw DomainError("mutation: no club could be changed");
}

}  // namespace hwalks
