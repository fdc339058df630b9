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

#ifndef HWALKS_BUILDERS_H_
#define HWALKS_BUILDERS_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hwalks/club.h"
#include "hwalks/coherence.h"
#include "hwalks/ncseq.h"
#include "hwalks/ordinal.h"
#include "hwalks/spec_file.h"
#include "hwalks/tuple.h"

namespace hwalks {

// (m+1)-C-sequence obtained from a 1-C-sequence D on an interval and an
// m-C-sequence E on interval(kappa) by copying E along the clubs D_g of
// order type kappa.
//
//   S0 = limits g with otp(D_g) <= kappa, S1 = the other limits,
//   S  = limits g with otp(D_g) = kappa,
//   D'_g = D_g on S0 and {x in D_g : x >= D_g(kappa)} on S1.
//
// Indices inside S1 get C = D'_(g_0); indices inside S0 get D_g (for <g>
// with g in S), the image of the matching E club under the enumeration of
// D_(g_0), or C_(tail) ∩ g_0 at full length when the last entry is outside S.
class SteppedUpSeq : public RecursiveSeq {
 public:
  // Throws DomainError when D is not a 1-sequence on an interval, E is not
  // on interval(kappa), some listed g has otp(D_g) != kappa, or no limit
  // below the domain's sup has otp(D_g) = kappa.
  SteppedUpSeq(NCSeqPtr d_seq, NCSeqPtr e_seq, std::vector<Ordinal> s_list,
               Ordinal kappa);

  ClubPtr RuleClub(const Tuple& idx, const Club& parent) const override;

  // The membership conditions for indices with more than one club element;
  // false for indices mixing S0 and S1 or containing non-limits.
  bool InExpandedSet(const Tuple& idx) const;

  bool InS(const Ordinal& g) const;
  bool InS0(const Ordinal& g) const;
  const Ordinal& kappa() const { return kappa_; }
  const NCSeqPtr& d_seq() const { return d_; }
  const NCSeqPtr& e_seq() const { return e_; }

 private:
  ClubPtr D(const Ordinal& g) const { return d_->RequireClub({g}); }
  Club DPrime(const Ordinal& g) const;
  Ordinal Eta(const Ordinal& g) const { return D(g)->OrderType(); }
  // <eta(idx[from]), ..., eta(idx[to - 1])>.
  Tuple EtaSlice(const Tuple& idx, std::size_t from, std::size_t to) const;

  NCSeqPtr d_;
  NCSeqPtr e_;
  Ordinal kappa_;
};

std::shared_ptr<const SteppedUpSeq> BuildSteppedUp(NCSeqPtr d_seq,
                                                   NCSeqPtr e_seq,
                                                   std::vector<Ordinal> s_list,
                                                   const Ordinal& kappa);

// True iff `image` is `source` transported along the increasing enumeration
// of `along`: domains correspond and every accumulation index of either
// side maps to one of the other with the copied club. Scans below
// otp(along) on the source side.
bool IsCopyAlong(const NCSeq& image, const NCSeq& source, const Club& along,
                 const ScanOptions& opts = {}, std::string* why = nullptr);

// ---------------------------------------------------------------------------
// The closure game. Positions are w*k + j. Player I moves at odd j, Player II
// at even j and at limits. Each block w*k + 1 .. w*k + block is played
// explicitly; the remaining positions of the block extend the top by one.

struct GamePosition {
  std::uint64_t block = 0;   // k
  std::uint64_t offset = 0;  // j

  Ordinal AsOrdinal() const;
  bool IsLimit() const { return offset == 0 && block > 0; }
  bool PlayerOne() const { return offset % 2 == 1; }
};

// Player I. Proposes the next top ordinal; it must be a finite end-extension
// of `top`.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string name() const = 0;
  virtual Ordinal Move(const Ordinal& top, const GamePosition& pos,
                       std::mt19937_64& rng) const = 0;
};

// Extends by one.
class TrivialAdversary : public Adversary {
 public:
  std::string name() const override { return "trivial"; }
  Ordinal Move(const Ordinal& top, const GamePosition&,
               std::mt19937_64&) const override {
    return top + 1;
  }
};

// Extends by 0..3, drawn from the seeded generator.
class RandomAdversary : public Adversary {
 public:
  std::string name() const override { return "random"; }
  Ordinal Move(const Ordinal& top, const GamePosition&,
               std::mt19937_64& rng) const override {
    return top + rng() % 4;
  }
};

struct GameOptions {
  int n = 1;
  std::size_t rounds = 1;       // explicit positions played, limits included
  std::uint64_t block = 8;      // explicit successor positions per block
  std::uint64_t seed = 0;
  const Adversary* adversary = nullptr;  // default: TrivialAdversary
};

struct GameTurn {
  GamePosition position;
  bool player_one = false;
  Ordinal top;  // delta at this position
};

struct GameResult {
  std::shared_ptr<const ExplicitSeq> seq;
  std::vector<GameTurn> transcript;
  Ordinal top;  // delta at the last position; the domain is top + 1

  SpecFile ToSpec() const;
};

// Throws DomainError for rounds == 0, n < 1, block == 0, or an adversary
// move that is not a finite end-extension (with the position and values).
GameResult BuildByGame(const GameOptions& opts);

// Rechecks the limit-round requirement directly against the transcript:
// C_(delta^x) = {delta^y : y < x} and, for every increasing list of at most
// n-1 earlier limits y_0 < ..., C_(delta^y_0, ..., delta^x) equals
// {delta^z : z < y_0}. Returns the problems found.
std::vector<std::string> CheckGameTranscript(const GameResult& game);

// ---------------------------------------------------------------------------
// Seeded single-club mutation.

struct Mutation {
  std::shared_ptr<const RecursiveSeq> seq;
  Tuple index;
  Club before;
  Club after;
  std::string how;
};

// Replaces the club at one accumulation index of `base` (entries below
// `window`) by a different club that is still closed and cofinal in the
// same range. Throws DomainError if `base` has no mutable index there.
Mutation MutateOneClub(std::shared_ptr<const RecursiveSeq> base,
                       const Ordinal& window, std::uint64_t seed,
                       const ScanOptions& opts = {});

}  // namespace hwalks

#endif  // HWALKS_BUILDERS_H_
