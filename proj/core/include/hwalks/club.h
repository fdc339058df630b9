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

#ifndef HWALKS_CLUB_H_
#define HWALKS_CLUB_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hwalks/ordinal.h"

namespace hwalks {

// A set of ordinals given as a finite union of pieces:
//
//   point   {a}
//   run     [lo, hi), every ordinal in the interval
//   prog    {p + w^e * k : k >= k0}, e >= 1, every exponent of p above e
//
// Every constructor normalizes: pieces are sorted, their hulls [lo, hi) are
// disjoint, runs are maximal, and an isolated point that continues a
// progression downward is absorbed into it. Two Club values are equal iff
// their piece lists are equal iff they denote the same set, so every set
// comparison below is exact.
//
// Nothing here requires closure; IsClosed() reports it. The literal syntax is
//
//   finite[2,5,9]   interval(b)   interval(a,b)   fs(limit)
//   copy(<index club>, of=<base club>)   union(<club>, <club>, ...)
//
// and ToString() prints the canonical literal of the normal form.
class Club {
 public:
  enum class PieceKind { kPoint, kRun, kProgression };

  struct Piece {
    PieceKind kind = PieceKind::kPoint;
    Ordinal lo;  // least element
    Ordinal hi;  // least ordinal above every element
    // Progression data.
    Ordinal base;
    std::uint32_t exp = 0;
    std::uint64_t k0 = 0;

    friend bool operator==(const Piece&, const Piece&) = default;

    bool Contains(const Ordinal& x) const;
    // Largest element, if any (runs with limit `hi` and progressions have
    // none).
    std::optional<Ordinal> Max() const;
    // sup of the piece.
    Ordinal Sup() const;
    Ordinal OrderType() const;
  };

  Club() = default;

  static Club Finite(std::vector<Ordinal> elements);
  static Club Interval(const Ordinal& hi);
  static Club Interval(const Ordinal& lo, const Ordinal& hi);
  // Range of the fundamental sequence of `limit`.
  static Club FundamentalRange(const Ordinal& limit);
  // {p + w^e * k : k >= k0} for any p.
  static Club Progression(const Ordinal& p, std::uint32_t e, std::uint64_t k0);
  // Image of `index_set` under the increasing enumeration of `base`.
  // Throws DomainError unless every index is below otp(base).
  static Club Copy(const Club& index_set, const Club& base);
  // Union of clubs whose piece hulls do not overlap; throws DomainError
  // otherwise.
  static Club Union(const std::vector<Club>& parts);

  // Throws ParseError (column positions are 1-based into `text`).
  static Club Parse(std::string_view text);
  std::string ToString() const;

  bool empty() const { return pieces_.empty(); }
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool IsFinite() const;

  bool Contains(const Ordinal& x) const;
  // Least element >= x.
  std::optional<Ordinal> MinAtLeast(const Ordinal& x) const;
  // Greatest element < x; absent when C ∩ x is empty or has no maximum.
  std::optional<Ordinal> MaxBelow(const Ordinal& x) const;
  // sup(C ∩ x), 0 for the empty intersection.
  Ordinal SupBelow(const Ordinal& x) const;
  // x in C and sup(C ∩ x) = x > 0.
  bool IsAccPoint(const Ordinal& x) const;
  // Least ordinal above every element (0 when empty).
  Ordinal StrictSup() const;
  Ordinal Sup() const;
  std::optional<Ordinal> Min() const;
  std::optional<Ordinal> Max() const;
  Ordinal OrderType() const;
  // C(i), the element with otp(C ∩ C(i)) = i. Throws DomainError if
  // i >= otp(C).
  Ordinal Enumerate(const Ordinal& i) const;
  // otp(C ∩ x).
  Ordinal IndexOf(const Ordinal& x) const;

  // C ∩ x.
  Club Below(const Ordinal& x) const;
  // {y in C : y >= x}.
  Club AtLeast(const Ordinal& x) const;

  bool EqualBelow(const Club& other, const Ordinal& beta) const;
  bool SubsetOf(const Club& other) const;
  // Every limit of elements below StrictSup() is an element.
  bool IsClosed() const;

  // Accumulation points below `bound`, ascending; absent if there are more
  // than `cap`.
  std::optional<std::vector<Ordinal>> AccPointsBelow(const Ordinal& bound,
                                                     std::size_t cap) const;
  // Elements of a finite club; throws DomainError for infinite ones and
  // ResourceLimitError past `cap`.
  std::vector<Ordinal> Elements(std::size_t cap = 1u << 20) const;

  friend bool operator==(const Club& a, const Club& b) {
    return a.pieces_ == b.pieces_;
  }

 private:
  static Club FromPieces(std::vector<Piece> pieces);
  // Index of the first piece with hi > x (pieces_.size() if none).
  std::size_t FirstEndingAbove(const Ordinal& x) const;
  // Number of pieces with lo < x.
  std::size_t CountStartingBelow(const Ordinal& x) const;

  std::vector<Piece> pieces_;
};

using ClubPtr = std::shared_ptr<const Club>;

std::ostream& operator<<(std::ostream& os, const Club& c);

}  // namespace hwalks

#endif  // HWALKS_CLUB_H_
