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

#include "hwalks/club.h"

#include <algorithm>
#include <cctype>
#include <utility>

#include "hwalks/errors.h"

namespace hwalks {
namespace {

using Piece = Club::Piece;
using Kind = Club::PieceKind;

constexpr std::size_t kMaxExpandedPoints = 1u << 20;

Piece MakePoint(const Ordinal& a) {
  Piece p;
  p.kind = Kind::kPoint;
  p.lo = a;
  p.hi = a.Succ();
  return p;
}

// Requires lo < hi.
Piece MakeRun(const Ordinal& lo, const Ordinal& hi) {
  if (hi == lo.Succ()) return MakePoint(lo);
  Piece p;
  p.kind = Kind::kRun;
  p.lo = lo;
  p.hi = hi;
  return p;
}

// Requires e >= 1 and every exponent of `base` above e.
Piece MakeProg(const Ordinal& base, std::uint32_t e, std::uint64_t k0) {
  Piece p;
  p.kind = Kind::kProgression;
  p.base = base;
  p.exp = e;
  p.k0 = k0;
  p.lo = base + Ordinal::OmegaPow(e, k0);
  p.hi = base + Ordinal::OmegaPow(e + 1);
  return p;
}

bool HasTermsBelow(const Ordinal& x, std::uint32_t e) {
  return !x.IsZero() && x.terms().back().exp < e;
}

Ordinal ProgElement(const Piece& p, std::uint64_t k) {
  return p.base + Ordinal::OmegaPow(p.exp, k);
}

// Least element >= x; requires x < p.hi.
Ordinal PieceMinAtLeast(const Piece& p, const Ordinal& x) {
  if (x <= p.lo) return p.lo;
  switch (p.kind) {
    case Kind::kPoint:
      return p.lo;
    case Kind::kRun:
      return x;
    case Kind::kProgression: {
      const std::uint64_t m = x.Coefficient(p.exp);
      return ProgElement(p, HasTermsBelow(x, p.exp) ? m + 1 : m);
    }
  }
  return p.lo;
}

// Greatest element < x; requires p.lo < x < p.hi.
std::optional<Ordinal> PieceMaxBelow(const Piece& p, const Ordinal& x) {
  switch (p.kind) {
    case Kind::kPoint:
      return p.lo;
    case Kind::kRun:
      if (x.IsSuccessor()) return x.Pred();
      return std::nullopt;
    case Kind::kProgression: {
      const std::uint64_t m = x.Coefficient(p.exp);
      return ProgElement(p, HasTermsBelow(x, p.exp) ? m : m - 1);
    }
  }
  return std::nullopt;
}

// otp(p ∩ x).
Ordinal PieceIndexOf(const Piece& p, const Ordinal& x) {
  if (x <= p.lo) return Ordinal();
  if (x >= p.hi) return p.OrderType();
  switch (p.kind) {
    case Kind::kPoint:
      return Ordinal(1);
    case Kind::kRun:
      return Ordinal::LeftDifference(p.lo, x);
    case Kind::kProgression:
      return Ordinal(PieceMinAtLeast(p, x).Coefficient(p.exp) - p.k0);
  }
  return Ordinal();
}

Ordinal PieceEnumerate(const Piece& p, const Ordinal& i) {
  switch (p.kind) {
    case Kind::kPoint:
      return p.lo;
    case Kind::kRun:
      return p.lo + i;
    case Kind::kProgression:
      return ProgElement(p, p.k0 + i.AsFinite());
  }
  return p.lo;
}

void AppendProgression(std::vector<Piece>& out, const Ordinal& p,
                       std::uint32_t e, std::uint64_t k0) {
  if (e == 0) {
    out.push_back(MakeRun(p + k0, p.TermsAbove(0) + Ordinal::Omega()));
    return;
  }
  const Ordinal clean = p.TermsAbove(e);
  const std::uint64_t m = p.Coefficient(e);
  if (HasTermsBelow(p, e)) {
    if (k0 == 0) {
      out.push_back(MakePoint(p));
      out.push_back(MakeProg(clean, e, m + 1));
    } else {
      out.push_back(MakeProg(clean, e, m + k0));
    }
    return;
  }
  out.push_back(MakeProg(clean, e, m + k0));
}

// Piece of `p` shifted down by `offset` (every element of `p` is >= offset).
Piece ShiftDown(const Piece& p, const Ordinal& offset) {
  switch (p.kind) {
    case Kind::kPoint:
      return MakePoint(Ordinal::LeftDifference(offset, p.lo));
    case Kind::kRun:
      return MakeRun(Ordinal::LeftDifference(offset, p.lo),
                     Ordinal::LeftDifference(offset, p.hi));
    case Kind::kProgression: {
      if (offset <= p.base) {
        return MakeProg(Ordinal::LeftDifference(offset, p.base), p.exp, p.k0);
      }
      const Ordinal r = Ordinal::LeftDifference(p.base, offset);
      return MakeProg(Ordinal(), p.exp, p.k0 - r.Coefficient(p.exp));
    }
  }
  return p;
}

// Appends the image of the index piece `q` under the enumeration of `target`.
void MapInto(std::vector<Piece>& out, const Piece& q, const Piece& target) {
  switch (target.kind) {
    case Kind::kPoint:
      out.push_back(target);
      return;
    case Kind::kRun: {
      const Ordinal& a = target.lo;
      switch (q.kind) {
        case Kind::kPoint:
          out.push_back(MakePoint(a + q.lo));
          return;
        case Kind::kRun:
          out.push_back(MakeRun(a + q.lo, a + q.hi));
          return;
        case Kind::kProgression:
          AppendProgression(out, a + q.base, q.exp, q.k0);
          return;
      }
      return;
    }
    case Kind::kProgression: {
      if (q.kind == Kind::kProgression || !q.lo.IsFinite()) {
        throw DomainError("copy: index piece exceeds a progression of type w");
      }
      const std::uint64_t c = q.lo.AsFinite();
      if (q.hi == Ordinal::Omega()) {
        out.push_back(MakeProg(target.base, target.exp, target.k0 + c));
        return;
      }
      const std::uint64_t d = q.hi.AsFinite();
      if (d - c > kMaxExpandedPoints) {
        throw ResourceLimitError("copy: finite index run too long");
      }
      for (std::uint64_t k = c; k < d; ++k) {
        out.push_back(MakePoint(ProgElement(target, target.k0 + k)));
      }
      return;
    }
  }
}

class ClubParser {
 public:
  explicit ClubParser(std::string_view text) : text_(text) {}

  Club Run() {
    Club c = ParseClub();
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing characters after club literal");
    return c;
  }

 private:
  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  [[noreturn]] void FailAt(std::size_t pos, const std::string& what) const {
    throw ParseError(what, 0, pos + 1);
  }
  [[noreturn]] void Fail(const std::string& what) const { FailAt(pos_, what); }

  void Expect(char c) {
    SkipSpace();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      Fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  bool Peek(char c) {
    SkipSpace();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string Word() {
    SkipSpace();
    const std::size_t b = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    return std::string(text_.substr(b, pos_ - b));
  }

  Ordinal ParseOrdinal() {
    SkipSpace();
    const std::size_t b = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')' &&
           text_[pos_] != ']') {
      ++pos_;
    }
    try {
      return Ordinal::Parse(text_.substr(b, pos_ - b));
    } catch (const ParseError& err) {
      throw ParseError(err.detail(), 0, b + err.column());
    }
  }

  Club ParseClub() {
    const std::size_t start = (SkipSpace(), pos_);
    const std::string word = Word();
    try {
      if (word == "finite") return ParseFinite();
      if (word == "interval") return ParseInterval();
      if (word == "fs") {
        Expect('(');
        const std::size_t at = (SkipSpace(), pos_);
        const Ordinal a = ParseOrdinal();
        Expect(')');
        if (!a.IsLimit()) FailAt(at, "fs() needs a limit ordinal");
        return Club::FundamentalRange(a);
      }
      if (word == "copy") {
        Expect('(');
        Club index = ParseClub();
        Expect(',');
        const std::size_t at = (SkipSpace(), pos_);
        if (Word() != "of") FailAt(at, "expected 'of='");
        Expect('=');
        Club base = ParseClub();
        Expect(')');
        return Club::Copy(index, base);
      }
      if (word == "union") {
        Expect('(');
        std::vector<Club> parts;
        parts.push_back(ParseClub());
        while (Peek(',')) {
          ++pos_;
          parts.push_back(ParseClub());
        }
        Expect(')');
        return Club::Union(parts);
      }
    } catch (const DomainError& err) {
      FailAt(start, err.what());
    }
    FailAt(start, word.empty() ? "expected a club literal"
                               : "unknown club form '" + word + "'");
  }

  Club ParseFinite() {
    Expect('[');
    std::vector<Ordinal> elements;
    if (Peek(']')) {
      ++pos_;
      return Club();
    }
    elements.push_back(ParseOrdinal());
    while (Peek(',')) {
      ++pos_;
      elements.push_back(ParseOrdinal());
    }
    Expect(']');
    return Club::Finite(std::move(elements));
  }

  Club ParseInterval() {
    Expect('(');
    const std::size_t at = (SkipSpace(), pos_);
    Ordinal a = ParseOrdinal();
    if (Peek(',')) {
      ++pos_;
      Ordinal b = ParseOrdinal();
      Expect(')');
      if (b <= a) FailAt(at, "empty interval");
      return Club::Interval(a, b);
    }
    Expect(')');
    return Club::Interval(a);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string PieceLiteral(const Piece& p) {
  switch (p.kind) {
    case Kind::kPoint:
      return "finite[" + p.lo.ToString() + "]";
    case Kind::kRun:
      if (p.lo.IsZero()) return "interval(" + p.hi.ToString() + ")";
      return "interval(" + p.lo.ToString() + "," + p.hi.ToString() + ")";
    case Kind::kProgression: {
      const std::string fs = "fs(" + p.hi.ToString() + ")";
      if (p.k0 == 0) return fs;
      return "copy(interval(" + std::to_string(p.k0) + ",w),of=" + fs + ")";
    }
  }
  return "";
}

}  // namespace

bool Club::Piece::Contains(const Ordinal& x) const {
  if (x < lo || x >= hi) return false;
  if (kind != Kind::kProgression) return true;
  return !HasTermsBelow(x, exp);
}

std::optional<Ordinal> Club::Piece::Max() const {
  switch (kind) {
    case Kind::kPoint:
      return lo;
    case Kind::kRun:
      if (hi.IsSuccessor()) return hi.Pred();
      return std::nullopt;
    case Kind::kProgression:
      return std::nullopt;
  }
  return std::nullopt;
}

Ordinal Club::Piece::Sup() const {
  std::optional<Ordinal> m = Max();
  return m ? *m : hi;
}

Ordinal Club::Piece::OrderType() const {
  switch (kind) {
    case Kind::kPoint:
      return Ordinal(1);
    case Kind::kRun:
      return Ordinal::LeftDifference(lo, hi);
    case Kind::kProgression:
      return Ordinal::Omega();
  }
  return Ordinal();
}

Club Club::FromPieces(std::vector<Piece> pieces) {
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    if (pieces[i - 1].hi > pieces[i].lo) {
      throw DomainError("overlapping club pieces");
    }
  }
  // Merge contiguous points and runs; a run reaching the first element of a
  // progression takes that element.
  std::vector<Piece> merged;
  merged.reserve(pieces.size());
  for (Piece q : pieces) {
    if (!merged.empty()) {
      Piece& last = merged.back();
      if (last.kind != Kind::kProgression && last.hi == q.lo) {
        if (q.kind != Kind::kProgression) {
          last = MakeRun(last.lo, q.hi);
          continue;
        }
        last = MakeRun(last.lo, q.lo.Succ());
        q = MakeProg(q.base, q.exp, q.k0 + 1);
      }
    }
    merged.push_back(std::move(q));
  }
  // Absorb isolated points that continue a progression downward.
  std::vector<Piece> out;
  out.reserve(merged.size());
  for (std::size_t i = merged.size(); i-- > 0;) {
    Piece q = merged[i];
    if (q.kind == Kind::kPoint && !out.empty()) {
      Piece& next = out.back();
      if (next.kind == Kind::kProgression && next.k0 > 0 &&
          ProgElement(next, next.k0 - 1) == q.lo) {
        next = MakeProg(next.base, next.exp, next.k0 - 1);
        continue;
      }
    }
    out.push_back(std::move(q));
  }
  std::reverse(out.begin(), out.end());
  Club c;
  c.pieces_ = std::move(out);
  return c;
}

Club Club::Finite(std::vector<Ordinal> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
  std::vector<Piece> pieces;
  pieces.reserve(elements.size());
  for (const Ordinal& a : elements) pieces.push_back(MakePoint(a));
  return FromPieces(std::move(pieces));
}

Club Club::Interval(const Ordinal& hi) { return Interval(Ordinal(), hi); }

Club Club::Interval(const Ordinal& lo, const Ordinal& hi) {
  if (hi <= lo) return Club();
  return FromPieces({MakeRun(lo, hi)});
}

Club Club::FundamentalRange(const Ordinal& limit) {
  if (!limit.IsLimit()) {
    throw DomainError("fundamental range of non-limit " + limit.ToString());
  }
  const Ordinal p = limit.FundamentalSequence(0);
  return Progression(p, limit.terms().back().exp - 1, 0);
}

Club Club::Progression(const Ordinal& p, std::uint32_t e, std::uint64_t k0) {
  std::vector<Piece> pieces;
  AppendProgression(pieces, p, e, k0);
  return FromPieces(std::move(pieces));
}

Club Club::Copy(const Club& index_set, const Club& base) {
  if (index_set.StrictSup() > base.OrderType()) {
    throw DomainError("copy: index set " + index_set.ToString() +
                      " exceeds the order type " +
                      base.OrderType().ToString() + " of " + base.ToString());
  }
  std::vector<Piece> out;
  Ordinal offset;
  for (const Piece& target : base.pieces_) {
    const Ordinal end = offset + target.OrderType();
    const Club part = index_set.AtLeast(offset).Below(end);
    for (const Piece& q : part.pieces_) {
      MapInto(out, ShiftDown(q, offset), target);
    }
    offset = end;
  }
  return FromPieces(std::move(out));
}

Club Club::Union(const std::vector<Club>& parts) {
  std::vector<Piece> pieces;
  for (const Club& c : parts) {
    pieces.insert(pieces.end(), c.pieces_.begin(), c.pieces_.end());
  }
  return FromPieces(std::move(pieces));
}

Club Club::Parse(std::string_view text) { return ClubParser(text).Run(); }

std::string Club::ToString() const {
  std::vector<std::string> items;
  std::string points;
  auto flush = [&] {
    if (!points.empty()) items.push_back("finite[" + points + "]");
    points.clear();
  };
  for (const Piece& p : pieces_) {
    if (p.kind == Kind::kPoint) {
      if (!points.empty()) points += ',';
      points += p.lo.ToString();
      continue;
    }
    flush();
    items.push_back(PieceLiteral(p));
  }
  flush();
  if (items.empty()) return "finite[]";
  if (items.size() == 1) return items[0];
  std::string out = "union(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ',';
    out += items[i];
  }
  return out + ")";
}

bool Club::IsFinite() const {
  for (const Piece& p : pieces_) {
    if (p.kind == Kind::kProgression || !p.OrderType().IsFinite()) {
      return false;
    }
  }
  return true;
}

std::size_t Club::FirstEndingAbove(const Ordinal& x) const {
  return static_cast<std::size_t>(
      std::partition_point(pieces_.begin(), pieces_.end(),
                           [&](const Piece& p) { return p.hi <= x; }) -
      pieces_.begin());
}

std::size_t Club::CountStartingBelow(const Ordinal& x) const {
  return static_cast<std::size_t>(
      std::partition_point(pieces_.begin(), pieces_.end(),
                           [&](const Piece& p) { return p.lo < x; }) -
      pieces_.begin());
}

bool Club::Contains(const Ordinal& x) const {
  const std::size_t i = FirstEndingAbove(x);
  return i < pieces_.size() && pieces_[i].Contains(x);
}

std::optional<Ordinal> Club::MinAtLeast(const Ordinal& x) const {
  const std::size_t i = FirstEndingAbove(x);
  if (i == pieces_.size()) return std::nullopt;
  return PieceMinAtLeast(pieces_[i], x);
}

std::optional<Ordinal> Club::MaxBelow(const Ordinal& x) const {
  const std::size_t j = CountStartingBelow(x);
  if (j == 0) return std::nullopt;
  const Piece& p = pieces_[j - 1];
  if (x >= p.hi) return p.Max();
  return PieceMaxBelow(p, x);
}

Ordinal Club::SupBelow(const Ordinal& x) const {
  const std::size_t j = CountStartingBelow(x);
  if (j == 0) return Ordinal();
  const Piece& p = pieces_[j - 1];
  if (x >= p.hi) return p.Sup();
  std::optional<Ordinal> m = PieceMaxBelow(p, x);
  return m ? *m : x;
}

bool Club::IsAccPoint(const Ordinal& x) const {
  return !x.IsZero() && Contains(x) && SupBelow(x) == x;
}

Ordinal Club::StrictSup() const {
  return pieces_.empty() ? Ordinal() : pieces_.back().hi;
}

Ordinal Club::Sup() const {
  return pieces_.empty() ? Ordinal() : pieces_.back().Sup();
}

std::optional<Ordinal> Club::Min() const {
  if (pieces_.empty()) return std::nullopt;
  return pieces_.front().lo;
}

std::optional<Ordinal> Club::Max() const {
  if (pieces_.empty()) return std::nullopt;
  return pieces_.back().Max();
}

Ordinal Club::OrderType() const {
  Ordinal total;
  for (const Piece& p : pieces_) total = total + p.OrderType();
  return total;
}

Ordinal Club::Enumerate(const Ordinal& i) const {
  Ordinal offset;
  for (const Piece& p : pieces_) {
    const Ordinal end = offset + p.OrderType();
    if (i < end) return PieceEnumerate(p, Ordinal::LeftDifference(offset, i));
    offset = end;
  }
  throw DomainError("enumerate: index " + i.ToString() +
                    " is not below the order type " + offset.ToString());
}

Ordinal Club::IndexOf(const Ordinal& x) const {
  Ordinal offset;
  for (const Piece& p : pieces_) {
    if (p.hi <= x) {
      offset = offset + p.OrderType();
      continue;
    }
    return offset + PieceIndexOf(p, x);
  }
  return offset;
}

Club Club::Below(const Ordinal& x) const {
  std::vector<Piece> out;
  for (const Piece& p : pieces_) {
    if (p.hi <= x) {
      out.push_back(p);
      continue;
    }
    if (p.lo < x) {
      if (p.kind == Kind::kRun) {
        out.push_back(MakeRun(p.lo, x));
      } else if (p.kind == Kind::kProgression) {
        const std::uint64_t last = PieceMaxBelow(p, x)->Coefficient(p.exp);
        if (last - p.k0 >= kMaxExpandedPoints) {
          throw ResourceLimitError("club truncation expands too many points");
        }
        for (std::uint64_t k = p.k0; k <= last; ++k) {
          out.push_back(MakePoint(ProgElement(p, k)));
        }
      }
    }
    break;
  }
  return FromPieces(std::move(out));
}

Club Club::AtLeast(const Ordinal& x) const {
  std::vector<Piece> out;
  for (const Piece& p : pieces_) {
    if (p.hi <= x) continue;
    if (p.lo >= x) {
      out.push_back(p);
    } else if (p.kind == Kind::kRun) {
      out.push_back(MakeRun(x, p.hi));
    } else if (p.kind == Kind::kProgression) {
      out.push_back(MakeProg(p.base, p.exp,
                             PieceMinAtLeast(p, x).Coefficient(p.exp)));
    }
  }
  return FromPieces(std::move(out));
}

bool Club::EqualBelow(const Club& other, const Ordinal& beta) const {
  return Below(beta) == other.Below(beta);
}

bool Club::SubsetOf(const Club& other) const {
  for (const Piece& p : pieces_) {
    switch (p.kind) {
      case Kind::kPoint:
        if (!other.Contains(p.lo)) return false;
        break;
      case Kind::kRun: {
        const std::size_t i = other.FirstEndingAbove(p.lo);
        if (i == other.pieces_.size()) return false;
        const Piece& q = other.pieces_[i];
        if (q.kind != Kind::kRun || q.lo > p.lo || q.hi < p.hi) return false;
        break;
      }
      case Kind::kProgression: {
        Ordinal x = p.lo;
        while (true) {
          const std::size_t i = other.FirstEndingAbove(x);
          if (i == other.pieces_.size() || !other.pieces_[i].Contains(x)) {
            return false;
          }
          const Piece& q = other.pieces_[i];
          if (q.kind == Kind::kProgression && q.base == p.base &&
              q.exp == p.exp) {
            break;
          }
          const Ordinal next = q.kind == Kind::kRun ? q.hi : x.Succ();
          if (next >= p.hi) break;
          x = PieceMinAtLeast(p, next);
        }
        break;
      }
    }
  }
  return true;
}

bool Club::IsClosed() const {
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
    if (!pieces_[i].Max() && pieces_[i + 1].lo != pieces_[i].hi) return false;
  }
  return true;
}

std::optional<std::vector<Ordinal>> Club::AccPointsBelow(
    const Ordinal& bound, std::size_t cap) const {
  std::vector<Ordinal> out;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& p = pieces_[i];
    if (p.lo >= bound) break;
    if (i > 0 && !pieces_[i - 1].Max() && pieces_[i - 1].hi == p.lo) {
      out.push_back(p.lo);
    }
    if (p.kind == Kind::kRun) {
      for (Ordinal x = p.lo.NextLimit(); x < p.hi && x < bound;
           x = x.NextLimit()) {
        if (out.size() >= cap) return std::nullopt;
        out.push_back(x);
      }
    }
    if (out.size() > cap) return std::nullopt;
  }
  return out;
}

std::vector<Ordinal> Club::Elements(std::size_t cap) const {
  std::vector<Ordinal> out;
  for (const Piece& p : pieces_) {
    if (p.kind == Kind::kPoint) {
      out.push_back(p.lo);
    } else if (p.kind == Kind::kRun && p.OrderType().IsFinite()) {
      for (Ordinal x = p.lo; x < p.hi; x = x.Succ()) {
        if (out.size() >= cap) throw ResourceLimitError("club too large");
        out.push_back(x);
      }
    } else {
      throw DomainError("club " + ToString() + " is infinite");
    }
    if (out.size() > cap) throw ResourceLimitError("club too large");
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Club& c) {
  return os << c.ToString();
}

}  // namespace hwalks
