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

#ifndef HWALKS_ORDINAL_H_
#define HWALKS_ORDINAL_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/container/small_vector.hpp>

namespace hwalks {

// One Cantor normal form summand w^exp * coef.
struct Term {
  std::uint32_t exp = 0;
  std::uint64_t coef = 1;

  friend bool operator==(const Term&, const Term&) = default;
};

enum class OrdinalKind { kZero, kSuccessor, kLimit };

// An ordinal below w^w in Cantor normal form. Terms are kept with strictly
// decreasing exponents and positive coefficients, so structural equality is
// ordinal equality and lexicographic comparison of the term list is the
// ordinal order.
class Ordinal {
 public:
  using Terms = boost::container::small_vector<Term, 3>;

  Ordinal() = default;
  explicit Ordinal(std::uint64_t n);

  // Throws DomainError unless `terms` is in normal form.
  static Ordinal FromTerms(Terms terms);
  static Ordinal OmegaPow(std::uint32_t exp, std::uint64_t coef = 1);
  static Ordinal Omega() { return OmegaPow(1); }

  // Text syntax: `w^2*3+w*1+4`, `0`, `w`. Spaces are ignored and `ω` is
  // accepted for `w`. Summands must be written with strictly decreasing
  // exponents. Throws ParseError.
  static Ordinal Parse(std::string_view text);

  // Canonical text; Parse(x.ToString()) == x.
  std::string ToString() const;

  const Terms& terms() const { return terms_; }
  bool IsZero() const { return terms_.empty(); }
  bool IsSuccessor() const { return !IsZero() && terms_.back().exp == 0; }
  bool IsLimit() const { return !IsZero() && terms_.back().exp > 0; }
  bool IsFinite() const { return IsZero() || terms_.front().exp == 0; }
  OrdinalKind Kind() const;

  // Leading exponent; 0 for finite ordinals including 0.
  std::uint32_t Degree() const { return IsZero() ? 0 : terms_.front().exp; }
  // Coefficient of w^exp (0 if absent).
  std::uint64_t Coefficient(std::uint32_t exp) const;
  std::uint64_t FinitePart() const { return Coefficient(0); }
  // Value of a finite ordinal; throws DomainError otherwise.
  std::uint64_t AsFinite() const;

  Ordinal Succ() const;
  // Throws DomainError unless successor.
  Ordinal Pred() const;

  Ordinal operator+(const Ordinal& rhs) const;
  Ordinal operator+(std::uint64_t n) const;

  // The unique d with a + d == b; throws DomainError if a > b.
  static Ordinal LeftDifference(const Ordinal& a, const Ordinal& b);

  // Keeps only the summands with exponent > exp.
  Ordinal TermsAbove(std::uint32_t exp) const;

  // Least limit ordinal strictly above *this.
  Ordinal NextLimit() const;

  // For a limit a = p + w^(e+1) (p the normal-form prefix), returns
  // p + w^e * k. Throws DomainError on non-limits.
  Ordinal FundamentalSequence(std::uint64_t k) const;

  std::size_t Hash() const;

  friend bool operator==(const Ordinal& a, const Ordinal& b) {
    return a.terms_ == b.terms_;
  }
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

 private:
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Ordinal& a);

struct OrdinalHash {
  std::size_t operator()(const Ordinal& a) const { return a.Hash(); }
};

}  // namespace hwalks

#endif  // HWALKS_ORDINAL_H_
