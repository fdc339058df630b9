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

#include "hwalks/ordinal.h"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "hwalks/errors.h"

namespace hwalks {
namespace {

std::uint64_t CheckedAdd(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("ordinal coefficient overflow");
  }
  return out;
}

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text) : text_(text) {}

  Ordinal Run() {
    SkipSpace();
    if (AtEnd()) Fail("empty ordinal");
    Ordinal::Terms terms;
    while (true) {
      const std::size_t start = pos_;
      Term t = ParseSummand();
      SkipSpace();
      if (t.coef == 0) {
        // A bare `0` is only allowed as the whole ordinal.
        if (!terms.empty() || !AtEnd()) FailAt(start, "zero summand");
        return Ordinal();
      }
      if (!terms.empty() && t.exp >= terms.back().exp) {
        FailAt(start, "summands must have strictly decreasing exponents");
      }
      terms.push_back(t);
      if (AtEnd()) break;
      if (text_[pos_] != '+') Fail("expected '+'");
      ++pos_;
    }
    return Ordinal::FromTerms(std::move(terms));
  }

 private:
  bool AtEnd() const { return pos_ >= text_.size(); }

  void SkipSpace() {
    while (!AtEnd() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  [[noreturn]] void FailAt(std::size_t pos, const std::string& what) const {
    throw ParseError(what + " in ordinal '" + std::string(text_) + "'", 0,
                     pos + 1);
  }
  [[noreturn]] void Fail(const std::string& what) const { FailAt(pos_, what); }

  bool AtOmega() const {
    if (AtEnd()) return false;
    if (text_[pos_] == 'w') return true;
    return text_.substr(pos_, 2) == "\xCF\x89";
  }

  void SkipOmega() { pos_ += text_[pos_] == 'w' ? 1 : 2; }

  std::uint64_t ParseNumber() {
    SkipSpace();
    if (AtEnd() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      Fail("expected a natural number");
    }
    std::uint64_t v = 0;
    while (!AtEnd() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::uint64_t d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) {
        Fail("number too large");
      }
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  // Returns coef == 0 only for a literal `0`.
  Term ParseSummand() {
    SkipSpace();
    if (!AtOmega()) {
      const std::uint64_t v = ParseNumber();
      return Term{0, v};
    }
    SkipOmega();
    SkipSpace();
    Term t{1, 1};
    if (!AtEnd() && text_[pos_] == '^') {
      ++pos_;
      const std::size_t at = pos_;
      const std::uint64_t e = ParseNumber();
      if (e == 0) FailAt(at, "exponent must be positive");
      if (e > std::numeric_limits<std::uint32_t>::max()) {
        FailAt(at, "exponent too large");
      }
      t.exp = static_cast<std::uint32_t>(e);
      SkipSpace();
    }
    if (!AtEnd() && text_[pos_] == '*') {
      ++pos_;
      const std::size_t at = pos_;
      t.coef = ParseNumber();
      if (t.coef == 0) FailAt(at, "coefficient must be positive");
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal::Ordinal(std::uint64_t n) {
  if (n > 0) terms_.push_back(Term{0, n});
}

Ordinal Ordinal::FromTerms(Terms terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coef == 0) throw DomainError("zero coefficient in CNF term");
    if (i > 0 && terms[i].exp >= terms[i - 1].exp) {
      throw DomainError("CNF exponents must strictly decrease");
    }
  }
  Ordinal out;
  out.terms_ = std::move(terms);
  return out;
}

Ordinal Ordinal::OmegaPow(std::uint32_t exp, std::uint64_t coef) {
  Ordinal out;
  if (coef > 0) out.terms_.push_back(Term{exp, coef});
  return out;
}

Ordinal Ordinal::Parse(std::string_view text) {
  return OrdinalParser(text).Run();
}

std::string Ordinal::ToString() const {
  if (IsZero()) return "0";
  std::string out;
  for (const Term& t : terms_) {
    if (!out.empty()) out += '+';
    if (t.exp == 0) {
      out += std::to_string(t.coef);
      continue;
    }
    out += 'w';
    if (t.exp > 1) out += '^' + std::to_string(t.exp);
    if (t.coef > 1) out += '*' + std::to_string(t.coef);
  }
  return out;
}

OrdinalKind Ordinal::Kind() const {
  if (IsZero()) return OrdinalKind::kZero;
  return IsSuccessor() ? OrdinalKind::kSuccessor : OrdinalKind::kLimit;
}

std::uint64_t Ordinal::Coefficient(std::uint32_t exp) const {
  for (const Term& t : terms_) {
    if (t.exp == exp) return t.coef;
    if (t.exp < exp) break;
  }
  return 0;
}

std::uint64_t Ordinal::AsFinite() const {
  if (!IsFinite()) throw DomainError("ordinal " + ToString() + " is infinite");
  return FinitePart();
}

Ordinal Ordinal::Succ() const { return *this + 1; }

Ordinal Ordinal::Pred() const {
  if (!IsSuccessor()) {
    throw DomainError("predecessor of non-successor " + ToString());
  }
  Ordinal out = *this;
  if (--out.terms_.back().coef == 0) out.terms_.pop_back();
  return out;
}

Ordinal Ordinal::operator+(const Ordinal& rhs) const {
  if (rhs.IsZero()) return *this;
  const Term& lead = rhs.terms_.front();
  Ordinal out;
  for (const Term& t : terms_) {
    if (t.exp > lead.exp) {
      out.terms_.push_back(t);
    } else {
      if (t.exp == lead.exp) {
        out.terms_.push_back(Term{lead.exp, CheckedAdd(t.coef, lead.coef)});
      }
      break;
    }
  }
  std::size_t from = 0;
  if (!out.terms_.empty() && out.terms_.back().exp == lead.exp) {
    from = 1;
  }
  out.terms_.insert(out.terms_.end(), rhs.terms_.begin() + from,
                    rhs.terms_.end());
  return out;
}

Ordinal Ordinal::operator+(std::uint64_t n) const {
  if (n == 0) return *this;
  Ordinal out = *this;
  if (IsSuccessor()) {
    out.terms_.back().coef = CheckedAdd(out.terms_.back().coef, n);
  } else {
    out.terms_.push_back(Term{0, n});
  }
  return out;
}

Ordinal Ordinal::LeftDifference(const Ordinal& a, const Ordinal& b) {
  const Terms& x = a.terms_;
  const Terms& y = b.terms_;
  std::size_t i = 0;
  while (i < x.size() && i < y.size() && x[i] == y[i]) ++i;
  Ordinal out;
  if (i == x.size()) {
    out.terms_.assign(y.begin() + i, y.end());
    return out;
  }
  if (i < y.size()) {
    if (x[i].exp < y[i].exp) {
      out.terms_.assign(y.begin() + i, y.end());
      return out;
    }
    if (x[i].exp == y[i].exp && x[i].coef < y[i].coef) {
      out.terms_.push_back(Term{y[i].exp, y[i].coef - x[i].coef});
      out.terms_.insert(out.terms_.end(), y.begin() + i + 1, y.end());
      return out;
    }
  }
  throw DomainError("left difference: " + a.ToString() + " > " + b.ToString());
}

Ordinal Ordinal::TermsAbove(std::uint32_t exp) const {
  Ordinal out;
  for (const Term& t : terms_) {
    if (t.exp <= exp) break;
    out.terms_.push_back(t);
  }
  return out;
}

Ordinal Ordinal::NextLimit() const { return TermsAbove(0) + Omega(); }

Ordinal Ordinal::FundamentalSequence(std::uint64_t k) const {
  if (!IsLimit()) {
    throw DomainError("fundamental sequence of non-limit " + ToString());
  }
  Ordinal prefix = *this;
  const std::uint32_t e = prefix.terms_.back().exp;
  if (--prefix.terms_.back().coef == 0) prefix.terms_.pop_back();
  return prefix + OmegaPow(e - 1, k);
}

std::size_t Ordinal::Hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const Term& t : terms_) {
    h ^= std::hash<std::uint64_t>()(t.coef) + 0x9e3779b97f4a7c15ull + (h << 6) +
         (h >> 2);
    h ^= std::hash<std::uint32_t>()(t.exp) + 0x9e3779b97f4a7c15ull + (h << 6) +
         (h >> 2);
  }
  return h;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms_;
  const auto& y = b.terms_;
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].exp != y[i].exp) return x[i].exp <=> y[i].exp;
    if (x[i].coef != y[i].coef) return x[i].coef <=> y[i].coef;
  }
  return x.size() <=> y.size();
}

std::ostream& operator<<(std::ostream& os, const Ordinal& a) {
  return os << a.ToString();
}

}  // namespace hwalks
