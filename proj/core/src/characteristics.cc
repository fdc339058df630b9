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

#include "hwalks/characteristics.h"

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "hwalks/errors.h"
#include "json.hpp"

namespace hwalks {

FreeAbelian FreeAbelian::Basis(Tuple t, Integer k) {
  FreeAbelian out;
  out.Add(t, k);
  return out;
}

Integer FreeAbelian::Coefficient(const Tuple& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? Integer(0) : it->second;
}

void FreeAbelian::Add(const Tuple& t, const Integer& k) {
  if (k == 0) return;
  auto [it, inserted] = terms_.try_emplace(t, k);
  if (inserted) return;
  it->second += k;
  if (it->second == 0) terms_.erase(it);
}

FreeAbelian& FreeAbelian::operator+=(const FreeAbelian& other) {
  for (const auto& [t, k] : other.terms_) Add(t, k);
  return *this;
}

FreeAbelian& FreeAbelian::operator-=(const FreeAbelian& other) {
  for (const auto& [t, k] : other.terms_) Add(t, -k);
  return *this;
}

FreeAbelian FreeAbelian::operator-() const {
  FreeAbelian out;
  for (const auto& [t, k] : terms_) out.terms_.emplace(t, -k);
  return out;
}

FreeAbelian operator*(const Integer& k, const FreeAbelian& a) {
  FreeAbelian out;
  if (k == 0) return out;
  for (const auto& [t, c] : a.terms_) out.terms_.emplace(t, k * c);
  return out;
}

std::string FreeAbelian::ToString() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!out.empty()) out += ' ';
    out += it->second > 0 ? "+" : "-";
    out += (it->second > 0 ? it->second : Integer(-it->second)).str();
    out += "[" + JoinTuple(it->first) + "]";
  }
  return out;
}

std::string FreeAbelian::ToJson() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [t, k] : terms_) {
    nlohmann::ordered_json item;
    std::vector<std::string> entries;
    for (const Ordinal& o : t) entries.push_back(o.ToString());
    item["tuple"] = entries;
    // Emitted as a number when it fits; anything wider stays exact as text.
    if (k >= std::numeric_limits<std::int64_t>::min() &&
        k <= std::numeric_limits<std::int64_t>::max()) {
      item["coeff"] = static_cast<std::int64_t>(k);
    } else {
      item["coeff"] = k.str();
    }
    arr.push_back(std::move(item));
  }
  return arr.dump();
}

std::int64_t Rho2(const WalkTree& t) {
  std::int64_t sum = 0;
  for (const WalkNode& x : t.nodes()) sum += x.label.sign;
  return sum;
}

std::int64_t Rho2(const NCSeq& seq, int sign, const Tuple& input,
                  const WalkOptions& opts) {
  return Rho2(Walk(seq, sign, input, opts));
}

FreeAbelian Resh(const WalkTree& positive_walk) {
  if (positive_walk.root().label.sign != 1) {
    throw DomainError("resh is defined from the positively signed walk");
  }
  FreeAbelian out;
  for (const WalkNode& x : positive_walk.nodes()) {
    out.Add(Tuple(x.label.ords.begin() + 2, x.label.ords.end()), x.label.sign);
  }
  return out;
}

FreeAbelian Resh(const NCSeq& seq, const Tuple& input, const WalkOptions& opts) {
  return Resh(Walk(seq, 1, input, opts));
}

Integer Varpi(const FreeAbelian& g) {
  Integer sum = 0;
  for (const auto& [t, k] : g.terms()) sum += k;
  return sum;
}

FreeAbelian ProjectPi(const FreeAbelian& g, const Ordinal& delta, const Club& d) {
  FreeAbelian out;
  for (const auto& [t, k] : g.terms()) {
    if (t.empty() || t.back() != delta) continue;
    Tuple head(t.begin(), t.end() - 1);
    bool inside = true;
    for (const Ordinal& o : head) inside = inside && d.Contains(o);
    if (inside) out.Add(head, k);
  }
  return out;
}

FreeAbelian FamilyAlternatingSum(const NCSeq& seq, const Tuple& beta,
                                 const Ordinal& xi, const WalkOptions& opts) {
  if (beta.size() < 2 || !IsStrictlyIncreasing(beta)) {
    throw DomainError("family sum needs a strictly increasing tuple of length "
                      ">= 2, got " + FormatTuple(beta));
  }
  if (!(xi < beta.front())) {
    throw DomainError("family sum needs xi < " + beta.front().ToString() +
                      ", got " + xi.ToString());
  }
  FreeAbelian out;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    FreeAbelian r = Resh(seq, Prepend(xi, RemoveIndex(beta, i)), opts);
    if (i % 2 == 0) {
      out += r;
    } else {
      out -= r;
    }
  }
  return out;
}

}  // namespace hwalks
