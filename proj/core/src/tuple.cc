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

#include "hwalks/tuple.h"

#include <cctype>

#include "hwalks/errors.h"

namespace hwalks {

bool IsWeaklyIncreasing(const Tuple& t) {
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] < t[i - 1]) return false;
  }
  return true;
}

bool IsStrictlyIncreasing(const Tuple& t) {
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] <= t[i - 1]) return false;
  }
  return true;
}

bool IsAlphaTensor(const Tuple& t) {
  if (t.size() >= 2 && t[1] < t[0]) return false;
  for (std::size_t i = 2; i < t.size(); ++i) {
    if (t[i] <= t[i - 1]) return false;
  }
  return true;
}

bool HasKind(const Tuple& t, TupleKind kind) {
  switch (kind) {
    case TupleKind::kWeaklyIncreasing:
      return IsWeaklyIncreasing(t);
    case TupleKind::kStrictlyIncreasing:
      return IsStrictlyIncreasing(t);
    case TupleKind::kAlphaTensor:
      return IsAlphaTensor(t);
  }
  return false;
}

Tuple RemoveIndex(const Tuple& t, std::size_t m) {
  if (m >= t.size()) {
    throw DomainError("remove_index: index " + std::to_string(m) +
                      " out of range for length " + std::to_string(t.size()));
  }
  Tuple out;
  out.reserve(t.size() - 1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i != m) out.push_back(t[i]);
  }
  return out;
}

Tuple Substitute(const Tuple& t, const std::map<std::size_t, Ordinal>& values) {
  Tuple out = t;
  for (const auto& [i, v] : values) {
    if (i >= t.size()) {
      throw DomainError("substitute: index " + std::to_string(i) +
                        " out of range for length " + std::to_string(t.size()));
    }
    out[i] = v;
  }
  return out;
}

Tuple Tail(const Tuple& t) {
  if (t.empty()) return {};
  return Tuple(t.begin() + 1, t.end());
}

Tuple Prepend(const Ordinal& head, const Tuple& t) {
  Tuple out;
  out.reserve(t.size() + 1);
  out.push_back(head);
  out.insert(out.end(), t.begin(), t.end());
  return out;
}

Tuple Append(const Tuple& t, const Ordinal& last) {
  Tuple out = t;
  out.push_back(last);
  return out;
}

Tuple ParseTuple(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  if (e > b + 1) {
    const char open = text[b];
    const char close = text[e - 1];
    if ((open == '(' && close == ')') || (open == '[' && close == ']') ||
        (open == '<' && close == '>')) {
      ++b;
      --e;
    }
  }
  Tuple out;
  std::string_view body = text.substr(b, e - b);
  bool blank = true;
  for (char c : body) {
    if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
  }
  if (blank) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = body.find(',', start);
    const std::string_view piece = body.substr(
        start, comma == std::string_view::npos ? body.size() - start
                                               : comma - start);
    try {
      out.push_back(Ordinal::Parse(piece));
    } catch (const ParseError& err) {
      throw ParseError(err.detail() + " (tuple entry " +
                           std::to_string(out.size() + 1) + ")",
                       0, b + start + err.column());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string JoinTuple(const Tuple& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) out += ',';
    out += t[i].ToString();
  }
  return out;
}

std::string FormatTuple(const Tuple& t) { return "(" + JoinTuple(t) + ")"; }

std::size_t TupleHash::operator()(const Tuple& t) const {
  std::size_t h = t.size();
  for (const Ordinal& a : t) {
    h ^= a.Hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace hwalks
