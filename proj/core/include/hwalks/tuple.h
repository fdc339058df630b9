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

#ifndef HWALKS_TUPLE_H_
#define HWALKS_TUPLE_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hwalks/ordinal.h"

namespace hwalks {

using Tuple = std::vector<Ordinal>;

enum class TupleKind {
  kWeaklyIncreasing,    // entries[m] <= entries[m+1]
  kStrictlyIncreasing,  // entries[m] < entries[m+1]
  kAlphaTensor,         // entries[0] <= entries[1] < entries[2] < ...
};

bool IsWeaklyIncreasing(const Tuple& t);
bool IsStrictlyIncreasing(const Tuple& t);
bool IsAlphaTensor(const Tuple& t);
bool HasKind(const Tuple& t, TupleKind kind);

// t with entry m removed. Throws DomainError if m >= t.size().
Tuple RemoveIndex(const Tuple& t, std::size_t m);

// t with t[i] replaced by v for each (i, v). Throws DomainError when an index
// is out of range.
Tuple Substitute(const Tuple& t, const std::map<std::size_t, Ordinal>& values);

// t without its first entry (the empty tuple for t = <>).
Tuple Tail(const Tuple& t);

// <head> followed by t.
Tuple Prepend(const Ordinal& head, const Tuple& t);

// t followed by <last>.
Tuple Append(const Tuple& t, const Ordinal& last);

// Comma separated ordinals, e.g. `w+3,w*2`. Optional surrounding (), [] or
// <> are accepted; the empty string (or `()`) is the empty tuple.
Tuple ParseTuple(std::string_view text);

// `w+3,w*2`.
std::string JoinTuple(const Tuple& t);
// `(w+3,w*2)`.
std::string FormatTuple(const Tuple& t);

struct TupleHash {
  std::size_t operator()(const Tuple& t) const;
};

}  // namespace hwalks

#endif  // HWALKS_TUPLE_H_
