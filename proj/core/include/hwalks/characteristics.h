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

#ifndef HWALKS_CHARACTERISTICS_H_
#define HWALKS_CHARACTERISTICS_H_

#include <cstdint>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "hwalks/club.h"
#include "hwalks/ncseq.h"
#include "hwalks/ordinal.h"
#include "hwalks/tuple.h"
#include "hwalks/walks.h"

namespace hwalks {

using Integer = boost::multiprecision::cpp_int;

// A finitely supported Z-valued function on ordinal tuples. Zero
// coefficients are never stored.
class FreeAbelian {
 public:
  FreeAbelian() = default;
  // k * [t].
  static FreeAbelian Basis(Tuple t, Integer k = 1);

  const std::map<Tuple, Integer>& terms() const { return terms_; }
  bool IsZero() const { return terms_.empty(); }
  Integer Coefficient(const Tuple& t) const;

  void Add(const Tuple& t, const Integer& k);
  FreeAbelian& operator+=(const FreeAbelian& other);
  FreeAbelian& operator-=(const FreeAbelian& other);
  FreeAbelian operator-() const;
  friend FreeAbelian operator+(FreeAbelian a, const FreeAbelian& b) {
    return a += b;
  }
  friend FreeAbelian operator-(FreeAbelian a, const FreeAbelian& b) {
    return a -= b;
  }
  friend FreeAbelian operator*(const Integer& k, const FreeAbelian& a);
  friend bool operator==(const FreeAbelian&, const FreeAbelian&) = default;

  // "+2[w*3] -1[w*2]", largest basis tuple first; "0" for zero.
  std::string ToString() const;
  // [{"tuple": [...], "coeff": k}, ...] in canonical (ascending) order.
  std::string ToJson() const;

 private:
  std::map<Tuple, Integer> terms_;
};

// Signed node count of the walk from (alpha, gamma) = input.
std::int64_t Rho2(const NCSeq& seq, int sign, const Tuple& input,
                  const WalkOptions& opts = {});
std::int64_t Rho2(const WalkTree& t);

// Sum over the walk of sgn(x) [label(x) without its first two entries],
// computed with root sign +.
FreeAbelian Resh(const NCSeq& seq, const Tuple& input,
                 const WalkOptions& opts = {});
FreeAbelian Resh(const WalkTree& positive_walk);

// Sum of coefficients.
Integer Varpi(const FreeAbelian& g);

// [gamma ^ delta] -> [gamma] when gamma ⊆ d; every other basis tuple -> 0.
FreeAbelian ProjectPi(const FreeAbelian& g, const Ordinal& delta, const Club& d);

// sum_i (-1)^i Resh(xi, beta with beta_i removed). Requires xi < beta_0.
FreeAbelian FamilyAlternatingSum(const NCSeq& seq, const Tuple& beta,
                                 const Ordinal& xi, const WalkOptions& opts = {});

}  // namespace hwalks

#endif  // HWALKS_CHARACTERISTICS_H_
