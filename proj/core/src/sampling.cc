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

#include "hwalks/sampling.h"

#include <algorithm>

namespace hwalks {

std::vector<Ordinal> OrdinalGrid(std::uint32_t degree_bound,
                                 std::uint64_t coef_bound,
                                 const Ordinal& bound) {
  std::vector<Ordinal> out;
  if (degree_bound == 0) {
    if (Ordinal() < bound) out.emplace_back();
    return out;
  }
  std::vector<std::uint64_t> c(degree_bound, 0);
  while (true) {
    Ordinal::Terms terms;
    for (std::uint32_t e = degree_bound; e-- > 0;) {
      if (c[e] > 0) terms.push_back(Term{e, c[e]});
    }
    Ordinal a = Ordinal::FromTerms(terms);
    if (a < bound) out.push_back(std::move(a));
    std::uint32_t i = 0;
    while (i < degree_bound && c[i] == coef_bound) c[i++] = 0;
    if (i == degree_bound) break;
    ++c[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Ordinal> LimitGrid(const Ordinal& bound, std::uint64_t coef_bound) {
  std::vector<Ordinal> out;
  for (Ordinal& a : OrdinalGrid(bound.Degree() + 1, coef_bound, bound)) {
    if (a.IsLimit()) out.push_back(std::move(a));
  }
  return out;
}

}  // namespace hwalks
