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

#ifndef HWALKS_SAMPLING_H_
#define HWALKS_SAMPLING_H_

#include <cstdint>
#include <vector>

#include "hwalks/ordinal.h"

namespace hwalks {

// Every ordinal w^(d-1)*c_(d-1) + ... + c_0 with d = degree_bound and each
// c_i <= coef_bound that lies below `bound`, ascending.
std::vector<Ordinal> OrdinalGrid(std::uint32_t degree_bound,
                                 std::uint64_t coef_bound,
                                 const Ordinal& bound);

// The limits of OrdinalGrid(bound.Degree() + 1, coef_bound, bound).
std::vector<Ordinal> LimitGrid(const Ordinal& bound, std::uint64_t coef_bound);

}  // namespace hwalks

#endif  // HWALKS_SAMPLING_H_
