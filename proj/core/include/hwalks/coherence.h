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

#ifndef HWALKS_COHERENCE_H_
#define HWALKS_COHERENCE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hwalks/club.h"
#include "hwalks/ncseq.h"
#include "hwalks/ordinal.h"
#include "hwalks/tuple.h"

namespace hwalks {

struct ScanOptions {
  // A club with at most this many accumulation points below the window is
  // scanned exactly; larger ones are scanned on LimitGrid(window, grid_coef).
  std::size_t acc_cap = 4096;
  std::uint64_t grid_coef = 4;
};

// Accumulation points of `c` below `window`, ascending. Clears *exhaustive
// when the grid fallback was used.
std::vector<Ordinal> ScanAccPoints(const Club& c, const Ordinal& window,
                                   const ScanOptions& opts, bool* exhaustive);

struct AccIndex {
  Tuple index;
  ClubPtr club;
};

struct AccIndexScan {
  // Ordered by length, then lexicographically; the empty index comes first.
  std::vector<AccIndex> indices;
  bool exhaustive = true;
  // Accumulation indices whose club could not be produced.
  std::vector<std::pair<Tuple, std::string>> errors;
};

// Walks the tree of indices <a>^g where a accumulates in C_g, adding every
// valid stored index, with all entries below `window`. These are the only
// indices whose clubs can have more than one element.
AccIndexScan EnumerateAccIndices(const NCSeq& seq, const Ordinal& window,
                                 const ScanOptions& opts = {});

struct CoherenceViolation {
  // "restriction": C_g ∩ a != C_a for a full-length g with a in acc(C_g).
  // "top": C_b != C_a for b with b_0 = a in X and sup(C_b) = a.
  // "structure": C_b is not a closed subset of b_0 ∩ C_(tail) that is
  //   cofinal at accumulation heads.
  // "missing": no club could be produced at an accumulation index.
  std::string kind;
  Ordinal alpha;
  Tuple index;
  std::string detail;
};

struct CoherenceReport {
  Ordinal window;
  std::vector<Ordinal> x_set;
  std::vector<CoherenceViolation> violations;
  bool exhaustive = true;
  std::size_t indices_scanned = 0;

  bool ok() const { return violations.empty(); }
};

CoherenceReport CheckCoherence(const NCSeq& seq, const Ordinal& window,
                               const ScanOptions& opts = {});

struct WeakWitnessResult {
  bool refuted = false;
  Ordinal alpha;  // meaningful when refuted
  bool exhaustive = true;
};

// Looks for a in acc(D') below `window` with D' ∩ a != C_a. Throws
// DomainError unless D' is a subset of the domain.
WeakWitnessResult CheckWeakNontrivialityWitness(const NCSeq& seq,
                                                const Club& d_prime,
                                                const Ordinal& window,
                                                const ScanOptions& opts = {});

}  // namespace hwalks

#endif  // HWALKS_COHERENCE_H_
