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

#ifndef HWALKS_SPEC_FILE_H_
#define HWALKS_SPEC_FILE_H_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hwalks/club.h"
#include "hwalks/ncseq.h"
#include "hwalks/tuple.h"

namespace hwalks {

// Line-oriented description of an n-C-sequence:
//
//   # free-form comment
//   ncseq n=2 domain=interval(w^2) base=maximal
//   index (w) := interval(w)
//   index (w,w*2) := fs(w)
//
// Only clubs at accumulation indices need entries; everything else is
// minimal at successors. `base=` (maximal or minimal-fs) names the rule used
// for accumulation indices without an entry; without it such an index is an
// error when reached.
struct SpecFile {
  int n = 1;
  Club domain;
  std::string base;  // "", "maximal" or "minimal-fs"
  std::map<Tuple, Club> entries;
  std::vector<std::string> comments;  // without the leading "# "
};

// Throws ParseError with the 1-based line and column of the first problem.
SpecFile ParseSpecFile(std::string_view text);

// Canonical text: comments, header, then entries ordered by length and then
// lexicographically.
std::string PrintSpecFile(const SpecFile& spec);

std::shared_ptr<const ExplicitSeq> SeqFromSpec(const SpecFile& spec);

// Structural problems: entries at invalid indices, entries that are not a
// closed subset of head ∩ parent, entries at non-accumulation heads that
// break minimality at successors, and accumulation heads whose entry is not
// cofinal. Each message names the offending index. Empty when sound.
std::vector<std::string> ValidateSpec(const SpecFile& spec);

// Spec-file form of the accumulation indices of `seq` found by
// EnumerateAccIndices with entries below `window`, on the domain
// domain ∩ window. The result describes seq truncated to window.
SpecFile SpecFromSeq(const NCSeq& seq, const Ordinal& window,
                     std::size_t acc_cap = 4096);

}  // namespace hwalks

#endif  // HWALKS_SPEC_FILE_H_
