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

#ifndef HWALKS_WALKS_H_
#define HWALKS_WALKS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hwalks/club.h"
#include "hwalks/ncseq.h"
#include "hwalks/ordinal.h"
#include "hwalks/tuple.h"

namespace hwalks {

// A node address in the full m-tree: a finite sequence over {0, ..., m-1}.
using Address = std::vector<int>;

std::string FormatAddress(const Address& a);

// A signed label (±1, alpha, beta_1, ..., beta_m).
struct Label {
  int sign = 1;
  Tuple ords;

  friend bool operator==(const Label&, const Label&) = default;
  std::string ToString() const;  // "+(w,w*2)"
};

// Label with ords[0] replaced by xi.
Label SubFirst(const Label& l, const Ordinal& xi);
// Label with ords[0], ords[1] replaced by xi, eta.
Label SubFirstTwo(const Label& l, const Ordinal& xi, const Ordinal& eta);

// beta = iota ^ tau with tau the longest final segment that is a valid
// index of length at most `dim`. j = |iota| - 1.
struct TauIota {
  Tuple iota;
  Tuple tau;
  std::size_t j = 0;
  ClubPtr club;  // C_tau
};

// Requires 1 <= |beta| - 1 = dim <= seq.n().
TauIota DecomposeTauIota(const NCSeq& seq, const Tuple& beta);

enum NodeFlag : std::uint8_t {
  kTerminal = 1 << 0,
  kSplitting = 1 << 1,
  kSpectacled = 1 << 2,  // label (alpha, alpha, ...)
  kBad = 1 << 3,         // tail valid and alpha in acc(C_tail)
  kExtreme = 1 << 4,     // |tau(label)| = dim
};

struct WalkNode {
  Address address;
  Label label;
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::size_t parent = kNone;
  std::size_t first_child = kNone;  // children are contiguous
  std::size_t tau_length = 0;
  std::size_t j = 0;
  ClubPtr step_club;  // C_tau(label)
  Ordinal lower_trace;
  std::uint8_t flags = 0;

  bool terminal() const { return first_child == kNone; }
  bool Has(NodeFlag f) const { return (flags & f) != 0; }
};

// Addresses with a terminal mark; used for shape comparisons.
using TreeShape = std::map<Address, bool>;

class WalkTree {
 public:
  int dim() const { return dim_; }
  bool truncated() const { return truncated_; }
  const std::vector<WalkNode>& nodes() const { return nodes_; }
  const WalkNode& node(std::size_t i) const { return nodes_[i]; }
  const WalkNode& root() const { return nodes_.front(); }
  std::size_t size() const { return nodes_.size(); }
  const Ordinal& alpha() const { return root().label.ords.front(); }

  std::optional<std::size_t> Find(const Address& a) const;
  std::size_t Child(std::size_t i, int k) const {
    return nodes_[i].first_child + static_cast<std::size_t>(k);
  }
  TreeShape Shape() const;

 private:
  friend WalkTree BuildWalk(const NCSeq&, const Label&, bool, std::size_t);
  int dim_ = 0;
  bool truncated_ = false;
  std::vector<WalkNode> nodes_;
};

struct WalkOptions {
  std::size_t node_cap = 1'000'000;
};

// The signed walk from (alpha, gamma) = input with the given sign. The
// dimension is |input| - 1 and may be below seq.n(), in which case only
// indices of length <= dimension are used. Throws DomainError on malformed
// input and ResourceLimitError past the node cap.
WalkTree Walk(const NCSeq& seq, int sign, const Tuple& input,
              const WalkOptions& opts = {});

// As Walk, but a node (alpha, beta) also stops when tau(alpha, beta) = beta
// and alpha is in C_beta.
WalkTree TruncatedWalk(const NCSeq& seq, int sign, const Tuple& input,
                       const WalkOptions& opts = {});

// max{L(x) : x in the tree, L(x) < alpha}, 0 for none. For a truncated
// walk this is the truncated lower bound.
Ordinal LowerTraceBelowAlpha(const WalkTree& t);

// Whether a label has an empty step: C_tau \ beta_j = ∅.
bool IsTerminalLabel(const NCSeq& seq, const Tuple& ords);

std::vector<Address> ExtremeSet(const WalkTree& t);

// Signed terminal nodes.
std::vector<std::pair<Address, int>> Boundary(const WalkTree& t);

// Stretches a full m-tree to a full n-tree: address entries shift by n - m
// and each splitting node gains fresh terminal children 0 .. n-m-1.
TreeShape StretchTree(const TreeShape& shape, int m, int n);

struct BoundaryItem {
  std::size_t walk = 0;  // i, the removed entry
  Address address;
  Label label;
};

struct BoundaryPairing {
  bool perfect = false;
  std::vector<std::pair<BoundaryItem, BoundaryItem>> pairs;
  std::vector<BoundaryItem> unmatched;
  std::size_t total = 0;
};

// For input (alpha, gamma) with |gamma| = n + 1, walks from
// (alpha, gamma with gamma_i removed) with sign (-1)^i for i <= n, and
// pairs the terminal nodes of all walks into opposite-sign pairs with equal
// ordinal entries. A perfect pairing exists iff, for every ordinal label,
// the + and - counts agree; otherwise the leftovers are reported.
BoundaryPairing PairBoundaries(const NCSeq& seq, const Tuple& input,
                               const WalkOptions& opts = {});

// JSON and Graphviz dumps. The JSON layout is described by
// docs/walk-tree.schema.json.
std::string WalkToJson(const WalkTree& t);
std::string WalkToDot(const WalkTree& t);
// Indented listing, one node per line: "<address> <label> [flags]".
std::string WalkToText(const WalkTree& t);

}  // namespace hwalks

#endif  // HWALKS_WALKS_H_
