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

#include "hwalks/walks.h"

#include <algorithm>
#include <sstream>

#include "hwalks/errors.h"
#include "json.hpp"

namespace hwalks {

std::string FormatAddress(const Address& a) {
  std::string out = "<";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(a[i]);
  }
  return out + ">";
}

std::string Label::ToString() const {
  return (sign > 0 ? "+" : "-") + FormatTuple(ords);
}

Label SubFirst(const Label& l, const Ordinal& xi) {
  Label out = l;
  out.ords.at(0) = xi;
  return out;
}

Label SubFirstTwo(const Label& l, const Ordinal& xi, const Ordinal& eta) {
  Label out = l;
  out.ords.at(0) = xi;
  out.ords.at(1) = eta;
  return out;
}

TauIota DecomposeTauIota(const NCSeq& seq, const Tuple& beta) {
  if (beta.size() < 2 || static_cast<int>(beta.size()) - 1 > seq.n()) {
    throw DomainError("walk label " + FormatTuple(beta) +
                      " has the wrong length for a " +
                      std::to_string(seq.n()) + "-sequence");
  }
  const std::size_t dim = beta.size() - 1;
  // Validity is inherited by tails, so grow the final segment until it
  // breaks.
  TauIota out;
  out.club = seq.ClubOf({});
  std::size_t len = 0;
  while (len < dim) {
    Tuple seg(beta.end() - static_cast<std::ptrdiff_t>(len + 1), beta.end());
    ClubPtr c = seq.ClubOf(seg);
    if (c == nullptr) break;
    out.club = std::move(c);
    ++len;
  }
  out.tau.assign(beta.end() - static_cast<std::ptrdiff_t>(len), beta.end());
  out.iota.assign(beta.begin(), beta.end() - static_cast<std::ptrdiff_t>(len));
  out.j = out.iota.size() - 1;
  return out;
}

bool IsTerminalLabel(const NCSeq& seq, const Tuple& ords) {
  TauIota ti = DecomposeTauIota(seq, ords);
  return !ti.club->MinAtLeast(ords[ti.j]).has_value();
}

namespace {

void CheckInput(const NCSeq& seq, const Tuple& input) {
  if (input.size() < 2 || static_cast<int>(input.size()) - 1 > seq.n()) {
    throw DomainError("walk input " + FormatTuple(input) + " needs between 2 and " +
                      std::to_string(seq.n() + 1) + " entries");
  }
  if (!IsWeaklyIncreasing(input)) {
    throw DomainError("walk input " + FormatTuple(input) +
                      " is not weakly increasing");
  }
  if (input.back() >= seq.domain().StrictSup()) {
    throw DomainError("walk input " + FormatTuple(input) +
                      " leaves the domain " + seq.domain().ToString());
  }
}

}  // namespace

WalkTree BuildWalk(const NCSeq& seq, const Label& root, bool truncated,
                   std::size_t cap) {
  WalkTree tree;
  const int m = static_cast<int>(root.ords.size()) - 1;
  tree.dim_ = m;
  tree.truncated_ = truncated;
  tree.nodes_.push_back(WalkNode{});
  tree.nodes_[0].label = root;
  const Ordinal alpha = root.ords[0];

  // Breadth first, so each node's children occupy consecutive slots.
  for (std::size_t i = 0; i < tree.nodes_.size(); ++i) {
    WalkNode& x = tree.nodes_[i];
    const Tuple& beta = x.label.ords;
    TauIota ti = DecomposeTauIota(seq, beta);
    x.tau_length = ti.tau.size();
    x.j = ti.j;
    x.step_club = ti.club;
    const bool extreme = x.tau_length == static_cast<std::size_t>(m);
    const Ordinal parent_l =
        x.parent == WalkNode::kNone ? Ordinal() : tree.nodes_[x.parent].lower_trace;
    x.lower_trace = parent_l;
    if (extreme) x.lower_trace = std::max(parent_l, ti.club->SupBelow(alpha));

    std::uint8_t flags = extreme ? kExtreme : 0;
    // Spectacled and bad nodes are only defined from dimension 2 on.
    if (m >= 2 && beta[0] == beta[1]) flags |= kSpectacled;
    if (m >= 2) {
      ClubPtr tail = seq.ClubOf(Tail(beta));
      if (tail != nullptr && tail->IsAccPoint(alpha)) flags |= kBad;
    }

    std::optional<Ordinal> mu = ti.club->MinAtLeast(beta[ti.j]);
    bool stop = !mu.has_value();
    if (!stop && truncated && extreme && ti.club->Contains(alpha)) stop = true;
    if (stop) {
      x.flags = flags | kTerminal;
      continue;
    }
    x.flags = flags | kSplitting;

    Tuple ext = ti.iota;
    ext.push_back(*mu);
    ext.insert(ext.end(), ti.tau.begin(), ti.tau.end());
    const int sign = x.label.sign;
    const Address addr = x.address;
    const std::size_t jj = ti.j;
    if (tree.nodes_.size() + static_cast<std::size_t>(m) > cap) {
      throw ResourceLimitError("walk from " + root.ToString() + " exceeds " +
                               std::to_string(cap) + " nodes");
    }
    tree.nodes_[i].first_child = tree.nodes_.size();
    int k = 0;
    for (std::size_t ell = 1; ell <= static_cast<std::size_t>(m) + 1; ++ell) {
      if (ell == jj + 1) continue;
      WalkNode child;
      child.address = addr;
      child.address.push_back(k++);
      child.parent = i;
      child.label.sign = ((jj + ell) % 2 == 0) ? sign : -sign;
      child.label.ords = RemoveIndex(ext, ell);
      tree.nodes_.push_back(std::move(child));
    }
  }
  return tree;
}

WalkTree Walk(const NCSeq& seq, int sign, const Tuple& input,
              const WalkOptions& opts) {
  CheckInput(seq, input);
  return BuildWalk(seq, Label{sign >= 0 ? 1 : -1, input}, false, opts.node_cap);
}

WalkTree TruncatedWalk(const NCSeq& seq, int sign, const Tuple& input,
                       const WalkOptions& opts) {
  CheckInput(seq, input);
  return BuildWalk(seq, Label{sign >= 0 ? 1 : -1, input}, true, opts.node_cap);
}

std::optional<std::size_t> WalkTree::Find(const Address& a) const {
  std::size_t i = 0;
  for (int k : a) {
    if (k < 0 || k >= dim_ || nodes_[i].terminal()) return std::nullopt;
    i = Child(i, k);
  }
  return i;
}

TreeShape WalkTree::Shape() const {
  TreeShape out;
  for (const WalkNode& x : nodes_) out.emplace(x.address, x.terminal());
  return out;
}

Ordinal LowerTraceBelowAlpha(const WalkTree& t) {
  Ordinal best;
  for (const WalkNode& x : t.nodes()) {
    if (x.lower_trace < t.alpha()) best = std::max(best, x.lower_trace);
  }
  return best;
}

std::vector<Address> ExtremeSet(const WalkTree& t) {
  std::vector<Address> out;
  for (const WalkNode& x : t.nodes()) {
    if (x.Has(kExtreme)) out.push_back(x.address);
  }
  return out;
}

std::vector<std::pair<Address, int>> Boundary(const WalkTree& t) {
  std::vector<std::pair<Address, int>> out;
  for (const WalkNode& x : t.nodes()) {
    if (x.terminal()) out.emplace_back(x.address, x.label.sign);
  }
  return out;
}

TreeShape StretchTree(const TreeShape& shape, int m, int n) {
  if (n <= m || m < 1) {
    throw DomainError("stretch needs 1 <= m < n, got m=" + std::to_string(m) +
                      " n=" + std::to_string(n));
  }
  TreeShape out;
  for (const auto& [addr, terminal] : shape) {
    Address s = addr;
    for (int& k : s) k += n - m;
    if (!terminal) {
      for (int i = 0; i < n - m; ++i) {
        Address fresh = s;
        fresh.push_back(i);
        out.emplace(std::move(fresh), true);
      }
    }
    out.emplace(std::move(s), terminal);
  }
  return out;
}

BoundaryPairing PairBoundaries(const NCSeq& seq, const Tuple& input,
                               const WalkOptions& opts) {
  if (input.size() < 3) {
    throw DomainError("pairing input " + FormatTuple(input) +
                      " needs at least 3 entries");
  }
  const Ordinal alpha = input[0];
  const Tuple gamma(input.begin() + 1, input.end());
  std::map<Tuple, std::pair<std::vector<BoundaryItem>, std::vector<BoundaryItem>>>
      by_label;
  BoundaryPairing out;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    Tuple in = Prepend(alpha, RemoveIndex(gamma, i));
    WalkTree t = Walk(seq, i % 2 == 0 ? 1 : -1, in, opts);
    for (const WalkNode& x : t.nodes()) {
      if (!x.terminal()) continue;
      ++out.total;
      auto& slot = by_label[x.label.ords];
      (x.label.sign > 0 ? slot.first : slot.second)
          .push_back(BoundaryItem{i, x.address, x.label});
    }
  }
  for (auto& [ords, slot] : by_label) {
    auto& [plus, minus] = slot;
    const std::size_t k = std::min(plus.size(), minus.size());
    for (std::size_t i = 0; i < k; ++i) out.pairs.emplace_back(plus[i], minus[i]);
    for (std::size_t i = k; i < plus.size(); ++i) out.unmatched.push_back(plus[i]);
    for (std::size_t i = k; i < minus.size(); ++i) out.unmatched.push_back(minus[i]);
  }
  out.perfect = out.unmatched.empty();
  return out;
}

namespace {

std::vector<std::string> FlagNames(std::uint8_t f) {
  std::vector<std::string> out;
  if (f & kTerminal) out.push_back("terminal");
  if (f & kSplitting) out.push_back("splitting");
  if (f & kSpectacled) out.push_back("spectacled");
  if (f & kBad) out.push_back("bad");
  if (f & kExtreme) out.push_back("extreme");
  return out;
}

}  // namespace

std::string WalkToJson(const WalkTree& t) {
  nlohmann::ordered_json doc;
  doc["dim"] = t.dim();
  doc["truncated"] = t.truncated();
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (const WalkNode& x : t.nodes()) {
    nlohmann::ordered_json node;
    node["address"] = x.address;
    node["sign"] = x.label.sign;
    std::vector<std::string> label;
    for (const Ordinal& o : x.label.ords) label.push_back(o.ToString());
    node["label"] = label;
    node["lower_trace"] = x.lower_trace.ToString();
    node["flags"] = FlagNames(x.flags);
    nodes.push_back(std::move(node));
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(2) + "\n";
}

std::string WalkToDot(const WalkTree& t) {
  std::ostringstream out;
  out << "digraph walk {\n  node [fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    const WalkNode& x = t.node(i);
    out << "  n" << i << " [label=\"" << x.label.ToString() << "\" color="
        << (x.label.sign > 0 ? "blue" : "red")
        << " shape=" << (x.terminal() ? "box" : "ellipse") << "];\n";
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    const WalkNode& x = t.node(i);
    if (x.terminal()) continue;
    for (int k = 0; k < t.dim(); ++k) {
      out << "  n" << i << " -> n" << t.Child(i, k) << " [label=\"" << k
          << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string WalkToText(const WalkTree& t) {
  // Depth-first so that subtrees print contiguously.
  std::ostringstream out;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    const WalkNode& x = t.node(i);
    out << std::string(2 * x.address.size(), ' ') << FormatAddress(x.address)
        << ' ' << x.label.ToString();
    std::vector<std::string> flags = FlagNames(x.flags);
    if (!flags.empty()) {
      out << " [";
      for (std::size_t k = 0; k < flags.size(); ++k) {
        out << (k ? "," : "") << flags[k];
      }
      out << ']';
    }
    out << '\n';
    if (!x.terminal()) {
      for (int k = t.dim() - 1; k >= 0; --k) stack.push_back(t.Child(i, k));
    }
  }
  return out.str();
}

}  // namespace hwalks
