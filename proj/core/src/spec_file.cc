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

#include "hwalks/spec_file.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "hwalks/coherence.h"
#include "hwalks/errors.h"

namespace hwalks {
namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

std::size_t SkipSpace(std::string_view s, std::size_t pos) {
  while (pos < s.size() && IsSpace(s[pos])) ++pos;
  return pos;
}

// Re-anchors a ParseError raised on a substring starting at `offset` (0-based
// within the line) to `line`.
[[noreturn]] void Rethrow(const ParseError& err, std::size_t line,
                          std::size_t offset) {
  throw ParseError(err.detail(), line, offset + err.column());
}

void ParseHeader(std::string_view text, std::size_t line, SpecFile* spec) {
  std::size_t pos = SkipSpace(text, 0) + 5;  // past "ncseq"
  bool have_n = false;
  bool have_domain = false;
  while (true) {
    pos = SkipSpace(text, pos);
    if (pos >= text.size()) break;
    const std::size_t key_start = pos;
    while (pos < text.size() && text[pos] != '=' && !IsSpace(text[pos])) ++pos;
    if (pos >= text.size() || text[pos] != '=') {
      throw ParseError("expected key=value in header", line, key_start + 1);
    }
    const std::string_view key = text.substr(key_start, pos - key_start);
    const std::size_t value_start = ++pos;
    int depth = 0;
    while (pos < text.size() && (depth > 0 || !IsSpace(text[pos]))) {
      if (text[pos] == '(' || text[pos] == '[') ++depth;
      if (text[pos] == ')' || text[pos] == ']') --depth;
      ++pos;
    }
    const std::string_view value = text.substr(value_start, pos - value_start);
    if (key == "n") {
      int n = 0;
      auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
      if (ec != std::errc() || end != value.data() + value.size() || n < 1) {
        throw ParseError("n must be a positive integer", line, value_start + 1);
      }
      spec->n = n;
      have_n = true;
    } else if (key == "domain") {
      try {
        spec->domain = Club::Parse(value);
      } catch (const ParseError& err) {
        Rethrow(err, line, value_start);
      }
      have_domain = true;
    } else if (key == "base") {
      if (value != "maximal" && value != "minimal-fs") {
        throw ParseError("base must be maximal or minimal-fs", line,
                         value_start + 1);
      }
      spec->base = std::string(value);
    } else {
      throw ParseError("unknown header key '" + std::string(key) + "'", line,
                       key_start + 1);
    }
  }
  if (!have_n) throw ParseError("header is missing n=", line, 1);
  if (!have_domain) throw ParseError("header is missing domain=", line, 1);
}

void ParseEntry(std::string_view text, std::size_t line, SpecFile* spec) {
  const std::size_t start = SkipSpace(text, 0) + 5;  // past "index"
  const std::size_t arrow = text.find(":=", start);
  if (arrow == std::string_view::npos) {
    throw ParseError("expected ':=' in index line", line, text.size() + 1);
  }
  Tuple idx;
  try {
    idx = ParseTuple(text.substr(start, arrow - start));
  } catch (const ParseError& err) {
    Rethrow(err, line, start);
  }
  if (idx.empty() || static_cast<int>(idx.size()) > spec->n) {
    throw ParseError("index length must be 1.." + std::to_string(spec->n), line,
                     SkipSpace(text, start) + 1);
  }
  Club club;
  try {
    club = Club::Parse(text.substr(arrow + 2));
  } catch (const ParseError& err) {
    Rethrow(err, line, arrow + 2);
  }
  if (!spec->entries.emplace(idx, std::move(club)).second) {
    throw ParseError("duplicate index " + FormatTuple(idx), line,
                     SkipSpace(text, start) + 1);
  }
}

bool StartsWithWord(std::string_view text, std::string_view word) {
  const std::size_t b = SkipSpace(text, 0);
  if (text.substr(b, word.size()) != word) return false;
  const std::size_t after = b + word.size();
  return after == text.size() || IsSpace(text[after]) || text[after] == '(';
}

}  // namespace

SpecFile ParseSpecFile(std::string_view text) {
  SpecFile spec;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    pos = end + 1;

    const std::size_t b = SkipSpace(line, 0);
    if (b == line.size()) continue;
    if (line[b] == '#') {
      std::string_view body = line.substr(b + 1);
      if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      spec.comments.emplace_back(body);
      continue;
    }
    if (!have_header) {
      if (!StartsWithWord(line, "ncseq")) {
        throw ParseError("expected 'ncseq' header", line_no, b + 1);
      }
      ParseHeader(line, line_no, &spec);
      have_header = true;
      continue;
    }
    if (!StartsWithWord(line, "index")) {
      throw ParseError("expected 'index <tuple> := <club>'", line_no, b + 1);
    }
    ParseEntry(line, line_no, &spec);
  }
  if (!have_header) throw ParseError("missing 'ncseq' header", line_no, 1);
  return spec;
}

std::string PrintSpecFile(const SpecFile& spec) {
  std::ostringstream os;
  for (const std::string& c : spec.comments) {
    os << '#';
    if (!c.empty()) os << ' ' << c;
    os << '\n';
  }
  os << "ncseq n=" << spec.n << " domain=" << spec.domain.ToString();
  if (!spec.base.empty()) os << " base=" << spec.base;
  os << '\n';
  std::vector<const std::pair<const Tuple, Club>*> order;
  for (const auto& e : spec.entries) order.push_back(&e);
  std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
    return a->first.size() < b->first.size();
  });
  for (const auto* e : order) {
    os << "index " << FormatTuple(e->first) << " := " << e->second.ToString()
       << '\n';
  }
  return os.str();
}

std::shared_ptr<const ExplicitSeq> SeqFromSpec(const SpecFile& spec) {
  std::shared_ptr<const RecursiveSeq> fallback;
  if (spec.base == "maximal") {
    fallback = std::make_shared<const MaximalSeq>(spec.n, spec.domain);
  } else if (spec.base == "minimal-fs") {
    fallback = std::make_shared<const MinimalFsSeq>(spec.n, spec.domain);
  } else if (!spec.base.empty()) {
    throw DomainError("unknown base rule '" + spec.base + "'");
  }
  return std::make_shared<const ExplicitSeq>(spec.n, spec.domain, spec.entries,
                                             std::move(fallback));
}

std::vector<std::string> ValidateSpec(const SpecFile& spec) {
  std::vector<std::string> problems;
  if (!spec.domain.IsClosed()) {
    problems.push_back("domain " + spec.domain.ToString() + " is not closed");
  }
  auto seq = SeqFromSpec(spec);
  for (const auto& [idx, club] : spec.entries) {
    const std::string name = "index " + FormatTuple(idx);
    ClubPtr parent;
    try {
      parent = seq->ClubOf(Tail(idx));
    } catch (const DomainError& err) {
      problems.push_back(name + ": " + err.what());
      continue;
    }
    const Ordinal& head = idx.front();
    if (parent == nullptr || !parent->Contains(head)) {
      problems.push_back(name + ": not a valid index");
      continue;
    }
    const Club allowed = parent->Below(head);
    if (!club.SubsetOf(allowed)) {
      problems.push_back(name + ": " + club.ToString() +
                         " is not a subset of " + allowed.ToString());
    } else if (!club.IsClosed()) {
      problems.push_back(name + ": " + club.ToString() + " is not closed");
    } else if (parent->IsAccPoint(head)) {
      if (club.Max().has_value() || club.Sup() != head) {
        problems.push_back(name + ": " + club.ToString() +
                           " is not cofinal in " + head.ToString());
      }
    } else {
      auto below = parent->MaxBelow(head);
      const Club minimal = below ? Club::Finite({*below}) : Club();
      if (club != minimal) {
        problems.push_back(name + ": successor head needs " +
                           minimal.ToString() + ", got " + club.ToString());
      }
    }
  }
  return problems;
}

SpecFile SpecFromSeq(const NCSeq& seq, const Ordinal& window,
                     std::size_t acc_cap) {
  ScanOptions opts;
  opts.acc_cap = acc_cap;
  AccIndexScan scan = EnumerateAccIndices(seq, window, opts);
  if (!scan.errors.empty()) {
    throw DomainError("cannot serialize: " + scan.errors.front().second);
  }
  if (!scan.exhaustive) {
    throw ResourceLimitError(
        "cannot serialize: more than " + std::to_string(acc_cap) +
        " accumulation points below " + window.ToString() +
        "; use a smaller window");
  }
  SpecFile spec;
  spec.n = seq.n();
  spec.domain = seq.domain().Below(window);
  for (const AccIndex& node : scan.indices) {
    if (node.index.empty()) continue;
    spec.entries.emplace(node.index, *node.club);
  }
  return spec;
}

}  // namespace hwalks
