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

#include "hwalks/coherence.h"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "hwalks/errors.h"
#include "hwalks/sampling.h"

namespace hwalks {

std::vector<Ordinal> ScanAccPoints(const Club& c, const Ordinal& window,
                                   const ScanOptions& opts, bool* exhaustive) {
  if (auto exact = c.AccPointsBelow(window, opts.acc_cap)) return *exact;
  *exhaustive = false;
  std::vector<Ordinal> out;
  for (Ordinal& a : LimitGrid(window, opts.grid_coef)) {
    if (c.IsAccPoint(a)) out.push_back(std::move(a));
  }
  return out;
}

namespace {

bool ShorterThenLex(const AccIndex& a, const AccIndex& b) {
  if (a.index.size() != b.index.size()) return a.index.size() < b.index.size();
  return a.index < b.index;
}

bool EntriesBelow(const Tuple& t, const Ordinal& window) {
  return std::all_of(t.begin(), t.end(),
                     [&](const Ordinal& x) { return x < window; });
}

}  // namespace

AccIndexScan EnumerateAccIndices(const NCSeq& seq, const Ordinal& window,
                                 const ScanOptions& opts) {
  AccIndexScan scan;
  std::unordered_set<Tuple, TupleHash> seen;
  std::deque<Tuple> queue;

  auto visit = [&](const Tuple& idx) {
    if (!seen.insert(idx).second) return;
    ClubPtr club;
    try {
      club = seq.ClubOf(idx);
    } catch (const DomainError& err) {
      scan.errors.emplace_back(idx, err.what());
      return;
    }
    if (club == nullptr) return;
    scan.indices.push_back({idx, club});
    if (static_cast<int>(idx.size()) < seq.n()) queue.push_back(idx);
  };

  visit({});
  for (const Tuple& t : seq.StoredIndices()) {
    if (EntriesBelow(t, window)) visit(t);
  }
  while (!queue.empty()) {
    const Tuple idx = std::move(queue.front());
    queue.pop_front();
    ClubPtr club = seq.ClubOf(idx);
    for (const Ordinal& a :
         ScanAccPoints(*club, window, opts, &scan.exhaustive)) {
      visit(Prepend(a, idx));
    }
  }
  std::sort(scan.indices.begin(), scan.indices.end(), ShorterThenLex);
  return scan;
}

CoherenceReport CheckCoherence(const NCSeq& seq, const Ordinal& window,
                               const ScanOptions& opts) {
  CoherenceReport report;
  report.window = window;
  AccIndexScan scan = EnumerateAccIndices(seq, window, opts);
  report.exhaustive = scan.exhaustive;
  report.indices_scanned = scan.indices.size();
  for (const auto& [idx, what] : scan.errors) {
    report.violations.push_back({"missing", idx.front(), idx, what});
  }

  // Structure of every scanned club.
  for (const AccIndex& node : scan.indices) {
    if (node.index.empty()) continue;
    const Ordinal& head = node.index.front();
    ClubPtr parent = seq.ClubOf(Tail(node.index));
    const Club allowed = parent->Below(head);
    std::string problem;
    if (!node.club->SubsetOf(allowed)) {
      problem = "not a subset of head ∩ parent";
    } else if (!node.club->IsClosed()) {
      problem = "not closed";
    } else if (parent->IsAccPoint(head) &&
               (node.club->Max().has_value() || node.club->Sup() != head)) {
      problem = "not cofinal in its head";
    }
    if (!problem.empty()) {
      report.violations.push_back(
          {"structure", head, node.index, problem + ": " + node.club->ToString()});
    }
  }

  // First clause, collecting X along the way.
  std::set<Ordinal> x_set;
  for (const AccIndex& node : scan.indices) {
    if (static_cast<int>(node.index.size()) != seq.n()) continue;
    bool unused = true;
    for (const Ordinal& a : ScanAccPoints(*node.club, window, opts, &unused)) {
      x_set.insert(a);
      ClubPtr ca;
      try {
        ca = seq.ClubOf({a});
      } catch (const DomainError& err) {
        report.violations.push_back({"missing", a, {a}, err.what()});
        continue;
      }
      const Club below = node.club->Below(a);
      if (ca == nullptr || below != *ca) {
        report.violations.push_back(
            {"restriction", a, node.index,
             "C" + FormatTuple(node.index) + " ∩ " + a.ToString() + " = " +
                 below.ToString() + " but C" + FormatTuple({a}) + " = " +
                 (ca ? ca->ToString() : std::string("<invalid>"))});
      }
    }
    if (!unused) report.exhaustive = false;
  }
  report.x_set.assign(x_set.begin(), x_set.end());

  // Second clause.
  for (const AccIndex& node : scan.indices) {
    if (node.index.size() < 2) continue;
    const Ordinal& a = node.index.front();
    if (!x_set.contains(a)) continue;
    if (node.club->empty() || node.club->Max().has_value() ||
        node.club->Sup() != a) {
      continue;
    }
    ClubPtr ca = seq.ClubOf({a});
    if (ca == nullptr || *ca != *node.club) {
      report.violations.push_back(
          {"top", a, node.index,
           "C" + FormatTuple(node.index) + " = " + node.club->ToString() +
               " but C" + FormatTuple({a}) + " = " +
               (ca ? ca->ToString() : std::string("<invalid>"))});
    }
  }
  return report;
}

WeakWitnessResult CheckWeakNontrivialityWitness(const NCSeq& seq,
                                                const Club& d_prime,
                                                const Ordinal& window,
                                                const ScanOptions& opts) {
  if (!d_prime.SubsetOf(seq.domain())) {
    throw DomainError("candidate club " + d_prime.ToString() +
                      " is not a subset of the domain " +
                      seq.domain().ToString());
  }
  WeakWitnessResult result;
  for (const Ordinal& a :
       ScanAccPoints(d_prime, window, opts, &result.exhaustive)) {
    ClubPtr ca = seq.ClubOf({a});
    if (ca == nullptr || d_prime.Below(a) != *ca) {
      result.refuted = true;
      result.alpha = a;
      return result;
    }
  }
  return result;
}

}  // namespace hwalks
