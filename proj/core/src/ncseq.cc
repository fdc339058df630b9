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

#include "hwalks/ncseq.h"

#include <utility>

namespace hwalks {

NCSeq::NCSeq(int n, Club domain, std::string kind)
    : n_(n),
      domain_(std::make_shared<const Club>(std::move(domain))),
      kind_(std::move(kind)) {
  if (n < 1) throw DomainError("n-C-sequence needs n >= 1");
}

ClubPtr NCSeq::RequireClub(const Tuple& idx) const {
  ClubPtr c = ClubOf(idx);
  if (c == nullptr) {
    throw DomainError("index " + FormatTuple(idx) + " is not valid");
  }
  return c;
}

ClubPtr RecursiveSeq::ClubOf(const Tuple& idx) const {
  if (idx.empty()) return domain_ptr();
  if (static_cast<int>(idx.size()) > n()) return nullptr;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(idx);
    if (it != memo_.end()) return it->second;
  }
  ClubPtr result;
  ClubPtr parent = ClubOf(Tail(idx));
  const Ordinal& head = idx.front();
  if (parent != nullptr && parent->Contains(head)) {
    result = StoredClub(idx);
    if (result == nullptr) {
      if (parent->IsAccPoint(head)) {
        result = RuleClub(idx, *parent);
      } else if (auto below = parent->MaxBelow(head)) {
        result = std::make_shared<const Club>(Club::Finite({*below}));
      } else {
        result = std::make_shared<const Club>();
      }
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.emplace(idx, result).first->second;
}

MaximalSeq::MaximalSeq(int n, Club domain)
    : RecursiveSeq(n, std::move(domain), "maximal") {}

ClubPtr MaximalSeq::RuleClub(const Tuple& idx, const Club& parent) const {
  return std::make_shared<const Club>(parent.Below(idx.front()));
}

MinimalFsSeq::MinimalFsSeq(int n, Club domain)
    : RecursiveSeq(n, std::move(domain), "order-minimal") {}

ClubPtr MinimalFsSeq::RuleClub(const Tuple& idx, const Club& parent) const {
  const Club below = parent.Below(idx.front());
  return std::make_shared<const Club>(
      Club::Copy(Club::FundamentalRange(below.OrderType()), below));
}

ExplicitSeq::ExplicitSeq(int n, Club domain, std::map<Tuple, Club> table,
                         std::shared_ptr<const RecursiveSeq> fallback,
                         std::string kind)
    : RecursiveSeq(n, std::move(domain), std::move(kind)),
      fallback_(std::move(fallback)) {
  for (auto& [idx, club] : table) {
    if (idx.empty() || static_cast<int>(idx.size()) > n) {
      throw DomainError("stored index " + FormatTuple(idx) +
                        " must have length 1.." + std::to_string(n));
    }
    table_.emplace(idx, std::make_shared<const Club>(std::move(club)));
  }
}

ClubPtr ExplicitSeq::StoredClub(const Tuple& idx) const {
  auto it = table_.find(idx);
  if (it != table_.end()) return it->second;
  return fallback_ != nullptr ? fallback_->StoredClub(idx) : nullptr;
}

ClubPtr ExplicitSeq::RuleClub(const Tuple& idx, const Club& parent) const {
  if (fallback_ == nullptr) throw MissingClubError(idx);
  return fallback_->RuleClub(idx, parent);
}

std::vector<Tuple> ExplicitSeq::StoredIndices() const {
  std::vector<Tuple> out;
  out.reserve(table_.size());
  for (const auto& [idx, club] : table_) out.push_back(idx);
  if (fallback_ != nullptr) {
    for (Tuple& t : fallback_->StoredIndices()) out.push_back(std::move(t));
  }
  return out;
}

OverrideSeq::OverrideSeq(std::shared_ptr<const RecursiveSeq> base,
                         std::map<Tuple, Club> overrides)
    : RecursiveSeq(base->n(), base->domain(), base->kind() + "+override"),
      base_(std::move(base)) {
  for (auto& [idx, club] : overrides) {
    overrides_.emplace(idx, std::make_shared<const Club>(std::move(club)));
  }
}

ClubPtr OverrideSeq::StoredClub(const Tuple& idx) const {
  auto it = overrides_.find(idx);
  if (it != overrides_.end()) return it->second;
  return base_->StoredClub(idx);
}

ClubPtr OverrideSeq::RuleClub(const Tuple& idx, const Club& parent) const {
  return base_->RuleClub(idx, parent);
}

std::vector<Tuple> OverrideSeq::StoredIndices() const {
  std::vector<Tuple> out = base_->StoredIndices();
  for (const auto& [idx, club] : overrides_) out.push_back(idx);
  return out;
}

namespace {

Club CheckedDelta(const NCSeqPtr& base, const Ordinal& delta) {
  if (base->n() < 2) throw DomainError("restrict needs n >= 2");
  ClubPtr c = base->ClubOf({delta});
  if (c == nullptr) {
    throw DomainError("restrict: " + delta.ToString() + " is not in the domain");
  }
  return *c;
}

}  // namespace

RestrictedSeq::RestrictedSeq(NCSeqPtr base, const Ordinal& delta)
    : NCSeq(base->n() - 1, CheckedDelta(base, delta),
            base->kind() + "/" + delta.ToString()),
      base_(std::move(base)),
      delta_(delta) {}

ClubPtr RestrictedSeq::ClubOf(const Tuple& idx) const {
  if (static_cast<int>(idx.size()) > n()) return nullptr;
  return base_->ClubOf(Append(idx, delta_));
}

std::vector<Tuple> RestrictedSeq::StoredIndices() const {
  std::vector<Tuple> out;
  for (const Tuple& t : base_->StoredIndices()) {
    if (t.size() >= 2 && t.back() == delta_) {
      out.emplace_back(t.begin(), t.end() - 1);
    }
  }
  return out;
}

NCSeqPtr Restrict(NCSeqPtr base, const Ordinal& delta) {
  return std::make_shared<const RestrictedSeq>(std::move(base), delta);
}

std::shared_ptr<const RecursiveSeq> BuildMaximal(int n, const Ordinal& lambda) {
  return std::make_shared<const MaximalSeq>(n, Club::Interval(lambda));
}

std::shared_ptr<const RecursiveSeq> BuildOrderMinimal(int n,
                                                      const Ordinal& lambda) {
  if (!lambda.IsLimit()) {
    throw DomainError("order-minimal sequence needs a limit, got " +
                      lambda.ToString());
  }
  return std::make_shared<const MinimalFsSeq>(n, Club::Interval(lambda));
}

}  // namespace hwalks
