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

#ifndef HWALKS_NCSEQ_H_
#define HWALKS_NCSEQ_H_

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "hwalks/club.h"
#include "hwalks/errors.h"
#include "hwalks/ordinal.h"
#include "hwalks/tuple.h"

namespace hwalks {

// An n-C-sequence on a club D: clubs C_idx for the valid index tuples idx of
// length <= n, with C_<> = D and <b>^idx valid iff idx is valid and
// b in C_idx.
class NCSeq {
 public:
  virtual ~NCSeq() = default;

  int n() const { return n_; }
  const Club& domain() const { return *domain_; }
  const std::string& kind() const { return kind_; }

  // C_idx, or nullptr when idx is not a valid index. Indices longer than n()
  // are invalid.
  virtual ClubPtr ClubOf(const Tuple& idx) const = 0;

  bool IndexValid(const Tuple& idx) const { return ClubOf(idx) != nullptr; }

  // Same as ClubOf but throws DomainError for invalid indices.
  ClubPtr RequireClub(const Tuple& idx) const;

  // Indices whose clubs are stored rather than computed by a rule. Scanners
  // use these together with accumulation points to reach every index whose
  // club can accumulate.
  virtual std::vector<Tuple> StoredIndices() const { return {}; }

 protected:
  NCSeq(int n, Club domain, std::string kind);

  const ClubPtr& domain_ptr() const { return domain_; }

 private:
  int n_;
  ClubPtr domain_;
  std::string kind_;
};

using NCSeqPtr = std::shared_ptr<const NCSeq>;

// Sequence defined index by index from its parent, minimal at successors:
// for idx = <b>^g with P = C_g,
//   C_idx = StoredClub(idx)            if one is stored,
//         = RuleClub(idx, P)           if b in acc(P),
//         = {max(P ∩ b)} (or empty)    otherwise.
// Results are memoized; the memo is guarded by a mutex so instances can be
// shared between threads.
class RecursiveSeq : public NCSeq {
 public:
  ClubPtr ClubOf(const Tuple& idx) const final;

  virtual ClubPtr StoredClub(const Tuple& idx) const {
    (void)idx;
    return nullptr;
  }
  // Club at an index whose head accumulates in `parent`.
  virtual ClubPtr RuleClub(const Tuple& idx, const Club& parent) const = 0;

 protected:
  using NCSeq::NCSeq;

 private:
  mutable std::mutex mu_;
  mutable std::unordered_map<Tuple, ClubPtr, TupleHash> memo_;
};

// Accumulation points get everything available: C_idx = P ∩ b.
class MaximalSeq : public RecursiveSeq {
 public:
  MaximalSeq(int n, Club domain);
  ClubPtr RuleClub(const Tuple& idx, const Club& parent) const override;
};

// Accumulation points get a cofinal subset of order type w: the image under
// the enumeration of P ∩ b of the fundamental sequence of otp(P ∩ b). On an
// interval domain this is fs(b) at the first level, and no deeper
// accumulation points exist.
class MinimalFsSeq : public RecursiveSeq {
 public:
  MinimalFsSeq(int n, Club domain);
  ClubPtr RuleClub(const Tuple& idx, const Club& parent) const override;
};

// Thrown by explicit sequences when an accumulation index has no entry and
// no fallback rule.
class MissingClubError : public DomainError {
 public:
  explicit MissingClubError(const Tuple& idx)
      : DomainError("no club stored for accumulation index " +
                    FormatTuple(idx)),
        index_(idx) {}
  const Tuple& index() const { return index_; }

 private:
  Tuple index_;
};

// Sequence given by a table of clubs, optionally falling back to another
// recursive sequence's rule at accumulation indices missing from the table.
class ExplicitSeq : public RecursiveSeq {
 public:
  ExplicitSeq(int n, Club domain, std::map<Tuple, Club> table,
              std::shared_ptr<const RecursiveSeq> fallback = nullptr,
              std::string kind = "explicit");

  ClubPtr StoredClub(const Tuple& idx) const override;
  ClubPtr RuleClub(const Tuple& idx, const Club& parent) const override;
  std::vector<Tuple> StoredIndices() const override;

  const std::map<Tuple, ClubPtr>& table() const { return table_; }
  const std::shared_ptr<const RecursiveSeq>& fallback() const {
    return fallback_;
  }

 private:
  std::map<Tuple, ClubPtr> table_;
  std::shared_ptr<const RecursiveSeq> fallback_;
};

// `base` with some clubs replaced. Replacements apply wherever the index is
// valid; every other club follows base's stored clubs and rule.
class OverrideSeq : public RecursiveSeq {
 public:
  OverrideSeq(std::shared_ptr<const RecursiveSeq> base,
              std::map<Tuple, Club> overrides);

  ClubPtr StoredClub(const Tuple& idx) const override;
  ClubPtr RuleClub(const Tuple& idx, const Club& parent) const override;
  std::vector<Tuple> StoredIndices() const override;

 private:
  std::shared_ptr<const RecursiveSeq> base_;
  std::map<Tuple, ClubPtr> overrides_;
};

// The (n-1)-C-sequence C^d on C_<d>: C^d_g = C_{g^<d>}.
class RestrictedSeq : public NCSeq {
 public:
  // Throws DomainError unless base.n() >= 2 and d is in base's domain.
  RestrictedSeq(NCSeqPtr base, const Ordinal& delta);

  ClubPtr ClubOf(const Tuple& idx) const override;
  std::vector<Tuple> StoredIndices() const override;

  const Ordinal& delta() const { return delta_; }

 private:
  NCSeqPtr base_;
  Ordinal delta_;
};

NCSeqPtr Restrict(NCSeqPtr base, const Ordinal& delta);

// Builtin universes on the interval [0, lambda).
std::shared_ptr<const RecursiveSeq> BuildMaximal(int n, const Ordinal& lambda);
std::shared_ptr<const RecursiveSeq> BuildOrderMinimal(int n,
                                                      const Ordinal& lambda);

}  // namespace hwalks

#endif  // HWALKS_NCSEQ_H_
