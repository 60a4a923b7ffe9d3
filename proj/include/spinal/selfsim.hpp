#pragma once

// The self-similar action of the Z_2-multispinal group on the binary tree,
// presented by its nucleus automaton: states e, a and iota(x) for nonzero x
// in GF(2^n).
//
//   e     : fixes both letters, restricts to e
//   a     : swaps 0 <-> 1, restricts to e
//   iota(x): fixes both letters, iota(x)|_1 = iota(alpha x),
//            iota(x)|_0 = a if Tr(x) = 1, else e

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "spinal/gf2n.hpp"

namespace spinal {

using Letter = std::uint8_t;  // 0 or 1
using Word = std::vector<Letter>;

/// Parses a string over {'0','1'}.
Word parse_word(std::string_view text);
std::string to_string(const Word& w);
/// 1^count
Word ones(std::size_t count);
Word concat(const Word& a, const Word& b);

using StateId = std::uint32_t;

/// A finite product f_0 f_1 ... f_{r-1} of nucleus states. The rightmost
/// factor acts first: (gh) . w = g . (h . w).
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<StateId> factors) : factors_(std::move(factors)) {}

  const std::vector<StateId>& factors() const { return factors_; }
  bool is_empty_product() const { return factors_.empty(); }

  /// Every nucleus state is an involution, so the inverse reverses the factors.
  GroupElement inverse() const;

  friend GroupElement operator*(const GroupElement& g, const GroupElement& h);

 private:
  std::vector<StateId> factors_;
};

struct FactorsHash {
  std::size_t operator()(const std::vector<StateId>& v) const noexcept;
};

class Automaton {
 public:
  static constexpr StateId kIdentity = 0;
  static constexpr StateId kSwap = 1;

  explicit Automaton(FieldContext ctx);

  Automaton(const Automaton&) = delete;
  Automaton& operator=(const Automaton&) = delete;

  const FieldContext& field() const { return ctx_; }

  std::size_t state_count() const { return ctx_.size() + 1; }
  /// iota(x); iota(0) is the identity state.
  StateId directed(FieldElement x) const;
  bool is_directed(StateId s) const { return s != kSwap; }
  /// iota^{-1}(s) for s in N_0 (the identity maps to 0).
  FieldElement element_of(StateId s) const;

  bool swaps(StateId s) const { return s == kSwap; }
  StateId transition(StateId s, Letter x) const;
  std::string label(StateId s) const;

  /// N_0 in the order [e, iota(alpha^1), ..., iota(alpha^k) = iota(1)].
  std::vector<StateId> directed_part() const;
  /// N_0 followed by a.
  std::vector<StateId> nucleus() const;

  GroupElement element(StateId s) const;

  /// Removes identities, cancels a*a and merges adjacent directed factors.
  GroupElement reduce(const GroupElement& g) const;

  Letter act_letter(const GroupElement& g, Letter x) const;
  Word act(const GroupElement& g, const Word& w) const;
  GroupElement restrict(const GroupElement& g, Letter x) const;
  GroupElement restrict(const GroupElement& g, const Word& w) const;

  /// True iff g and h act identically on every finite word, decided by
  /// bisimulation over pairs of reduced factor tuples.
  bool equal(const GroupElement& g, const GroupElement& h) const;

  /// The nucleus state equal to g, if any. Results are cached.
  std::optional<StateId> nucleus_member(const GroupElement& g) const;

 private:
  FieldContext ctx_;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<std::vector<StateId>, std::optional<StateId>, FactorsHash> member_cache_;
};

struct PeriodResult {
  std::uint64_t period = 1;
  bool identity_state = false;  // input was e (iota(0)); period reported as 1
};

/// Least p >= 1 with s|_{1^p} = s, for s in N_0. Throws ContractViolation for a.
PeriodResult restriction_period(const Automaton& aut, StateId s);

struct ContractionFailure {
  StateId g;
  StateId h;
  Word word;
};

struct NucleusReport {
  bool restriction_closed = true;
  bool states_distinct = true;
  std::size_t state_count = 0;
  std::size_t pairs_checked = 0;
  int depth_limit = 0;
  /// Smallest d such that every (gh)|_w with |w| >= d is in the nucleus,
  /// maximised over all pairs.
  int contraction_depth = 0;
  std::vector<ContractionFailure> failures;

  bool passed() const { return restriction_closed && states_distinct && failures.empty(); }
};

NucleusReport verify_nucleus(const Automaton& aut, int depth);

}  // namespace spinal
