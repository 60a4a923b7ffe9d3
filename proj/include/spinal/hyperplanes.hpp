#pragma once

// Index-2 subgroups H_j = ker(Tr o phi^j) of GF(2^n), the symmetric design
// they form on the nonzero elements, and cyclic base blocks (difference sets)
// of the same parameters.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinal/gf2n.hpp"

namespace spinal {

struct Hyperplane {
  std::uint64_t index = 0;
  /// members[c] is true iff the element with coordinates c lies in H_index.
  std::vector<bool> members;

  bool contains(FieldElement x) const { return members[x.coords()]; }
  std::size_t size() const;
};

/// x in H_j  <=>  Tr(alpha^j x) = 0.
bool in_hyperplane(const FieldContext& ctx, std::uint64_t j, FieldElement x);

std::vector<Hyperplane> build_hyperplanes(const FieldContext& ctx);

/// |{ j : alpha^l1 and alpha^l2 both lie in H_j }|. Exponents must differ.
std::uint64_t pair_count(const FieldContext& ctx, std::uint64_t l1, std::uint64_t l2);

/// Parameters of a 2-(v, block_size, lambda) design with v = 2q - 1.
struct DesignParams {
  std::uint64_t v = 0;
  std::uint64_t block_size = 0;
  std::uint64_t lambda = 0;

  friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

/// Raised by verify_design when a replication or pair count is off.
class DesignViolation : public std::runtime_error {
 public:
  enum class Kind { BlockSize, Replication, PairCount };

  DesignViolation(Kind kind, std::uint64_t point_a, std::uint64_t point_b, std::uint64_t expected,
                  std::uint64_t actual);

  Kind kind;
  /// Coordinates of the offending point(s); point_b == point_a for
  /// replication failures, and the block index for block-size failures.
  std::uint64_t point_a;
  std::uint64_t point_b;
  std::uint64_t expected;
  std::uint64_t actual;
};

/// Checks that the nonzero parts of the hyperplanes form a
/// 2-(2q-1, q-1, q/2-1) design on the nonzero elements.
DesignParams verify_design(const std::vector<Hyperplane>& hyperplanes);

/// A (q-1)-subset of Z_k, k = 2q - 1.
struct BaseBlock {
  std::uint64_t q = 0;
  std::uint64_t k = 0;
  std::vector<std::uint64_t> positions;  // sorted ascending

  friend bool operator==(const BaseBlock&, const BaseBlock&) = default;
  friend auto operator<=>(const BaseBlock& a, const BaseBlock& b) { return a.positions <=> b.positions; }
};

/// Shift-intersection profile of a base block: for each pair of shifts
/// r1 < r2 of the translates K_r = positions - r, |K_r1 & K_r2|.
struct DifferenceReport {
  bool all_shifts = true;    // every pair 0 <= r1 < r2 <= k-1 gives q/2 - 1
  bool short_range = true;   // pairs with r2 <= q-1 only
  std::optional<std::pair<std::uint64_t, std::uint64_t>> first_failure;  // (r1, r2)
};

DifferenceReport check_difference_property(const BaseBlock& block);

/// Builds a BaseBlock from explicit positions, validating the shape only.
BaseBlock make_base_block(std::uint64_t q, std::vector<std::uint64_t> positions);

/// { j : alpha in H_j }, which satisfies the difference property.
BaseBlock extract_base_block(const FieldContext& ctx);

/// The block translated by +shift in Z_k.
BaseBlock shift_block(const BaseBlock& block, std::uint64_t shift);

inline constexpr std::uint64_t kDefaultMaxSearchQ = 10;

/// Every (q-1)-subset of Z_{2q-1} with the difference property, in
/// lexicographic order. Odd q is rejected; q above `max_q` is refused.
std::vector<BaseBlock> search_base_blocks(std::uint64_t q, std::uint64_t max_q = kDefaultMaxSearchQ);

}  // namespace spinal
