#pragma once

// The inverse semigroup S_{G,X}, germs over eventually periodic words, the
// bisections U_m(z_g) and the finite witness searches behind the
// disjointification and singular-function arguments.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spinal/linalg.hpp"
#include "spinal/selfsim.hpp"

namespace spinal {

/// (eta, g, mu) or the zero element.
struct SemigroupElement {
  bool zero = false;
  Word eta;
  GroupElement g;
  Word mu;

  static SemigroupElement Zero() { return SemigroupElement{true, {}, {}, {}}; }
  static SemigroupElement triple(Word eta, GroupElement g, Word mu) {
    return SemigroupElement{false, std::move(eta), std::move(g), std::move(mu)};
  }
};

SemigroupElement sg_multiply(const Automaton& aut, const SemigroupElement& s, const SemigroupElement& t);
SemigroupElement sg_star(const SemigroupElement& s);
/// Equal words and group parts that act identically.
bool sg_equal(const Automaton& aut, const SemigroupElement& s, const SemigroupElement& t);
bool sg_is_idempotent(const Automaton& aut, const SemigroupElement& s);
/// Membership in {(mu, e, mu)} u {0}.
bool sg_has_idempotent_shape(const Automaton& aut, const SemigroupElement& s);

/// prefix followed by period repeated forever; the period is nonempty.
struct PeriodicWord {
  Word prefix;
  Word period;

  PeriodicWord(Word prefix_, Word period_);
  Letter at(std::size_t i) const;
  /// Position modulo the eventual period.
  std::size_t state_index(std::size_t i) const;
  std::string to_string() const;
};

/// 1^infinity
PeriodicWord ones_forever();
/// w 1^infinity
PeriodicWord then_ones(const Word& w);

/// True iff [(∅,g1,∅), tail] = [(∅,g2,∅), tail]: some finite prefix v of the
/// tail has g1.v = g2.v and g1|_v = g2|_v.
bool germ_equal(const Automaton& aut, const GroupElement& g1, const GroupElement& g2, const PeriodicWord& tail);

/// A germ point [(∅, g, ∅), tail].
struct GermPoint {
  StateId g;
  PeriodicWord tail;
};

/// z_g = [(∅, g, ∅), 1^∞]
GermPoint z_point(StateId g);

/// Membership of a point in U_m(z_h) = Θ((∅,h,∅), C(1^m)).
bool in_bisection(const Automaton& aut, const GermPoint& point, StateId h, std::size_t m);

/// Word 1^{m+m'} 0 with m + m' ≡ j (mod 2^n - 1) for the least j such that
/// iota^{-1}(g1) - iota^{-1}(g2) lies in H_j; validated by germ_equal.
Word intersect_witness(const Automaton& aut, StateId g1, StateId g2, std::size_t m);

/// H_j (complement = false) or its complement, indexed j in [0, 2^n - 2].
struct AdmissibleSet {
  std::uint64_t j = 0;
  bool complement = false;

  std::string label() const;
};

/// The states iota(x) for x in the admissible set, in N_0 order.
std::vector<StateId> admissible_members(const Automaton& aut, AdmissibleSet set);

/// Identifies an arbitrary subset of N_0 as an admissible set, or throws
/// std::invalid_argument.
AdmissibleSet classify_admissible(const Automaton& aut, std::vector<StateId> states);

std::size_t default_search_depth(const Automaton& aut, std::size_t m);

struct RegionPattern {
  AdmissibleSet set;
  std::vector<StateId> members;
  /// Finite part of the witness tail; the point is [(∅, members[0], ∅), witness 1^∞].
  std::optional<Word> witness;
  /// Indexed by N_0 order; membership of the witness point in U_m(z_h).
  std::vector<bool> membership_row;
  bool validated = false;
};

/// Searches witnesses 1^s 0 1^∞ with m <= s < search_depth for a point in
/// every U_m(z_g), g in the set, and records its membership in all U_m(z_h).
RegionPattern region_pattern(const Automaton& aut, std::size_t m, AdmissibleSet set, std::size_t search_depth);

struct MembershipMatrix {
  std::size_t m = 0;
  std::vector<RegionPattern> regions;  // [H_0..H_{k-1}, H_0^c..H_{k-1}^c]
  std::vector<StateId> columns;        // N_0 order
  std::vector<std::uint8_t> entries;   // 2k x 2q row-major
  bool all_validated = false;
  bool equals_W_transpose = false;
  std::optional<std::pair<std::size_t, std::size_t>> mismatch;  // (row, col), 0-based

  std::size_t rows() const { return regions.size(); }
  std::size_t cols() const { return columns.size(); }
  std::uint8_t at(std::size_t r, std::size_t c) const { return entries[r * cols() + c]; }
};

/// Compares against transpose(W) by field element, not index.
MembershipMatrix membership_matrix(const Automaton& aut, std::size_t m, std::size_t search_depth);

struct SingularCertificate {
  bool passed = false;
  std::size_t unknowns = 0;   // 2q
  std::size_t equations = 0;  // 2k
  std::optional<std::size_t> rank;  // exact rank over Q when computed
  bool left_inverse_verified = false;  // T^t M = I
  bool membership_equals_W_transpose = false;
};

inline constexpr int kDefaultRankMaxDegree = 8;

/// The only rational solution of  sum_{g in K} c_g = 0  over all admissible K
/// is c = 0.
SingularCertificate singular_system_certificate(const Automaton& aut, std::size_t m,
                                                int rank_max_degree = kDefaultRankMaxDegree);
SingularCertificate singular_system_certificate(const MembershipMatrix& matrix, const InclusionMatrix& w,
                                                const RationalMatrix& t, bool compute_rank);

struct BoundReport {
  Rational c_e;
  Rational max_abs_kappa;
  std::vector<Rational> kappa;  // per region row
  bool exceeds_weak = false;    // max |kappa| > |c_e| / 2^n
  bool meets_sharp = false;     // max |kappa| >= |c_e| q / (2q - 1)
};

/// c is indexed in N_0 order; c[0] = c_e must be nonzero.
BoundReport bound_check(const MembershipMatrix& matrix, const std::vector<Rational>& c);

/// sum_j |T[j][0]|, exactly.
Rational column_abs_sum(const RationalMatrix& t, std::size_t col);

/// Random rational vector of length `size` with nonzero first entry;
/// numerators in [-bound, bound], denominators in [1, bound].
std::vector<Rational> random_coefficients(std::mt19937_64& rng, std::size_t size, long bound = 100);

/// For a directed state iota(alpha^c) and offset L, the exponent l with
/// L + l ≡ c (mod 2^n - 1), so that iota(alpha^l)|_{1^L} = iota(alpha^c).
std::uint64_t restriction_alignment(const Automaton& aut, std::uint64_t c, std::uint64_t offset);

}  // namespace spinal
