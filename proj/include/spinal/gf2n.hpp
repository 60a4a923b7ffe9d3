#pragma once

// Arithmetic in GF(2^n) presented by a primitive polynomial over GF(2).
//
// Elements are coordinate bit-vectors (b_0, ..., b_{n-1}) in the basis
// 1, alpha, ..., alpha^{n-1}; b_0 is the least-significant bit.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spinal {

/// Thrown when an operation is called outside its contract (mismatched
/// field degree, equal arguments where distinct ones are required, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A monic polynomial over GF(2); bit k of the mask is the coefficient of x^k.
class Polynomial {
 public:
  explicit Polynomial(std::uint64_t mask);

  /// Accepts "x^3+x+1" style exponent sums or a hex bitmask ("0xB").
  static Polynomial parse(std::string_view text);

  std::uint64_t mask() const { return mask_; }
  int degree() const { return degree_; }
  std::string to_string() const;
  std::string to_hex() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::uint64_t mask_;
  int degree_;
};

/// True iff `poly` is irreducible and x has multiplicative order exactly
/// 2^n - 1 modulo `poly`. Throws std::invalid_argument for degree < 2.
bool is_primitive(const Polynomial& poly);

/// Prime factors of `value` by trial division, ascending, without repeats.
std::vector<std::uint64_t> prime_factors(std::uint64_t value);

/// The numerically smallest primitive polynomial of degree n.
Polynomial default_primitive_polynomial(int n);

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(std::uint64_t coords, int degree);

  std::uint64_t coords() const { return coords_; }
  int degree() const { return degree_; }
  bool is_zero() const { return coords_ == 0; }
  bool bit(int i) const { return ((coords_ >> i) & 1U) != 0; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  std::uint64_t coords_ = 0;
  int degree_ = 0;
};

/// Immutable field description: the polynomial together with the table of
/// powers of alpha and its inverse (discrete logarithm).
class FieldContext {
 public:
  /// Largest degree for which the power and log tables are materialized.
  static constexpr int kMaxTableDegree = 20;

  /// Throws std::invalid_argument if `poly` is not primitive or too large.
  explicit FieldContext(Polynomial poly);

  /// Context for the default primitive polynomial of degree n.
  static FieldContext for_degree(int n);

  const Polynomial& polynomial() const { return poly_; }
  int degree() const { return poly_.degree(); }
  /// 2^n
  std::uint64_t size() const { return std::uint64_t{1} << degree(); }
  /// 2^n - 1, the order of alpha.
  std::uint64_t order() const { return size() - 1; }

  FieldElement zero() const { return {0, degree()}; }
  FieldElement one() const { return {1, degree()}; }
  FieldElement alpha() const { return {2, degree()}; }
  /// Element with the given coordinate mask; throws if out of range.
  FieldElement element(std::uint64_t coords) const;

  FieldElement add(FieldElement x, FieldElement y) const;
  /// One step of the feedback shift register: x -> alpha * x.
  FieldElement mul_alpha(FieldElement x) const;
  FieldElement mul(FieldElement x, FieldElement y) const;
  /// Tr(x) = x + x^2 + ... + x^{2^{n-1}}, as a bit.
  int trace(FieldElement x) const;

  /// alpha^e for any e >= 0 (reduced modulo 2^n - 1).
  FieldElement power(std::uint64_t e) const;
  /// The exponent e in [0, 2^n - 2] with alpha^e == x; x must be nonzero.
  std::uint64_t log(FieldElement x) const;

  const std::vector<std::uint64_t>& power_table() const { return powers_; }

  /// Tr(alpha^e) for e in [0, 2^n - 2].
  int trace_of_power(std::uint64_t e) const { return trace_of_power_[e % order()]; }

 private:
  void check(FieldElement x) const;

  Polynomial poly_;
  std::uint64_t reduction_;   // mask without the leading x^n term
  std::uint64_t trace_mask_;  // bit i set iff Tr(alpha^i) == 1
  std::vector<std::uint64_t> powers_;
  std::vector<std::uint32_t> logs_;
  std::vector<std::uint8_t> trace_of_power_;
};

/// Exhaustively checks that 0 is the only element in every ker(Tr o phi^j).
bool joint_kernel_is_trivial(const FieldContext& ctx);

}  // namespace spinal
