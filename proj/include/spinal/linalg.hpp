#pragma once

// Exact linear algebra for the hyperplane inclusion matrix W and its
// explicit right-inverse T.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinal/gf2n.hpp"
#include "spinal/hyperplanes.hpp"

namespace spinal {

using Rational = mpq_class;

/// "num/den", or just "num" for integers.
std::string to_string(const Rational& r);

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalMatrix transpose() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

/// 0/1 matrix with 2q rows and 2k = 2(2q-1) columns.
struct InclusionMatrix {
  std::uint64_t q = 0;
  std::uint64_t k = 0;
  std::vector<std::uint8_t> entries;  // row-major, 2q x 2k
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  /// Field-element coordinates per row when built from a field.
  std::vector<std::uint64_t> row_elements;

  std::size_t rows() const { return 2 * q; }
  std::size_t cols() const { return 2 * k; }
  std::uint8_t at(std::size_t r, std::size_t c) const { return entries[r * cols() + c]; }
  std::uint8_t& at(std::size_t r, std::size_t c) { return entries[r * cols() + c]; }

  RationalMatrix to_rational() const;
};

/// Labels matching the row order [0, alpha^1, ..., alpha^{k-1}, alpha^k = 1].
std::string element_label(const FieldContext& ctx, std::size_t row);

/// Rows [0, alpha^1, ..., alpha^k = 1]; columns [H_0..H_{k-1}, H_0^c..H_{k-1}^c].
InclusionMatrix build_W(const FieldContext& ctx);

/// The matrix determined by a base block through the circulant and mirror
/// rules. Rejects blocks without the difference property.
InclusionMatrix build_W_general(const BaseBlock& block);

/// T[j][i] = 1/k where W[i][j] = 1, otherwise -(q-1)/(k(k-q+1)).
RationalMatrix build_T(std::uint64_t q, const InclusionMatrix& w);

/// Exact check that W * T is the 2q x 2q identity.
bool verify_right_inverse(const InclusionMatrix& w, const RationalMatrix& t);
bool verify_right_inverse(const RationalMatrix& w, const RationalMatrix& t);

/// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t rank_over_Q(const RationalMatrix& m);
std::size_t rank_over_Q(const InclusionMatrix& w);

bool is_prime(std::uint64_t n);

/// Rank over F_p. Throws std::invalid_argument unless p is prime, or when a
/// denominator is divisible by p.
std::size_t rank_mod_p(const RationalMatrix& m, std::uint64_t p);
std::size_t rank_mod_p(const InclusionMatrix& w, std::uint64_t p);

struct ConditionResult {
  std::string name;  // "R1" .. "R9"
  bool passed = true;
  /// First counterexample, 1-based (row, column); column 0 when the
  /// condition concerns a whole row, row 0 for a whole column.
  std::optional<std::pair<std::size_t, std::size_t>> at;
};

struct ConditionReport {
  std::vector<ConditionResult> items;
  bool all_passed() const;
  const ConditionResult& operator[](const std::string& name) const;
};

ConditionReport check_R_conditions(const InclusionMatrix& w);

}  // namespace spinal
