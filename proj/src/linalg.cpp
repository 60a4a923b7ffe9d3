#include "spinal/linalg.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace spinal {

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in product");
  RationalMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t l = 0; l < b.cols(); ++l) out(i, l) += a(i, j) * b(j, l);
    }
  return out;
}

RationalMatrix InclusionMatrix::to_rational() const {
  RationalMatrix m(rows(), cols());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols(); ++c) m(r, c) = at(r, c);
  return m;
}

std::string element_label(const FieldContext& ctx, std::size_t row) {
  if (row == 0) return "0";
  if (row == ctx.order()) return "1";
  return "a^" + std::to_string(row);
}

namespace {

InclusionMatrix empty_inclusion(std::uint64_t q) {
  InclusionMatrix w;
  w.q = q;
  w.k = 2 * q - 1;
  w.entries.assign(w.rows() * w.cols(), 0);
  for (std::uint64_t j = 0; j < w.k; ++j) w.col_labels.push_back("H" + std::to_string(j));
  for (std::uint64_t j = 0; j < w.k; ++j) w.col_labels.push_back("H" + std::to_string(j) + "^c");
  for (std::uint64_t j = 0; j < w.k; ++j) w.at(0, j) = 1;
  return w;
}

}  // namespace

InclusionMatrix build_W(const FieldContext& ctx) {
  InclusionMatrix w = empty_inclusion(ctx.size() / 2);
  w.row_elements.push_back(0);
  w.row_labels.push_back(element_label(ctx, 0));
  for (std::uint64_t i = 1; i < w.rows(); ++i) {
    w.row_elements.push_back(ctx.power(i).coords());
    w.row_labels.push_back(element_label(ctx, i));
    for (std::uint64_t j = 0; j < w.k; ++j) {
      const std::uint8_t in = ctx.trace_of_power(i + j) == 0 ? 1 : 0;
      w.at(i, j) = in;
      w.at(i, j + w.k) = 1 - in;
    }
  }
  return w;
}

InclusionMatrix build_W_general(const BaseBlock& block) {
  const DifferenceReport diff = check_difference_property(block);
  if (!diff.all_shifts) throw std::invalid_argument("base block lacks the difference property");
  InclusionMatrix w = empty_inclusion(block.q);
  std::vector<bool> in(block.k, false);
  for (auto p : block.positions) in[p] = true;
  w.row_labels.push_back("r1");
  for (std::uint64_t i = 1; i < w.rows(); ++i) {
    w.row_labels.push_back("r" + std::to_string(i + 1));
    for (std::uint64_t j = 0; j < w.k; ++j) {
      const std::uint8_t bit = in[(j + i - 1) % w.k] ? 1 : 0;
      w.at(i, j) = bit;
      w.at(i, j + w.k) = 1 - bit;
    }
  }
  return w;
}

RationalMatrix build_T(std::uint64_t q, const InclusionMatrix& w) {
  if (w.q != q || w.rows() != 2 * q || w.cols() != 2 * (2 * q - 1))
    throw std::invalid_argument("W does not have shape 2q x 2(2q-1)");
  const long k = static_cast<long>(2 * q - 1);
  const long qq = static_cast<long>(q);
  const Rational a(1, k);
  Rational b(-(qq - 1), k * (k - qq + 1));
  b.canonicalize();
  RationalMatrix t(w.cols(), w.rows());
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) t(j, i) = w.at(i, j) ? a : b;
  return t;
}

bool verify_right_inverse(const RationalMatrix& w, const RationalMatrix& t) {
  if (w.cols() != t.rows()) throw std::invalid_argument("shape mismatch in W * T");
  if (w.rows() != t.cols()) return false;
  return w * t == RationalMatrix::identity(w.rows());
}

bool verify_right_inverse(const InclusionMatrix& w, const RationalMatrix& t) {
  if (w.cols() != t.rows()) throw std::invalid_argument("shape mismatch in W * T");
  if (w.rows() != t.cols()) return false;
  const std::size_t inner = w.cols();
  const std::size_t n = w.rows();

  // Scale T to integers over a common denominator D; then W * (D T) == D I.
  mpz_class denom = 1;
  for (std::size_t j = 0; j < inner; ++j)
    for (std::size_t l = 0; l < n; ++l) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), t(j, l).get_den_mpz_t());

  std::vector<mpz_class> scaled(inner * n);
  mpz_class max_abs = 0;
  for (std::size_t j = 0; j < inner; ++j)
    for (std::size_t l = 0; l < n; ++l) {
      mpz_class v = t(j, l).get_num() * (denom / t(j, l).get_den());
      if (abs(v) > max_abs) max_abs = abs(v);
      scaled[j * n + l] = std::move(v);
    }

  const mpz_class limit = mpz_class(std::numeric_limits<std::int64_t>::max() / 4) / static_cast<unsigned long>(inner + 1);
  if (max_abs <= limit && denom <= limit) {
    std::vector<std::int64_t> tint(inner * n);
    for (std::size_t idx = 0; idx < tint.size(); ++idx) tint[idx] = scaled[idx].get_si();
    const std::int64_t d = denom.get_si();
    std::vector<std::int64_t> acc(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t j = 0; j < inner; ++j) {
        if (!w.at(i, j)) continue;
        const std::int64_t* src = &tint[j * n];
        for (std::size_t l = 0; l < n; ++l) acc[l] += src[l];
      }
      for (std::size_t l = 0; l < n; ++l)
        if (acc[l] != (l == i ? d : 0)) return false;
    }
    return true;
  }

  std::vector<mpz_class> acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t j = 0; j < inner; ++j) {
      if (!w.at(i, j)) continue;
      for (std::size_t l = 0; l < n; ++l) acc[l] += scaled[j * n + l];
    }
    for (std::size_t l = 0; l < n; ++l)
      if (acc[l] != (l == i ? denom : mpz_class(0))) return false;
  }
  return true;
}

namespace {

std::size_t bareiss_rank(std::vector<mpz_class> m, std::size_t rows, std::size_t cols) {
  auto at = [&](std::size_t r, std::size_t c) -> mpz_class& { return m[r * cols + c]; };
  mpz_class prev = 1;
  std::size_t rank = 0;
  mpz_class tmp;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && sgn(at(pivot, c)) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t j = c; j < cols; ++j) std::swap(at(pivot, j), at(rank, j));
    const mpz_class& p = at(rank, c);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const mpz_class factor = at(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        tmp = p * at(i, j);
        tmp -= factor * at(rank, j);
        mpz_divexact(at(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      at(i, c) = 0;
    }
    prev = at(rank, c);
    ++rank;
  }
  return rank;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  // Fermat: a^{p-2}
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  std::uint64_t e = p - 2;
  while (e != 0) {
    if (e & 1U) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

std::size_t gauss_rank_mod_p(std::vector<std::uint64_t> m, std::size_t rows, std::size_t cols, std::uint64_t p) {
  auto at = [&](std::size_t r, std::size_t c) -> std::uint64_t& { return m[r * cols + c]; };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && at(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t j = c; j < cols; ++j) std::swap(at(pivot, j), at(rank, j));
    const std::uint64_t inv = inverse_mod(at(rank, c), p);
    for (std::size_t j = c; j < cols; ++j) at(rank, j) = at(rank, j) * inv % p;
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const std::uint64_t f = at(i, c);
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) at(i, j) = (at(i, j) + (p - f) * at(rank, j)) % p;
    }
    ++rank;
  }
  return rank;
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 32)) throw std::invalid_argument("modulus must be below 2^32");
}

}  // namespace

std::size_t rank_over_Q(const RationalMatrix& m) {
  std::vector<mpz_class> ints(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c) ints[r * m.cols() + c] = m(r, c).get_num() * (l / m(r, c).get_den());
  }
  return bareiss_rank(std::move(ints), m.rows(), m.cols());
}

std::size_t rank_over_Q(const InclusionMatrix& w) {
  std::vector<mpz_class> ints(w.entries.begin(), w.entries.end());
  return bareiss_rank(std::move(ints), w.rows(), w.cols());
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d <= n / d; ++d)
    if (n % d == 0) return false;
  return true;
}

std::size_t rank_mod_p(const RationalMatrix& m, std::uint64_t p) {
  require_prime(p);
  std::vector<std::uint64_t> red(m.rows() * m.cols());
  const mpz_class pz = static_cast<unsigned long>(p);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      mpz_class num = m(r, c).get_num() % pz;
      if (num < 0) num += pz;
      mpz_class den = m(r, c).get_den() % pz;
      if (den == 0) throw std::invalid_argument("denominator divisible by " + std::to_string(p));
      red[r * m.cols() + c] = num.get_ui() * inverse_mod(den.get_ui(), p) % p;
    }
  return gauss_rank_mod_p(std::move(red), m.rows(), m.cols(), p);
}

std::size_t rank_mod_p(const InclusionMatrix& w, std::uint64_t p) {
  require_prime(p);
  std::vector<std::uint64_t> red(w.entries.begin(), w.entries.end());
  for (auto& v : red) v %= p;
  return gauss_rank_mod_p(std::move(red), w.rows(), w.cols(), p);
}

bool ConditionReport::all_passed() const {
  return std::all_of(items.begin(), items.end(), [](const ConditionResult& r) { return r.passed; });
}

const ConditionResult& ConditionReport::operator[](const std::string& name) const {
  for (const auto& item : items)
    if (item.name == name) return item;
  throw std::out_of_range("no condition named " + name);
}

ConditionReport check_R_conditions(const InclusionMatrix& w) {
  ConditionReport report;
  auto fail = [&](ConditionResult& res, std::size_t r, std::size_t c) {
    if (res.passed) {
      res.passed = false;
      res.at = {r, c};
    }
  };
  for (int i = 1; i <= 9; ++i) report.items.push_back({"R" + std::to_string(i), true, std::nullopt});
  auto& R = report.items;

  const std::size_t q = w.q;
  const std::size_t k = w.k;
  if (q < 1 || k != 2 * q - 1 || w.entries.size() != 4 * q * k) {
    for (auto& item : R) fail(item, 0, 0);
    return report;
  }

  for (std::size_t j = 0; j < k; ++j) {
    if (w.at(0, j) != 1) fail(R[0], 1, j + 1);
    if (w.at(0, j + k) != 0) fail(R[0], 1, j + k + 1);
  }

  std::vector<std::uint64_t> block;
  if (w.rows() > 1) {
    for (std::size_t j = 0; j < k; ++j)
      if (w.at(1, j)) block.push_back(j);
    if (block.size() != q - 1) fail(R[1], 2, 0);
  }

  for (std::size_t r = 1; r + 1 < w.rows(); ++r)
    for (std::size_t j = 0; j < k; ++j)
      if (w.at(r + 1, j) != w.at(r, (j + 1) % k)) fail(R[2], r + 2, j + 1);

  for (std::size_t r = 1; r < w.rows(); ++r)
    for (std::size_t j = 0; j < k; ++j)
      if (w.at(r, j + k) != 1 - w.at(r, j)) fail(R[3], r + 1, j + k + 1);

  if (w.rows() > 1) {
    if (block.size() != q - 1 || q % 2 != 0) {
      fail(R[4], 2, 0);
    } else {
      const BaseBlock b{q, k, block};
      if (!check_difference_property(b).all_shifts) fail(R[4], 2, 0);
    }
  }

  for (std::size_t r = 0; r < w.rows(); ++r) {
    std::size_t first = 0;
    std::size_t second = 0;
    for (std::size_t j = 0; j < k; ++j) {
      first += w.at(r, j);
      second += w.at(r, j + k);
    }
    if (first != (r == 0 ? k : q - 1)) fail(R[5], r + 1, 0);
    if (second != (r == 0 ? 0 : q)) fail(R[6], r + 1, 0);
    if (first + second != k) fail(R[7], r + 1, 0);
  }

  for (std::size_t c = 0; c < w.cols(); ++c) {
    std::size_t sum = 0;
    for (std::size_t r = 0; r < w.rows(); ++r) sum += w.at(r, c);
    if (sum != q) fail(R[8], 0, c + 1);
  }
  return report;
}

}  // namespace spinal
