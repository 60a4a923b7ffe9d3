#include "spinal/gf2n.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <sstream>

namespace spinal {

namespace {

int mask_degree(std::uint64_t mask) { return 63 - std::countl_zero(mask); }

// Arithmetic in GF(2)[x] / (f) on masks of degree < n, valid for n <= 63.
struct PolyRing {
  std::uint64_t f;
  int n;

  std::uint64_t times_x(std::uint64_t a) const {
    a <<= 1;
    if ((a >> n) & 1U) a ^= f;
    return a;
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t r = 0;
    while (b != 0) {
      if (b & 1U) r ^= a;
      b >>= 1;
      a = times_x(a);
    }
    return r;
  }

  std::uint64_t pow(std::uint64_t base, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e != 0) {
      if (e & 1U) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  // x^{2^i} mod f
  std::uint64_t frobenius_x(int i) const {
    std::uint64_t r = 2;
    for (int s = 0; s < i; ++s) r = mul(r, r);
    return r;
  }
};

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  const int db = mask_degree(b);
  while (a != 0 && mask_degree(a) >= db) a ^= b << (mask_degree(a) - db);
  return a;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

std::vector<int> distinct_prime_factors(int value) {
  std::vector<int> out;
  for (int p = 2; p * p <= value; ++p) {
    if (value % p == 0) {
      out.push_back(p);
      while (value % p == 0) value /= p;
    }
  }
  if (value > 1) out.push_back(value);
  return out;
}

std::string strip_spaces(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  return s;
}

}  // namespace

Polynomial::Polynomial(std::uint64_t mask) : mask_(mask), degree_(mask == 0 ? -1 : mask_degree(mask)) {
  if (mask == 0) throw std::invalid_argument("the zero polynomial is not allowed");
}

Polynomial Polynomial::parse(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw std::invalid_argument("empty polynomial");

  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    std::uint64_t mask = 0;
    const char* first = s.data() + 2;
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, mask, 16);
    if (ec != std::errc{} || ptr != last)
      throw std::invalid_argument("malformed hex polynomial '" + s + "'");
    return Polynomial(mask);
  }

  std::uint64_t mask = 0;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t plus = s.find('+', pos);
    if (plus == std::string::npos) plus = s.size();
    const std::string term = s.substr(pos, plus - pos);
    int exponent = -1;
    if (term == "1") {
      exponent = 0;
    } else if (term == "x" || term == "X") {
      exponent = 1;
    } else if (term.size() > 2 && (term[0] == 'x' || term[0] == 'X') && term[1] == '^') {
      const char* first = term.data() + 2;
      const char* last = term.data() + term.size();
      auto [ptr, ec] = std::from_chars(first, last, exponent);
      if (ec != std::errc{} || ptr != last) exponent = -1;
    }
    if (exponent < 0) throw std::invalid_argument("malformed polynomial term '" + term + "'");
    if (exponent > 63) throw std::invalid_argument("polynomial degree exceeds 63");
    mask ^= std::uint64_t{1} << exponent;
    pos = plus + 1;
  }
  return Polynomial(mask);
}

std::string Polynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int k = degree_; k >= 0; --k) {
    if (((mask_ >> k) & 1U) == 0) continue;
    if (!first) os << '+';
    first = false;
    if (k == 0)
      os << '1';
    else if (k == 1)
      os << 'x';
    else
      os << "x^" << k;
  }
  return os.str();
}

std::string Polynomial::to_hex() const {
  std::ostringstream os;
  os << "0x" << std::uppercase << std::hex << mask_;
  return os.str();
}

std::vector<std::uint64_t> prime_factors(std::uint64_t value) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= value / p; p += (p == 2 ? 1 : 2)) {
    if (value % p == 0) {
      out.push_back(p);
      while (value % p == 0) value /= p;
    }
  }
  if (value > 1) out.push_back(value);
  return out;
}

bool is_primitive(const Polynomial& poly) {
  const int n = poly.degree();
  if (n < 2) throw std::invalid_argument("primitive polynomials must have degree >= 2");
  const std::uint64_t f = poly.mask();
  if ((f & 1U) == 0) return false;  // divisible by x

  const PolyRing ring{f, n};

  // Rabin: x^{2^n} == x mod f, and gcd(x^{2^{n/p}} - x, f) = 1 for prime p | n.
  if (ring.frobenius_x(n) != 2) return false;
  for (int p : distinct_prime_factors(n)) {
    const std::uint64_t h = ring.frobenius_x(n / p) ^ 2U;
    if (poly_gcd(f, h) != 1) return false;
  }

  const std::uint64_t order = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  if (ring.pow(2, order) != 1) return false;
  for (std::uint64_t p : prime_factors(order)) {
    if (ring.pow(2, order / p) == 1) return false;
  }
  return true;
}

Polynomial default_primitive_polynomial(int n) {
  if (n < 2 || n > 63) throw std::invalid_argument("degree must lie in [2, 63]");
  const std::uint64_t top = std::uint64_t{1} << n;
  for (std::uint64_t low = 1; low < top; low += 2) {
    Polynomial candidate(top | low);
    if (is_primitive(candidate)) return candidate;
  }
  throw std::logic_error("no primitive polynomial found");  // unreachable
}

FieldElement::FieldElement(std::uint64_t coords, int degree) : coords_(coords), degree_(degree) {}

FieldContext::FieldContext(Polynomial poly) : poly_(poly) {
  const int n = poly_.degree();
  if (n < 2) throw std::invalid_argument("field degree must be >= 2");
  if (n > kMaxTableDegree)
    throw std::invalid_argument("field degree " + std::to_string(n) + " exceeds table limit " +
                                std::to_string(kMaxTableDegree));
  if (!is_primitive(poly_))
    throw std::invalid_argument("polynomial " + poly_.to_string() + " is not primitive");

  reduction_ = poly_.mask() ^ (std::uint64_t{1} << n);

  trace_mask_ = 0;
  FieldElement basis = one();
  for (int i = 0; i < n; ++i) {
    FieldElement t = basis;
    FieldElement sum = t;
    for (int s = 1; s < n; ++s) {
      t = mul(t, t);
      sum = add(sum, t);
    }
    if (sum.coords() > 1) throw std::logic_error("trace left the prime field");
    if (sum.coords() == 1) trace_mask_ |= std::uint64_t{1} << i;
    basis = mul_alpha(basis);
  }

  const std::uint64_t k = order();
  powers_.reserve(k);
  logs_.assign(size(), 0);
  trace_of_power_.reserve(k);
  FieldElement x = one();
  for (std::uint64_t e = 0; e < k; ++e) {
    powers_.push_back(x.coords());
    logs_[x.coords()] = static_cast<std::uint32_t>(e);
    trace_of_power_.push_back(static_cast<std::uint8_t>(trace(x)));
    x = mul_alpha(x);
  }
  if (x != one()) throw std::logic_error("alpha^(2^n-1) != 1");
}

FieldContext FieldContext::for_degree(int n) { return FieldContext(default_primitive_polynomial(n)); }

void FieldContext::check(FieldElement x) const {
  if (x.degree() != degree())
    throw ContractViolation("field element of degree " + std::to_string(x.degree()) +
                            " used in GF(2^" + std::to_string(degree()) + ")");
}

FieldElement FieldContext::element(std::uint64_t coords) const {
  if (coords >= size()) throw std::out_of_range("coordinates out of range for GF(2^n)");
  return {coords, degree()};
}

FieldElement FieldContext::add(FieldElement x, FieldElement y) const {
  check(x);
  check(y);
  return {x.coords() ^ y.coords(), degree()};
}

FieldElement FieldContext::mul_alpha(FieldElement x) const {
  check(x);
  const int n = degree();
  std::uint64_t c = x.coords();
  const bool carry = ((c >> (n - 1)) & 1U) != 0;
  c = (c << 1) & (size() - 1);
  if (carry) c ^= reduction_;
  return {c, n};
}

FieldElement FieldContext::mul(FieldElement x, FieldElement y) const {
  check(x);
  check(y);
  FieldElement acc = zero();
  FieldElement shifted = x;
  for (std::uint64_t b = y.coords(); b != 0; b >>= 1) {
    if (b & 1U) acc = {acc.coords() ^ shifted.coords(), degree()};
    shifted = mul_alpha(shifted);
  }
  return acc;
}

int FieldContext::trace(FieldElement x) const {
  check(x);
  return std::popcount(x.coords() & trace_mask_) & 1;
}

FieldElement FieldContext::power(std::uint64_t e) const { return {powers_[e % order()], degree()}; }

std::uint64_t FieldContext::log(FieldElement x) const {
  check(x);
  if (x.is_zero()) throw ContractViolation("log of zero");
  return logs_[x.coords()];
}

bool joint_kernel_is_trivial(const FieldContext& ctx) {
  for (std::uint64_t c = 1; c < ctx.size(); ++c) {
    FieldElement x = ctx.element(c);
    bool in_all = true;
    for (std::uint64_t j = 0; j < ctx.order() && in_all; ++j) {
      if (ctx.trace(x) != 0) in_all = false;
      x = ctx.mul_alpha(x);
    }
    if (in_all) return false;
  }
  return true;
}

}  // namespace spinal
