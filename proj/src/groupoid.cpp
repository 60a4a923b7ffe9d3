#include "spinal/groupoid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace spinal {

namespace {

bool has_prefix(const Word& w, const Word& prefix) {
  return prefix.size() <= w.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

Word suffix_after(const Word& w, std::size_t len) { return Word(w.begin() + static_cast<std::ptrdiff_t>(len), w.end()); }

// Distinct nucleus states are distinct group elements, so reduced forms of
// length <= 1 compare by identity.
bool reduced_equal(const Automaton& aut, const GroupElement& x, const GroupElement& y) {
  if (x.factors() == y.factors()) return true;
  if (x.factors().size() <= 1 && y.factors().size() <= 1) return false;
  return aut.equal(x, y);
}

}  // namespace

SemigroupElement sg_multiply(const Automaton& aut, const SemigroupElement& s, const SemigroupElement& t) {
  if (s.zero || t.zero) return SemigroupElement::Zero();
  if (has_prefix(t.eta, s.mu)) {
    // (eta, g, mu)(mu eps, h, nu) = (eta (g.eps), g|_eps h, nu)
    const Word eps = suffix_after(t.eta, s.mu.size());
    return SemigroupElement::triple(concat(s.eta, aut.act(s.g, eps)), aut.reduce(aut.restrict(s.g, eps) * t.g), t.mu);
  }
  if (has_prefix(s.mu, t.eta)) {
    // (eta, g, gamma eps)(gamma, h, nu) = (eta, g (h^{-1}|_eps)^{-1}, nu (h^{-1}.eps))
    const Word eps = suffix_after(s.mu, t.eta.size());
    const GroupElement h_inv = t.g.inverse();
    return SemigroupElement::triple(s.eta, aut.reduce(s.g * aut.restrict(h_inv, eps).inverse()),
                                    concat(t.mu, aut.act(h_inv, eps)));
  }
  return SemigroupElement::Zero();
}

SemigroupElement sg_star(const SemigroupElement& s) {
  if (s.zero) return s;
  return SemigroupElement::triple(s.mu, s.g.inverse(), s.eta);
}

bool sg_equal(const Automaton& aut, const SemigroupElement& s, const SemigroupElement& t) {
  if (s.zero || t.zero) return s.zero == t.zero;
  return s.eta == t.eta && s.mu == t.mu && aut.equal(s.g, t.g);
}

bool sg_is_idempotent(const Automaton& aut, const SemigroupElement& s) {
  return sg_equal(aut, sg_multiply(aut, s, s), s);
}

bool sg_has_idempotent_shape(const Automaton& aut, const SemigroupElement& s) {
  return s.zero || (s.eta == s.mu && aut.equal(s.g, GroupElement{}));
}

PeriodicWord::PeriodicWord(Word prefix_, Word period_) : prefix(std::move(prefix_)), period(std::move(period_)) {
  if (period.empty()) throw std::invalid_argument("eventual period must be nonempty");
}

Letter PeriodicWord::at(std::size_t i) const {
  if (i < prefix.size()) return prefix[i];
  return period[(i - prefix.size()) % period.size()];
}

std::size_t PeriodicWord::state_index(std::size_t i) const {
  if (i < prefix.size()) return i;
  return prefix.size() + (i - prefix.size()) % period.size();
}

std::string PeriodicWord::to_string() const {
  return spinal::to_string(prefix) + "(" + spinal::to_string(period) + ")^inf";
}

PeriodicWord ones_forever() { return PeriodicWord({}, {1}); }
PeriodicWord then_ones(const Word& w) { return PeriodicWord(w, {1}); }

namespace {

// Both sides single nucleus states: restrictions stay single states.
bool germ_equal_states(const Automaton& aut, StateId x, StateId y, const PeriodicWord& tail) {
  std::set<std::tuple<StateId, StateId, std::size_t>> seen;
  for (std::size_t i = 0;; ++i) {
    if (x == y) return true;
    if (i >= tail.prefix.size() && !seen.emplace(x, y, tail.state_index(i)).second) return false;
    const Letter l = tail.at(i);
    if (aut.swaps(x) != aut.swaps(y)) return false;
    x = aut.transition(x, l);
    y = aut.transition(y, l);
  }
}

StateId as_state(const GroupElement& reduced) {
  return reduced.factors().empty() ? Automaton::kIdentity : reduced.factors().front();
}

}  // namespace

bool germ_equal(const Automaton& aut, const GroupElement& g1, const GroupElement& g2, const PeriodicWord& tail) {
  using Key = std::tuple<std::vector<StateId>, std::vector<StateId>, std::size_t>;
  std::set<Key> seen;
  GroupElement x = aut.reduce(g1);
  GroupElement y = aut.reduce(g2);
  if (x.factors().size() <= 1 && y.factors().size() <= 1) return germ_equal_states(aut, as_state(x), as_state(y), tail);
  for (std::size_t i = 0;; ++i) {
    if (reduced_equal(aut, x, y)) return true;
    if (i >= tail.prefix.size() && !seen.emplace(x.factors(), y.factors(), tail.state_index(i)).second) return false;
    const Letter l = tail.at(i);
    if (aut.act_letter(x, l) != aut.act_letter(y, l)) return false;
    x = aut.reduce(aut.restrict(x, l));
    y = aut.reduce(aut.restrict(y, l));
  }
}

GermPoint z_point(StateId g) { return GermPoint{g, ones_forever()}; }

bool in_bisection(const Automaton& aut, const GermPoint& point, StateId h, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i)
    if (point.tail.at(i) != 1) return false;
  return germ_equal(aut, aut.element(h), aut.element(point.g), point.tail);
}

Word intersect_witness(const Automaton& aut, StateId g1, StateId g2, std::size_t m) {
  if (aut.swaps(g1) || aut.swaps(g2)) throw ContractViolation("intersect_witness takes states of N_0");
  if (g1 == g2) throw ContractViolation("intersect_witness needs distinct states");
  const FieldContext& ctx = aut.field();
  const FieldElement diff = ctx.add(aut.element_of(g1), aut.element_of(g2));
  std::uint64_t j = 0;
  while (!in_hyperplane(ctx, j, diff)) ++j;
  const std::uint64_t k = ctx.order();
  const std::uint64_t extra = (j + k - (m % k)) % k;
  Word w = ones(m + extra);
  w.push_back(0);
  if (!germ_equal(aut, aut.element(g1), aut.element(g2), then_ones(w)))
    throw std::logic_error("intersection witness " + to_string(w) + " failed germ validation");
  return w;
}

std::string AdmissibleSet::label() const { return "H" + std::to_string(j) + (complement ? "^c" : ""); }

std::vector<StateId> admissible_members(const Automaton& aut, AdmissibleSet set) {
  const FieldContext& ctx = aut.field();
  if (set.j >= ctx.order()) throw std::invalid_argument("hyperplane index out of range");
  std::vector<StateId> out;
  for (StateId s : aut.directed_part())
    if (in_hyperplane(ctx, set.j, aut.element_of(s)) != set.complement) out.push_back(s);
  return out;
}

AdmissibleSet classify_admissible(const Automaton& aut, std::vector<StateId> states) {
  std::sort(states.begin(), states.end());
  for (bool complement : {false, true})
    for (std::uint64_t j = 0; j < aut.field().order(); ++j) {
      auto members = admissible_members(aut, {j, complement});
      std::sort(members.begin(), members.end());
      if (members == states) return {j, complement};
    }
  throw std::invalid_argument("not a hyperplane image or its complement");
}

std::size_t default_search_depth(const Automaton& aut, std::size_t m) {
  return m + 2 * static_cast<std::size_t>(aut.field().order()) + 1;
}

RegionPattern region_pattern(const Automaton& aut, std::size_t m, AdmissibleSet set, std::size_t search_depth) {
  if (search_depth < default_search_depth(aut, m))
    throw std::invalid_argument("search depth below m + 2(2^n - 1) + 1");
  RegionPattern out;
  out.set = set;
  out.members = admissible_members(aut, set);
  const StateId anchor = out.members.front();
  const GroupElement anchor_g = aut.element(anchor);

  for (std::size_t s = m; s < search_depth && !out.witness; ++s) {
    Word w = ones(s);
    w.push_back(0);
    const PeriodicWord tail = then_ones(w);
    bool all = true;
    for (StateId g : out.members) {
      if (g != anchor && !germ_equal(aut, aut.element(g), anchor_g, tail)) {
        all = false;
        break;
      }
    }
    if (all) out.witness = std::move(w);
  }
  if (!out.witness) return out;

  const GermPoint point{anchor, then_ones(*out.witness)};
  const std::set<StateId> in_set(out.members.begin(), out.members.end());
  out.validated = true;
  for (StateId h : aut.directed_part()) {
    const bool member = in_bisection(aut, point, h, m);
    out.membership_row.push_back(member);
    if (member != (in_set.count(h) > 0)) out.validated = false;
  }
  return out;
}

MembershipMatrix membership_matrix(const Automaton& aut, std::size_t m, std::size_t search_depth) {
  const FieldContext& ctx = aut.field();
  const std::uint64_t k = ctx.order();
  MembershipMatrix out;
  out.m = m;
  out.columns = aut.directed_part();
  out.all_validated = true;
  for (bool complement : {false, true})
    for (std::uint64_t j = 0; j < k; ++j) {
      RegionPattern p = region_pattern(aut, m, {j, complement}, search_depth);
      if (!p.validated) out.all_validated = false;
      for (std::size_t c = 0; c < out.columns.size(); ++c)
        out.entries.push_back(p.membership_row.size() == out.columns.size() && p.membership_row[c] ? 1 : 0);
      out.regions.push_back(std::move(p));
    }

  const InclusionMatrix w = build_W(ctx);
  std::map<std::uint64_t, std::size_t> row_of;
  for (std::size_t r = 0; r < w.rows(); ++r) row_of[w.row_elements[r]] = r;
  out.equals_W_transpose = out.rows() == w.cols() && out.cols() == w.rows();
  for (std::size_t r = 0; r < out.rows() && out.equals_W_transpose; ++r)
    for (std::size_t c = 0; c < out.cols(); ++c) {
      const std::size_t wr = row_of.at(aut.element_of(out.columns[c]).coords());
      if (out.at(r, c) != w.at(wr, r)) {
        out.equals_W_transpose = false;
        out.mismatch = {r, c};
        break;
      }
    }
  return out;
}

SingularCertificate singular_system_certificate(const MembershipMatrix& matrix, const InclusionMatrix& w,
                                                const RationalMatrix& t, bool compute_rank) {
  SingularCertificate cert;
  cert.unknowns = matrix.cols();
  cert.equations = matrix.rows();
  cert.membership_equals_W_transpose = matrix.equals_W_transpose;

  // The transpose of the membership matrix, as a 2q x 2k inclusion matrix.
  InclusionMatrix mt;
  mt.q = matrix.cols() / 2;
  mt.k = matrix.rows() / 2;
  mt.entries.assign(matrix.rows() * matrix.cols(), 0);
  for (std::size_t r = 0; r < matrix.rows(); ++r)
    for (std::size_t c = 0; c < matrix.cols(); ++c) mt.entries[c * matrix.rows() + r] = matrix.at(r, c);

  if (compute_rank) cert.rank = rank_over_Q(mt);
  if (t.rows() == mt.cols() && t.cols() == mt.rows() && matrix.equals_W_transpose && w.rows() == mt.rows())
    cert.left_inverse_verified = verify_right_inverse(mt, t);
  cert.passed = matrix.all_validated && cert.left_inverse_verified && (!cert.rank || *cert.rank == cert.unknowns);
  return cert;
}

SingularCertificate singular_system_certificate(const Automaton& aut, std::size_t m, int rank_max_degree) {
  const MembershipMatrix matrix = membership_matrix(aut, m, default_search_depth(aut, m));
  const InclusionMatrix w = build_W(aut.field());
  const RationalMatrix t = build_T(w.q, w);
  return singular_system_certificate(matrix, w, t, aut.field().degree() <= rank_max_degree);
}

BoundReport bound_check(const MembershipMatrix& matrix, const std::vector<Rational>& c) {
  if (c.size() != matrix.cols()) throw std::invalid_argument("coefficient vector has the wrong length");
  if (sgn(c.front()) == 0) throw std::invalid_argument("c_e must be nonzero");
  // Sum over a common denominator: integer additions instead of rational ones.
  mpz_class denom = 1;
  for (const Rational& v : c) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), v.get_den_mpz_t());
  std::vector<mpz_class> scaled(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) scaled[i] = c[i].get_num() * (denom / c[i].get_den());

  BoundReport report;
  report.c_e = c.front();
  mpz_class max_abs = 0;
  mpz_class kappa;
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    kappa = 0;
    for (std::size_t col = 0; col < matrix.cols(); ++col)
      if (matrix.at(r, col)) kappa += scaled[col];
    if (abs(kappa) > max_abs) max_abs = abs(kappa);
    Rational exact(kappa, denom);
    exact.canonicalize();
    report.kappa.push_back(std::move(exact));
  }
  report.max_abs_kappa = Rational(max_abs, denom);
  report.max_abs_kappa.canonicalize();
  const mpz_class abs_ce = abs(scaled.front());
  const auto two_n = static_cast<unsigned long>(matrix.cols());
  const auto q = two_n / 2;
  report.exceeds_weak = max_abs * two_n > abs_ce;
  report.meets_sharp = max_abs * (2 * q - 1) >= abs_ce * q;
  return report;
}

Rational column_abs_sum(const RationalMatrix& t, std::size_t col) {
  Rational sum = 0;
  for (std::size_t j = 0; j < t.rows(); ++j) sum += abs(t(j, col));
  return sum;
}

std::vector<Rational> random_coefficients(std::mt19937_64& rng, std::size_t size, long bound) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, bound);
  std::vector<Rational> c(size);
  for (std::size_t i = 0; i < size; ++i) {
    long p = num(rng);
    while (i == 0 && p == 0) p = num(rng);
    c[i] = Rational(p, den(rng));
    c[i].canonicalize();
  }
  return c;
}

std::uint64_t restriction_alignment(const Automaton& aut, std::uint64_t c, std::uint64_t offset) {
  const std::uint64_t k = aut.field().order();
  return (c % k + k - offset % k) % k;
}

}  // namespace spinal
