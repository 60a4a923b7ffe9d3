// Acceptance run: one PASS/FAIL line per criterion. Tolerances are fixed
// here; all comparisons are exact.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "spinal/groupoid.hpp"
#include "spinal/hyperplanes.hpp"
#include "spinal/linalg.hpp"
#include "spinal/selfsim.hpp"

using namespace spinal;

namespace {

constexpr double kAc1Seconds = 1.0;
constexpr double kAc2Seconds = 120.0;
constexpr double kAc7Seconds = 60.0;
constexpr std::size_t kAc9Samples = 10000;
constexpr std::size_t kAc10Triples = 1000;
constexpr std::uint64_t kSeed = 0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

int failures = 0;

void run(const char* id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail << "exception: " << e.what() << "; ";
  }
  out.detail << "elapsed " << seconds_since(start) << " s";
  if (!out.pass) ++failures;
  std::printf("%s %s  %s  [%s]\n", id, out.pass ? "PASS" : "FAIL", title, out.detail.str().c_str());
  std::fflush(stdout);
}

std::uint64_t q_of(int n) { return std::uint64_t{1} << (n - 1); }

StateId by_label(const Automaton& aut, const std::string& label) {
  for (StateId s : aut.nucleus())
    if (aut.label(s) == label) return s;
  throw std::invalid_argument("no state " + label);
}

Word random_word(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> bit(0, 1);
  Word w;
  for (int i = len(rng); i > 0; --i) w.push_back(static_cast<Letter>(bit(rng)));
  return w;
}

SemigroupElement random_triple(const Automaton& aut, std::mt19937_64& rng) {
  const auto states = aut.nucleus();
  std::uniform_int_distribution<std::size_t> pick(0, states.size() - 1);
  std::uniform_int_distribution<int> len(0, 4);
  std::vector<StateId> f;
  for (int i = len(rng); i > 0; --i) f.push_back(states[pick(rng)]);
  Word eta = random_word(rng, 6);
  return SemigroupElement::triple(std::move(eta), GroupElement(std::move(f)), random_word(rng, 6));
}

}  // namespace

int main() {
  run("AC1", "W_2, T_2 match the reference matrices; W_2 T_2 = I_4", [](Outcome& o) {
    const auto start = Clock::now();
    const int reference_w[4][6] = {{1, 1, 1, 0, 0, 0}, {0, 0, 1, 1, 1, 0}, {0, 1, 0, 1, 0, 1}, {1, 0, 0, 0, 1, 1}};
    const Rational third(1, 3);
    const Rational minus_sixth(-1, 6);
    const bool reference_t_is_third[6][4] = {{1, 0, 0, 1}, {1, 0, 1, 0}, {1, 1, 0, 0},
                                           {0, 1, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}};
    const auto w = build_W(FieldContext::for_degree(2));
    const auto t = build_T(2, w);
    o.require(w.rows() == 4 && w.cols() == 6 && t.rows() == 6 && t.cols() == 4, "shapes");
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 6; ++c) o.require(w.at(r, c) == reference_w[r][c], "W_2 entry");
    for (std::size_t r = 0; r < 6; ++r)
      for (std::size_t c = 0; c < 4; ++c)
        o.require(t(r, c) == (reference_t_is_third[r][c] ? third : minus_sixth), "T_2 entry");
    o.require(w.to_rational() * t == RationalMatrix::identity(4), "W_2 T_2 = I_4");
    o.require(verify_right_inverse(w, t), "verify_right_inverse");
    const double s = seconds_since(start);
    o.require(s < kAc1Seconds, "runtime < 1 s");
  });

  run("AC2", "W_n T = I for n = 2..10; rank_Q(W_n) = 2^n for n = 2..7", [](Outcome& o) {
    const auto start = Clock::now();
    for (int n = 2; n <= 10; ++n) {
      const auto w = build_W(FieldContext::for_degree(n));
      o.require(verify_right_inverse(w, build_T(w.q, w)), "W T = I at n = " + std::to_string(n));
    }
    o.detail << "ranks:";
    for (int n = 2; n <= 7; ++n) {
      const auto w = build_W(FieldContext::for_degree(n));
      const std::size_t r = rank_over_Q(w);
      o.detail << " " << r;
      o.require(r == (std::size_t{1} << n), "rank_Q at n = " + std::to_string(n));
    }
    o.detail << "; ";
    o.require(seconds_since(start) < kAc2Seconds, "runtime < 2 min");
  });

  run("AC3", "pair_count = 2^(n-2) - 1", [](Outcome& o) {
    std::size_t checked = 0;
    for (int n = 2; n <= 10; ++n) {
      const auto ctx = FieldContext::for_degree(n);
      const std::uint64_t expected = (std::uint64_t{1} << (n - 2)) - 1;
      const std::uint64_t k = ctx.order();
      if (n <= 5) {
        for (std::uint64_t a = 0; a < k; ++a)
          for (std::uint64_t b = a + 1; b < k; ++b, ++checked)
            o.require(pair_count(ctx, a, b) == expected, "exhaustive n = " + std::to_string(n));
      } else {
        std::mt19937_64 rng(kSeed + static_cast<std::uint64_t>(n));
        std::uniform_int_distribution<std::uint64_t> pick(0, k - 1);
        for (int i = 0; i < 100; ++i, ++checked) {
          const std::uint64_t a = pick(rng);
          std::uint64_t b = pick(rng);
          while (b == a) b = pick(rng);
          o.require(pair_count(ctx, a, b) == expected, "sampled n = " + std::to_string(n));
        }
      }
    }
    o.detail << checked << " pairs; ";
  });

  run("AC4", "hyperplanes form 2-(2^n-1, 2^(n-1)-1, 2^(n-2)-1) designs, n = 2..6", [](Outcome& o) {
    for (int n = 2; n <= 6; ++n) {
      const std::uint64_t q = q_of(n);
      const DesignParams got = verify_design(build_hyperplanes(FieldContext::for_degree(n)));
      o.require(got == DesignParams{2 * q - 1, q - 1, q / 2 - 1}, "design n = " + std::to_string(n));
    }
    o.require(verify_design(build_hyperplanes(FieldContext::for_degree(3))) == DesignParams{7, 3, 1}, "(7,3,1)");
  });

  run("AC5", "rank mod 2 deficient; rank mod p full for p in {5,7,11,13} coprime to kq", [](Outcome& o) {
    o.detail << "rank mod 2:";
    for (int n = 2; n <= 7; ++n) {
      const auto w = build_W(FieldContext::for_degree(n));
      const std::size_t r2 = rank_mod_p(w, 2);
      o.detail << " n=" << n << ":" << r2;
      o.require(r2 < w.rows(), "rank mod 2 < 2^n at n = " + std::to_string(n));
      for (std::uint64_t p : {5, 7, 11, 13}) {
        if (w.k % p == 0 || w.q % p == 0) continue;
        o.require(rank_mod_p(w, p) == w.rows(), "rank mod " + std::to_string(p) + " at n = " + std::to_string(n));
      }
    }
    o.detail << "; ";
  });

  run("AC6", "nucleus, Grigorchuk recursion, restriction periods", [](Outcome& o) {
    for (int n = 2; n <= 4; ++n) {
      const Automaton aut(FieldContext::for_degree(n));
      const auto report = verify_nucleus(aut, 8);
      o.require(report.passed(), "verify_nucleus n = " + std::to_string(n));
      o.detail << "n=" << n << " contraction depth " << report.contraction_depth << "; ";
    }
    const Automaton two(FieldContext::for_degree(2));
    const StateId b = by_label(two, "b"), c = by_label(two, "c"), d = by_label(two, "d");
    o.require(two.transition(b, 1) == c && two.transition(c, 1) == d && two.transition(d, 1) == b, "recursion on 1");
    o.require(two.transition(b, 0) == Automaton::kSwap && two.transition(c, 0) == Automaton::kSwap &&
                  two.transition(d, 0) == Automaton::kIdentity,
              "recursion on 0");
    for (int n = 2; n <= 8; ++n) {
      const Automaton aut(FieldContext::for_degree(n));
      for (StateId s : aut.directed_part()) {
        if (s == Automaton::kIdentity) continue;
        o.require(restriction_period(aut, s).period == aut.field().order(), "period n = " + std::to_string(n));
      }
    }
  });

  run("AC7", "membership matrix = W^t for n in {2,3}, m = 1..5, witnesses validated", [](Outcome& o) {
    const auto start = Clock::now();
    for (int n = 2; n <= 3; ++n) {
      const Automaton aut(FieldContext::for_degree(n));
      for (std::size_t m = 1; m <= 5; ++m) {
        const auto mm = membership_matrix(aut, m, default_search_depth(aut, m));
        const std::string where = " n = " + std::to_string(n) + ", m = " + std::to_string(m);
        o.require(mm.all_validated, "witness validation" + where);
        o.require(mm.equals_W_transpose, "transpose equality" + where);
        for (const auto& region : mm.regions) {
          o.require(region.witness.has_value(), "witness exists" + where);
          const auto members = admissible_members(aut, region.set);
          for (std::size_t col = 0; col < mm.cols(); ++col) {
            const bool in_k = std::find(members.begin(), members.end(), mm.columns[col]) != members.end();
            o.require(region.membership_row[col] == in_k, "membership row" + where);
          }
        }
      }
    }
    o.require(seconds_since(start) < kAc7Seconds, "runtime < 1 min");
  });

  run("AC8", "singular system has only the trivial solution, n = 2..7", [](Outcome& o) {
    o.detail << "ranks:";
    for (int n = 2; n <= 7; ++n) {
      const Automaton aut(FieldContext::for_degree(n));
      const auto cert = singular_system_certificate(aut, 1);
      o.require(cert.passed, "certificate n = " + std::to_string(n));
      o.require(cert.rank && *cert.rank == (std::size_t{1} << n), "rank n = " + std::to_string(n));
      o.require(cert.left_inverse_verified, "T^t M = I at n = " + std::to_string(n));
      o.detail << " " << (cert.rank ? std::to_string(*cert.rank) : "none");
    }
    o.detail << "; ";
  });

  run("AC9", "max |kappa| > |c_e|/2^n and >= |c_e| q/(2q-1) on 10^4 samples, n = 2..4", [](Outcome& o) {
    for (int n = 2; n <= 4; ++n) {
      const Automaton aut(FieldContext::for_degree(n));
      const auto mm = membership_matrix(aut, 1, default_search_depth(aut, 1));
      std::mt19937_64 rng(kSeed);
      std::size_t weak = 0, sharp = 0;
      Rational min_ratio;
      for (std::size_t i = 0; i < kAc9Samples; ++i) {
        const auto c = random_coefficients(rng, mm.cols());
        const auto b = bound_check(mm, c);
        weak += b.exceeds_weak ? 1 : 0;
        sharp += b.meets_sharp ? 1 : 0;
        const Rational ratio = b.max_abs_kappa / abs(b.c_e);
        if (i == 0 || ratio < min_ratio) min_ratio = ratio;
      }
      o.require(weak == kAc9Samples, "weak bound n = " + std::to_string(n));
      o.require(sharp == kAc9Samples, "sharp bound n = " + std::to_string(n));
      o.detail << "n=" << n << " min ratio " << to_string(min_ratio) << "; ";
    }
  });

  run("AC10", "inverse-semigroup axioms on 10^3 random triples, n = 2..3", [](Outcome& o) {
    for (int n = 2; n <= 3; ++n) {
      const Automaton aut(FieldContext::for_degree(n));
      std::mt19937_64 rng(kSeed + static_cast<std::uint64_t>(n));
      for (std::size_t i = 0; i < kAc10Triples; ++i) {
        const auto s = random_triple(aut, rng);
        const auto t = random_triple(aut, rng);
        const auto ss = sg_star(s);
        o.require(sg_equal(aut, sg_multiply(aut, sg_multiply(aut, s, ss), s), s), "s s* s = s");
        o.require(sg_equal(aut, sg_star(ss), s), "(s*)* = s");
        const auto e = sg_multiply(aut, s, ss);
        const auto f = sg_multiply(aut, sg_star(t), t);
        o.require(sg_equal(aut, sg_multiply(aut, e, f), sg_multiply(aut, f, e)), "idempotents commute");
        o.require(sg_is_idempotent(aut, e) && sg_has_idempotent_shape(aut, e), "s s* in E(S)");
        o.require(sg_is_idempotent(aut, s) == sg_has_idempotent_shape(aut, s), "E(S) shape");
      }
    }
  });

  run("AC11", "difference-set search", [](Outcome& o) {
    const auto two = search_base_blocks(2);
    o.require(two.size() == 3, "three blocks for q = 2");
    for (std::uint64_t i = 0; i < two.size() && i < 3; ++i)
      o.require(two[i].positions == std::vector<std::uint64_t>{i}, "singleton {" + std::to_string(i) + "}");
    const auto four = search_base_blocks(4);
    o.require(!four.empty(), "q = 4 nonempty");
    const auto field = extract_base_block(FieldContext::for_degree(3));
    bool found = false;
    for (std::uint64_t s = 0; s < field.k; ++s)
      found = found || std::binary_search(four.begin(), four.end(), shift_block(field, s));
    o.require(found, "field block among q = 4 results");
    bool rejected = false;
    try {
      search_base_blocks(3);
    } catch (const std::invalid_argument& e) {
      rejected = std::string(e.what()).find("q must be even") != std::string::npos;
    }
    o.require(rejected, "odd q rejected");
    o.detail << four.size() << " blocks for q = 4; ";
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
