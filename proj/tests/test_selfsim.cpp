#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "spinal/selfsim.hpp"

using namespace spinal;

namespace {

StateId by_label(const Automaton& aut, const std::string& label) {
  for (StateId s : aut.nucleus())
    if (aut.label(s) == label) return s;
  throw std::invalid_argument("no state " + label);
}

// Direct evaluation of one nucleus state on a word from the defining rules.
Word eval_state(const FieldContext& ctx, StateId s, const Word& w) {
  Word out;
  bool swap = s == Automaton::kSwap;
  bool dead = s == Automaton::kIdentity;
  FieldElement x = (dead || swap) ? ctx.zero() : ctx.element(s - 1);
  for (Letter l : w) {
    if (dead) {
      out.push_back(l);
      continue;
    }
    if (swap) {
      out.push_back(static_cast<Letter>(l ^ 1U));
      dead = true;
      continue;
    }
    out.push_back(l);
    if (l == 1) {
      x = ctx.mul_alpha(x);
    } else {
      swap = ctx.trace(x) == 1;
      dead = !swap;
    }
  }
  return out;
}

Word eval_product(const FieldContext& ctx, const std::vector<StateId>& factors, Word w) {
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) w = eval_state(ctx, *it, w);
  return w;
}

std::vector<Word> all_words(std::size_t len) {
  std::vector<Word> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
    Word w;
    for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<Letter>((bits >> i) & 1U));
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

TEST_CASE("words") {
  CHECK(to_string(parse_word("0110")) == "0110");
  CHECK(ones(3) == parse_word("111"));
  CHECK(concat(parse_word("01"), parse_word("1")) == parse_word("011"));
  CHECK_THROWS_AS(parse_word("012"), std::invalid_argument);
}

TEST_CASE("Grigorchuk recursion for n = 2") {
  const Automaton aut(FieldContext::for_degree(2));
  const StateId a = Automaton::kSwap, e = Automaton::kIdentity;
  const StateId b = by_label(aut, "b"), c = by_label(aut, "c"), d = by_label(aut, "d");
  CHECK(aut.transition(b, 1) == c);
  CHECK(aut.transition(c, 1) == d);
  CHECK(aut.transition(d, 1) == b);
  CHECK(aut.transition(b, 0) == a);
  CHECK(aut.transition(c, 0) == a);
  CHECK(aut.transition(d, 0) == e);
  CHECK(aut.transition(a, 0) == e);
  CHECK(aut.transition(a, 1) == e);
  CHECK(aut.nucleus().size() == 5);
}

TEST_CASE("action examples") {
  const Automaton aut(FieldContext::for_degree(2));
  const auto a = aut.element(Automaton::kSwap);
  const auto b = aut.element(by_label(aut, "b"));
  const auto d = aut.element(by_label(aut, "d"));
  CHECK(aut.act(a, parse_word("0110")) == parse_word("1110"));
  CHECK(aut.act(GroupElement{}, parse_word("0110")) == parse_word("0110"));
  CHECK(aut.act(b, parse_word("00")) == parse_word("01"));
  CHECK(aut.reduce(aut.restrict(d, parse_word("1110"))).is_empty_product());
  CHECK(aut.restrict(a, Letter{0}).factors() == std::vector<StateId>{Automaton::kIdentity});
}

TEST_CASE("action agrees with direct evaluation") {
  for (int n = 2; n <= 3; ++n) {
    const FieldContext ctx = FieldContext::for_degree(n);
    const Automaton aut(ctx);
    const auto states = aut.nucleus();
    std::vector<std::vector<StateId>> products;
    for (StateId x : states) {
      products.push_back({x});
      for (StateId y : states) {
        products.push_back({x, y});
        for (StateId z : {Automaton::kSwap, by_label(aut, n == 2 ? "b" : "i(a^1)")}) products.push_back({x, y, z});
      }
    }
    for (const auto& f : products) {
      const GroupElement g(f);
      for (std::size_t len : {1, 4, 7})
        for (const Word& w : all_words(len)) {
          const Word image = aut.act(g, w);
          REQUIRE(image == eval_product(ctx, f, w));
          // g.(xw) = (g.x)(g|_x . w)
          const Word tail(w.begin() + 1, w.end());
          Word expect{aut.act_letter(g, w.front())};
          const Word rest = aut.act(aut.restrict(g, w.front()), tail);
          expect.insert(expect.end(), rest.begin(), rest.end());
          CHECK(image == expect);
        }
    }
  }
}

TEST_CASE("action is a bijection on each level") {
  const Automaton aut(FieldContext::for_degree(3));
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, aut.nucleus().size() - 1);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<StateId> f;
    for (int i = 0; i < 4; ++i) f.push_back(aut.nucleus()[pick(rng)]);
    std::set<Word> images;
    for (const Word& w : all_words(8)) images.insert(aut.act(GroupElement(f), w));
    CHECK(images.size() == 256);
  }
}

TEST_CASE("equality by bisimulation") {
  const Automaton aut(FieldContext::for_degree(2));
  const auto a = aut.element(Automaton::kSwap);
  const auto b = aut.element(by_label(aut, "b"));
  const auto c = aut.element(by_label(aut, "c"));
  const auto d = aut.element(by_label(aut, "d"));
  CHECK(aut.equal(a * a, GroupElement{}));
  CHECK(aut.equal(b * c, d));
  CHECK_FALSE(aut.equal(a, GroupElement{}));
  CHECK_FALSE(aut.equal(b, c));
  CHECK(aut.equal(a * b * a * a * b * a, GroupElement{}));
  CHECK_FALSE(aut.equal(a * b, b * a));
}

TEST_CASE("directed part is additive and every state is an involution") {
  for (int n = 2; n <= 4; ++n) {
    const FieldContext ctx = FieldContext::for_degree(n);
    const Automaton aut(ctx);
    for (std::uint64_t x = 0; x < ctx.size(); ++x)
      for (std::uint64_t y = 0; y < ctx.size(); ++y) {
        const auto gx = aut.element(aut.directed(ctx.element(x)));
        const auto gy = aut.element(aut.directed(ctx.element(y)));
        CHECK(aut.equal(gx * gy, aut.element(aut.directed(ctx.element(x ^ y)))));
      }
    for (StateId s : aut.nucleus()) CHECK(aut.equal(aut.element(s) * aut.element(s), GroupElement{}));
  }
}

TEST_CASE("equality agrees with exhaustive action on words") {
  const FieldContext ctx = FieldContext::for_degree(2);
  const Automaton aut(ctx);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, 4);
  std::uniform_int_distribution<int> len(0, 5);
  const auto words = all_words(9);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<StateId> f, h;
    for (int i = len(rng); i > 0; --i) f.push_back(aut.nucleus()[pick(rng)]);
    for (int i = len(rng); i > 0; --i) h.push_back(aut.nucleus()[pick(rng)]);
    bool same = true;
    for (const Word& w : words) same = same && eval_product(ctx, f, w) == eval_product(ctx, h, w);
    if (aut.equal(GroupElement(f), GroupElement(h))) CHECK(same);
    if (!same) CHECK_FALSE(aut.equal(GroupElement(f), GroupElement(h)));
  }
}

TEST_CASE("nucleus membership") {
  const Automaton aut(FieldContext::for_degree(2));
  const auto a = aut.element(Automaton::kSwap);
  const auto b = aut.element(by_label(aut, "b"));
  const auto c = aut.element(by_label(aut, "c"));
  CHECK(aut.nucleus_member(b * c) == by_label(aut, "d"));
  CHECK(aut.nucleus_member(a * a) == Automaton::kIdentity);
  CHECK_FALSE(aut.nucleus_member(a * b).has_value());
  CHECK_FALSE(aut.nucleus_member(a * b).has_value());  // cached
}

TEST_CASE("restriction periods") {
  for (int n = 2; n <= 8; ++n) {
    const Automaton aut(FieldContext::for_degree(n));
    for (StateId s : aut.directed_part()) {
      const auto p = restriction_period(aut, s);
      if (s == Automaton::kIdentity) {
        CHECK(p.identity_state);
        CHECK(p.period == 1);
      } else {
        CHECK(p.period == aut.field().order());
      }
    }
    CHECK_THROWS_AS(restriction_period(aut, Automaton::kSwap), ContractViolation);
  }
}

TEST_CASE("nucleus verification") {
  for (int n = 2; n <= 4; ++n) {
    const Automaton aut(FieldContext::for_degree(n));
    const auto report = verify_nucleus(aut, 8);
    CHECK(report.passed());
    CHECK(report.state_count == aut.field().size() + 1);
    CHECK(report.pairs_checked == report.state_count * report.state_count);
    CHECK(report.contraction_depth <= 2);
  }
  const Automaton three(FieldContext::for_degree(3));
  CHECK(verify_nucleus(three, 16).state_count == 9);
  // Depth 0 cannot absorb the products a * iota(x).
  const auto shallow = verify_nucleus(three, 0);
  CHECK_FALSE(shallow.passed());
  CHECK_FALSE(shallow.failures.empty());
}

TEST_CASE("labels") {
  const Automaton aut(FieldContext::for_degree(3));
  CHECK(aut.label(Automaton::kIdentity) == "e");
  CHECK(aut.label(Automaton::kSwap) == "a");
  CHECK(aut.label(aut.directed(aut.field().one())) == "i(1)");
  CHECK(aut.label(aut.directed(aut.field().power(3))) == "i(a^3)");
  CHECK_THROWS_AS(aut.element_of(Automaton::kSwap), ContractViolation);
}
