#include "spinal/selfsim.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace spinal {

Word parse_word(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    if (c == '0')
      w.push_back(0);
    else if (c == '1')
      w.push_back(1);
    else
      throw std::invalid_argument("words are over {0,1}; got '" + std::string(text) + "'");
  }
  return w;
}

std::string to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter x : w) s.push_back(x ? '1' : '0');
  return s;
}

Word ones(std::size_t count) { return Word(count, 1); }

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

GroupElement GroupElement::inverse() const {
  std::vector<StateId> rev(factors_.rbegin(), factors_.rend());
  return GroupElement(std::move(rev));
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  std::vector<StateId> f = g.factors_;
  f.insert(f.end(), h.factors_.begin(), h.factors_.end());
  return GroupElement(std::move(f));
}

std::size_t FactorsHash::operator()(const std::vector<StateId>& v) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (StateId s : v) {
    h ^= s;
    h *= 1099511628211ULL;
  }
  return h;
}

Automaton::Automaton(FieldContext ctx) : ctx_(std::move(ctx)) {}

StateId Automaton::directed(FieldElement x) const {
  if (x.degree() != ctx_.degree()) throw ContractViolation("field element from another field");
  if (x.is_zero()) return kIdentity;
  return static_cast<StateId>(1 + x.coords());
}

FieldElement Automaton::element_of(StateId s) const {
  if (s == kSwap) throw ContractViolation("a is not in the image of iota");
  if (s >= state_count()) throw std::out_of_range("unknown state");
  return s == kIdentity ? ctx_.zero() : ctx_.element(s - 1);
}

StateId Automaton::transition(StateId s, Letter x) const {
  if (s == kIdentity || s == kSwap) return kIdentity;
  const FieldElement v = element_of(s);
  if (x == 1) return directed(ctx_.mul_alpha(v));
  return ctx_.trace(v) == 1 ? kSwap : kIdentity;
}

std::string Automaton::label(StateId s) const {
  if (s == kIdentity) return "e";
  if (s == kSwap) return "a";
  const FieldElement v = element_of(s);
  const std::uint64_t e = ctx_.log(v);
  // Grigorchuk names for GF(4): b = iota(alpha), c = iota(alpha^2), d = iota(1).
  if (ctx_.degree() == 2) return e == 1 ? "b" : (e == 2 ? "c" : "d");
  if (e == 0) return "i(1)";
  return "i(a^" + std::to_string(e) + ")";
}

std::vector<StateId> Automaton::directed_part() const {
  std::vector<StateId> out{kIdentity};
  for (std::uint64_t e = 1; e <= ctx_.order(); ++e) out.push_back(directed(ctx_.power(e)));
  return out;
}

std::vector<StateId> Automaton::nucleus() const {
  auto out = directed_part();
  out.push_back(kSwap);
  return out;
}

GroupElement Automaton::element(StateId s) const {
  if (s >= state_count()) throw std::out_of_range("unknown state");
  if (s == kIdentity) return GroupElement{};
  return GroupElement({s});
}

GroupElement Automaton::reduce(const GroupElement& g) const {
  std::vector<StateId> stack;
  stack.reserve(g.factors().size());
  for (StateId f : g.factors()) {
    if (f == kIdentity) continue;
    if (!stack.empty()) {
      const StateId top = stack.back();
      if (top == kSwap && f == kSwap) {
        stack.pop_back();
        continue;
      }
      if (top != kSwap && f != kSwap) {
        stack.pop_back();
        const StateId merged = directed(ctx_.add(element_of(top), element_of(f)));
        if (merged != kIdentity) stack.push_back(merged);
        continue;
      }
    }
    stack.push_back(f);
  }
  return GroupElement(std::move(stack));
}

Letter Automaton::act_letter(const GroupElement& g, Letter x) const {
  const auto& f = g.factors();
  for (auto it = f.rbegin(); it != f.rend(); ++it)
    if (swaps(*it)) x ^= 1U;
  return x;
}

Word Automaton::act(const GroupElement& g, const Word& w) const {
  std::vector<StateId> state = g.factors();
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    for (auto it = state.rbegin(); it != state.rend(); ++it) {
      const Letter y = swaps(*it) ? static_cast<Letter>(x ^ 1U) : x;
      *it = transition(*it, x);
      x = y;
    }
    out.push_back(x);
  }
  return out;
}

GroupElement Automaton::restrict(const GroupElement& g, Letter x) const {
  std::vector<StateId> state = g.factors();
  for (auto it = state.rbegin(); it != state.rend(); ++it) {
    const Letter y = swaps(*it) ? static_cast<Letter>(x ^ 1U) : x;
    *it = transition(*it, x);
    x = y;
  }
  return GroupElement(std::move(state));
}

GroupElement Automaton::restrict(const GroupElement& g, const Word& w) const {
  GroupElement cur = g;
  for (Letter x : w) cur = restrict(cur, x);
  return cur;
}

bool Automaton::equal(const GroupElement& g, const GroupElement& h) const {
  using Pair = std::pair<std::vector<StateId>, std::vector<StateId>>;
  std::set<Pair> seen;
  std::vector<Pair> work;
  work.emplace_back(reduce(g).factors(), reduce(h).factors());
  while (!work.empty()) {
    Pair p = std::move(work.back());
    work.pop_back();
    if (p.first == p.second) continue;  // syntactically equal products act equally
    if (!seen.insert(p).second) continue;
    const GroupElement x(p.first);
    const GroupElement y(p.second);
    if (act_letter(x, 0) != act_letter(y, 0)) return false;
    // Push 1 first so the 0-branch, where outputs diverge soonest, pops first.
    for (Letter l : {Letter{1}, Letter{0}})
      work.emplace_back(reduce(restrict(x, l)).factors(), reduce(restrict(y, l)).factors());
  }
  return true;
}

std::optional<StateId> Automaton::nucleus_member(const GroupElement& g) const {
  GroupElement r = reduce(g);
  if (r.factors().empty()) return kIdentity;
  if (r.factors().size() == 1) return r.factors().front();
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = member_cache_.find(r.factors()); it != member_cache_.end()) return it->second;
  }
  std::optional<StateId> found;
  for (StateId s : nucleus()) {
    if (equal(r, element(s))) {
      found = s;
      break;
    }
  }
  std::lock_guard lock(cache_mutex_);
  member_cache_.emplace(r.factors(), found);
  return found;
}

PeriodResult restriction_period(const Automaton& aut, StateId s) {
  if (aut.swaps(s)) throw ContractViolation("restriction period is defined for directed states only");
  if (s == Automaton::kIdentity) return {1, true};
  const GroupElement g = aut.element(s);
  GroupElement cur = g;
  const std::uint64_t limit = aut.field().size();
  for (std::uint64_t p = 1; p <= limit; ++p) {
    cur = aut.restrict(cur, Letter{1});
    if (aut.equal(cur, g)) return {p, false};
  }
  throw std::logic_error("restriction along 1 did not return within 2^n steps");
}

NucleusReport verify_nucleus(const Automaton& aut, int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  NucleusReport report;
  report.depth_limit = depth;
  const auto members = aut.nucleus();
  report.state_count = members.size();
  const std::set<StateId> member_set(members.begin(), members.end());

  for (StateId s : members)
    for (Letter x : {Letter{0}, Letter{1}})
      if (!member_set.count(aut.transition(s, x))) report.restriction_closed = false;

  for (std::size_t i = 0; i < members.size() && report.states_distinct; ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (aut.equal(aut.element(members[i]), aut.element(members[j]))) {
        report.states_distinct = false;
        break;
      }

  for (StateId g : members) {
    for (StateId h : members) {
      ++report.pairs_checked;
      // Level-by-level restrictions of gh, keyed by reduced factors, each
      // with one witness word.
      std::map<std::vector<StateId>, Word> level;
      level.emplace(aut.reduce(aut.element(g) * aut.element(h)).factors(), Word{});
      int reached = -1;
      for (int d = 0; d <= depth; ++d) {
        std::optional<Word> outside;
        for (const auto& [factors, word] : level) {
          if (!aut.nucleus_member(GroupElement(factors))) {
            outside = word;
            break;
          }
        }
        if (!outside) {
          reached = d;
          break;
        }
        if (d == depth) {
          report.failures.push_back({g, h, *outside});
          break;
        }
        std::map<std::vector<StateId>, Word> next;
        for (const auto& [factors, word] : level)
          for (Letter x : {Letter{0}, Letter{1}}) {
            Word w = word;
            w.push_back(x);
            next.emplace(aut.reduce(aut.restrict(GroupElement(factors), x)).factors(), std::move(w));
          }
        level = std::move(next);
      }
      if (reached > report.contraction_depth) report.contraction_depth = reached;
    }
  }
  return report;
}

}  // namespace spinal
