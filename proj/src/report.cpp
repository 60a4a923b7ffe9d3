#include "spinal/report.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "spinal/groupoid.hpp"
#include "spinal/hyperplanes.hpp"
#include "spinal/selfsim.hpp"

namespace spinal {

namespace {

Json polynomial_json(const Polynomial& p) { return Json{{"text", p.to_string()}, {"hex", p.to_hex()}}; }

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << "0x" << std::hex << std::uppercase << v;
  return os.str();
}

Json header(const FieldContext& ctx) {
  return Json{{"n", ctx.degree()}, {"polynomial", polynomial_json(ctx.polynomial())}};
}

Json params_json(const DesignParams& p) {
  return Json{{"v", p.v}, {"block_size", p.block_size}, {"lambda", p.lambda}};
}

Json block_json(const BaseBlock& b) { return Json(b.positions); }

Json grid_json(const InclusionMatrix& w) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < w.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < w.cols(); ++c) row.push_back(w.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json rational_grid_json(const RationalMatrix& t) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < t.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < t.cols(); ++c) row.push_back(to_string(t(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json conditions_json(const ConditionReport& report) {
  Json out = Json::array();
  for (const auto& item : report.items) {
    Json at = nullptr;
    if (item.at) at = Json{{"row", item.at->first}, {"col", item.at->second}};
    out.push_back(Json{{"name", item.name}, {"passed", item.passed}, {"at", at}});
  }
  return out;
}

bool coprime_to_kq(std::uint64_t p, std::uint64_t k, std::uint64_t q) {
  return std::gcd(p, k) == 1 && std::gcd(p, q) == 1;
}

Json word_json(const std::optional<Word>& w) {
  if (!w) return nullptr;
  return then_ones(*w).to_string();
}

Json labels_json(const Automaton& aut, const std::vector<StateId>& states) {
  Json out = Json::array();
  for (StateId s : states) out.push_back(aut.label(s));
  return out;
}

Json region_json(const Automaton& aut, const RegionPattern& p) {
  return Json{{"set", p.set.label()},
              {"members", labels_json(aut, p.members)},
              {"witness", word_json(p.witness)},
              {"validated", p.validated}};
}

Json membership_rows(const MembershipMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json mismatch_json(const MembershipMatrix& m) {
  if (!m.mismatch) return nullptr;
  return Json{{"row", m.mismatch->first}, {"col", m.mismatch->second}};
}

Json certificate_json(const SingularCertificate& c) {
  return Json{{"unknowns", c.unknowns},
              {"equations", c.equations},
              {"rank_over_Q", c.rank ? Json(*c.rank) : Json(nullptr)},
              {"membership_equals_W_transpose", c.membership_equals_W_transpose},
              {"left_inverse_verified", c.left_inverse_verified},
              {"pass", c.passed}};
}

struct PairTable {
  Json table = Json::array();
  std::uint64_t expected = 0;
  std::size_t checked = 0;
  bool all_match = true;
  std::string mode;
};

PairTable pair_table(const FieldContext& ctx, std::uint64_t seed) {
  PairTable out;
  const std::uint64_t k = ctx.order();
  out.expected = (std::uint64_t{1} << (ctx.degree() - 2)) - 1;
  auto record = [&](std::uint64_t l1, std::uint64_t l2) {
    const std::uint64_t count = pair_count(ctx, l1, l2);
    out.table.push_back(Json::array({l1, l2, count}));
    ++out.checked;
    if (count != out.expected) out.all_match = false;
  };
  if (ctx.degree() <= 5) {
    out.mode = "exhaustive";
    for (std::uint64_t l1 = 0; l1 < k; ++l1)
      for (std::uint64_t l2 = l1 + 1; l2 < k; ++l2) record(l1, l2);
  } else {
    out.mode = "sampled";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, k - 1);
    for (int i = 0; i < 100; ++i) {
      std::uint64_t l1 = pick(rng);
      std::uint64_t l2 = pick(rng);
      while (l2 == l1) l2 = pick(rng);
      record(l1, l2);
    }
  }
  return out;
}

Json design_section(const FieldContext& ctx, std::uint64_t seed, bool include_blocks, bool& pass) {
  const std::uint64_t q = ctx.size() / 2;
  const DesignParams expected{2 * q - 1, q - 1, q / 2 - 1};
  Json out;
  out["expected"] = params_json(expected);
  const auto hyperplanes = build_hyperplanes(ctx);
  bool design_ok = false;
  try {
    const DesignParams got = verify_design(hyperplanes);
    out["params"] = params_json(got);
    out["violation"] = nullptr;
    design_ok = got == expected;
  } catch (const DesignViolation& v) {
    out["params"] = nullptr;
    out["violation"] = Json{{"what", v.what()}, {"expected", v.expected}, {"actual", v.actual}};
  }
  if (include_blocks) {
    // Each block as the exponents l with alpha^l in H_j.
    Json blocks = Json::array();
    for (const auto& h : hyperplanes) {
      Json members = Json::array();
      for (std::uint64_t l = 0; l < ctx.order(); ++l)
        if (h.contains(ctx.power(l))) members.push_back(l);
      blocks.push_back(Json{{"index", h.index}, {"exponents", std::move(members)}});
    }
    out["blocks"] = std::move(blocks);
  }
  PairTable pairs = pair_table(ctx, seed);
  out["pair_count"] = Json{{"expected", pairs.expected},
                           {"mode", pairs.mode},
                           {"pairs_checked", pairs.checked},
                           {"all_match", pairs.all_match}};
  if (include_blocks) out["pair_count"]["table"] = std::move(pairs.table);
  const BaseBlock base = extract_base_block(ctx);
  const DifferenceReport diff = check_difference_property(base);
  out["base_block"] = block_json(base);
  out["difference_property"] = Json{{"all_shifts", diff.all_shifts}, {"short_range", diff.short_range}};
  pass = design_ok && pairs.all_match && diff.all_shifts;
  out["pass"] = pass;
  return out;
}

}  // namespace

std::string RankField::label() const {
  if (kind == Kind::Rationals) return "Q";
  if (p == 2) return "F2";
  return "Fp:" + std::to_string(p);
}

RankField parse_rank_field(const std::string& text) {
  if (text == "Q") return {RankField::Kind::Rationals, 0};
  if (text == "F2") return {RankField::Kind::Prime, 2};
  if (text.rfind("Fp:", 0) == 0) {
    const std::string digits = text.substr(3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad prime in rank field '" + text + "'");
    const std::uint64_t p = std::stoull(digits);
    if (!is_prime(p)) throw std::invalid_argument(digits + " is not prime");
    return {RankField::Kind::Prime, p};
  }
  throw std::invalid_argument("rank field must be Q, F2 or Fp:<p>; got '" + text + "'");
}

Report field_report(const FieldContext& ctx) {
  Report r;
  r.doc = header(ctx);
  r.doc["primitive"] = is_primitive(ctx.polynomial());
  const bool trivial = joint_kernel_is_trivial(ctx);
  r.doc["joint_kernel_trivial"] = trivial;
  Json elements = Json::array();
  for (std::uint64_t e = 0; e < ctx.order(); ++e)
    elements.push_back(Json{{"exponent", e}, {"coords", hex(ctx.power(e).coords())}, {"trace", ctx.trace_of_power(e)}});
  r.doc["powers"] = std::move(elements);
  r.pass = trivial;
  r.doc["verdict"] = r.pass ? "PASS" : "FAIL";
  return r;
}

Report design_report(const FieldContext& ctx, std::uint64_t seed) {
  Report r;
  r.doc = header(ctx);
  r.doc["seed"] = seed;
  r.doc["design"] = design_section(ctx, seed, true, r.pass);
  r.doc["verdict"] = r.pass ? "PASS" : "FAIL";
  return r;
}

Report search_report(std::uint64_t q) {
  const auto blocks = search_base_blocks(q);
  Report r;
  const std::uint64_t k = 2 * q - 1;
  r.doc = Json{{"q", q}, {"k", k}, {"params", params_json({k, q - 1, q / 2 - 1})}};
  Json list = Json::array();
  for (const auto& b : blocks) list.push_back(block_json(b));
  bool closed = true;
  for (const auto& b : blocks)
    if (!std::binary_search(blocks.begin(), blocks.end(), shift_block(b, 1))) closed = false;
  r.doc["count"] = blocks.size();
  r.doc["blocks"] = std::move(list);
  r.doc["closed_under_shift"] = closed;
  r.pass = !blocks.empty() && closed;
  r.doc["verdict"] = r.pass ? "PASS" : "FAIL";
  return r;
}

Report matrix_report(const FieldContext& ctx, const std::optional<RankField>& rank_field) {
  const InclusionMatrix w = build_W(ctx);
  const RationalMatrix t = build_T(w.q, w);
  const ConditionReport conditions = check_R_conditions(w);
  const bool inverse = verify_right_inverse(w, t);

  Report r;
  r.doc = header(ctx);
  r.doc["q"] = w.q;
  r.doc["k"] = w.k;
  r.doc["row_labels"] = w.row_labels;
  r.doc["col_labels"] = w.col_labels;
  r.doc["W"] = grid_json(w);
  r.doc["R_conditions"] = conditions_json(conditions);
  r.doc["right_inverse"] = inverse;
  r.doc["T"] = rational_grid_json(t);
  r.pass = conditions.all_passed() && inverse;

  if (rank_field) {
    Json rank{{"field", rank_field->label()}};
    if (rank_field->kind == RankField::Kind::Rationals) {
      const std::size_t value = rank_over_Q(w);
      rank["rank"] = value;
      r.pass = r.pass && value == w.rows();
    } else {
      rank["rank"] = rank_mod_p(w, rank_field->p);
      rank["coprime_to_kq"] = coprime_to_kq(rank_field->p, w.k, w.q);
    }
    rank["full"] = rank["rank"].get<std::size_t>() == w.rows();
    r.doc["rank"] = std::move(rank);
  }
  r.doc["verdict"] = r.pass ? "PASS" : "FAIL";
  return r;
}

std::string matrix_csv(const InclusionMatrix& w) {
  std::ostringstream os;
  for (std::size_t c = 0; c < w.cols(); ++c) os << (c ? "," : "") << w.col_labels[c];
  os << '\n';
  for (std::size_t r = 0; r < w.rows(); ++r) {
    for (std::size_t c = 0; c < w.cols(); ++c) os << (c ? "," : "") << int{w.at(r, c)};
    os << '\n';
  }
  return os.str();
}

namespace {

struct NucleusSection {
  Json doc;
  bool pass = false;
};

NucleusSection nucleus_section(const Automaton& aut, int depth, bool tables) {
  NucleusSection out;
  const auto states = aut.nucleus();
  if (tables) {
    Json list = Json::array();
    Json transitions = Json::array();
    Json outputs = Json::array();
    for (StateId s : states) {
      Json element = nullptr;
      if (aut.is_directed(s)) element = hex(aut.element_of(s).coords());
      list.push_back(Json{{"id", s}, {"label", aut.label(s)}, {"element", element}});
      transitions.push_back(Json{{"state", aut.label(s)},
                                 {"on_0", aut.label(aut.transition(s, 0))},
                                 {"on_1", aut.label(aut.transition(s, 1))}});
      outputs.push_back(Json{{"state", aut.label(s)}, {"permutation", aut.swaps(s) ? "swap" : "identity"}});
    }
    out.doc["states"] = std::move(list);
    out.doc["transitions"] = std::move(transitions);
    out.doc["outputs"] = std::move(outputs);
  }

  const NucleusReport report = verify_nucleus(aut, depth);
  Json failures = Json::array();
  for (const auto& f : report.failures)
    failures.push_back(Json{{"g", aut.label(f.g)}, {"h", aut.label(f.h)}, {"word", to_string(f.word)}});
  out.doc["state_count"] = report.state_count;
  out.doc["contraction"] = Json{{"scope", "products of pairs of nucleus states"},
                                {"restriction_closed", report.restriction_closed},
                                {"states_distinct", report.states_distinct},
                                {"pairs_checked", report.pairs_checked},
                                {"depth_limit", report.depth_limit},
                                {"contraction_depth", report.contraction_depth},
                                {"failures", std::move(failures)}};

  bool periods_ok = true;
  std::uint64_t period = 0;
  for (StateId s : aut.directed_part()) {
    if (s == Automaton::kIdentity) continue;
    const auto p = restriction_period(aut, s);
    if (p.period != aut.field().order()) periods_ok = false;
    period = std::max(period, p.period);
  }
  out.doc["restriction_period"] = Json{{"expected", aut.field().order()}, {"max", period}, {"all_equal", periods_ok}};
  out.pass = report.passed() && periods_ok;
  out.doc["pass"] = out.pass;
  return out;
}

}  // namespace

Report nucleus_report(const FieldContext& ctx, int depth) {
  const Automaton aut(ctx);
  NucleusSection section = nucleus_section(aut, depth, true);
  Report r;
  r.doc = header(ctx);
  for (auto& [key, value] : section.doc.items()) r.doc[key] = value;
  r.pass = section.pass;
  r.doc["verdict"] = r.pass ? "PASS" : "FAIL";
  return r;
}

Report groupoid_report(const FieldContext& ctx, std::size_t m, std::optional<std::size_t> depth, bool verify) {
  const Automaton aut(ctx);
  if (m == 0) throw std::invalid_argument("m must be at least 1");
  const std::size_t search_depth = depth.value_or(default_search_depth(aut, m));
  const MembershipMatrix matrix = membership_matrix(aut, m, search_depth);

  Report r;
  r.doc = header(ctx);
  r.doc["m"] = m;
  r.doc["search_depth"] = search_depth;
  Json regions = Json::array();
  for (const auto& p : matrix.regions) regions.push_back(region_json(aut, p));
  r.doc["regions"] = std::move(regions);
  r.doc["columns"] = labels_json(aut, matrix.columns);
  r.doc["membership"] = membership_rows(matrix);
  r.doc["all_validated"] = matrix.all_validated;
  r.pass = matrix.all_validated;
  if (verify) {
    r.doc["equals_W_transpose"] = matrix.equals_W_transpose;
    r.doc["mismatch"] = mismatch_json(matrix);
    const InclusionMatrix w = build_W(ctx);
    const RationalMatrix t = build_T(w.q, w);
    const SingularCertificate cert = singular_system_certificate(matrix, w, t, ctx.degree() <= 8);
    r.doc["singular_certificate"] = certificate_json(cert);
    r.pass = r.pass && matrix.equals_W_transpose && cert.passed;
  }
  r.doc["verdict"] = r.pass ? "PASS" : "FAIL";
  return r;
}

Report certify(const FieldContext& ctx, const CertifyOptions& options) {
  if (options.m_values.empty()) throw std::invalid_argument("certify needs at least one m");
  const Automaton aut(ctx);
  const int n = ctx.degree();
  const bool small = n <= 4;

  Report r;
  r.doc = header(ctx);
  r.doc["seed"] = options.seed;
  r.doc["timestamp"] = options.timestamp ? Json(*options.timestamp) : Json(nullptr);
  Json sections;

  bool design_pass = false;
  sections["design"] = design_section(ctx, options.seed, false, design_pass);

  // Matrix: R conditions, exact right inverse and ranks.
  const InclusionMatrix w = build_W(ctx);
  const RationalMatrix t = build_T(w.q, w);
  {
    Json s;
    const ConditionReport conditions = check_R_conditions(w);
    const bool inverse = verify_right_inverse(w, t);
    s["shape"] = Json::array({w.rows(), w.cols()});
    s["R_conditions"] = conditions_json(conditions);
    s["all_R_conditions"] = conditions.all_passed();
    s["right_inverse"] = inverse;
    bool pass = conditions.all_passed() && inverse;
    if (n <= options.rank_max_degree) {
      const std::size_t rank = rank_over_Q(w);
      s["rank_over_Q"] = rank;
      pass = pass && rank == w.rows();
    } else {
      s["rank_over_Q"] = nullptr;
    }
    Json ranks = Json::array();
    for (std::uint64_t p : options.primes) {
      const std::size_t rank = rank_mod_p(w, p);
      const bool coprime = coprime_to_kq(p, w.k, w.q);
      ranks.push_back(Json{{"p", p}, {"rank", rank}, {"coprime_to_kq", coprime}});
      if (coprime && rank != w.rows()) pass = false;
    }
    s["ranks_mod_p"] = std::move(ranks);
    const Rational abs_sum = column_abs_sum(t, 0);
    s["T_column0_abs_sum"] = to_string(abs_sum);
    pass = pass && abs_sum == Rational(static_cast<long>(2 * w.q - 1), static_cast<long>(w.q));
    if (small) {
      s["row_labels"] = w.row_labels;
      s["col_labels"] = w.col_labels;
      s["W"] = grid_json(w);
      s["T"] = rational_grid_json(t);
    }
    s["pass"] = pass;
    sections["matrix"] = std::move(s);
  }

  NucleusSection nucleus = nucleus_section(aut, options.nucleus_depth, false);
  sections["nucleus"] = std::move(nucleus.doc);

  // Groupoid: membership matrices, witness samples and the singular system.
  std::optional<MembershipMatrix> first;
  {
    Json s;
    bool pass = true;
    Json per_m = Json::array();
    for (std::size_t m : options.m_values) {
      MembershipMatrix matrix = membership_matrix(aut, m, default_search_depth(aut, m));
      per_m.push_back(
          Json{{"m", m}, {"all_validated", matrix.all_validated}, {"equals_W_transpose", matrix.equals_W_transpose}});
      pass = pass && matrix.all_validated && matrix.equals_W_transpose;
      if (!first) first = std::move(matrix);
    }
    s["per_m"] = std::move(per_m);
    Json samples = Json::array();
    const std::size_t count = first->regions.size();
    for (std::size_t i : {std::size_t{0}, count / 2 - 1, count / 2, count - 1})
      samples.push_back(region_json(aut, first->regions[i]));
    s["witness_samples"] = std::move(samples);
    const SingularCertificate cert = singular_system_certificate(*first, w, t, n <= options.rank_max_degree);
    s["singular_certificate"] = certificate_json(cert);
    s["singular_certificate"]["m"] = first->m;
    pass = pass && cert.passed;
    s["pass"] = pass;
    sections["groupoid"] = std::move(s);
  }

  // Bound: seeded random coefficient vectors against the first matrix.
  {
    Json s;
    std::mt19937_64 rng(options.seed);
    bool weak = true;
    bool sharp = true;
    std::optional<Rational> min_ratio;
    for (std::size_t i = 0; i < options.samples; ++i) {
      const auto c = random_coefficients(rng, first->cols());
      const BoundReport b = bound_check(*first, c);
      weak = weak && b.exceeds_weak;
      sharp = sharp && b.meets_sharp;
      const Rational ratio = b.max_abs_kappa / abs(b.c_e);
      if (!min_ratio || ratio < *min_ratio) min_ratio = ratio;
    }
    s["samples"] = options.samples;
    s["m"] = first->m;
    s["min_ratio"] = min_ratio ? Json(to_string(*min_ratio)) : Json(nullptr);
    s["weak_constant"] = "1/" + std::to_string(ctx.size());
    s["sharp_constant"] = to_string(Rational(static_cast<long>(w.q), static_cast<long>(2 * w.q - 1)));
    s["weak_holds"] = weak;
    s["sharp_holds"] = sharp;
    s["pass"] = weak && sharp;
    sections["bound"] = std::move(s);
  }

  r.pass = true;
  for (auto& [name, section] : sections.items()) r.pass = r.pass && section["pass"].get<bool>();
  r.doc["sections"] = std::move(sections);
  r.doc["verdict"] = r.pass ? "PASS" : "FAIL";
  return r;
}

}  // namespace spinal
