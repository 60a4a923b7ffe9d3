// spinal: build and verify the finite objects of the Z_2-multispinal
// groupoids, one JSON document per run.
//
// Exit status: 0 PASS, 1 verified FAIL, 2 usage error or bad input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "spinal/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::string poly;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
  std::string timestamp;
};

spinal::FieldContext make_field(std::optional<int> n, const std::string& poly_text) {
  if (poly_text.empty()) {
    if (!n) throw std::invalid_argument("--n or --poly is required");
    if (*n < 2 || *n > spinal::FieldContext::kMaxTableDegree)
      throw std::invalid_argument("n must lie in [2, " + std::to_string(spinal::FieldContext::kMaxTableDegree) + "]");
    return spinal::FieldContext::for_degree(*n);
  }
  const spinal::Polynomial poly = spinal::Polynomial::parse(poly_text);
  if (n && *n != poly.degree())
    throw std::invalid_argument("--poly has degree " + std::to_string(poly.degree()) + " but --n is " +
                                std::to_string(*n));
  return spinal::FieldContext(poly);
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot write " + g.out);
  file << text;
}

int finish(const Globals& g, const spinal::Report& report) {
  emit(g, report.doc.dump(2) + "\n");
  return report.pass ? kExitPass : kExitFail;
}

std::optional<int> opt(int value) { return value > 0 ? std::optional<int>(value) : std::nullopt; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the Z_2-multispinal groupoid finite objects"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--poly", g.poly, "primitive polynomial, e.g. x^3+x+1 or 0xB");
  app.add_option("--out", g.out, "write the document here instead of stdout");
  app.add_option("--seed", g.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--samples", g.samples, "random coefficient vectors in the bound check")->capture_default_str();
  app.add_option("--timestamp", g.timestamp, "string recorded in certify documents");

  int n = 0;
  auto* field = app.add_subcommand("field", "field tables and primitivity");
  field->add_option("--n", n, "degree");

  std::uint64_t search_q = 0;
  auto* design = app.add_subcommand("design", "hyperplane design or base-block search");
  auto* design_n = design->add_option("--n", n, "degree");
  design->add_option("--search-q", search_q, "enumerate base blocks in Z_{2q-1}")->excludes(design_n);

  std::string rank_field;
  std::string emit_format = "json";
  auto* matrix = app.add_subcommand("matrix", "inclusion matrix W and right inverse T");
  matrix->add_option("--n", n, "degree");
  matrix->add_option("--rank-field", rank_field, "Q, F2 or Fp:<p>");
  matrix->add_option("--emit", emit_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  int depth = 8;
  auto* nucleus = app.add_subcommand("nucleus", "nucleus automaton and contraction");
  nucleus->add_option("--n", n, "degree");
  nucleus->add_option("--depth", depth, "restriction depth limit")->capture_default_str();

  std::size_t m = 1;
  std::size_t search_depth = 0;
  bool verify = false;
  auto* groupoid = app.add_subcommand("groupoid", "witness searches for U_m(z_g)");
  groupoid->add_option("--n", n, "degree");
  groupoid->add_option("--m", m, "cylinder length")->capture_default_str();
  groupoid->add_option("--depth", search_depth, "witness search depth (default m + 2(2^n - 1) + 1)");
  groupoid->add_flag("--verify", verify, "compare with transpose(W) and certify the singular system");

  bool all = false;
  int min_n = 2;
  int max_n = 8;
  auto* certify = app.add_subcommand("certify", "full pipeline certificate");
  auto* certify_n = certify->add_option("--n", n, "degree");
  certify->add_flag("--all", all, "certify every n in [--min-n, --max-n]")->excludes(certify_n);
  certify->add_option("--min-n", min_n, "first n for --all")->capture_default_str();
  certify->add_option("--max-n", max_n, "last n for --all")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (field->parsed()) return finish(g, spinal::field_report(make_field(opt(n), g.poly)));
    if (design->parsed()) {
      if (design->count("--search-q") > 0)
        return finish(g, spinal::search_report(search_q));
      return finish(g, spinal::design_report(make_field(opt(n), g.poly), g.seed));
    }
    if (matrix->parsed()) {
      const auto ctx = make_field(opt(n), g.poly);
      std::optional<spinal::RankField> rf;
      if (!rank_field.empty()) rf = spinal::parse_rank_field(rank_field);
      const spinal::Report report = spinal::matrix_report(ctx, rf);
      if (emit_format == "csv") {
        emit(g, spinal::matrix_csv(spinal::build_W(ctx)));
        return report.pass ? kExitPass : kExitFail;
      }
      return finish(g, report);
    }
    if (nucleus->parsed()) {
      if (depth < 0) throw std::invalid_argument("--depth must be >= 0");
      return finish(g, spinal::nucleus_report(make_field(opt(n), g.poly), depth));
    }
    if (groupoid->parsed()) {
      std::optional<std::size_t> d;
      if (search_depth > 0) d = search_depth;
      return finish(g, spinal::groupoid_report(make_field(opt(n), g.poly), m, d, verify));
    }
    if (certify->parsed()) {
      spinal::CertifyOptions options;
      options.seed = g.seed;
      options.samples = g.samples;
      if (!g.timestamp.empty()) options.timestamp = g.timestamp;
      if (!all) return finish(g, spinal::certify(make_field(opt(n), g.poly), options));
      if (!g.poly.empty()) throw std::invalid_argument("--all uses the default polynomials; drop --poly");
      if (min_n < 2 || max_n < min_n) throw std::invalid_argument("need 2 <= --min-n <= --max-n");
      spinal::Report combined;
      combined.pass = true;
      combined.doc["certificates"] = spinal::Json::array();
      for (int d = min_n; d <= max_n; ++d) {
        spinal::Report one = spinal::certify(make_field(d, ""), options);
        combined.pass = combined.pass && one.pass;
        combined.doc["certificates"].push_back(std::move(one.doc));
      }
      combined.doc["verdict"] = combined.pass ? "PASS" : "FAIL";
      return finish(g, combined);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const spinal::ContractViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
