#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinal/report.hpp"

using namespace spinal;

TEST_CASE("rank field parsing") {
  CHECK(parse_rank_field("Q").kind == RankField::Kind::Rationals);
  CHECK(parse_rank_field("F2").p == 2);
  CHECK(parse_rank_field("Fp:13").p == 13);
  CHECK(parse_rank_field("Fp:13").label() == "Fp:13");
  CHECK_THROWS_AS(parse_rank_field("Fp:12"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rank_field("Fp:"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rank_field("R"), std::invalid_argument);
}

TEST_CASE("certificate for n = 2 reproduces W_2 and T_2") {
  CertifyOptions options;
  options.samples = 200;
  const Report r = certify(FieldContext::for_degree(2), options);
  CHECK(r.pass);
  CHECK(r.doc["verdict"] == "PASS");
  CHECK(r.doc["timestamp"].is_null());
  const auto& m = r.doc["sections"]["matrix"];
  CHECK(m["W"] == Json::parse("[[1,1,1,0,0,0],[0,0,1,1,1,0],[0,1,0,1,0,1],[1,0,0,0,1,1]]"));
  CHECK(m["T"][0] == Json::parse(R"(["1/3","-1/6","-1/6","1/3"])"));
  CHECK(m["T"][5] == Json::parse(R"(["-1/6","-1/6","1/3","1/3"])"));
  CHECK(m["rank_over_Q"] == 4);
  CHECK(m["T_column0_abs_sum"] == "3/2");
  for (const char* name : {"design", "matrix", "nucleus", "groupoid", "bound"})
    CHECK_MESSAGE(r.doc["sections"][name]["pass"] == true, name);
}

TEST_CASE("certificates are deterministic") {
  CertifyOptions options;
  options.samples = 100;
  options.seed = 42;
  const auto ctx = FieldContext::for_degree(3);
  CHECK(certify(ctx, options).doc.dump() == certify(ctx, options).doc.dump());
  options.timestamp = "2026-01-01T00:00:00Z";
  CHECK(certify(ctx, options).doc["timestamp"] == "2026-01-01T00:00:00Z");
}

TEST_CASE("matrix report ranks") {
  const auto ctx = FieldContext::for_degree(3);
  const Report f2 = matrix_report(ctx, parse_rank_field("F2"));
  CHECK(f2.doc["rank"]["rank"].get<std::size_t>() < 8);
  CHECK(f2.pass);
  const Report q = matrix_report(ctx, parse_rank_field("Q"));
  CHECK(q.doc["rank"]["rank"] == 8);
  CHECK(q.doc["T"][0][0] == "1/7");
}

TEST_CASE("csv layout") {
  const std::string csv = matrix_csv(build_W(FieldContext::for_degree(2)));
  CHECK(csv == "H0,H1,H2,H0^c,H1^c,H2^c\n1,1,1,0,0,0\n0,0,1,1,1,0\n0,1,0,1,0,1\n1,0,0,0,1,1\n");
}

TEST_CASE("design and search reports") {
  const Report d = design_report(FieldContext::for_degree(3), 0);
  CHECK(d.pass);
  CHECK(d.doc["design"]["params"] == Json::parse(R"({"v":7,"block_size":3,"lambda":1})"));
  const Report s = search_report(2);
  CHECK(s.doc["count"] == 3);
  CHECK_THROWS_AS(search_report(3), std::invalid_argument);
}

TEST_CASE("nucleus and groupoid reports") {
  const Report n = nucleus_report(FieldContext::for_degree(2), 8);
  CHECK(n.pass);
  CHECK(n.doc["state_count"] == 5);
  const Report g = groupoid_report(FieldContext::for_degree(2), 1, std::nullopt, true);
  CHECK(g.pass);
  CHECK(g.doc["regions"][0]["witness"] == "1110(1)^inf");
  CHECK(g.doc["equals_W_transpose"] == true);
}

TEST_CASE("certificates pass for non-default primitive polynomials") {
  CertifyOptions options;
  options.samples = 200;
  for (const char* p : {"x^3+x^2+1", "x^4+x^3+1", "x^5+x^3+1"}) {
    const Report r = certify(FieldContext(Polynomial::parse(p)), options);
    CHECK_MESSAGE(r.pass, p);
  }
}
