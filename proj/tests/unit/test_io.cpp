#include <doctest.h>

#include <string>

#include "fhc/error.hpp"
#include "fhc/io.hpp"
#include "fixtures.hpp"

using namespace fhc;

TEST_CASE("number formatting") {
  CHECK(format_number(0.1, 17) == "0.10000000000000001");
  CHECK(csv_number(1.0 / 3.0) == "0.333333333");
  CHECK(csv_number(2.0) == "2");
}

TEST_CASE("function JSON round trip") {
  FunctionExpr f = FunctionExpr::block({0.0, 0.5}, {2.0, -1.0}) + FunctionExpr::monomial(2, {0.1, 0.2}, 3.0);
  f.blocks.push_back({1.0, {{0.0, -0.25}, 4.0, {0.0, 0.1}}});
  const auto g = function_from_json(to_json(f));
  for (ComplexPoint z : {ComplexPoint(0.3, 0.1), ComplexPoint(-5, 2)}) CHECK(evaluate(g, z) == evaluate(f, z));
}

TEST_CASE("presets and explicit terms add up") {
  const auto f = function_from_json(R"({"preset": "sine_pi", "exppoly": [{"poly": [1]}]})");
  CHECK(std::abs(evaluate(f, 0.5) - 2.0) < 1e-15);
  CHECK_THROWS_AS(function_from_json(R"({"preset": "cosine"})"), InputError);
}

TEST_CASE("convex and rational round trips") {
  const std::vector<ComplexPoint> pts{{0, 0}, {1, 0}, {0, 2}};
  const auto K = hull(pts);
  CHECK(same_vertices(convex_from_json(to_json(K)), K));
  const auto r = rational_from_json(R"({"poles": [{"at": [0, 1], "order": 2, "coefs": [1, [0, 2]]}]})");
  REQUIRE(r.poles.size() == 1);
  CHECK(rational_from_json(to_json(r)).poles[0].coefs[1] == ComplexPoint(0, 2));
  CHECK_THROWS_AS(rational_from_json(R"({"poles": [{"at": 0, "order": 3, "coefs": [1]}]})"), InputError);
}

TEST_CASE("candidate round trip re-verifies membership") {
  const auto K = fhc::testing::vertical_segment(1.0);
  const std::vector<FunctionExpr> t{FunctionExpr::block({0.0, 0.5})};
  const auto c = build_candidate(t, dyadic_schedule(1, 64, 2), K);
  const auto back = candidate_from_json(to_json(c));
  CHECK(back.schedule.assignments.size() == c.schedule.assignments.size());
  CHECK(evaluate(back.expr, 3.7) == evaluate(c.expr, 3.7));
  auto text = to_json(c);
  text.replace(text.find("[0.0,1.0]"), 9, "[0.0,0.5]");
  CHECK_THROWS_AS(candidate_from_json(text), MembershipError);
}

TEST_CASE("parse errors carry a byte position") {
  try {
    function_from_json(R"({"blocks": [{"alpha": [0, 1]})");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
  CHECK_THROWS_AS(function_from_json(R"({"blocks": [{"alpha": "x"}]})"), InputError);
  CHECK_THROWS_AS(function_from_json(R"({"blocks": [{"coef": 1}]})"), InputError);
  CHECK_THROWS_AS(convex_from_json(R"({"vertices": []})"), InputError);
  CHECK_THROWS_AS(read_text_file("/nonexistent/file.json"), InputError);
}

TEST_CASE("zeros CSV") {
  ZeroList z{{{{1.0, 0.0}, 1}, {{2.0, -0.5}, 2}}};
  CHECK(zeros_csv(z) == "re,im,multiplicity\n1,0,1\n2,-0.5,2\n");
}

TEST_CASE("obstruction report JSON fields") {
  ObstructionReport r;
  r.verdict = Verdict::Obstructed;
  const auto s = to_json(r);
  for (const char* key : {"measured_density", "bound", "gamma", "verdict"}) CHECK(s.find(key) != std::string::npos);
  CHECK(s.find("OBSTRUCTED") != std::string::npos);
}
