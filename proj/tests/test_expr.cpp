#include <doctest.h>

#include <cmath>
#include <vector>

#include "spraywork/expr.hpp"

namespace sw = spraywork;

TEST_CASE("parse / print round trip is stable") {
  const std::vector<std::string> sources = {
      "x1*y1*y3 + x2*y1*y3",
      "-sqrt(y1*y1+y2*y2+y3*y3)*y1",
      "sin(x1)*y1*y3",
      "exp(x3)*y2^2",
      "0.25*x1^2 - y2/(1+x3^2)",
  };
  for (const auto& s : sources) {
    sw::ExprPtr e = sw::parse(s, 3);
    std::string printed = sw::print(e);
    sw::ExprPtr e2 = sw::parse(printed, 3);
    CHECK(sw::equal(e, e2));
    CHECK(sw::print(e2) == printed);
  }
}

TEST_CASE("evaluation respects precedence and decimal literals are exact") {
  sw::PointTM u{{2.0, 0.0, 1.0}, {3.0, 4.0, 5.0}};
  CHECK(sw::eval(sw::parse("x1+y2*x3^2", 3), u) == doctest::Approx(6.0));
  CHECK(sw::eval(sw::parse("-x1^2", 3), u) == doctest::Approx(-4.0));
  sw::ExprPtr quarter = sw::parse("0.25", 3);
  REQUIRE(quarter->kind == sw::Expr::Kind::Constant);
  CHECK(quarter->num == 1);
  CHECK(quarter->den == 4);
}

TEST_CASE("parser errors carry positions and kinds") {
  CHECK_THROWS_AS(sw::parse("x1 + ", 3), sw::SyntaxError);
  CHECK_THROWS_AS(sw::parse("(x1", 3), sw::SyntaxError);
  CHECK_THROWS_AS(sw::parse("x4", 3), sw::UnknownVariable);
  CHECK_THROWS_AS(sw::parse("y9*y1", 3), sw::UnknownVariable);
  CHECK_THROWS_AS(sw::parse("x1^1.5", 3), sw::NonIntegerExponent);
  try {
    sw::parse("x1 + * y2", 3);
    FAIL("expected SyntaxError");
  } catch (const sw::SyntaxError& e) {
    CHECK(e.line == 1);
    CHECK(e.column >= 5);
  }
}

TEST_CASE("eval_jet matches plain evaluation and simple derivatives") {
  sw::ExprPtr e = sw::parse("x1*y1*y3 + y2^2/x3", 3);
  sw::PointTM u{{0.5, -1.0, 2.0}, {1.0, 3.0, -0.5}};
  sw::Jet j = sw::eval_jet(e, u, 3);
  CHECK(j.value() == doctest::Approx(sw::eval(e, u)).epsilon(1e-12));
  // d/dy2 (y2^2 / x3) = 2 y2 / x3 = 3
  std::vector<int> dy2 = {0, 0, 0, 0, 1, 0};
  CHECK(j.derivative(dy2) == doctest::Approx(3.0).epsilon(1e-12));
  // d/dx3 at a singular point of the division
  sw::PointTM sing{{0.5, -1.0, 0.0}, {1.0, 3.0, -0.5}};
  CHECK_THROWS_AS(sw::eval_jet(e, sing, 3), spraywork::Error);
}

TEST_CASE("fiberwise homogeneity check") {
  std::vector<sw::PointTM> pts;
  for (int k = 0; k < 8; ++k) {
    double t = 0.3 + 0.2 * k;
    pts.push_back({{t, -t, 1.0 + t}, {1.0 + 0.1 * k, -0.7, 0.4 * t + 0.2}});
  }
  CHECK(sw::check_homogeneity(sw::parse("y3^2", 3), 3, 2, pts, 1e-9).pass);
  CHECK(sw::check_homogeneity(sw::parse("x3*y2^2", 3), 3, 2, pts, 1e-9).pass);
  sw::HomogeneityReport bad =
      sw::check_homogeneity(sw::parse("x1*y1", 3), 3, 2, pts, 1e-9);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.failures.empty());
}
