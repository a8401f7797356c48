#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "spraywork/jet.hpp"

namespace sw = spraywork;

namespace {

// Builds the jet of the test function directly from coordinate seeds.
sw::Jet test_jet(const std::vector<double>& p, int order) {
  sw::Jet x0 = sw::Jet::seed(0, p[0], 2, order);
  sw::Jet x1 = sw::Jet::seed(1, p[1], 2, order);
  return sw::sin(x0) * sw::exp(x1) + x0.pow_int(3) / (1.0 + x1 * x1);
}

double test_fn(double a, double b) {
  return std::sin(a) * std::exp(b) + a * a * a / (1.0 + b * b);
}

// Central finite difference of `f` for multi-index (i, j), step h.
double central_diff(const std::function<double(double, double)>& f, double a,
                    double b, int i, int j, double h) {
  if (i > 0)
    return (central_diff(f, a + h, b, i - 1, j, h) -
            central_diff(f, a - h, b, i - 1, j, h)) /
           (2.0 * h);
  if (j > 0)
    return (central_diff(f, a, b + h, i, j - 1, h) -
            central_diff(f, a, b - h, i, j - 1, h)) /
           (2.0 * h);
  return f(a, b);
}

}  // namespace

TEST_CASE("jet derivatives match central finite differences") {
  const std::vector<double> p = {0.4, -0.7};
  sw::Jet g = test_jet(p, 4);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j + i <= 2; ++j) {
      std::vector<int> alpha = {i, j};
      const double jet_d = g.derivative(alpha);
      const double h = 1e-4 * (1 << (i + j));
      const double fd = central_diff(test_fn, p[0], p[1], i, j, h);
      CHECK(std::abs(jet_d - fd) <= 1e-6 * (1.0 + std::abs(fd)));
    }
}

TEST_CASE("jet arithmetic identities") {
  const std::vector<double> p = {0.3, 1.2};
  sw::Jet a = test_jet(p, 5);
  sw::Jet b = sw::Jet::seed(0, p[0], 2, 5) * 2.0 + 3.0;

  SUBCASE("division inverts multiplication") {
    sw::Jet q = a / b;
    sw::Jet r = q * b - a;
    CHECK(r.max_abs() <= 1e-10 * (1.0 + a.max_abs()));
  }
  SUBCASE("pow_int agrees with repeated product") {
    sw::Jet d = b.pow_int(4) - b * b * b * b;
    CHECK(d.max_abs() <= 1e-10 * b.max_abs());
  }
  SUBCASE("negative power is the reciprocal") {
    sw::Jet d = b.pow_int(-2) * b * b - sw::Jet::constant(2, 5, 1.0);
    CHECK(d.max_abs() <= 1e-10);
  }
  SUBCASE("truncation keeps low-order coefficients") {
    sw::Jet t = a.truncated(3);
    CHECK(t.order() == 3);
    for (int pos = 0; pos < t.space().size(); ++pos)
      CHECK(t.coeff(pos) == a.coeff(pos));
  }
  SUBCASE("mixed-order operands truncate to the lower order") {
    sw::Jet s = a + a.truncated(2);
    CHECK(s.order() == 2);
  }
}

TEST_CASE("analytic compositions") {
  sw::Jet x = sw::Jet::seed(0, 0.25, 1, 6);
  SUBCASE("sin^2 + cos^2 = 1") {
    sw::Jet d = sw::sin(x) * sw::sin(x) + sw::cos(x) * sw::cos(x) - 1.0;
    CHECK(d.max_abs() <= 1e-12);
  }
  SUBCASE("exp(log x) = x") {
    sw::Jet d = sw::exp(sw::log(x)) - x;
    CHECK(d.max_abs() <= 1e-12);
  }
  SUBCASE("sqrt(x)^2 = x") {
    sw::Jet d = sw::sqrt(x) * sw::sqrt(x) - x;
    CHECK(d.max_abs() <= 1e-12);
  }
  SUBCASE("log at a non-positive point is a domain error") {
    sw::Jet z = sw::Jet::seed(0, -1.0, 1, 3);
    CHECK_THROWS_AS(sw::log(z), sw::DomainError);
    CHECK_THROWS_AS(sw::sqrt(z), sw::DomainError);
  }
}

TEST_CASE("error paths") {
  SUBCASE("derivative of an order-0 jet is refused, never silently zero") {
    sw::Jet c = sw::Jet::constant(2, 0, 3.0);
    CHECK_THROWS_AS(c.derivative_var(0), sw::OrderExceeded);
  }
  SUBCASE("division by a jet with zero constant term") {
    sw::Jet x = sw::Jet::seed(0, 0.0, 1, 3);
    sw::Jet one = sw::Jet::constant(1, 3, 1.0);
    CHECK_THROWS_AS(one / x, sw::DivisionByZeroJet);
  }
}

TEST_CASE("derivative_var drops the order by one and shifts coefficients") {
  sw::Jet g = test_jet({0.2, 0.9}, 4);
  sw::Jet d0 = g.derivative_var(0);
  CHECK(d0.order() == 3);
  std::vector<int> a10 = {1, 0};
  CHECK(d0.value() == doctest::Approx(g.derivative(a10)).epsilon(1e-12));
  std::vector<int> a21 = {2, 1};
  std::vector<int> a11 = {1, 1};
  CHECK(d0.derivative(a11) == doctest::Approx(g.derivative(a21)).epsilon(1e-12));
}
