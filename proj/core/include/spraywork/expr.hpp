#pragma once

#include <memory>
#include <string>
#include <vector>

#include "spraywork/jet.hpp"

namespace spraywork {

/// A point of the slashed tangent bundle: coordinates (x, y) with y != 0.
struct PointTM {
  std::vector<double> x;
  std::vector<double> y;

  int n() const { return static_cast<int>(x.size()); }
};

/// Parsed arithmetic expression over x1..xn, y1..yn.
///
/// Numeric literals are kept as exact rationals (decimal literals are
/// converted at parse time); evaluation downgrades to floating point.
class Expr {
 public:
  enum class Kind { Constant, Var, Add, Sub, Mul, Div, Pow, Neg, Func };

  Kind kind;
  // Constant
  long long num = 0, den = 1;
  // Var: axis 0 = x, 1 = y; index is 1-based
  int axis = 0, index = 0;
  // Pow
  long long exponent = 0;
  // Func
  std::string func;
  std::vector<std::shared_ptr<const Expr>> children;

  double constant_value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Parse `source` for dimension `n`. Throws SyntaxError, UnknownVariable,
/// NonIntegerExponent. Parsing is total and deterministic.
ExprPtr parse(const std::string& source, int n);

/// Canonical printing; print(parse(s)) reparses to an identical tree.
std::string print(const ExprPtr& e);

/// Structural equality of two expression trees.
bool equal(const ExprPtr& a, const ExprPtr& b);

/// Truncated Taylor expansion of `e` at `u` in the 2n coordinates
/// (x1..xn, y1..yn) to total order `order`. Throws DomainError at
/// singular points of log/sqrt/division.
Jet eval_jet(const ExprPtr& e, const PointTM& u, int order);

/// Plain evaluation (order-0 jet value).
double eval(const ExprPtr& e, const PointTM& u);

/// A spray model: dimension and the n coefficient expressions f^i(x, y).
struct SprayModel {
  int n = 0;
  std::vector<ExprPtr> coeffs;
  std::string label;
};

struct HomogeneityFailure {
  int sample_index;
  double residual;
};

struct HomogeneityReport {
  bool pass = true;
  std::vector<HomogeneityFailure> failures;
};

/// Euler-theorem check: at every sample verifies
/// |sum_j y^j de/dy^j - degree*e| <= tol*(1+|e|).
HomogeneityReport check_homogeneity(const ExprPtr& e, int n, int degree,
                                    const std::vector<PointTM>& samples,
                                    double tol);

}  // namespace spraywork
