#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "spraywork/errors.hpp"

namespace spraywork {

/// Shared enumeration of multi-indices |alpha| <= order over `nvars`
/// variables, graded-lexicographic. Instances are cached per (nvars, order).
class JetSpace {
 public:
  static const JetSpace& get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(exps_.size()); }

  const std::vector<int>& exponent(int pos) const { return exps_[pos]; }
  int degree(int pos) const { return degs_[pos]; }
  /// First position of the given total degree.
  int degree_begin(int d) const { return deg_begin_[d]; }
  int degree_end(int d) const { return deg_begin_[d + 1]; }

  /// Position of a multi-index, or -1 when |alpha| > order.
  int position(std::span<const int> alpha) const;
  /// alpha! for the multi-index at `pos`.
  double factorial(int pos) const { return fact_[pos]; }

 private:
  JetSpace(int nvars, int order);
  static std::uint64_t pack(std::span<const int> alpha);

  int nvars_, order_;
  std::vector<std::vector<int>> exps_;
  std::vector<int> degs_;
  std::vector<int> deg_begin_;
  std::vector<double> fact_;
  std::unordered_map<std::uint64_t, int> pos_;
};

/// Truncated multivariate Taylor expansion. Coefficients are Taylor
/// coefficients: coeff(alpha) = (partial derivative at the expansion
/// point) / alpha!. Immutable value type; all operations are pure.
class Jet {
 public:
  Jet() : nvars_(0), order_(-1) {}
  Jet(int nvars, int order, double constant = 0.0);

  static Jet constant(int nvars, int order, double c) {
    return Jet(nvars, order, c);
  }
  /// Jet of the coordinate function x_v (0-based) around the value `value`.
  static Jet seed(int var, double value, int nvars, int order);

  bool valid() const { return order_ >= 0; }
  int nvars() const { return nvars_; }
  int order() const { return order_; }
  const JetSpace& space() const { return JetSpace::get(nvars_, order_); }

  double value() const { return coeffs_.empty() ? 0.0 : coeffs_[0]; }
  double coeff(int pos) const { return coeffs_[pos]; }
  void set_coeff(int pos, double c) { coeffs_[pos] = c; }
  double coeff(std::span<const int> alpha) const;
  /// Partial derivative for the multi-index: alpha! * coeff(alpha).
  double derivative(std::span<const int> alpha) const;

  /// Same expansion truncated to a lower order.
  Jet truncated(int new_order) const;
  /// Partial derivative as a jet of order-1.
  Jet derivative_var(int v) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

  friend Jet operator+(const Jet& a, double s);
  friend Jet operator+(double s, const Jet& a);
  friend Jet operator-(const Jet& a, double s);
  friend Jet operator-(double s, const Jet& a);
  friend Jet operator*(const Jet& a, double s);
  friend Jet operator*(double s, const Jet& a);
  friend Jet operator/(const Jet& a, double s);

  /// Integer power by repeated squaring (negative exponents via reciprocal).
  Jet pow_int(long long e) const;

  /// Max |coefficient|; cheap magnitude proxy used by tolerance checks.
  double max_abs() const;

 private:
  int nvars_, order_;
  std::vector<double> coeffs_;

  static void check_compatible(const Jet& a, const Jet& b);
};

/// Composition with a univariate analytic function; `name` is one of
/// sin, cos, exp, log, sqrt. Throws DomainError when the constant term is
/// outside the function's domain.
Jet compose_fn(const std::string& name, const Jet& g);

Jet sin(const Jet& g);
Jet cos(const Jet& g);
Jet exp(const Jet& g);
Jet log(const Jet& g);
Jet sqrt(const Jet& g);

}  // namespace spraywork
