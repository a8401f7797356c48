#include "spraywork/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace spraywork {

namespace {

void enumerate_degree(int nvars, int deg, std::vector<int>& cur, int var,
                      int left, std::vector<std::vector<int>>& out) {
  if (var == nvars - 1) {
    cur[var] = left;
    out.push_back(cur);
    return;
  }
  // lexicographic: largest exponent first on the leading variable
  for (int e = left; e >= 0; --e) {
    cur[var] = e;
    enumerate_degree(nvars, deg, cur, var + 1, left - e, out);
  }
  cur[var] = 0;
}

}  // namespace

JetSpace::JetSpace(int nvars, int order) : nvars_(nvars), order_(order) {
  deg_begin_.push_back(0);
  for (int d = 0; d <= order; ++d) {
    std::vector<int> cur(nvars, 0);
    std::vector<std::vector<int>> block;
    enumerate_degree(nvars, d, cur, 0, d, block);
    for (auto& e : block) {
      degs_.push_back(d);
      exps_.push_back(std::move(e));
    }
    deg_begin_.push_back(static_cast<int>(exps_.size()));
  }
  fact_.resize(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    double f = 1.0;
    for (int e : exps_[i])
      for (int k = 2; k <= e; ++k) f *= k;
    fact_[i] = f;
    pos_[pack(exps_[i])] = static_cast<int>(i);
  }
}

std::uint64_t JetSpace::pack(std::span<const int> alpha) {
  std::uint64_t key = 0;
  for (int e : alpha) key = (key << 5) | static_cast<std::uint64_t>(e);
  return key;
}

int JetSpace::position(std::span<const int> alpha) const {
  int total = 0;
  for (int e : alpha) total += e;
  if (total > order_) return -1;
  auto it = pos_.find(pack(alpha));
  return it == pos_.end() ? -1 : it->second;
}

const JetSpace& JetSpace::get(int nvars, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<JetSpace>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(nvars, order);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::unique_ptr<JetSpace>(new JetSpace(nvars, order)))
             .first;
  return *it->second;
}

Jet::Jet(int nvars, int order, double constant)
    : nvars_(nvars), order_(order) {
  coeffs_.assign(JetSpace::get(nvars, order).size(), 0.0);
  coeffs_[0] = constant;
}

Jet Jet::seed(int var, double value, int nvars, int order) {
  Jet j(nvars, order, value);
  if (order >= 1) {
    std::vector<int> alpha(nvars, 0);
    alpha[var] = 1;
    j.coeffs_[j.space().position(alpha)] = 1.0;
  }
  return j;
}

double Jet::coeff(std::span<const int> alpha) const {
  int p = space().position(alpha);
  if (p < 0)
    throw OrderExceeded("multi-index order exceeds jet order " +
                        std::to_string(order_));
  return coeffs_[p];
}

double Jet::derivative(std::span<const int> alpha) const {
  int p = space().position(alpha);
  if (p < 0)
    throw OrderExceeded("multi-index order exceeds jet order " +
                        std::to_string(order_));
  return coeffs_[p] * space().factorial(p);
}

Jet Jet::truncated(int new_order) const {
  if (new_order >= order_) return *this;
  Jet r(nvars_, new_order);
  const auto& sp = space();
  const auto& rsp = r.space();
  for (int p = 0; p < rsp.size(); ++p)
    r.coeffs_[p] = coeffs_[sp.position(rsp.exponent(p))];
  return r;
}

Jet Jet::derivative_var(int v) const {
  if (order_ == 0)
    throw OrderExceeded("derivative of an order-0 jet; increase the jet order");
  int ro = order_ - 1;
  Jet r(nvars_, ro);
  const auto& sp = space();
  const auto& rsp = r.space();
  for (int p = 0; p < rsp.size(); ++p) {
    std::vector<int> alpha = rsp.exponent(p);
    alpha[v] += 1;
    int q = sp.position(alpha);
    if (q >= 0) r.coeffs_[p] = coeffs_[q] * alpha[v];
  }
  return r;
}

void Jet::check_compatible(const Jet& a, const Jet& b) {
  if (a.nvars_ != b.nvars_)
    throw Error("jet variable-count mismatch: " + std::to_string(a.nvars_) +
                " vs " + std::to_string(b.nvars_));
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Jet& Jet::operator+=(const Jet& o) { return *this = *this + o; }
Jet& Jet::operator-=(const Jet& o) { return *this = *this - o; }

Jet operator+(const Jet& a, const Jet& b) {
  Jet::check_compatible(a, b);
  int ord = std::min(a.order_, b.order_);
  Jet r = a.truncated(ord);
  Jet bt = b.truncated(ord);
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i)
    r.coeffs_[i] += bt.coeffs_[i];
  return r;
}

Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

Jet operator*(const Jet& a, const Jet& b) {
  Jet::check_compatible(a, b);
  int ord = std::min(a.order_, b.order_);
  Jet at = a.truncated(ord);
  Jet bt = b.truncated(ord);
  Jet r(a.nvars_, ord);
  const auto& sp = r.space();
  std::vector<int> sum(a.nvars_);
  for (int p = 0; p < sp.size(); ++p) {
    if (at.coeffs_[p] == 0.0) continue;
    int dmax = ord - sp.degree(p);
    for (int q = 0; q < sp.degree_end(dmax); ++q) {
      if (bt.coeffs_[q] == 0.0) continue;
      const auto& ea = sp.exponent(p);
      const auto& eb = sp.exponent(q);
      for (int v = 0; v < a.nvars_; ++v) sum[v] = ea[v] + eb[v];
      r.coeffs_[sp.position(sum)] += at.coeffs_[p] * bt.coeffs_[q];
    }
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  Jet::check_compatible(a, b);
  if (b.value() == 0.0)
    throw DivisionByZeroJet("jet division by zero constant term");
  int ord = std::min(a.order_, b.order_);
  Jet at = a.truncated(ord);
  Jet bt = b.truncated(ord);
  Jet r(a.nvars_, ord);
  const auto& sp = r.space();
  // solve b*r = a degree by degree: b0*r_alpha = a_alpha - sum_{0<beta<=alpha}
  std::vector<int> diff(a.nvars_);
  for (int p = 0; p < sp.size(); ++p) {
    double rhs = at.coeffs_[p];
    const auto& ea = sp.exponent(p);
    // iterate over all beta <= alpha, beta != 0 (positions of lower degree)
    for (int q = 1; q < sp.degree_end(sp.degree(p)); ++q) {
      const auto& eb = sp.exponent(q);
      bool ok = true;
      for (int v = 0; v < a.nvars_; ++v) {
        diff[v] = ea[v] - eb[v];
        if (diff[v] < 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      rhs -= bt.coeffs_[q] * r.coeffs_[sp.position(diff)];
    }
    r.coeffs_[p] = rhs / bt.value();
  }
  return r;
}

Jet operator+(const Jet& a, double s) {
  Jet r = a;
  r.coeffs_[0] += s;
  return r;
}
Jet operator+(double s, const Jet& a) { return a + s; }
Jet operator-(const Jet& a, double s) { return a + (-s); }
Jet operator-(double s, const Jet& a) { return (-a) + s; }
Jet operator*(const Jet& a, double s) {
  Jet r = a;
  for (auto& c : r.coeffs_) c *= s;
  return r;
}
Jet operator*(double s, const Jet& a) { return a * s; }
Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }

Jet Jet::pow_int(long long e) const {
  if (e < 0) return Jet(nvars_, order_, 1.0) / pow_int(-e);
  Jet r(nvars_, order_, 1.0);
  Jet base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

double Jet::max_abs() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Jet compose_fn(const std::string& name, const Jet& g) {
  const int K = g.order();
  const double g0 = g.value();
  // Taylor coefficients f^(k)(g0)/k! of the outer function.
  std::vector<double> c(K + 1);
  if (name == "exp") {
    double e = std::exp(g0);
    double kfac = 1.0;
    for (int k = 0; k <= K; ++k) {
      if (k > 0) kfac *= k;
      c[k] = e / kfac;
    }
  } else if (name == "sin" || name == "cos") {
    double s = std::sin(g0), co = std::cos(g0);
    double kfac = 1.0;
    for (int k = 0; k <= K; ++k) {
      if (k > 0) kfac *= k;
      double d;
      int phase = (name == "sin") ? k % 4 : (k + 1) % 4;
      switch (phase) {
        case 0: d = s; break;
        case 1: d = co; break;
        case 2: d = -s; break;
        default: d = -co; break;
      }
      if (name == "cos") {
        // derivative cycle for cos starts at cos
        switch (k % 4) {
          case 0: d = co; break;
          case 1: d = -s; break;
          case 2: d = -co; break;
          default: d = s; break;
        }
      }
      c[k] = d / kfac;
    }
  } else if (name == "log") {
    if (g0 <= 0.0) throw DomainError("log of non-positive value");
    c[0] = std::log(g0);
    for (int k = 1; k <= K; ++k)
      c[k] = ((k % 2 == 1) ? 1.0 : -1.0) / (k * std::pow(g0, k));
  } else if (name == "sqrt") {
    if (g0 <= 0.0) throw DomainError("sqrt of non-positive value");
    // (1/2 choose k) g0^(1/2-k)
    double coef = 1.0;
    for (int k = 0; k <= K; ++k) {
      c[k] = coef * std::pow(g0, 0.5 - k);
      coef *= (0.5 - k) / (k + 1);
    }
  } else {
    throw Error("unknown function: " + name);
  }

  Jet dg = g - g0;  // nilpotent part
  Jet result(g.nvars(), K, c[0]);
  Jet p(g.nvars(), K, 1.0);
  for (int k = 1; k <= K; ++k) {
    p = p * dg;
    result += p * c[k];
  }
  return result;
}

Jet sin(const Jet& g) { return compose_fn("sin", g); }
Jet cos(const Jet& g) { return compose_fn("cos", g); }
Jet exp(const Jet& g) { return compose_fn("exp", g); }
Jet log(const Jet& g) { return compose_fn("log", g); }
Jet sqrt(const Jet& g) { return compose_fn("sqrt", g); }

}  // namespace spraywork
