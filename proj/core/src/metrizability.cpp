#include "spraywork/metrizability.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace spraywork {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Flat: return "flat";
    case Classification::Isotropic: return "isotropic";
    case Classification::GenericDistinct: return "generic-distinct";
    case Classification::Degenerate: return "degenerate";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Metrizable: return "metrizable";
    case Verdict::MetrizableIntegrable: return "metrizable-integrable";
    case Verdict::MetrizableReduced: return "metrizable-reduced";
    case Verdict::NotMetrizable: return "not-metrizable";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

OmegaLin operator+(const OmegaLin& a, const OmegaLin& b) {
  return {a.c1 + b.c1, a.c2 + b.c2};
}
OmegaLin operator-(const OmegaLin& a, const OmegaLin& b) {
  return {a.c1 - b.c1, a.c2 - b.c2};
}
OmegaLin operator*(const Jet& s, const OmegaLin& a) {
  return {s * a.c1, s * a.c2};
}
OmegaLin operator*(double s, const OmegaLin& a) {
  return {s * a.c1, s * a.c2};
}

double flat_residual(const SprayGeometry& G) {
  return G.Phi0().cwiseAbs().maxCoeff();
}

double isotropic_residual(const SprayGeometry& G) {
  const int n = G.n();
  Eigen::MatrixXd M = G.Phi0();
  const double rho = M.trace() / (n - 1);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = G.point().y[i];
  Eigen::MatrixXd A = M - rho * Eigen::MatrixXd::Identity(n, n);
  // best fit A = y (x) omega, column by column
  Eigen::VectorXd omega = A.transpose() * y / y.squaredNorm();
  return (A - y * omega.transpose()).cwiseAbs().maxCoeff();
}

Classification classify(SprayGeometry& G, const Tolerances& tol,
                        std::string* reason) {
  double fmag = 1.0;
  for (int i = 0; i < G.n(); ++i)
    fmag = std::max(fmag, std::abs(G.f(i).value()));
  if (flat_residual(G) <= tol.tol * fmag) return Classification::Flat;
  const double phimag = std::max(1.0, G.Phi0().cwiseAbs().maxCoeff());
  if (isotropic_residual(G) <= tol.tol * phimag)
    return Classification::Isotropic;
  try {
    G.build_eigenframe(tol.tol_imag, tol.tol_sep);
  } catch (const ComplexEigenvalues& e) {
    if (reason) *reason = e.what();
    return Classification::Degenerate;
  } catch (const EigenvalueCollision& e) {
    if (reason) *reason = e.what();
    return Classification::Degenerate;
  }
  return Classification::GenericDistinct;
}

SpanFit cond_phi_prime_span(const SprayGeometry& G, const Tolerances& tol) {
  const int n = G.n();
  auto pp = G.phi_prime_frame();
  // fit m_aa = A*lambda_a + B over the generic slots; everything else in the
  // kernel-complement columns is pure residual
  Eigen::MatrixXd lhs(n - 1, 2);
  Eigen::VectorXd rhs(n - 1);
  for (int a = 0; a < n - 1; ++a) {
    lhs(a, 0) = G.lambda0(a);
    lhs(a, 1) = 1.0;
    rhs[a] = pp[a][a].value();
  }
  Eigen::Vector2d AB =
      lhs.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  double resid2 = 0.0, norm2 = 0.0;
  for (int a = 0; a < n - 1; ++a)
    for (int b = 0; b < n; ++b) {
      const double v = pp[b][a].value();
      norm2 += v * v;
      const double target = (a == b) ? AB[0] * G.lambda0(a) + AB[1] : 0.0;
      resid2 += (v - target) * (v - target);
    }
  SpanFit fit;
  fit.A = AB[0];
  fit.B = AB[1];
  fit.residual = std::sqrt(resid2) / std::max(std::sqrt(norm2), 1e-300);
  if (norm2 <= 1e-28) fit.residual = 0.0;  // Phi' = 0: trivially in the span
  fit.pass = fit.residual <= tol.tol;
  return fit;
}

// ---------------------------------------------------------------------------

ThirdOrderAnalysis::ThirdOrderAnalysis(const SprayGeometry& G,
                                       const Tolerances& tol)
    : G_(&G), tol_(tol) {
  if (G.n() != 3)
    throw ConfigError("third-order analysis requires n = 3, got n = " +
                      std::to_string(G.n()));
  if (!G.has_eigenframe())
    throw Error("third-order analysis requires the eigenframe");
  eta1_ = kappa(0, 1) + theta(0, 0, 1);
  eta2_ = kappa(1, 0) + theta(1, 0, 1);
}

Jet ThirdOrderAnalysis::scalar(double v) const {
  return Jet(2 * G_->n(), std::max(G_->order() - 3, 0), v);
}

std::vector<Jet> ThirdOrderAnalysis::coeffs(const FrameVec& W) const {
  return G_->expand(W);
}

Jet ThirdOrderAnalysis::kappa(int i, int j) const {
  const auto& G = *G_;
  const int n = G.n();
  const int hi = i, hj = j, vi = n + i, vj = n + j;
  const FrameVec& Vj = G.v_frame(j);
  const FrameVec& Hj = G.h_frame(j);

  Jet first = G.lambda(j) * (lie(Vj, G.xi(i, hi, hj)) -
                             lie(Vj, G.nu(i, hj, vi)) -
                             lie(Hj, G.nu(i, vi, vj)) +
                             lie(Hj, G.xi(i, vj, hi)));

  const FrameVec hjvj = bracket(G.h_frame(j), G.v_frame(j));
  const std::vector<Jet> c1 = coeffs(bracket(G.v_frame(i), hjvj));
  const std::vector<Jet> c2 = coeffs(bracket(hjvj, G.h_frame(i)));

  Jet second =
      G.lambda(i) * (c1[n + i] - c2[i] -
                     G.nu(j, vj, hi) * G.xi(i, vj, hj) -
                     G.xi(j, hi, hj) * G.xi(i, hj, vj) -
                     G.nu(j, vj, vi) * G.nu(i, vj, hj) -
                     G.xi(j, vi, hj) * G.nu(i, hj, vj));
  return first + second;
}

Jet ThirdOrderAnalysis::theta(int k, int i, int j) const {
  const auto& G = *G_;
  const int n = G.n();
  return (G.lambda(i) - G.lambda(j)) *
         (G.xi(k, j, n + j) * G.nu(k, i, n + i) -
          G.xi(k, i, n + i) * G.nu(k, j, n + j));
}

Jet ThirdOrderAnalysis::beta(int i, int j) const {
  const auto& G = *G_;
  return G.lambda(j) * G.nu(i, G.n() + j, j);
}

Jet ThirdOrderAnalysis::gamma(int i, int j) const {
  const auto& G = *G_;
  return G.lambda(j) * G.xi(i, G.n() + j, j);
}

double ThirdOrderAnalysis::beta_gamma_residual() const {
  double r = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (i == j) continue;
      r = std::max(r, std::abs(beta(i, j).value()));
      r = std::max(r, std::abs(gamma(i, j).value()));
    }
  return r;
}

double ThirdOrderAnalysis::involutivity_residual() const {
  const auto& G = *G_;
  const int n = G.n();
  double r = 0.0;
  for (int a = 0; a < n - 1; ++a) {
    const auto& c = G.bracket_coeffs(a, n + a);
    for (int k = 0; k < 2 * n; ++k) {
      if (k == a || k == n + a) continue;
      r = std::max(r, std::abs(c[k].value()));
    }
  }
  return r;
}

double ThirdOrderAnalysis::kappa_theta_residual() const {
  double r = std::max(std::abs(kappa(0, 1).value()),
                      std::abs(kappa(1, 0).value()));
  for (int k = 0; k < 3; ++k)
    r = std::max(r, std::abs(theta(k, 0, 1).value()));
  return r;
}

OmegaLin ThirdOrderAnalysis::omega(const FrameVec& W1,
                                   const FrameVec& W2) const {
  const int n = G_->n();
  const std::vector<Jet> c1 = coeffs(W1);
  const std::vector<Jet> c2 = coeffs(W2);
  return {c1[n + 0] * c2[0] - c1[0] * c2[n + 0],
          c1[n + 1] * c2[1] - c1[1] * c2[n + 1]};
}

OmegaLin ThirdOrderAnalysis::cyc(const FrameVec& A, const FrameVec& B,
                                 const FrameVec& C) const {
  return omega(bracket(A, B), C) + omega(bracket(B, C), A) +
         omega(bracket(C, A), B);
}

OmegaLin ThirdOrderAnalysis::algebraic_lie(int dir, int i) const {
  const auto& G = *G_;
  const int n = G.n();
  const int k = dir % n;
  if (k == i)
    throw Error("algebraic Lie derivative undefined along the own slot");
  const int hi = i, vi = n + i;
  Jet cross, own;
  if (dir < n) {
    // L_{h_k} a_ii = nu^k_{[h_i,v_i]} a_kk + (xi^i_{[h_i,h_k]} +
    // nu^i_{[v_i,h_k]}) a_ii
    cross = G.nu(k, hi, vi);
    own = G.xi(i, hi, k) + G.nu(i, vi, k);
  } else {
    // L_{v_k} a_ii = xi^k_{[h_i,v_i]} a_kk + (nu^i_{[v_k,v_i]} +
    // xi^i_{[v_k,h_i]}) a_ii
    cross = G.xi(k, hi, vi);
    own = G.nu(i, n + k, vi) + G.xi(i, n + k, hi);
  }
  OmegaLin r{scalar(0.0), scalar(0.0)};
  (i == 0 ? r.c1 : r.c2) += own;
  if (k == 0) r.c1 += cross;
  if (k == 1) r.c2 += cross;
  // k == n-1 (spray slot): a_nn = 0, the cross term drops
  return r;
}

OmegaLin ThirdOrderAnalysis::lie_derivative_omega(int dir, int i) const {
  const auto& G = *G_;
  const int n = G.n();
  if (dir % n != i) return algebraic_lie(dir, i);
  // own-slot direction: substitute the reduced relation
  // eta1 a11 + eta2 a22 = 0
  const double e1 = std::abs(eta1_.value()), e2 = std::abs(eta2_.value());
  const double big = std::max(e1, e2);
  if (big == 0.0 || std::min(e1, e2) <= tol_.eta_tol * big)
    throw EtaZero("reduced relation degenerate: eta = (" +
                  std::to_string(eta1_.value()) + ", " +
                  std::to_string(eta2_.value()) + ")");
  const FrameVec& E = G.frame(dir);
  if (i == 0) {
    // a11 = r a22 with r = -eta2/eta1
    Jet r = -eta2_ / eta1_;
    OmegaLin out = r * algebraic_lie(dir, 1);
    out.c2 += lie(E, r);
    return out;
  }
  // a22 = q a11 with q = -eta1/eta2
  Jet q = -eta1_ / eta2_;
  OmegaLin out = q * algebraic_lie(dir, 0);
  out.c1 += lie(E, q);
  return out;
}

OmegaLin ThirdOrderAnalysis::apply_field(const FrameVec& E,
                                         const OmegaLin& form) const {
  OmegaLin out{lie(E, form.c1), lie(E, form.c2)};
  const std::vector<Jet> ec = coeffs(E);
  for (int d = 0; d < 2 * G_->n(); ++d) {
    out = out + (ec[d] * form.c1) * lie_derivative_omega(d, 0) +
          (ec[d] * form.c2) * lie_derivative_omega(d, 1);
  }
  return out;
}

ThirdOrderAnalysis::ThetaMatrix ThirdOrderAnalysis::theta_matrix() const {
  const auto& G = *G_;
  const int n = G.n();
  const FrameVec& h1 = G.h_frame(0);
  const FrameVec& h2 = G.h_frame(1);
  const FrameVec& v1 = G.v_frame(0);
  const FrameVec& v2 = G.v_frame(1);
  const FrameVec& S = G.h_frame(n - 1);
  const FrameVec& C = G.v_frame(n - 1);
  const Jet& f1 = eta1_;
  const Jet& f2 = eta2_;
  const OmegaLin a11{scalar(1.0), scalar(0.0)};
  const OmegaLin a22{scalar(0.0), scalar(1.0)};

  std::array<OmegaLin, 6> rows;
  // first obstruction: (L_C f1) a11 + (L_C f2) a22
  rows[0] = lie(C, f1) * a11 + lie(C, f2) * a22;
  // second: 2 f1 Omega([S,v1],h1) + 2 f2 Omega([S,v2],h2) + (L_S f) a
  rows[1] = 2.0 * (f1 * omega(bracket(S, v1), h1)) +
            2.0 * (f2 * omega(bracket(S, v2), h2)) + lie(S, f1) * a11 +
            lie(S, f2) * a22;
  // third (vertical-vertical prolongation)
  rows[2] = lie(v1, lie(v2, f1)) * a11 + lie(v1, lie(v2, f2)) * a22 +
            f2 * apply_field(bracket(v1, v2), a22) +
            lie(v2, f1) * apply_field(v1, a11) +
            lie(v1, f1) * cyc(v2, v1, h1) + lie(v2, f2) * cyc(v1, v2, h2) +
            lie(v1, f2) * apply_field(v2, a22) +
            f1 * apply_field(v1, cyc(v2, v1, h1)) -
            f2 * apply_field(v2, cyc(v2, v1, h2));
  // fourth (horizontal-horizontal)
  rows[3] = lie(h1, lie(h2, f1)) * a11 + lie(h2, f1) * apply_field(h1, a11) +
            lie(h1, f1) * apply_field(h2, a11) +
            lie(h1, lie(h2, f2)) * a22 + lie(h2, f2) * apply_field(h1, a22) +
            lie(h1, f2) * apply_field(h2, a22) +
            f2 * apply_field(bracket(h1, h2), a22) +
            f1 * apply_field(h1, cyc(h2, v1, h1)) -
            f2 * apply_field(h2, cyc(v2, h1, h2));
  // fifth (mixed h1 v2)
  rows[4] = lie(h1, lie(v2, f1)) * a11 + lie(v2, f1) * apply_field(h1, a11) +
            lie(h1, f1) * apply_field(v2, a11) +
            lie(h1, lie(v2, f2)) * a22 + lie(v2, f2) * apply_field(h1, a22) +
            f1 * apply_field(h1, cyc(v2, v1, h1)) + lie(h1, f1) * a22 +
            f2 * apply_field(bracket(h1, v2), a22) -
            f2 * apply_field(v2, cyc(v2, h1, h2));
  // sixth (mixed v1 h2)
  rows[5] = lie(v1, lie(h2, f1)) * a11 + lie(h2, f1) * apply_field(v1, a11) +
            lie(v1, f1) * apply_field(h2, a11) +
            lie(v1, lie(h2, f2)) * a22 + lie(h2, f2) * apply_field(v1, a22) +
            f1 * apply_field(v1, cyc(h2, v1, h1)) +
            lie(v1, f2) * apply_field(h2, a22) +
            f2 * apply_field(bracket(v1, h2), a22) -
            f2 * apply_field(h2, cyc(v2, v1, h2));

  ThetaMatrix T;
  T.m[0][0] = f1.value();
  T.m[1][0] = f2.value();
  for (int k = 0; k < 6; ++k) {
    T.m[0][k + 1] = rows[k].c1.value();
    T.m[1][k + 1] = rows[k].c2.value();
  }
  Eigen::MatrixXd M(2, 7);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 7; ++c) M(r, c) = T.m[r][c];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  T.sv1 = svd.singularValues()[0];
  T.sv2 = svd.singularValues()[1];
  if (T.sv1 <= 0.0)
    T.rank = 0;
  else
    T.rank = (T.sv2 <= tol_.rank_tol * T.sv1) ? 1 : 2;
  return T;
}

// ---------------------------------------------------------------------------

PointConditionReport analyze_point(const SprayModel& model, const PointTM& u,
                                   const Tolerances& tol, int order) {
  PointConditionReport r;
  r.point = u;
  SprayGeometry G(model, u, order);
  r.flat_res = flat_residual(G);
  r.isotropic_res = isotropic_residual(G);
  r.classification = classify(G, tol, &r.degenerate_reason);
  if (r.classification != Classification::GenericDistinct) return r;

  for (int a = 0; a < G.n(); ++a) r.lambdas.push_back(G.lambda0(a));
  r.cond1 = cond_phi_prime_span(G, tol);

  if (G.n() != 3) return r;
  ThirdOrderAnalysis T(G, tol);
  r.kappa_theta_res = T.kappa_theta_residual();
  r.beta_gamma_res = T.beta_gamma_residual();
  r.involutivity_res = T.involutivity_residual();
  r.eta1 = T.eta1().value();
  r.eta2 = T.eta2().value();

  const double scale = (1.0 + std::max(std::abs(G.lambda0(0)),
                                       std::abs(G.lambda0(1))));
  r.reducible = r.beta_gamma_res <= tol.tol * scale * scale;
  const double eta_big = std::max(std::abs(r.eta1), std::abs(r.eta2));
  if (r.reducible && eta_big > tol.tol * scale * scale) {
    try {
      r.theta = T.theta_matrix();
      r.theta_computed = true;
    } catch (const Error& e) {
      r.theta_error = e.what();
    }
  }
  return r;
}

AggregateVerdict aggregate_verdict(const std::vector<PointConditionReport>& pts,
                                   const Tolerances& tol, int n) {
  AggregateVerdict out;
  if (pts.empty()) {
    out.reasons.push_back("no sample points");
    return out;
  }

  bool all_flat = true, all_iso = true, any_degenerate = false;
  for (const auto& p : pts) {
    all_flat &= p.classification == Classification::Flat;
    all_iso &= p.classification == Classification::Flat ||
               p.classification == Classification::Isotropic;
    any_degenerate |= p.classification == Classification::Degenerate;
  }
  if (all_flat) {
    out.classification = Classification::Flat;
    out.verdict = Verdict::Metrizable;
    out.reasons.push_back("Jacobi curvature vanishes at every sample");
    return out;
  }
  if (all_iso) {
    out.classification = Classification::Isotropic;
    out.verdict = Verdict::Metrizable;
    out.reasons.push_back("isotropic curvature at every sample");
    return out;
  }
  if (any_degenerate) {
    out.classification = Classification::Degenerate;
    out.verdict = Verdict::Inconclusive;
    for (const auto& p : pts)
      if (p.classification == Classification::Degenerate) {
        out.reasons.push_back("degenerate spectrum: " + p.degenerate_reason);
        break;
      }
    return out;
  }
  out.classification = Classification::GenericDistinct;
  if (n != 3) {
    out.verdict = Verdict::Inconclusive;
    out.reasons.push_back("verdict decision tree is implemented for n = 3");
    return out;
  }

  auto scale_of = [](const PointConditionReport& p) {
    double s = 1.0;
    for (double l : p.lambdas) s = std::max(s, 1.0 + std::abs(l));
    return s * s;
  };

  out.cond1_pass = true;
  out.reducible = true;
  bool involutive = true;
  bool eta_all_zero = true;
  bool eta_zero_one_sided = false;
  out.eta_sign_ok = true;
  out.theta_rank1 = true;
  bool theta_all_computed = true;
  for (const auto& p : pts) {
    const double s = scale_of(p);
    out.cond1_pass &= p.cond1.pass;
    out.reducible &= p.beta_gamma_res <= tol.tol * s;
    involutive &= p.involutivity_res <= tol.tol * s;
    const double e1 = std::abs(p.eta1), e2 = std::abs(p.eta2);
    const double big = std::max(e1, e2);
    if (big > tol.tol * s) {
      eta_all_zero = false;
      if (std::min(e1, e2) <= tol.eta_tol * big) eta_zero_one_sided = true;
      out.eta_sign_ok &= p.eta1 * p.eta2 < 0.0;
    }
    theta_all_computed &= p.theta_computed;
    if (p.theta_computed) out.theta_rank1 &= p.theta.rank == 1;
  }
  if (out.reducible != involutive)
    throw InconsistentReducibility(
        "beta/gamma vanishing and eigen-distribution involutivity disagree");

  out.eta_nonzero = !eta_all_zero;
  out.third_order_zero = out.reducible && eta_all_zero;

  if (out.cond1_pass && out.third_order_zero) {
    out.verdict = Verdict::MetrizableIntegrable;
    out.reasons.push_back(
        "dynamical derivative of the Jacobi endomorphism lies in "
        "span{J, Phi} and the third-order condition vanishes identically");
    return out;
  }
  if (out.reducible && out.eta_nonzero) {
    if (eta_zero_one_sided) {
      out.verdict = Verdict::NotMetrizable;
      out.reasons.push_back(
          "one reduced coefficient vanishes while the other does not: the "
          "reduced relation forces a degenerate solution");
      return out;
    }
    if (!theta_all_computed) {
      out.verdict = Verdict::Inconclusive;
      out.reasons.push_back("compatibility matrix unavailable at some sample");
      return out;
    }
    if (out.eta_sign_ok && out.theta_rank1) {
      out.verdict = Verdict::MetrizableReduced;
      out.reasons.push_back(
          "reduced relation has opposite-sign coefficients and the "
          "compatibility matrix has rank 1 at every sample");
    } else {
      out.verdict = Verdict::NotMetrizable;
      if (!out.eta_sign_ok)
        out.reasons.push_back(
            "reduced coefficients have the same sign at some sample: no "
            "positive solution exists");
      if (!out.theta_rank1)
        out.reasons.push_back(
            "compatibility matrix has rank 2 at some sample: the completed "
            "system is not formally integrable");
    }
    return out;
  }
  out.verdict = Verdict::Inconclusive;
  if (!out.reducible)
    out.reasons.push_back(
        "third-order condition is not reducible; completed-system analysis "
        "for the irreducible case is out of scope");
  if (!out.cond1_pass && out.third_order_zero)
    out.reasons.push_back(
        "span condition fails while the third-order condition vanishes: the "
        "required second-order completion is out of scope");
  return out;
}

}  // namespace spraywork
