#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spraywork/geometry.hpp"

namespace spraywork {

enum class Classification { Flat, Isotropic, GenericDistinct, Degenerate };
enum class Verdict {
  Metrizable,            // flat or isotropic curvature
  MetrizableIntegrable,  // full compatibility system closes at second order
  MetrizableReduced,     // completed system integrable: eta1*eta2 < 0, rank 1
  NotMetrizable,
  Inconclusive
};

std::string to_string(Classification c);
std::string to_string(Verdict v);

struct Tolerances {
  double tol = 1e-7;        // generic residual threshold (relative)
  double tol_sep = 1e-6;    // eigenvalue separation
  double tol_imag = 1e-8;   // imaginary-part threshold
  double rank_tol = 1e-6;   // sigma2 <= rank_tol * sigma1  =>  rank 1
  double eta_tol = 1e-8;    // |eta_i| ratio below which EtaZero fires
};

/// Linear form c1*a11 + c2*a22 in the two potentially nonzero components
/// a_ii = Omega(v_i, h_i) of the 2-form Omega; the coefficients are jets.
struct OmegaLin {
  Jet c1, c2;

  OmegaLin() = default;
  OmegaLin(Jet a, Jet b) : c1(std::move(a)), c2(std::move(b)) {}
};

OmegaLin operator+(const OmegaLin& a, const OmegaLin& b);
OmegaLin operator-(const OmegaLin& a, const OmegaLin& b);
OmegaLin operator*(const Jet& s, const OmegaLin& a);
OmegaLin operator*(double s, const OmegaLin& a);

/// Flat test: all Jacobi curvature values below tolerance.
double flat_residual(const SprayGeometry& G);
/// Isotropy test: residual of the best fit Phi = rho*I + y (x) omega with
/// rho = tr Phi / (n-1).
double isotropic_residual(const SprayGeometry& G);

/// Classifies the point and, for the generic case, builds the eigenframe on
/// G as a side effect. A degenerate spectrum's diagnostic lands in `reason`.
Classification classify(SprayGeometry& G, const Tolerances& tol,
                        std::string* reason = nullptr);

struct SpanFit {
  double A = 0.0;  // coefficient of Phi
  double B = 0.0;  // coefficient of J
  double residual = 0.0;
  bool pass = false;
};

/// Least-squares fit Phi' = A*Phi + B*J over the horizontal complement of
/// the spray direction; residual is relative to |Phi'|.
SpanFit cond_phi_prime_span(const SprayGeometry& G, const Tolerances& tol);

/// Third-order compatibility analysis in the adapted eigenframe (n = 3).
/// Frame ids follow SprayGeometry: 0..2 = h_1,h_2,S and 3..5 = v_1,v_2,C;
/// the generic eigen-slots are 0 and 1.
class ThirdOrderAnalysis {
 public:
  explicit ThirdOrderAnalysis(const SprayGeometry& G, const Tolerances& tol);

  const SprayGeometry& geometry() const { return *G_; }

  // --- printed coefficient formulas (slots i, j in {0, 1}) -----------------
  Jet kappa(int i, int j) const;
  Jet theta(int k, int i, int j) const;
  Jet beta(int i, int j) const;   // lambda_j * nu^i_{[v_j, h_j]}
  Jet gamma(int i, int j) const;  // lambda_j * xi^i_{[v_j, h_j]}

  /// Largest |beta|, |gamma| value over i != j.
  double beta_gamma_residual() const;
  /// Largest out-of-distribution component of [h_i, v_i] over the generic
  /// slots (involutivity of the eigen-distributions D_i).
  double involutivity_residual() const;
  /// Largest |kappa|, |theta| value (condition identically satisfied when
  /// this and beta_gamma_residual both vanish).
  double kappa_theta_residual() const;

  /// Reduced compatibility coefficients: eta1 = kappa^1_{12} + theta^1_{12},
  /// eta2 = kappa^2_{12} + theta^2_{12}.
  const Jet& eta1() const { return eta1_; }
  const Jet& eta2() const { return eta2_; }

  // --- Omega machinery -----------------------------------------------------
  /// Algebraic value of Omega(W1, W2) as a linear form in a11, a22.
  OmegaLin omega(const FrameVec& W1, const FrameVec& W2) const;
  /// Cyclic sum Omega([A,B],C) + Omega([B,C],A) + Omega([C,A],B).
  OmegaLin cyc(const FrameVec& A, const FrameVec& B, const FrameVec& C) const;
  /// Algebraic Lie derivative of a_ii along frame direction `dir` whose slot
  /// differs from i (closed-form consequence of d Omega = 0).
  OmegaLin algebraic_lie(int dir, int i) const;
  /// Lie derivative of a_ii along any frame direction; the same-slot
  /// directions use the reduced relation a11 = -(eta2/eta1) a22. Throws
  /// EtaZero when the relation is degenerate.
  OmegaLin lie_derivative_omega(int dir, int i) const;
  /// Leibniz application of a vector field to a linear form, with reduction.
  OmegaLin apply_field(const FrameVec& E, const OmegaLin& form) const;

  /// 2x7 compatibility matrix: first column (eta1, eta2), then the six
  /// higher obstruction rows; plus its two singular values.
  struct ThetaMatrix {
    std::array<std::array<double, 7>, 2> m;
    double sv1 = 0.0, sv2 = 0.0;
    int rank = 0;
  };
  ThetaMatrix theta_matrix() const;

 private:
  Jet scalar(double v) const;
  const Jet& xi(int k, const FrameVec& A, const FrameVec& B) const;
  std::vector<Jet> coeffs(const FrameVec& W) const;

  const SprayGeometry* G_;
  Tolerances tol_;
  Jet eta1_, eta2_;
};

/// Everything recorded about one sample point; the verdict layer consumes
/// aggregated copies of these.
struct PointConditionReport {
  PointTM point;
  Classification classification = Classification::Degenerate;
  double flat_res = 0.0;
  double isotropic_res = 0.0;
  std::string degenerate_reason;

  // generic-distinct fields
  std::vector<double> lambdas;
  SpanFit cond1;
  double kappa_theta_res = 0.0;
  double beta_gamma_res = 0.0;
  double involutivity_res = 0.0;
  bool reducible = false;
  double eta1 = 0.0, eta2 = 0.0;

  bool theta_computed = false;
  std::string theta_error;
  ThirdOrderAnalysis::ThetaMatrix theta;
};

/// Runs the full per-point pipeline at jet order `order` (n = 3 for the
/// verdict-relevant parts; other n get classification + cond1 only).
PointConditionReport analyze_point(const SprayModel& model, const PointTM& u,
                                   const Tolerances& tol, int order);

struct AggregateVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> reasons;
  Classification classification = Classification::Degenerate;
  bool cond1_pass = false;
  bool third_order_zero = false;
  bool reducible = false;
  bool eta_nonzero = false;
  bool eta_sign_ok = false;
  bool theta_rank1 = false;
};

/// Decision tree over the per-point reports.
AggregateVerdict aggregate_verdict(const std::vector<PointConditionReport>& pts,
                                   const Tolerances& tol, int n);

}  // namespace spraywork
