#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spraywork/expr.hpp"

namespace spraywork {

/// Vector field germ near the sample point: 2n jet components in the
/// coordinate frame (dx_1..dx_n, dy_1..dy_n).
struct FrameVec {
  std::vector<Jet> comp;

  int dim() const { return static_cast<int>(comp.size()); }
};

/// Lie bracket [A, B] of coordinate-component vector fields.
FrameVec bracket(const FrameVec& A, const FrameVec& B);

/// Directional derivative E(g) of a scalar jet along a vector field.
Jet lie(const FrameVec& E, const Jet& g);

FrameVec operator+(const FrameVec& A, const FrameVec& B);
FrameVec operator-(const FrameVec& A, const FrameVec& B);
FrameVec operator*(const Jet& s, const FrameVec& A);

/// Solve the jet-coefficient linear system A c = b by Gaussian elimination
/// with partial pivoting on constant terms.
std::vector<Jet> solve_jet_system(std::vector<std::vector<Jet>> A,
                                  std::vector<Jet> b);

/// All local differential-geometric data of a spray at one sample point,
/// carried as truncated Taylor expansions.
///
/// Conventions: spray S = y^i dx_i + f^i dy_i with f^i 2-homogeneous in y;
/// connection N^i_j = -(1/2) df^i/dy^j; horizontal lift
/// delta_j = dx_j - N^i_j dy_i; curvature R^i_{jk} = delta_k(N^i_j)
/// - delta_j(N^i_k) so that [delta_j, delta_k] = R^i_{jk} dy_i; Jacobi
/// endomorphism Phi^i_j = y^k R^i_{kj}, equivalently
/// Phi^i_j = -df^i/dx^j - N^i_l N^l_j - S(N^i_j).
class SprayGeometry {
 public:
  /// Builds connection, curvature and Jacobi data to jet order
  /// `order` - 1 resp. `order` - 2. Does not build the eigenframe.
  SprayGeometry(const SprayModel& model, const PointTM& point, int order);

  int n() const { return n_; }
  int order() const { return order_; }
  const PointTM& point() const { return point_; }

  const Jet& f(int i) const { return f_[i]; }
  const Jet& N(int i, int j) const { return N_[i][j]; }
  const Jet& Phi(int i, int j) const { return Phi_[i][j]; }
  Jet R(int i, int j, int k) const;  // curvature coefficient R^i_{jk}

  /// Jacobi endomorphism values at the sample point.
  Eigen::MatrixXd Phi0() const;

  // --- coordinate / canonical fields -------------------------------------
  FrameVec coord_dx(int j) const;
  FrameVec coord_dy(int j) const;
  FrameVec delta(int j) const;   // horizontal lift of dx_j
  FrameVec spray_field() const;  // S
  FrameVec liouville_field() const;  // C = y^i dy_i

  // --- canonical endomorphisms and projectors ----------------------------
  FrameVec apply_J(const FrameVec& W) const;
  FrameVec apply_Phi(const FrameVec& W) const;
  FrameVec h_project(const FrameVec& W) const;
  FrameVec v_project(const FrameVec& W) const;

  // --- eigenframe ---------------------------------------------------------
  /// Diagonalizes the Jacobi endomorphism as jets. Slots 0..n-2 carry the
  /// generic eigenvalues (sorted ascending at order 0); slot n-1 is the
  /// exact kernel direction y with lambda = 0, h = S, v = C. Throws
  /// ComplexEigenvalues / EigenvalueCollision when the spectrum is not
  /// simple and real within the tolerances.
  void build_eigenframe(double tol_imag, double tol_sep);
  bool has_eigenframe() const { return !h_frame_.empty(); }

  const Jet& lambda(int a) const { return lambda_[a]; }
  double lambda0(int a) const { return lambda_[a].value(); }
  const std::vector<Jet>& eigvec(int a) const { return p_[a]; }
  const FrameVec& h_frame(int a) const { return h_frame_[a]; }
  const FrameVec& v_frame(int a) const { return v_frame_[a]; }
  /// Frame field by flat id: 0..n-1 -> h_1..h_n, n..2n-1 -> v_1..v_n.
  const FrameVec& frame(int id) const;

  /// Coefficients of W in the eigenframe (first n horizontal, last n
  /// vertical).
  std::vector<Jet> expand(const FrameVec& W) const;

  /// Cached coefficients of [frame(a), frame(b)] in the eigenframe.
  const std::vector<Jet>& bracket_coeffs(int a, int b) const;
  /// Horizontal component k of [frame(a), frame(b)].
  const Jet& xi(int k, int a, int b) const { return bracket_coeffs(a, b)[k]; }
  /// Vertical component k of [frame(a), frame(b)].
  const Jet& nu(int k, int a, int b) const {
    return bracket_coeffs(a, b)[n_ + k];
  }

  /// Frame matrix of the dynamical covariant derivative
  /// Phi' = v o [S, Phi] o h: Phi'(h_a) = sum_b m[b][a] v_b.
  std::vector<std::vector<Jet>> phi_prime_frame() const;

  // --- structural residuals (cheap self-checks) ---------------------------
  double residual_phi_y() const;        // |Phi y|
  double residual_curvature_trace() const;  // |y^j R^i_{jk} - Phi^i_k|

 private:
  void solve_eigvec_jets(int a, double lambda0, const Eigen::VectorXd& p0);

  int n_;
  int order_;
  PointTM point_;
  std::vector<Jet> f_;
  std::vector<std::vector<Jet>> N_;
  std::vector<std::vector<Jet>> Phi_;

  std::vector<Jet> lambda_;
  std::vector<std::vector<Jet>> p_;
  std::vector<FrameVec> h_frame_, v_frame_;
  mutable std::vector<std::vector<std::vector<Jet>>> bracket_cache_;
  mutable std::vector<std::vector<bool>> bracket_cached_;
};

}  // namespace spraywork
