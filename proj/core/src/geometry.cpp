#include "spraywork/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace spraywork {

FrameVec bracket(const FrameVec& A, const FrameVec& B) {
  FrameVec r;
  const int m = A.dim();
  r.comp.reserve(m);
  for (int c = 0; c < m; ++c) {
    Jet acc;
    for (int d = 0; d < m; ++d) {
      Jet term = A.comp[d] * B.comp[c].derivative_var(d) -
                 B.comp[d] * A.comp[c].derivative_var(d);
      acc = acc.valid() ? acc + term : term;
    }
    r.comp.push_back(acc);
  }
  return r;
}

Jet lie(const FrameVec& E, const Jet& g) {
  Jet acc;
  for (int d = 0; d < E.dim(); ++d) {
    Jet term = E.comp[d] * g.derivative_var(d);
    acc = acc.valid() ? acc + term : term;
  }
  return acc;
}

FrameVec operator+(const FrameVec& A, const FrameVec& B) {
  FrameVec r;
  for (int c = 0; c < A.dim(); ++c) r.comp.push_back(A.comp[c] + B.comp[c]);
  return r;
}

FrameVec operator-(const FrameVec& A, const FrameVec& B) {
  FrameVec r;
  for (int c = 0; c < A.dim(); ++c) r.comp.push_back(A.comp[c] - B.comp[c]);
  return r;
}

FrameVec operator*(const Jet& s, const FrameVec& A) {
  FrameVec r;
  for (int c = 0; c < A.dim(); ++c) r.comp.push_back(s * A.comp[c]);
  return r;
}

std::vector<Jet> solve_jet_system(std::vector<std::vector<Jet>> A,
                                  std::vector<Jet> b) {
  const int m = static_cast<int>(A.size());
  std::vector<int> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = i;
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(A[perm[r]][col].value()) >
          std::abs(A[perm[piv]][col].value()))
        piv = r;
    std::swap(perm[col], perm[piv]);
    const Jet& pivot = A[perm[col]][col];
    if (pivot.value() == 0.0)
      throw Error("singular jet system: zero pivot in column " +
                  std::to_string(col));
    for (int r = col + 1; r < m; ++r) {
      Jet factor = A[perm[r]][col] / pivot;
      if (factor.max_abs() == 0.0) continue;
      for (int c = col + 1; c < m; ++c)
        A[perm[r]][c] -= factor * A[perm[col]][c];
      b[perm[r]] -= factor * b[perm[col]];
    }
  }
  std::vector<Jet> x(m);
  for (int col = m - 1; col >= 0; --col) {
    Jet rhs = b[perm[col]];
    for (int c = col + 1; c < m; ++c) rhs -= A[perm[col]][c] * x[c];
    x[col] = rhs / A[perm[col]][col];
  }
  return x;
}

SprayGeometry::SprayGeometry(const SprayModel& model, const PointTM& point,
                             int order)
    : n_(model.n), order_(order), point_(point) {
  const int nv = 2 * n_;
  f_.reserve(n_);
  for (int i = 0; i < n_; ++i) f_.push_back(eval_jet(model.coeffs[i], point, order));

  N_.assign(n_, std::vector<Jet>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      N_[i][j] = f_[i].derivative_var(n_ + j) * -0.5;

  // spray derivative S(g) = y^j dx_j(g) + f^j dy_j(g)
  auto spray_d = [&](const Jet& g) {
    Jet acc;
    for (int j = 0; j < n_; ++j) {
      Jet yj = Jet::seed(n_ + j, point.y[j], nv, g.order());
      Jet term = yj * g.derivative_var(j) + f_[j] * g.derivative_var(n_ + j);
      acc = acc.valid() ? acc + term : term;
    }
    return acc;
  };

  Phi_.assign(n_, std::vector<Jet>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      Jet acc = -f_[i].derivative_var(j) - spray_d(N_[i][j]);
      for (int l = 0; l < n_; ++l) acc -= N_[i][l] * N_[l][j];
      Phi_[i][j] = acc;
    }

  bracket_cache_.assign(nv, std::vector<std::vector<Jet>>(nv));
  bracket_cached_.assign(nv, std::vector<bool>(nv, false));
}

Jet SprayGeometry::R(int i, int j, int k) const {
  auto delta_d = [&](int a, const Jet& g) {
    Jet acc = g.derivative_var(a);
    for (int l = 0; l < n_; ++l)
      acc -= N_[l][a] * g.derivative_var(n_ + l);
    return acc;
  };
  return delta_d(k, N_[i][j]) - delta_d(j, N_[i][k]);
}

Eigen::MatrixXd SprayGeometry::Phi0() const {
  Eigen::MatrixXd M(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) M(i, j) = Phi_[i][j].value();
  return M;
}

FrameVec SprayGeometry::coord_dx(int j) const {
  FrameVec r;
  const int nv = 2 * n_;
  for (int c = 0; c < nv; ++c)
    r.comp.push_back(Jet::constant(nv, order_ - 1, c == j ? 1.0 : 0.0));
  return r;
}

FrameVec SprayGeometry::coord_dy(int j) const {
  FrameVec r;
  const int nv = 2 * n_;
  for (int c = 0; c < nv; ++c)
    r.comp.push_back(Jet::constant(nv, order_ - 1, c == n_ + j ? 1.0 : 0.0));
  return r;
}

FrameVec SprayGeometry::delta(int j) const {
  FrameVec r;
  const int nv = 2 * n_;
  for (int c = 0; c < n_; ++c)
    r.comp.push_back(Jet::constant(nv, order_ - 1, c == j ? 1.0 : 0.0));
  for (int i = 0; i < n_; ++i) r.comp.push_back(-N_[i][j]);
  return r;
}

FrameVec SprayGeometry::spray_field() const {
  FrameVec r;
  const int nv = 2 * n_;
  for (int j = 0; j < n_; ++j)
    r.comp.push_back(Jet::seed(n_ + j, point_.y[j], nv, order_));
  for (int i = 0; i < n_; ++i) r.comp.push_back(f_[i]);
  return r;
}

FrameVec SprayGeometry::liouville_field() const {
  FrameVec r;
  const int nv = 2 * n_;
  for (int j = 0; j < n_; ++j) r.comp.push_back(Jet(nv, order_));
  for (int j = 0; j < n_; ++j)
    r.comp.push_back(Jet::seed(n_ + j, point_.y[j], nv, order_));
  return r;
}

FrameVec SprayGeometry::apply_J(const FrameVec& W) const {
  FrameVec r;
  const int nv = 2 * n_;
  for (int c = 0; c < n_; ++c) r.comp.push_back(Jet(nv, W.comp[c].order()));
  for (int i = 0; i < n_; ++i) r.comp.push_back(W.comp[i]);
  return r;
}

FrameVec SprayGeometry::apply_Phi(const FrameVec& W) const {
  FrameVec r;
  const int nv = 2 * n_;
  for (int c = 0; c < n_; ++c) r.comp.push_back(Jet(nv, order_ - 2));
  for (int i = 0; i < n_; ++i) {
    Jet acc;
    for (int j = 0; j < n_; ++j) {
      Jet term = Phi_[i][j] * W.comp[j];
      acc = acc.valid() ? acc + term : term;
    }
    r.comp.push_back(acc);
  }
  return r;
}

FrameVec SprayGeometry::h_project(const FrameVec& W) const {
  FrameVec r;
  for (int j = 0; j < n_; ++j) r.comp.push_back(W.comp[j]);
  for (int i = 0; i < n_; ++i) {
    Jet acc;
    for (int j = 0; j < n_; ++j) {
      Jet term = -N_[i][j] * W.comp[j];
      acc = acc.valid() ? acc + term : term;
    }
    r.comp.push_back(acc);
  }
  return r;
}

FrameVec SprayGeometry::v_project(const FrameVec& W) const {
  FrameVec r;
  const int nv = 2 * n_;
  for (int j = 0; j < n_; ++j) r.comp.push_back(Jet(nv, W.comp[j].order()));
  for (int i = 0; i < n_; ++i) {
    Jet acc = W.comp[n_ + i];
    for (int j = 0; j < n_; ++j) acc += N_[i][j] * W.comp[j];
    r.comp.push_back(acc);
  }
  return r;
}

void SprayGeometry::build_eigenframe(double tol_imag, double tol_sep) {
  const Eigen::MatrixXd M0 = Phi0();
  const double scale = std::max(1.0, M0.cwiseAbs().maxCoeff());
  Eigen::EigenSolver<Eigen::MatrixXd> solver(M0);

  for (int i = 0; i < n_; ++i)
    if (std::abs(solver.eigenvalues()[i].imag()) > tol_imag * scale)
      throw ComplexEigenvalues(
          "Jacobi endomorphism has a complex eigenvalue pair (imag = " +
          std::to_string(solver.eigenvalues()[i].imag()) + ")");

  // Phi y = 0 identically, so 0 is always in the spectrum; the slot closest
  // to 0 is the kernel direction and is handled exactly.
  std::vector<int> idx(n_);
  for (int i = 0; i < n_; ++i) idx[i] = i;
  int kernel = 0;
  for (int i = 1; i < n_; ++i)
    if (std::abs(solver.eigenvalues()[i].real()) <
        std::abs(solver.eigenvalues()[kernel].real()))
      kernel = i;
  idx.erase(std::find(idx.begin(), idx.end(), kernel));
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return solver.eigenvalues()[a].real() < solver.eigenvalues()[b].real();
  });

  // simple-spectrum requirement, 0 included
  std::vector<double> evs;
  for (int i : idx) evs.push_back(solver.eigenvalues()[i].real());
  evs.push_back(0.0);
  for (std::size_t a = 0; a < evs.size(); ++a)
    for (std::size_t b = a + 1; b < evs.size(); ++b)
      if (std::abs(evs[a] - evs[b]) < tol_sep * scale)
        throw EigenvalueCollision(
            "Jacobi eigenvalues separated by less than tolerance: " +
            std::to_string(evs[a]) + " vs " + std::to_string(evs[b]));

  lambda_.assign(n_, Jet());
  p_.assign(n_, {});
  for (int a = 0; a < n_ - 1; ++a) {
    Eigen::VectorXd p0 = solver.eigenvectors().col(idx[a]).real();
    p0.normalize();
    int big = 0;
    for (int i = 1; i < n_; ++i)
      if (std::abs(p0[i]) > std::abs(p0[big])) big = i;
    if (p0[big] < 0) p0 = -p0;
    solve_eigvec_jets(a, solver.eigenvalues()[idx[a]].real(), p0);
  }

  // kernel slot: eigenvector y, eigenvalue 0, frames S and C
  const int nv = 2 * n_;
  lambda_[n_ - 1] = Jet(nv, order_ - 2);
  p_[n_ - 1].clear();
  for (int i = 0; i < n_; ++i)
    p_[n_ - 1].push_back(Jet::seed(n_ + i, point_.y[i], nv, order_ - 2));

  h_frame_.clear();
  v_frame_.clear();
  for (int a = 0; a < n_; ++a) {
    FrameVec h, v;
    for (int c = 0; c < nv; ++c) {
      Jet hacc, vacc;
      for (int i = 0; i < n_; ++i) {
        Jet hterm = p_[a][i] * delta(i).comp[c];
        Jet vterm = p_[a][i] * coord_dy(i).comp[c];
        hacc = hacc.valid() ? hacc + hterm : hterm;
        vacc = vacc.valid() ? vacc + vterm : vterm;
      }
      h.comp.push_back(hacc);
      v.comp.push_back(vacc);
    }
    h_frame_.push_back(std::move(h));
    v_frame_.push_back(std::move(v));
  }
}

void SprayGeometry::solve_eigvec_jets(int a, double lambda0,
                                      const Eigen::VectorXd& p0) {
  const int nv = 2 * n_;
  const int ord = order_ - 2;
  const JetSpace& sp = JetSpace::get(nv, ord);

  Eigen::MatrixXd M(n_ + 1, n_ + 1);
  M.setZero();
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) M(i, j) = Phi_[i][j].value();
    M(i, i) -= lambda0;
    M(i, n_) = -p0[i];
    M(n_, i) = p0[i];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);

  Jet lam(nv, ord, lambda0);
  std::vector<Jet> p(n_, Jet(nv, ord));
  for (int i = 0; i < n_; ++i) p[i].set_coeff(0, p0[i]);

  std::vector<int> diff(nv);
  for (int pos = 1; pos < sp.size(); ++pos) {
    const auto& ea = sp.exponent(pos);
    Eigen::VectorXd rhs(n_ + 1);
    rhs.setZero();
    // (Phi0 - lambda0) p_alpha - lambda_alpha p0 =
    //   - sum_{0 < beta <= alpha} (Phi_beta - lambda_beta) p_{alpha-beta}
    // with the beta = alpha term contributing only the known Phi_alpha p0.
    for (int q = 1; q < sp.degree_end(sp.degree(pos)); ++q) {
      const auto& eb = sp.exponent(q);
      bool ok = true;
      for (int v = 0; v < nv; ++v) {
        diff[v] = ea[v] - eb[v];
        if (diff[v] < 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      int rem = sp.position(diff);
      double lam_b = (q == pos) ? 0.0 : lam.coeff(q);
      for (int i = 0; i < n_; ++i) {
        double acc = -lam_b * p[i].coeff(rem);
        for (int j = 0; j < n_; ++j)
          acc += Phi_[i][j].coeff(q) * p[j].coeff(rem);
        rhs[i] -= acc;
      }
    }
    Eigen::VectorXd sol = lu.solve(rhs);
    for (int i = 0; i < n_; ++i) p[i].set_coeff(pos, sol[i]);
    lam.set_coeff(pos, sol[n_]);
  }

  lambda_[a] = std::move(lam);
  p_[a] = std::move(p);
}

const FrameVec& SprayGeometry::frame(int id) const {
  return id < n_ ? h_frame_[id] : v_frame_[id - n_];
}

std::vector<Jet> SprayGeometry::expand(const FrameVec& W) const {
  const int nv = 2 * n_;
  std::vector<std::vector<Jet>> E(nv, std::vector<Jet>(nv));
  for (int col = 0; col < nv; ++col)
    for (int row = 0; row < nv; ++row) E[row][col] = frame(col).comp[row];
  return solve_jet_system(std::move(E), W.comp);
}

const std::vector<Jet>& SprayGeometry::bracket_coeffs(int a, int b) const {
  if (!bracket_cached_[a][b]) {
    bracket_cache_[a][b] = expand(bracket(frame(a), frame(b)));
    bracket_cached_[a][b] = true;
  }
  return bracket_cache_[a][b];
}

std::vector<std::vector<Jet>> SprayGeometry::phi_prime_frame() const {
  const FrameVec S = spray_field();
  std::vector<std::vector<Jet>> m(n_, std::vector<Jet>(n_));
  for (int a = 0; a < n_; ++a) {
    const FrameVec& X = h_frame_[a];
    FrameVec W = bracket(S, apply_Phi(X)) - apply_Phi(bracket(S, X));
    std::vector<Jet> c = expand(v_project(W));
    for (int b = 0; b < n_; ++b) m[b][a] = c[n_ + b];
  }
  return m;
}

double SprayGeometry::residual_phi_y() const {
  double r = 0.0;
  for (int i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n_; ++j) acc += Phi_[i][j].value() * point_.y[j];
    r = std::max(r, std::abs(acc));
  }
  return r;
}

double SprayGeometry::residual_curvature_trace() const {
  double r = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      double acc = -Phi_[i][k].value();
      for (int j = 0; j < n_; ++j) acc += point_.y[j] * R(i, j, k).value();
      r = std::max(r, std::abs(acc));
    }
  return r;
}

}  // namespace spraywork
