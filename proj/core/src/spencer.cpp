#include "spraywork/spencer.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace spraywork {

long comb(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long multichoose(long n, long k) { return comb(n + k - 1, k); }

int dim_g(int n, int m, const EigenParams& par) {
  return SymbolTableau::build(n, m, par).dim_kernel();
}

long dim_g3_formula(int n) {
  return multichoose(n, 3) + multichoose(n - 1, 3) + 2 * multichoose(n - 1, 1);
}

long dim_g_reduced_formula(int m) { return static_cast<long>(m) * (m + 9) / 2; }

long dim_g_printed_formula(int m) {
  return multichoose(3, m) + multichoose(2, m) + (m - 1) * multichoose(1, m);
}

long rank_sigma3_formula(int n) {
  long nn = n;
  return (6 * nn * nn * nn + 9 * nn * nn - 9 * nn + 12) / 6;
}

long rank_d1_formula(int m) {
  long mm = m;
  return (5 * mm * mm + 53 * mm + 38) / 2;
}

long H22_formula(int n) { return static_cast<long>(n - 1) * (n - 2) / 2; }
long H22_printed_formula(int n) { return comb(n, 2); }

namespace {

using Row = std::vector<mpq_class>;

/// Coordinate layout of the order-3 symbol's codomain:
/// a symmetric 2-tensor block, then for each of the two 2-form-valued
/// blocks one slot label times one horizontal pair (k < l).
struct Codomain3 {
  int n, L;
  SymBasis s2;
  std::vector<std::pair<int, int>> hpairs;
  std::map<std::pair<int, int>, int> pidx;
  int base_bg, base_bphi, dim;

  explicit Codomain3(int n_) : n(n_), L(2 * n_), s2(2 * n_, 2) {
    for (int k = 0; k < n; ++k)
      for (int l = k + 1; l < n; ++l) {
        pidx[{k, l}] = static_cast<int>(hpairs.size());
        hpairs.emplace_back(k, l);
      }
    base_bg = s2.size();
    base_bphi = base_bg + L * static_cast<int>(hpairs.size());
    dim = base_bphi + L * static_cast<int>(hpairs.size());
  }

  int npairs() const { return static_cast<int>(hpairs.size()); }
  int bc(int p, int q) const { return s2.position({p, q}); }
  int b2(int base, int r, int k, int l, int& sign) const {
    sign = 1;
    if (k > l) {
      std::swap(k, l);
      sign = -1;
    }
    return base + r * npairs() + pidx.at({k, l});
  }
};

/// Emits every row of the obstruction map tau through three coefficient
/// sinks; the sinks decide the column layout, so the same generator serves
/// both tau itself and its prolongation slices.
/// add_bc(row, p, q, c): symmetric 2-tensor component.
/// add_b2(row, r, A, B, c): slot label r (-1 = absent) and the 2-form
/// evaluated on the horizontal parts of the general frame labels A, B.
void tau_rows(int n, const EigenParams& par,
              const std::function<void(Row&, int, int, const mpq_class&)>& bc,
              const std::function<void(Row&, int, int, int, const mpq_class&)>&
                  bg,
              const std::function<void(Row&, int, int, int, const mpq_class&)>&
                  bphi,
              int dim, std::vector<Row>& out) {
  const int L = 2 * n;
  auto hor = [n](int X) { return X < n ? X : -1; };
  auto ver = [n](int X) { return X < n ? n + X : -1; };
  auto emit = [&](Row& r) {
    for (const auto& q : r)
      if (q != 0) {
        out.push_back(r);
        return;
      }
  };

  // alternating triple families: slot carries h, J or the curvature image
  for (int X = 0; X < L; ++X)
    for (int Y = X + 1; Y < L; ++Y)
      for (int Z = Y + 1; Z < L; ++Z) {
        Row r1(dim), r2(dim), r4(dim), r5(dim);
        int T[3] = {X, Y, Z};
        for (int c = 0; c < 3; ++c) {
          int A = T[c], B = T[(c + 1) % 3], Cc = T[(c + 2) % 3];
          bg(r1, hor(A), B, Cc, 1);
          bg(r2, ver(A), B, Cc, 1);
          if (A < n) bphi(r4, n + A, B, Cc, par.lambda[A]);
          bphi(r5, ver(A), B, Cc, 1);
        }
        emit(r1);
        emit(r2);
        emit(r4);
        emit(r5);
      }

  // radial-slot pair families
  for (int X = 0; X < L; ++X)
    for (int Y = X + 1; Y < L; ++Y) {
      Row r3(dim), r6(dim);
      bg(r3, L - 1, X, Y, mpq_class(1, 2));
      if (X < n && Y < n) {
        bc(r3, X, n + Y, -1);
        bc(r3, Y, n + X, 1);
        bphi(r6, L - 1, X, Y, 1);
        bc(r6, n + X, n + Y, -par.lambda[X]);
        bc(r6, n + Y, n + X, par.lambda[Y]);
      } else {
        bphi(r6, L - 1, X, Y, 1);
      }
      emit(r3);
      emit(r6);
    }

  // spray-slot family over all ordered pairs
  for (int X = 0; X < L; ++X)
    for (int Y = 0; Y < L; ++Y) {
      Row r7(dim);
      bphi(r7, X, Y, n - 1, 1);
      if (Y < n) bc(r7, X, n + Y, -par.lambda[Y]);
      emit(r7);
    }

  // eigen-triple family with the eigenvalue-difference weights
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (a == b || b == c || a == c) continue;
        Row r(dim);
        bg(r, n + a, b, c, mpq_class(1, 2));
        bphi(r, b, a, c, 1 / (par.lambda[c] - par.lambda[a]));
        bphi(r, c, a, b, 1 / (par.lambda[a] - par.lambda[b]));
        emit(r);
      }
}

RatMat rows_to_mat(const std::vector<Row>& rows, int dim) {
  RatMat m(static_cast<int>(rows.size()), dim);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < dim; ++j) m.at(i, j) = rows[i][j];
  return m;
}

/// The order-3 symbol map as a matrix from S^3 coordinates to Codomain3.
RatMat sigma3_matrix(int n, const EigenParams& par, const Codomain3& cod) {
  const int L = 2 * n;
  SymBasis s3(L, 3);
  RatMat M(cod.dim, s3.size());
  for (int i = 0; i < cod.s2.size(); ++i) {
    std::vector<int> idx = cod.s2.at(i);
    idx.push_back(L - 1);
    M.at(i, s3.position(idx)) += 1;
  }
  for (int r = 0; r < L; ++r)
    for (int p = 0; p < cod.npairs(); ++p) {
      auto [k, l] = cod.hpairs[p];
      int row = cod.base_bg + r * cod.npairs() + p;
      M.at(row, s3.position({r, k, n + l})) += 2;
      M.at(row, s3.position({r, l, n + k})) -= 2;
      row = cod.base_bphi + r * cod.npairs() + p;
      M.at(row, s3.position({r, n + k, n + l})) +=
          par.lambda[k] - par.lambda[l];
    }
  return M;
}

void direct_sinks(const Codomain3& cod,
                  std::function<void(Row&, int, int, const mpq_class&)>& bc,
                  std::function<void(Row&, int, int, int, const mpq_class&)>&
                      bg,
                  std::function<void(Row&, int, int, int, const mpq_class&)>&
                      bphi) {
  int n = cod.n;
  bc = [&cod](Row& r, int p, int q, const mpq_class& c) {
    r[cod.bc(p, q)] += c;
  };
  bg = [&cod, n](Row& r, int slot, int A, int B, const mpq_class& c) {
    if (slot < 0 || A >= n || B >= n || A == B) return;
    int sign;
    int col = cod.b2(cod.base_bg, slot, A, B, sign);
    r[col] += sign * c;
  };
  bphi = [&cod, n](Row& r, int slot, int A, int B, const mpq_class& c) {
    if (slot < 0 || A >= n || B >= n || A == B) return;
    int sign;
    int col = cod.b2(cod.base_bphi, slot, A, B, sign);
    r[col] += sign * c;
  };
}

}  // namespace

int rank_sigma3(int n, const EigenParams& par) {
  Codomain3 cod(n);
  return sigma3_matrix(n, par, cod).rank();
}

TauResult tau_check(int n, const EigenParams& par) {
  Codomain3 cod(n);
  std::function<void(Row&, int, int, const mpq_class&)> bc;
  std::function<void(Row&, int, int, int, const mpq_class&)> bg, bphi;
  direct_sinks(cod, bc, bg, bphi);
  std::vector<Row> rows;
  tau_rows(n, par, bc, bg, bphi, cod.dim, rows);
  RatMat T = rows_to_mat(rows, cod.dim);
  RatMat S = sigma3_matrix(n, par, cod);
  TauResult res;
  res.domain_dim = cod.dim;
  res.rank = T.rank();
  res.nullity = cod.dim - res.rank;
  res.compose_zero = (T * S).is_zero();
  return res;
}

namespace {

int pair_index(int L, int p, int q) {  // p < q
  return p * (2 * L - p - 1) / 2 + (q - p - 1);
}

/// delta1 on T* (x) span(G), G a basis of a subspace of S^{m+1} given in
/// coordinates; codomain is L^2 (x) S^m.
RatMat delta1_matrix(int n, int m, const RatMat& G) {
  const int L = 2 * n;
  SymBasis sm(L, m), sm1(L, m + 1);
  const int P2 = L * (L - 1) / 2;
  RatMat M(P2 * sm.size(), L * G.cols());
  for (int i = 0; i < L; ++i)
    for (int b = 0; b < G.cols(); ++b) {
      int col = i * G.cols() + b;
      for (int g = 0; g < sm.size(); ++g)
        for (int j = 0; j < L; ++j) {
          if (j == i) continue;
          std::vector<int> idx = sm.at(g);
          idx.push_back(j);
          const mpq_class& val = G.at(sm1.position(idx), b);
          if (val == 0) continue;
          int p = std::min(i, j), q = std::max(i, j);
          int row = pair_index(L, p, q) * sm.size() + g;
          if (i < j)
            M.at(row, col) += val;
          else
            M.at(row, col) -= val;
        }
    }
  return M;
}

/// delta2 on L^2 (x) span(G), G a basis of a subspace of S^m; codomain is
/// L^3 (x) S^{m-1}.
RatMat delta2_matrix(int n, int m, const RatMat& G) {
  const int L = 2 * n;
  SymBasis sm(L, m), smm(L, m - 1);
  const int P2 = L * (L - 1) / 2;
  std::map<std::vector<int>, int> tidx;
  {
    int t = 0;
    for (int a = 0; a < L; ++a)
      for (int b = a + 1; b < L; ++b)
        for (int c = b + 1; c < L; ++c) tidx[{a, b, c}] = t++;
  }
  RatMat M(static_cast<int>(tidx.size()) * smm.size(), P2 * G.cols());
  for (int p = 0; p < L; ++p)
    for (int q = p + 1; q < L; ++q)
      for (int b = 0; b < G.cols(); ++b) {
        int col = pair_index(L, p, q) * G.cols() + b;
        for (int g = 0; g < smm.size(); ++g)
          for (int r = 0; r < L; ++r) {
            if (r == p || r == q) continue;
            std::vector<int> idx = smm.at(g);
            idx.push_back(r);
            const mpq_class& val = G.at(sm.position(idx), b);
            if (val == 0) continue;
            std::vector<int> tri = {p, q, r};
            std::sort(tri.begin(), tri.end());
            int row = tidx.at(tri) * smm.size() + g;
            if (p < r && r < q)
              M.at(row, col) -= val;
            else
              M.at(row, col) += val;
          }
      }
  return M;
}

RatMat identity(int d) {
  RatMat m(d, d);
  for (int i = 0; i < d; ++i) m.at(i, i) = 1;
  return m;
}

}  // namespace

SpencerResult spencer_H(int n, int m, const EigenParams& par) {
  RatMat Gm1 = SymbolTableau::build(n, m + 1, par).kernel_basis();
  RatMat Gm = SymbolTableau::build(n, m, par).kernel_basis();
  RatMat d1 = delta1_matrix(n, m, Gm1);
  RatMat d2 = delta2_matrix(n, m, Gm);
  SpencerResult r;
  r.rank_d1 = d1.rank();
  r.dim_ker_d2 = d2.cols() - d2.rank();
  r.H = r.dim_ker_d2 - r.rank_d1;
  return r;
}

bool delta_complex_zero(int n, int m) {
  const int L = 2 * n;
  RatMat d1 = delta1_matrix(n, m, identity(SymBasis(L, m + 1).size()));
  RatMat d2 = delta2_matrix(n, m, identity(SymBasis(L, m).size()));
  return (d2 * d1).is_zero();
}

std::vector<int> adapted_order(int n) {
  std::vector<int> o(2 * n);
  for (int i = 0; i < 2 * n; ++i) o[i] = i;
  return o;
}

std::vector<int> reversed_order(int n) {
  std::vector<int> o = adapted_order(n);
  std::reverse(o.begin(), o.end());
  return o;
}

CartanResult cartan_test(int n, int k, const EigenParams& par, bool completed,
                         const mpq_class& f1, const mpq_class& f2,
                         const std::vector<int>& order) {
  SymbolTableau tk = SymbolTableau::build(n, k, par, completed, f1, f2);
  SymbolTableau tk1 = SymbolTableau::build(n, k + 1, par, completed, f1, f2);
  CartanResult r;
  r.dim_g_k = tk.dim_kernel();
  r.dim_g_k1 = tk1.dim_kernel();
  r.restricted.assign(2 * n, 0);
  r.restricted[0] = r.dim_g_k;
  r.sum = r.dim_g_k;
  for (int j = 1; j < 2 * n; ++j) {
    r.restricted[j] = tk.dim_restricted_kernel(j, order);
    r.sum += r.restricted[j];
  }
  r.pass = (r.dim_g_k1 == r.sum);
  return r;
}

Tau1Result tau1_check(int n, const EigenParams& par) {
  const int L = 2 * n;
  Codomain3 cod3(n);

  // prolonged codomain: symmetric 3-tensor block plus two blocks indexed by
  // a symmetric slot pair times a horizontal pair
  SymBasis s3(L, 3), s2(L, 2), s4(L, 4);
  const int P = cod3.npairs();
  const int base_bg = s3.size();
  const int base_bphi = base_bg + s2.size() * P;
  const int dim = base_bphi + s2.size() * P;

  auto bg4 = [&](Row& r, int a, int b, int k, int l, const mpq_class& c) {
    int sign = 1;
    if (k > l) {
      std::swap(k, l);
      sign = -1;
    }
    r[base_bg + s2.position({a, b}) * P + cod3.pidx.at({k, l})] += sign * c;
  };
  auto bphi4 = [&](Row& r, int a, int b, int k, int l, const mpq_class& c) {
    int sign = 1;
    if (k > l) {
      std::swap(k, l);
      sign = -1;
    }
    r[base_bphi + s2.position({a, b}) * P + cod3.pidx.at({k, l})] += sign * c;
  };

  // prolonged symbol matrix
  RatMat S4(dim, s4.size());
  for (int i = 0; i < s3.size(); ++i) {
    std::vector<int> idx = s3.at(i);
    idx.push_back(L - 1);
    S4.at(i, s4.position(idx)) += 1;
  }
  for (int i = 0; i < s2.size(); ++i)
    for (int p = 0; p < P; ++p) {
      auto [k, l] = cod3.hpairs[p];
      std::vector<int> a = s2.at(i);
      a.push_back(k);
      a.push_back(n + l);
      std::vector<int> b = s2.at(i);
      b.push_back(l);
      b.push_back(n + k);
      int row = base_bg + i * P + p;
      S4.at(row, s4.position(a)) += 2;
      S4.at(row, s4.position(b)) -= 2;
      std::vector<int> c = s2.at(i);
      c.push_back(n + k);
      c.push_back(n + l);
      row = base_bphi + i * P + p;
      S4.at(row, s4.position(c)) += par.lambda[k] - par.lambda[l];
    }

  // slices of the prolonged obstruction map
  std::vector<Row> rows;
  for (int slice = 0; slice < L; ++slice) {
    std::function<void(Row&, int, int, const mpq_class&)> bc =
        [&, slice](Row& r, int p, int q, const mpq_class& c) {
          r[s3.position({slice, p, q})] += c;
        };
    std::function<void(Row&, int, int, int, const mpq_class&)> bg =
        [&, slice](Row& r, int slot, int A, int B, const mpq_class& c) {
          if (slot < 0 || A >= n || B >= n || A == B) return;
          bg4(r, slice, slot, A, B, c);
        };
    std::function<void(Row&, int, int, int, const mpq_class&)> bphi =
        [&, slice](Row& r, int slot, int A, int B, const mpq_class& c) {
          if (slot < 0 || A >= n || B >= n || A == B) return;
          bphi4(r, slice, slot, A, B, c);
        };
    tau_rows(n, par, bc, bg, bphi, dim, rows);
  }
  std::size_t id_tau_count = rows.size();

  // horizontal completion rows
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Row r(dim);
      bg4(r, n + i, n + j, i, j,
          (par.lambda[i] - par.lambda[j]) / 2);
      bphi4(r, j, n + i, i, j, 1);
      bphi4(r, i, n + j, i, j, -1);
      bool nz = false;
      for (const auto& q : r)
        if (q != 0) nz = true;
      if (nz) rows.push_back(r);
    }

  RatMat Tid = rows_to_mat(
      std::vector<Row>(rows.begin(), rows.begin() + id_tau_count), dim);
  RatMat T1 = rows_to_mat(rows, dim);

  Tau1Result res;
  res.rank_sigma4 = S4.rank();
  res.nul_id_tau = dim - Tid.rank();
  res.nul_tau1 = dim - T1.rank();
  res.extra_equations = res.nul_id_tau - res.nul_tau1;
  res.compose_zero = (T1 * S4).is_zero();
  res.exact = (res.nul_tau1 == res.rank_sigma4);
  return res;
}

namespace {

void claim(std::vector<ClaimRow>& out, const std::string& id, long expected,
           long computed, const std::string& note = "",
           bool informational = false) {
  ClaimRow r;
  r.id = id;
  r.expected = expected;
  r.computed = computed;
  r.match = (expected < 0) ? true : (expected == computed);
  r.informational = informational || expected < 0;
  r.note = note;
  out.push_back(r);
}

}  // namespace

std::vector<ClaimRow> verify_claims(std::uint64_t seed, bool extended) {
  std::vector<ClaimRow> out;
  EigenParams p2 = EigenParams::random(2, seed);
  EigenParams p3 = EigenParams::random(3, seed);
  EigenParams p4 = EigenParams::random(4, seed);

  // symbol kernel dimensions
  claim(out, "dim-g/n3/m3", dim_g3_formula(3), dim_g(3, 3, p3));
  claim(out, "dim-g/n2/m3", dim_g3_formula(2), dim_g(2, 3, p2));
  claim(out, "dim-g/n4/m3", dim_g3_formula(4), dim_g(4, 3, p4));
  int mmax = extended ? 6 : 5;
  for (int m = 2; m <= mmax; ++m) {
    int d = dim_g(3, m, p3);
    claim(out, "dim-g/n3/m" + std::to_string(m), dim_g_reduced_formula(m), d);
    claim(out, "dim-g-printed/n3/m" + std::to_string(m),
          dim_g_printed_formula(m), d,
          "printed single-family mixed-block count; brute force is "
          "authoritative",
          true);
  }

  // order-3 symbol rank and the obstruction map
  claim(out, "rank-sigma3/n2", rank_sigma3_formula(2), rank_sigma3(2, p2));
  claim(out, "rank-sigma3/n3", rank_sigma3_formula(3), rank_sigma3(3, p3));
  if (extended)
    claim(out, "rank-sigma3/n4", rank_sigma3_formula(4), rank_sigma3(4, p4));
  claim(out, "rank-nullity-sigma3/n3",
        multichoose(6, 3) - dim_g(3, 3, p3), rank_sigma3(3, p3),
        "map rank against tableau nullity");
  {
    TauResult t = tau_check(3, p3);
    claim(out, "tau-nullity/n3", rank_sigma3_formula(3), t.nullity);
    claim(out, "tau-compose-zero/n3", 1, t.compose_zero ? 1 : 0);
    if (extended) {
      TauResult t4 = tau_check(4, p4);
      claim(out, "tau-nullity/n4", rank_sigma3_formula(4), t4.nullity);
    }
  }

  // Spencer cohomology
  {
    SpencerResult s2r = spencer_H(3, 2, p3);
    claim(out, "rank-delta1/n3/m2", rank_d1_formula(2), s2r.rank_d1);
    claim(out, "ker-delta2/n3/m2", rank_d1_formula(2) + H22_formula(3),
          s2r.dim_ker_d2);
    claim(out, "H22/n3", H22_formula(3), s2r.H);
    claim(out, "H22-printed/n3", H22_printed_formula(3), s2r.H,
          "printed binomial value; brute force is authoritative", true);
    for (int m = 3; m <= (extended ? 5 : 4); ++m) {
      SpencerResult s = spencer_H(3, m, p3);
      claim(out, "rank-delta1/n3/m" + std::to_string(m), rank_d1_formula(m),
            s.rank_d1);
      claim(out, "H/n3/m" + std::to_string(m), 0, s.H);
    }
    claim(out, "delta-complex-zero/n3/m3", 1, delta_complex_zero(3, 3) ? 1 : 0);
  }

  // involutivity tests at the first prolongation (order-3 tableau)
  {
    mpq_class f1(3, 2), f2(-2, 5);
    CartanResult base = cartan_test(3, 3, p3, false, 0, 0, adapted_order(3));
    claim(out, "cartan-base-fails/n3", 0, base.pass ? 1 : 0,
          "base tableau is not involutive, consistent with nonzero "
          "second cohomology at order 2");
    CartanResult comp = cartan_test(3, 3, p3, true, f1, f2, adapted_order(3));
    claim(out, "cartan-completed-passes/n3", 1, comp.pass ? 1 : 0,
          "adapted frame order is quasi-regular for the completed system");
    CartanResult rev = cartan_test(3, 3, p3, true, f1, f2, reversed_order(3));
    claim(out, "cartan-completed-reversed/n3", -1, rev.pass ? 1 : 0,
          "quasi-regularity is ordering-dependent; recorded");
  }

  // prolonged exactness
  {
    Tau1Result t = tau1_check(3, p3);
    claim(out, "tau1-exact/n3", 1, t.exact ? 1 : 0);
    claim(out, "tau1-compose-zero/n3", 1, t.compose_zero ? 1 : 0);
    claim(out, "rank-sigma4/n3", multichoose(6, 4) - dim_g(3, 4, p3),
          t.rank_sigma4, "map rank against tableau nullity");
    claim(out, "tau1-extra-equations/n3", -1, t.extra_equations,
          "printed claim is C(n,2) = 3; brute force decides");
  }
  return out;
}

}  // namespace spraywork
