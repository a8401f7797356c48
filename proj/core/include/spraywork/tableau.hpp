#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "spraywork/ratmat.hpp"

namespace spraywork {

/// Basis of the symmetric power S^m over `labels` abstract frame covectors.
/// Frame label convention used throughout: 0..n-1 are the horizontal frame
/// fields h_1..h_n (h_n = spray direction), n..2n-1 are the vertical ones
/// v_1..v_n (v_n = vertical radial field). Elements are sorted multisets.
class SymBasis {
 public:
  SymBasis(int labels, int m);

  int labels() const { return labels_; }
  int order() const { return m_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const std::vector<int>& at(int pos) const { return elems_[pos]; }
  /// Position of a multiset (any argument order).
  int position(std::vector<int> idx) const;

 private:
  int labels_, m_;
  std::vector<std::vector<int>> elems_;
  std::map<std::vector<int>, int> pos_;
};

/// Distinct rational curvature eigenvalues lambda_1..lambda_n with
/// lambda_n = 0 (the spray-direction eigenvalue), drawn from a seeded
/// generator so genericity can be checked by re-running with another seed.
struct EigenParams {
  int n = 0;
  std::vector<mpq_class> lambda;  // size n, lambda[n-1] == 0
  std::uint64_t seed = 0;

  static EigenParams random(int n, std::uint64_t seed);
};

/// Linear constraints cutting the order-m symbol kernel g_m out of S^m of
/// the 2n frame covectors. The three defining families, applied in every
/// argument slot combination (beta denotes the remaining m-1 or m-2 slots):
///   radial:    A(beta, v_n) = 0
///   torsion:   A(beta, h_k, v_l) - A(beta, h_l, v_k) = 0,   k != l
///   curvature: (lambda_k - lambda_l) A(beta, v_k, v_l) = 0, k != l
/// The completed variant appends scalar rows
///   f1 A(beta, v_1, v_1) + f2 A(beta, v_2, v_2) = 0
/// with nonzero rational weights (n = 3 only).
struct SymbolTableau {
  int n = 0, m = 0;
  bool completed = false;
  EigenParams par;
  mpq_class f1, f2;
  RatMat constraints;  // rows x dim S^m

  static SymbolTableau build(int n, int m, const EigenParams& par,
                             bool completed = false, const mpq_class& f1 = 0,
                             const mpq_class& f2 = 0);

  int dim_kernel() const { return constraints.nullity(); }
  RatMat kernel_basis() const { return constraints.nullspace(); }

  /// Kernel dimension with every coordinate touching the first `j` frame
  /// labels of `order` (a permutation of 0..2n-1) forced to zero; the
  /// reduced-kernel dimensions entering the involutivity test.
  int dim_restricted_kernel(int j, const std::vector<int>& order) const;
};

}  // namespace spraywork
