#pragma once

#include <gmpxx.h>

#include <vector>

#include "spraywork/errors.hpp"

namespace spraywork {

/// Dense matrix over exact rationals. Every dimension claim this library
/// verifies is an integer, so no floating point appears anywhere here.
class RatMat {
 public:
  RatMat() : rows_(0), cols_(0) {}
  RatMat(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  mpq_class& at(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  const mpq_class& at(int r, int c) const {
    return data_[std::size_t(r) * cols_ + c];
  }

  bool is_zero() const;

  /// Rank by rational Gaussian elimination.
  int rank() const;
  /// Basis of the right nullspace, as columns stacked into a matrix
  /// (cols = nullity). Computed from the reduced row echelon form.
  RatMat nullspace() const;
  /// Nullity computed through the nullspace basis; rank() uses a separate
  /// elimination pass, so `rank() + nullity() == cols()` is a genuine
  /// dual-algorithm consistency check, exposed as `check_rank_nullity`.
  int nullity() const { return nullspace().cols(); }
  void check_rank_nullity() const;

  friend RatMat operator*(const RatMat& a, const RatMat& b);

  /// Largest accepted dimension per side; `ResourceLimit` beyond it.
  static int max_dim;

 private:
  int rows_, cols_;
  std::vector<mpq_class> data_;

  /// In-place reduced row echelon form; returns pivot columns.
  std::vector<int> rref();
};

}  // namespace spraywork
