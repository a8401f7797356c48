#include "spraywork/ratmat.hpp"

#include <string>

namespace spraywork {

int RatMat::max_dim = 20000;

RatMat::RatMat(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0 || rows > max_dim || cols > max_dim)
    throw ResourceLimit("matrix dimension " + std::to_string(rows) + "x" +
                        std::to_string(cols) + " exceeds limit " +
                        std::to_string(max_dim));
  data_.assign(std::size_t(rows) * cols, mpq_class(0));
}

bool RatMat::is_zero() const {
  for (const auto& q : data_)
    if (q != 0) return false;
  return true;
}

std::vector<int> RatMat::rref() {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    // prefer a unit pivot to keep intermediate entries small
    int p = -1;
    for (int i = r; i < rows_; ++i) {
      const mpq_class& v = at(i, c);
      if (v == 0) continue;
      if (p < 0) p = i;
      if (v == 1 || v == -1) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r)
      for (int j = c; j < cols_; ++j) std::swap(at(p, j), at(r, j));
    mpq_class inv = 1 / at(r, c);
    for (int j = c; j < cols_; ++j) at(r, j) *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || at(i, c) == 0) continue;
      mpq_class f = at(i, c);
      for (int j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int RatMat::rank() const {
  RatMat m = *this;
  return static_cast<int>(m.rref().size());
}

RatMat RatMat::nullspace() const {
  RatMat m = *this;
  std::vector<int> pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;

  int nul = cols_ - static_cast<int>(pivots.size());
  RatMat basis(cols_, nul);
  int k = 0;
  for (int c = 0; c < cols_; ++c) {
    if (is_pivot[c]) continue;
    basis.at(c, k) = 1;
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
      basis.at(pivots[pr], k) = -m.at(static_cast<int>(pr), c);
    ++k;
  }
  return basis;
}

void RatMat::check_rank_nullity() const {
  int r = rank();
  int nul = nullity();
  if (r + nul != cols_)
    throw Error("rank-nullity mismatch: rank " + std::to_string(r) +
                " + nullity " + std::to_string(nul) + " != cols " +
                std::to_string(cols_));
}

RatMat operator*(const RatMat& a, const RatMat& b) {
  if (a.cols_ != b.rows_)
    throw Error("matrix product shape mismatch: " + std::to_string(a.cols_) +
                " vs " + std::to_string(b.rows_));
  RatMat r(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const mpq_class& v = a.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const mpq_class& w = b.at(k, j);
        if (w != 0) r.at(i, j) += v * w;
      }
    }
  return r;
}

}  // namespace spraywork
