#include "spraywork/tableau.hpp"

#include <algorithm>

namespace spraywork {

namespace {

void enumerate_multisets(int labels, int m, int from, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if (m == 0) {
    out.push_back(cur);
    return;
  }
  for (int l = from; l < labels; ++l) {
    cur.push_back(l);
    enumerate_multisets(labels, m - 1, l, cur, out);
    cur.pop_back();
  }
}

std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

SymBasis::SymBasis(int labels, int m) : labels_(labels), m_(m) {
  std::vector<int> cur;
  enumerate_multisets(labels, m, 0, cur, elems_);
  for (int i = 0; i < size(); ++i) pos_[elems_[i]] = i;
}

int SymBasis::position(std::vector<int> idx) const {
  std::sort(idx.begin(), idx.end());
  auto it = pos_.find(idx);
  if (it == pos_.end())
    throw Error("multiset is not a valid symmetric-basis index");
  return it->second;
}

EigenParams EigenParams::random(int n, std::uint64_t seed) {
  EigenParams p;
  p.n = n;
  p.seed = seed;
  std::uint64_t s = seed ^ 0xA5A5A5A5DEADBEEFULL;
  p.lambda.assign(n, mpq_class(0));
  for (int i = 0; i < n - 1; ++i) {
    for (;;) {
      long num = static_cast<long>(splitmix64(s) % 41) - 20;
      long den = static_cast<long>(splitmix64(s) % 9) + 1;
      if (num == 0) continue;
      mpq_class q(num, den);
      q.canonicalize();
      bool clash = false;
      for (int j = 0; j < i; ++j)
        if (p.lambda[j] == q) clash = true;
      if (!clash) {
        p.lambda[i] = q;
        break;
      }
    }
  }
  return p;
}

SymbolTableau SymbolTableau::build(int n, int m, const EigenParams& par,
                                   bool completed, const mpq_class& f1,
                                   const mpq_class& f2) {
  if (n < 2 || m < 2) throw Error("tableau requires n >= 2 and order >= 2");
  if (completed && n != 3)
    throw Error("the completed system is specific to n = 3");
  if (completed && (f1 == 0 || f2 == 0))
    throw Error("completed-system weights must be nonzero");

  SymbolTableau t;
  t.n = n;
  t.m = m;
  t.completed = completed;
  t.par = par;
  t.f1 = f1;
  t.f2 = f2;

  const int L = 2 * n;
  SymBasis coords(L, m);
  SymBasis beta1(L, m - 1);
  SymBasis beta2(L, m - 2);

  auto v = [n](int k) { return n + k; };  // k is 0-based

  int pairs = n * (n - 1) / 2;
  int rows = beta1.size() + 2 * beta2.size() * pairs +
             (completed ? beta2.size() : 0);
  t.constraints = RatMat(rows, coords.size());
  int r = 0;

  // radial family: A(beta, v_n) = 0
  for (int b = 0; b < beta1.size(); ++b) {
    std::vector<int> idx = beta1.at(b);
    idx.push_back(v(n - 1));
    t.constraints.at(r++, coords.position(idx)) = 1;
  }
  // torsion and curvature families
  for (int b = 0; b < beta2.size(); ++b) {
    for (int k = 0; k < n; ++k)
      for (int l = k + 1; l < n; ++l) {
        std::vector<int> a = beta2.at(b);
        a.push_back(k);
        a.push_back(v(l));
        std::vector<int> c = beta2.at(b);
        c.push_back(l);
        c.push_back(v(k));
        t.constraints.at(r, coords.position(a)) += 1;
        t.constraints.at(r, coords.position(c)) -= 1;
        ++r;
        std::vector<int> d = beta2.at(b);
        d.push_back(v(k));
        d.push_back(v(l));
        t.constraints.at(r, coords.position(d)) +=
            par.lambda[k] - par.lambda[l];
        ++r;
      }
    if (completed) {
      std::vector<int> a = beta2.at(b);
      a.push_back(v(0));
      a.push_back(v(0));
      std::vector<int> c = beta2.at(b);
      c.push_back(v(1));
      c.push_back(v(1));
      t.constraints.at(r, coords.position(a)) += f1;
      t.constraints.at(r, coords.position(c)) += f2;
      ++r;
    }
  }
  return t;
}

int SymbolTableau::dim_restricted_kernel(int j,
                                         const std::vector<int>& order) const {
  SymBasis coords(2 * n, m);
  std::vector<bool> kill(2 * n, false);
  for (int i = 0; i < j; ++i) kill[order[i]] = true;

  std::vector<int> dead;
  for (int c = 0; c < coords.size(); ++c)
    for (int lab : coords.at(c))
      if (kill[lab]) {
        dead.push_back(c);
        break;
      }

  RatMat ext(constraints.rows() + static_cast<int>(dead.size()),
             constraints.cols());
  for (int i = 0; i < constraints.rows(); ++i)
    for (int c = 0; c < constraints.cols(); ++c)
      ext.at(i, c) = constraints.at(i, c);
  for (std::size_t i = 0; i < dead.size(); ++i)
    ext.at(constraints.rows() + static_cast<int>(i), dead[i]) = 1;
  return ext.nullity();
}

}  // namespace spraywork
