#include "phf/lp.hpp"

#include <stdexcept>

namespace phf {

namespace {

// Tableau over m rows; columns 0..nv-1 structural, nv..nv+m-1 artificial,
// last column the right-hand side.
struct Tableau {
  std::size_t m, nv;
  QMatrix t;
  std::vector<std::size_t> basis;
  std::vector<bool> active;  // rows not dropped as redundant

  Rational& rhs(std::size_t r) { return t(r, nv + m); }

  void pivot(std::size_t r, std::size_t col) {
    Rational p = t(r, col);
    for (std::size_t j = 0; j < t.cols(); ++j) t(r, j) /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || !active[i] || sgn(t(i, col)) == 0) continue;
      Rational f = t(i, col);
      for (std::size_t j = 0; j < t.cols(); ++j)
        if (sgn(t(r, j)) != 0) t(i, j) -= f * t(r, j);
    }
    basis[r] = col;
  }

  // Maximize cost over columns [0, allowed). Returns false when unbounded.
  bool optimize(const QVec& cost, std::size_t allowed) {
    for (;;) {
      // reduced cost c_j - c_B B^-1 A_j
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed && enter == allowed; ++j) {
        Rational rc = cost[j];
        for (std::size_t i = 0; i < m; ++i)
          if (active[i]) rc -= cost[basis[i]] * t(i, j);
        if (sgn(rc) > 0) enter = j;
      }
      if (enter == allowed) return true;
      std::size_t leave = m;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (!active[i] || sgn(t(i, enter)) <= 0) continue;
        Rational ratio = rhs(i) / t(i, enter);
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult lp_maximize(const QMatrix& a, const QVec& b, const QVec& c) {
  const std::size_t m = a.rows(), nv = a.cols();
  if (b.size() != m || c.size() != nv) throw std::invalid_argument("lp dimension mismatch");
  Tableau tab{m, nv, QMatrix(m, nv + m + 1), std::vector<std::size_t>(m), std::vector<bool>(m, true)};
  std::vector<int> sign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    sign[i] = sgn(b[i]) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < nv; ++j) tab.t(i, j) = a(i, j) * sign[i];
    tab.t(i, nv + i) = 1;
    tab.rhs(i) = b[i] * sign[i];
    tab.basis[i] = nv + i;
  }

  QVec cost(nv + m, 0);
  for (std::size_t i = 0; i < m; ++i) cost[nv + i] = -1;
  tab.optimize(cost, nv + m);
  LpResult res;
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis[i] >= nv && sgn(tab.rhs(i)) != 0) return res;  // infeasible

  // drive zero-level artificials out of the basis
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < nv) continue;
    std::size_t col = nv;
    for (std::size_t j = 0; j < nv && col == nv; ++j)
      if (sgn(tab.t(i, j)) != 0) col = j;
    if (col == nv) tab.active[i] = false;
    else tab.pivot(i, col);
  }

  QVec cost2(nv + m, 0);
  for (std::size_t j = 0; j < nv; ++j) cost2[j] = c[j];
  if (!tab.optimize(cost2, nv)) {
    res.status = LpResult::Status::unbounded;
    return res;
  }
  res.status = LpResult::Status::optimal;
  res.x.assign(nv, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (tab.active[i]) res.x[tab.basis[i]] = tab.rhs(i);
  res.value = 0;
  for (std::size_t j = 0; j < nv; ++j) res.value += c[j] * res.x[j];
  // y = c_B B^-1; the artificial columns carry B^-1 (up to the row signs)
  res.dual.assign(m, 0);
  for (std::size_t k = 0; k < m; ++k) {
    Rational y = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (tab.active[i]) y += cost2[tab.basis[i]] * tab.t(i, nv + k);
    res.dual[k] = y * sign[k];
  }
  return res;
}

}  // namespace phf
