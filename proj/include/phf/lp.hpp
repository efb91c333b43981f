#pragma once

#include "phf/matrix.hpp"
#include "phf/rational.hpp"

namespace phf {

struct LpResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  QVec x;       // primal solution
  QVec dual;    // y with y A >= c and y b = value at optimum
  Rational value;
};

/// max c.x subject to A x = b, x >= 0. Exact two-phase simplex, Bland's rule.
LpResult lp_maximize(const QMatrix& a, const QVec& b, const QVec& c);

}  // namespace phf
