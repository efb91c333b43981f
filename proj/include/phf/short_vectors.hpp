#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "phf/matrix.hpp"
#include "phf/rational.hpp"

namespace phf {

/// Exact Fincke-Pohst enumeration of lattice vectors of bounded norm for a
/// rational Gram matrix, after an exact LLL reduction of the Gram matrix.
/// Coordinates are integer row vectors v with norm v G v^T.
class ShortVectors {
 public:
  explicit ShortVectors(const QMatrix& gram);

  bool positive_definite() const { return positive_definite_; }
  std::size_t dim() const { return n_; }

  /// Calls visit(v, norm) for every nonzero v with norm <= bound. With
  /// up_to_sign, exactly one of v, -v is visited. Requires a positive definite Gram matrix.
  template <class Visitor>
  void for_each(const Rational& bound, Visitor&& visit, bool up_to_sign = true) const;

  std::vector<std::pair<ZVec, Rational>> collect(const Rational& bound, bool up_to_sign = true) const;

 private:
  std::size_t n_;
  bool positive_definite_ = true;
  // Row-major n x n; diagonal holds the pivots, strict upper part the
  // multipliers: norm(v) = sum_i q_ii (v_i + sum_{j>i} q_ij v_j)^2.
  std::vector<Rational> q_;
  // Rows of the reducing transformation: enumerated coordinates u map to u T.
  std::vector<std::int64_t> t_;

  const Rational& q(std::size_t i, std::size_t j) const { return q_[i * n_ + j]; }

  template <class Visitor>
  void recurse(std::size_t level, const Rational& remaining, const Rational& bound, ZVec& v, ZVec& w,
               bool all_zero_above, bool up_to_sign, Visitor& visit) const;
  void to_original(const ZVec& v, ZVec& w) const;
};

/// LLL-reduced Gram matrix (delta = 3/4) of a positive definite Gram
/// matrix, with the unimodular T such that reduced = T G T^T.
struct LllResult {
  QMatrix gram;
  std::vector<ZVec> transform;
};
LllResult lll_reduce(const QMatrix& gram);

/// Leading-pivot test; false for singular or indefinite input.
bool is_positive_definite(const QMatrix& gram);

template <class Visitor>
void ShortVectors::for_each(const Rational& bound, Visitor&& visit, bool up_to_sign) const {
  if (!positive_definite_) throw std::domain_error("short vector enumeration needs a positive definite form");
  if (n_ == 0 || sgn(bound) < 0) return;
  ZVec v(n_, 0), w(n_, 0);
  recurse(n_ - 1, bound, bound, v, w, true, up_to_sign, visit);
}

template <class Visitor>
void ShortVectors::recurse(std::size_t level, const Rational& remaining, const Rational& bound,
                           ZVec& v, ZVec& w, bool all_zero_above, bool up_to_sign,
                           Visitor& visit) const {
  Rational center = 0;
  for (std::size_t j = level + 1; j < n_; ++j)
    if (v[j] != 0) center -= q(level, j) * static_cast<long>(v[j]);
  Rational radius2 = remaining / q(level, level);
  Integer lo = ceil_minus_sqrt(center, radius2);
  Integer hi = floor_plus_sqrt(center, radius2);
  if (up_to_sign && all_zero_above && lo < 0) lo = 0;
  Rational diff, used, rest;
  for (Integer k = lo; k <= hi; ++k) {
    std::int64_t x = to_int64(k);
    v[level] = x;
    diff = Rational(k) - center;
    used = q(level, level) * diff * diff;
    rest = remaining - used;
    if (level == 0) {
      if (all_zero_above && x == 0) continue;
      Rational norm = bound - rest;
      to_original(v, w);
      visit(static_cast<const ZVec&>(w), static_cast<const Rational&>(norm));
    } else {
      recurse(level - 1, rest, bound, v, w, all_zero_above && x == 0, up_to_sign, visit);
    }
  }
  v[level] = 0;
}

}  // namespace phf
