#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "phf/rational.hpp"

namespace phf {

class KElem;

/// The imaginary quadratic field Q(sqrt(-d)) for squarefree d > 0.
///
/// Elements are stored in the integral basis {1, w}, where w = sqrt(-d) when
/// -d = 2, 3 (mod 4) and w = (1 + sqrt(-d))/2 when -d = 1 (mod 4). With that
/// basis the ring of integers is exactly the set of integer-coordinate elements.
class QuadField {
 public:
  explicit QuadField(std::int64_t d);

  std::int64_t d() const { return d_; }
  /// True when w = (1 + sqrt(-d))/2.
  bool half_omega() const { return d_ % 4 == 3; }
  std::int64_t discriminant() const { return half_omega() ? -d_ : -4 * d_; }

  KElem zero() const;
  KElem one() const;
  KElem omega() const;
  KElem sqrt_minus_d() const;
  /// a + b w
  KElem elem(const Rational& a, const Rational& b) const;
  /// p + q sqrt(-d)
  KElem from_sqrt(const Rational& p, const Rational& q) const;

  const std::vector<KElem>& units() const { return units_; }

  bool operator==(const QuadField& other) const { return d_ == other.d_; }

 private:
  std::int64_t d_;
  std::vector<KElem> units_;
};

/// Element a + b w of Q(sqrt(-d)).
///
/// A KElem built from a bare rational carries d = 0 and combines with an
/// element of any field; mixing two different nonzero d values throws.
class KElem {
 public:
  KElem() = default;
  KElem(const Rational& r) : a_(r) {}  // NOLINT: rationals embed implicitly
  KElem(std::int64_t value) : a_(static_cast<long>(value)) {}  // NOLINT
  KElem(std::int64_t d, const Rational& a, const Rational& b);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  std::int64_t d() const { return d_; }

  /// Coordinates in {1, sqrt(-d)}: value = re() + im() * sqrt(-d).
  Rational re() const;
  Rational im() const;

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  bool is_integral() const;

  KElem conj() const;
  Rational norm() const;
  Rational trace() const;
  KElem inv() const;

  KElem operator-() const;
  KElem& operator+=(const KElem& y);
  KElem& operator-=(const KElem& y);
  KElem& operator*=(const KElem& y);
  KElem& operator/=(const KElem& y);

  friend KElem operator+(KElem x, const KElem& y) { return x += y; }
  friend KElem operator-(KElem x, const KElem& y) { return x -= y; }
  friend KElem operator*(const KElem& x, const KElem& y);
  friend KElem operator/(KElem x, const KElem& y) { return x /= y; }
  friend bool operator==(const KElem& x, const KElem& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const KElem& x, const KElem& y) { return !(x == y); }
  /// Lexicographic on (a, b); used only for canonical orderings.
  friend bool operator<(const KElem& x, const KElem& y);

  /// Rendered with sqrt(-d), e.g. "(3+sqrt(-15))/6".
  std::string to_string() const;

 private:
  Rational a_;
  Rational b_;
  std::int64_t d_ = 0;

  static std::int64_t common_d(std::int64_t d1, std::int64_t d2);
};

std::ostream& operator<<(std::ostream& os, const KElem& x);

using KVec = std::vector<KElem>;

bool is_squarefree(std::int64_t d);

}  // namespace phf
