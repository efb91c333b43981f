#include "phf/qfield.hpp"

#include <ostream>
#include <stdexcept>

namespace phf {

bool is_squarefree(std::int64_t d) {
  if (d <= 0) return false;
  for (std::int64_t p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

QuadField::QuadField(std::int64_t d) : d_(d) {
  if (d <= 0) throw std::invalid_argument("d must be positive, got " + std::to_string(d));
  if (!is_squarefree(d)) throw std::invalid_argument(std::to_string(d) + " is not squarefree");
  units_ = {one(), -one()};
  if (d == 1) {
    units_.push_back(omega());
    units_.push_back(-omega());
  } else if (d == 3) {
    // w = (1+sqrt(-3))/2 is a primitive sixth root of unity.
    KElem w = omega();
    KElem w2 = w * w;
    units_ = {one(), -one(), w, -w, w2, -w2};
  }
}

KElem QuadField::zero() const { return KElem(d_, 0, 0); }
KElem QuadField::one() const { return KElem(d_, 1, 0); }
KElem QuadField::omega() const { return KElem(d_, 0, 1); }
KElem QuadField::sqrt_minus_d() const { return from_sqrt(0, 1); }
KElem QuadField::elem(const Rational& a, const Rational& b) const { return KElem(d_, a, b); }

KElem QuadField::from_sqrt(const Rational& p, const Rational& q) const {
  if (half_omega()) return KElem(d_, p - q, 2 * q);
  return KElem(d_, p, q);
}

KElem::KElem(std::int64_t d, const Rational& a, const Rational& b) : a_(a), b_(b), d_(d) {
  if (d_ == 0 && sgn(b_) != 0) throw std::invalid_argument("irrational element needs a field");
}

std::int64_t KElem::common_d(std::int64_t d1, std::int64_t d2) {
  if (d1 == 0) return d2;
  if (d2 == 0 || d1 == d2) return d1;
  throw std::invalid_argument("elements of different quadratic fields");
}

Rational KElem::re() const {
  if (d_ % 4 == 3) return a_ + b_ / 2;
  return a_;
}

Rational KElem::im() const {
  if (d_ % 4 == 3) return b_ / 2;
  return b_;
}

bool KElem::is_integral() const { return a_.get_den() == 1 && b_.get_den() == 1; }

KElem KElem::conj() const {
  if (d_ % 4 == 3) return KElem(d_, a_ + b_, -b_);
  return KElem(d_, a_, -b_);
}

Rational KElem::norm() const {
  Rational p = re(), q = im();
  return p * p + Rational(static_cast<long>(d_)) * q * q;
}

Rational KElem::trace() const { return 2 * re(); }

KElem KElem::inv() const {
  if (is_zero()) throw std::domain_error("division by zero in K");
  Rational n = norm();
  KElem c = conj();
  return KElem(d_, c.a_ / n, c.b_ / n);
}

KElem KElem::operator-() const { return KElem(d_, -a_, -b_); }

KElem& KElem::operator+=(const KElem& y) {
  d_ = common_d(d_, y.d_);
  a_ += y.a_;
  b_ += y.b_;
  return *this;
}

KElem& KElem::operator-=(const KElem& y) {
  d_ = common_d(d_, y.d_);
  a_ -= y.a_;
  b_ -= y.b_;
  return *this;
}

KElem operator*(const KElem& x, const KElem& y) {
  std::int64_t d = KElem::common_d(x.d_, y.d_);
  KElem r;
  r.d_ = d;
  if (sgn(x.b_) == 0) {
    r.a_ = x.a_ * y.a_;
    r.b_ = x.a_ * y.b_;
    return r;
  }
  if (sgn(y.b_) == 0) {
    r.a_ = x.a_ * y.a_;
    r.b_ = x.b_ * y.a_;
    return r;
  }
  Rational bb = x.b_ * y.b_;
  r.b_ = x.a_ * y.b_ + x.b_ * y.a_;
  if (d % 4 == 3) {
    // w^2 = w - (1+d)/4
    r.a_ = x.a_ * y.a_ - Rational(static_cast<long>((1 + d) / 4)) * bb;
    r.b_ += bb;
  } else {
    r.a_ = x.a_ * y.a_ - Rational(static_cast<long>(d)) * bb;
  }
  return r;
}

KElem& KElem::operator*=(const KElem& y) { return *this = *this * y; }

KElem& KElem::operator/=(const KElem& y) { return *this = *this * y.inv(); }

bool operator<(const KElem& x, const KElem& y) {
  if (x.a_ != y.a_) return x.a_ < y.a_;
  return x.b_ < y.b_;
}

std::string KElem::to_string() const {
  Rational p = re(), q = im();
  if (sgn(q) == 0) return phf::to_string(p);
  Integer den;
  mpz_lcm(den.get_mpz_t(), p.get_den_mpz_t(), q.get_den_mpz_t());
  Integer pn = p.get_num() * (den / p.get_den());
  Integer qn = q.get_num() * (den / q.get_den());
  std::string root = "sqrt(-" + std::to_string(d_) + ")";
  std::string s;
  if (pn != 0) s = pn.get_str();
  if (qn == 1) s += (s.empty() ? "" : "+") + root;
  else if (qn == -1) s += "-" + root;
  else s += (qn > 0 && !s.empty() ? "+" : "") + qn.get_str() + "*" + root;
  if (den == 1) return s;
  return "(" + s + ")/" + den.get_str();
}

std::ostream& operator<<(std::ostream& os, const KElem& x) { return os << x.to_string(); }

}  // namespace phf
