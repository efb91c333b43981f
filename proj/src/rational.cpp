#include "phf/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace phf {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

namespace {

// (k - c)^2 <= r with k - c of the given sign requirement folded in by callers.
bool within(const Integer& k, const Rational& c, const Rational& r) {
  Rational t = Rational(k) - c;
  return t * t <= r;
}

}  // namespace

Integer floor_plus_sqrt(const Rational& c, const Rational& r) {
  double est = c.get_d() + std::sqrt(std::max(0.0, r.get_d()));
  Integer k(std::floor(est));
  // Invariant wanted: k - c <= sqrt(r) < k + 1 - c.
  auto ok = [&](const Integer& v) { return Rational(v) <= c || within(v, c, r); };
  while (!ok(k)) --k;
  while (ok(k + 1)) ++k;
  return k;
}

Integer ceil_minus_sqrt(const Rational& c, const Rational& r) {
  double est = c.get_d() - std::sqrt(std::max(0.0, r.get_d()));
  Integer k(std::ceil(est));
  auto ok = [&](const Integer& v) { return Rational(v) >= c || within(v, c, r); };
  while (!ok(k)) ++k;
  while (ok(k - 1)) --k;
  return k;
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return z.get_si();
}

Integer lcm_of_denominators(const QVec& v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

}  // namespace phf
