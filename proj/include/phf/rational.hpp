#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace phf {

using Integer = mpz_class;
using Rational = mpq_class;

using ZVec = std::vector<std::int64_t>;
using QVec = std::vector<Rational>;

Rational make_rational(const Integer& num, const Integer& den);

// "p" or "p/q" in lowest terms.
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

// Largest integer k with k <= c + sqrt(r), and smallest k with k >= c - sqrt(r).
// Exact: a double estimate is corrected with rational comparisons. r >= 0.
Integer floor_plus_sqrt(const Rational& c, const Rational& r);
Integer ceil_minus_sqrt(const Rational& c, const Rational& r);

std::int64_t to_int64(const Integer& z);

Integer lcm_of_denominators(const QVec& v);

}  // namespace phf
