#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phf/qfield.hpp"
#include "phf/rational.hpp"

namespace phf {

/// Nonzero fractional ideal of O_K, stored as the Z-module
///   (1/den) * (a Z + (b + c w) Z),   a, c > 0, 0 <= b < a,
/// with gcd(den, a, b, c) = 1. That is the Hermite normal form of the
/// Z-basis in coordinates {1, w}, so equal ideals compare equal.
class FracIdeal {
 public:
  /// O_K-module generated by gens. Throws when all generators are zero.
  static FracIdeal from_generators(const QuadField& field, const std::vector<KElem>& gens);
  static FracIdeal unit(const QuadField& field);
  /// Build from integer HNF data; the Z-span must be an O_K-module.
  static FracIdeal from_hnf(const QuadField& field, const Integer& den, const Integer& a,
                            const Integer& b, const Integer& c);

  std::int64_t d() const { return d_; }
  const Integer& den() const { return den_; }
  const Integer& hnf_a() const { return a_; }
  const Integer& hnf_b() const { return b_; }
  const Integer& hnf_c() const { return c_; }

  /// Z-basis (a/den, (b + c w)/den).
  std::array<KElem, 2> basis() const;
  Rational norm() const;
  bool is_integral() const { return den_ == 1; }
  bool contains(const KElem& x) const;

  FracIdeal operator*(const FracIdeal& other) const;
  FracIdeal operator+(const FracIdeal& other) const;
  FracIdeal scaled(const KElem& alpha) const;
  FracIdeal conj() const;
  FracIdeal inverse() const;

  friend bool operator==(const FracIdeal& x, const FracIdeal& y) = default;
  /// Order used to break ties between representatives of equal norm.
  friend bool operator<(const FracIdeal& x, const FracIdeal& y);

  /// Two-generator rendering with sqrt(-d), e.g. "<2, 1+sqrt(-5)>".
  std::string to_string() const;

 private:
  std::int64_t d_ = 0;
  Integer den_ = 1, a_ = 1, b_ = 0, c_ = 1;
};

/// Class group with fixed integral representatives of minimal norm.
/// Class 0 is the principal class, represented by O_K.
struct ClassGroup {
  std::int64_t d = 0;
  std::vector<FracIdeal> reps;
  std::vector<std::vector<int>> table;  // table[i][j] = class of reps[i] * reps[j]

  int order() const { return static_cast<int>(reps.size()); }
  int inverse(int c) const;
  int power(int c, int e) const;
  /// Largest representative norm.
  Integer max_rep_norm() const;
};

ClassGroup class_group(const QuadField& field);

struct ClassMembership {
  int index = 0;
  KElem alpha;  // alpha * ideal == reps[index]
};

ClassMembership class_of(const ClassGroup& group, const FracIdeal& ideal);

/// A generator when the ideal is principal.
std::optional<KElem> principal_generator(const FracIdeal& ideal);

/// One class per orbit of c ~ c * p^n ~ conj(c) * p^n; the lattices
/// O_K^{n-1} + a_c for the returned c cover every Hermite invariant.
std::vector<int> lattice_class_reps(const ClassGroup& group, int n);

/// All integral ideals of the given norm.
std::vector<FracIdeal> integral_ideals_of_norm(const QuadField& field, const Integer& norm);

struct Hnf2 {
  Integer a, b, c;  // lower triangular basis (a, 0), (b, c)
};

/// Hermite normal form of the Z-span of integer pairs; throws on rank < 2.
Hnf2 hnf2(const std::vector<std::array<Integer, 2>>& rows);

}  // namespace phf
