#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "phf/lattice.hpp"
#include "phf/matrix.hpp"
#include "phf/qfield.hpp"

namespace phf {

/// Hermitian n x n matrix over K; A[x] = x A x^* for row vectors x.
class HermForm {
 public:
  HermForm() = default;
  /// Throws std::invalid_argument unless a is square and Hermitian.
  HermForm(const QuadField& field, KMatrix a);

  static HermForm identity(const QuadField& field, int n);

  const QuadField& field() const { return field_; }
  int n() const { return static_cast<int>(a_.rows()); }
  const KMatrix& matrix() const { return a_; }
  const KElem& operator()(std::size_t i, std::size_t j) const { return a_(i, j); }

  Rational operator[](const KVec& x) const;
  /// Determinant of A (rational).
  Rational det() const;
  bool is_positive_definite() const;
  bool is_positive_semidefinite() const;

  HermForm scaled(const Rational& s) const;
  /// A + t R.
  HermForm plus(const HermForm& r, const Rational& t) const;
  /// A[U] := U A U^*, the form x -> A[xU].
  HermForm transformed(const KMatrix& u) const;
  HermForm inverse() const;

  friend bool operator==(const HermForm& x, const HermForm& y) { return x.a_ == y.a_; }

  std::string to_string() const;

 private:
  QuadField field_{1};
  KMatrix a_;
};

Rational evaluate(const HermForm& a, const KVec& x);
/// det_L(A) = N(c_1 ... c_n) det A.
Rational det_rel(const HermForm& a, const OKLattice& lattice);

struct MinVec {
  ZVec z;          // coordinates on the lattice's Z-basis
  KVec x;
  int rep = 0;     // a_x equals the class representative reps[rep]
  Rational coeff_norm;
};

/// Projective minimal vectors: one canonical representative per line K x.
struct MinVecSet {
  Rational minimum;
  std::vector<MinVec> vectors;

  std::size_t size() const { return vectors.size(); }
};

/// Exact minimum of A[x] / N(a_x) over L \ {0} and all minimal lines.
/// Throws std::domain_error unless A is positive definite.
MinVecSet minimum_and_minvecs(const HermForm& a, const OKLattice& lattice);

/// Lattice vector of the line through x whose coefficient ideal is a class
/// representative, reduced modulo units; nullopt for x = 0.
std::optional<MinVec> canonical_vector(const OKLattice& lattice, const ZVec& z);

/// gamma^n = min^n / det_L.
Rational hermite_invariant(const HermForm& a, const OKLattice& lattice);
Rational hermite_invariant(const MinVecSet& s, const HermForm& a, const OKLattice& lattice);

struct PerfectionInfo {
  bool perfect = false;
  std::size_t rank = 0;
};

PerfectionInfo is_perfect(const MinVecSet& s, int n);
PerfectionInfo is_perfect(const HermForm& a, const OKLattice& lattice);

struct EutaxyCertificate {
  bool eutactic = false;
  /// lambda_x > 0 with A^{-1} = sum lambda_x x^* x, in the order of S.
  std::vector<Rational> coefficients;
  /// Otherwise a Hermitian R with R[x] >= 0 on S and Trace(A^{-1} R) <= 0,
  /// strict in at least one of the two.
  std::optional<HermForm> witness;
};

EutaxyCertificate eutaxy_certificate(const HermForm& a, const MinVecSet& s);
EutaxyCertificate eutaxy_certificate(const HermForm& a, const OKLattice& lattice);
/// Exact check of a certificate against A and S.
bool verify_eutaxy(const HermForm& a, const MinVecSet& s, const EutaxyCertificate& cert);

/// The unique Hermitian A with A[x] = m N(a_x) for x in S. Throws
/// std::invalid_argument when the system is underdetermined or inconsistent.
HermForm reconstruct_from_minvecs(const QuadField& field, int n, const Rational& m, const MinVecSet& s);

/// Trace(X Y) for Hermitian X, Y.
Rational trace_pairing(const HermForm& x, const HermForm& y);

}  // namespace phf
