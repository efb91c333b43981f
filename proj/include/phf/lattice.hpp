#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "phf/ideals.hpp"
#include "phf/matrix.hpp"
#include "phf/qfield.hpp"

namespace phf {

using ZMatrix = Matrix<std::int64_t>;

/// HNF triple of an integral ideal in small integers; see FracIdeal.
struct SmallHnf {
  std::int64_t a = 0, b = 0, c = 0;
  friend bool operator==(const SmallHnf&, const SmallHnf&) = default;
};

SmallHnf small_hnf2(const std::vector<std::array<std::int64_t, 2>>& rows);

/// O_K-lattice L = c_1 e_1 + ... + c_n e_n in K^n (row vectors), together
/// with the Z-basis b_1..b_2n made of the HNF bases of the c_k times e_k.
class OKLattice {
 public:
  OKLattice(const QuadField& field, std::vector<FracIdeal> coeff_ideals, KMatrix directions,
            std::shared_ptr<const ClassGroup> classes = nullptr);

  /// L_j = O_K^{n-1} + a_j with the standard directions.
  static OKLattice standard(const QuadField& field, std::shared_ptr<const ClassGroup> classes,
                            int class_index, int n);

  int n() const { return n_; }
  int rank() const { return 2 * n_; }
  const QuadField& field() const { return field_; }
  const ClassGroup& classes() const { return *classes_; }
  std::shared_ptr<const ClassGroup> classes_ptr() const { return classes_; }
  const std::vector<FracIdeal>& coeff_ideals() const { return coeff_ideals_; }
  const KMatrix& directions() const { return directions_; }
  /// 2n x n matrix over K; row i is b_i.
  const KMatrix& z_basis() const { return z_basis_; }

  KVec vector(const ZVec& v) const;
  QVec rational_coordinates(const KVec& x) const;
  std::optional<ZVec> coordinates(const KVec& x) const;
  bool contains(const KVec& x) const { return coordinates(x).has_value(); }

  /// Integer matrix M with w b_i = sum_k M_ik b_k.
  const ZMatrix& omega_action() const { return omega_action_; }
  /// Integer matrices of the unit scalars, in QuadField::units() order.
  const std::vector<ZMatrix>& unit_actions() const { return unit_actions_; }

  /// Coefficient ideal a_x = x_1 c_1^{-1} + ... + x_n c_n^{-1}, x != 0.
  FracIdeal coeff_ideal(const KVec& x) const;
  /// Fast path on Z-coordinates: HNF of D * a_x, with D = coeff_scale().
  SmallHnf coeff_hnf(const ZVec& v) const;
  Rational coeff_norm(const ZVec& v) const;
  /// Index j with a_x == a_j exactly, or -1.
  int coeff_class_rep(const ZVec& v) const;
  std::int64_t coeff_scale() const { return coeff_scale_; }

  /// Class of c_1 * ... * c_n.
  int steinitz_class() const;
  /// N(c_1 * ... * c_n).
  Rational ideal_norm_product() const;
  /// Largest N(a_j) over the class representatives.
  Rational max_rep_norm() const;

  OKLattice scaled(const FracIdeal& p) const;

  /// Rational 2n x 2n matrix M with b_i g = sum_k M_ik b_k.
  QMatrix z_matrix(const KMatrix& g) const;
  /// Inverse of z_matrix: the K-matrix acting as M on the Z-basis, when M
  /// commutes with the O_K-structure.
  std::optional<KMatrix> k_matrix(const QMatrix& m) const;
  /// L g == L.
  bool is_automorphism(const KMatrix& g) const;

 private:
  QuadField field_;
  int n_;
  std::vector<FracIdeal> coeff_ideals_;
  KMatrix directions_;
  std::shared_ptr<const ClassGroup> classes_;
  KMatrix z_basis_;
  QMatrix z_basis_q_inv_;
  ZMatrix omega_action_;
  std::vector<ZMatrix> unit_actions_;
  std::vector<std::size_t> k_basis_rows_;
  std::int64_t coeff_scale_ = 1;
  // For generator g: coefficients of its {1, w} coordinates as integer
  // linear forms in the Z-coordinates of x, scaled by coeff_scale_.
  std::vector<std::array<ZVec, 2>> coeff_forms_;
  std::vector<SmallHnf> rep_hnfs_;

  void build();
};

/// Rational Gram matrix of a Hermitian form on a lattice's Z-basis together
/// with the positive integer that clears its denominators.
struct IntGram {
  QMatrix gram;
  Integer scale;
};

/// (1/2) Tr(b_i A b_j^*); symmetric with v T v^T = A[v B].
IntGram trace_form(const KMatrix& a, const OKLattice& lattice);
/// (1/2) Tr(w b_i A b_j^*); not symmetric in general.
IntGram omega_trace_form(const KMatrix& a, const OKLattice& lattice);

}  // namespace phf
