#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "phf/matrix.hpp"
#include "phf/qfield.hpp"

namespace phf {

// Coordinates on the n^2-dimensional space of Hermitian n x n matrices over
// K: the n diagonal entries, then for each i < j the pair (p, q) with
// A_ij = p + q sqrt(-d). Trace(AB) = coords(A)^T G coords(B) with
// G = diag(1, ..., 1, 2, 2d, 2, 2d, ...).

using HermCoords = QVec;

HermCoords herm_coords(const KMatrix& a);
KMatrix herm_from_coords(const QuadField& field, int n, const HermCoords& c);
QMatrix trace_pairing_gram(int n, std::int64_t d);
/// Coordinates of the rank-one matrix x^* x.
HermCoords outer_coords(const KVec& x);
/// Vector r with r . herm_coords(R) = R[x] for every Hermitian R.
QVec evaluation_functional(const KVec& x);

using IVec = std::vector<Integer>;

struct Facet {
  IVec normal;                        // primitive integral, >= 0 on every ray
  std::vector<std::size_t> incident;  // rays on which the normal vanishes
};

/// A full-dimensional polyhedral cone with its complete facet list.
struct PolyCone {
  std::vector<QVec> rays;
  std::vector<Facet> facets;
};

/// Facets of cone(rays) in Q^N, where a facet normal c pairs with a ray r
/// through c . (P r) for the symmetric pairing P (identity when empty).
/// Exact double description; throws std::invalid_argument when the rays do
/// not span Q^N.
PolyCone facet_enumeration(const std::vector<QVec>& rays, const QMatrix& pairing = QMatrix());

/// Extreme rays of the pointed cone {c : a_i . c >= 0}. Rows of the
/// returned incidence are constraint indices with a_i . c = 0.
std::vector<Facet> extreme_rays(const std::vector<IVec>& constraints);

IVec primitive(const QVec& v);
IVec primitive(IVec v);
Integer dot(const IVec& x, const IVec& y);

}  // namespace phf
