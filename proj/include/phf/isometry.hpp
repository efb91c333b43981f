#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phf/hermform.hpp"
#include "phf/lattice.hpp"

namespace phf {

/// The two rational Z-forms carried by (L, A): F1(x, y) = Re(x A y^*) and
/// F2(x, y) = Re(w x A y^*), on the Z-basis of L, with the integer matrix of
/// multiplication by w. Together they determine x A y^* on L.
struct FormPairGram {
  QMatrix f1;
  QMatrix f2;
  ZMatrix momega;
  Integer scale;  // clears the denominators of f1 and f2
};

FormPairGram form_pair_gram(const HermForm& a, const OKLattice& lattice);

/// U in GL(L) with B = A[U] = U A U^*, or nullopt when none exists.
std::optional<KMatrix> is_equivalent(const HermForm& a, const HermForm& b, const OKLattice& lattice);

/// Every U in GL(L) with B = A[U]; with A == B this is Aut(L, A).
std::vector<KMatrix> all_isometries(const HermForm& a, const HermForm& b, const OKLattice& lattice);

struct AutGroup {
  std::vector<KMatrix> elements;  // identity first
  std::vector<KMatrix> generators;
  std::size_t order() const { return elements.size(); }
  std::string type;
  std::map<int, int> order_statistics;  // element order -> count
};

AutGroup aut_group(const HermForm& a, const OKLattice& lattice);

/// Name of a finite group from its order and element-order statistics:
/// Cn, C2xC2, Q8, C3:C4, SL(2,3), D4, ..., or "order-N" when unrecognized.
std::string group_type(std::size_t order, const std::map<int, int>& stats);

int element_order(const KMatrix& g, int bound = 1000);

}  // namespace phf
