#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "phf/voronoi.hpp"

namespace phf {

struct GLGenerator {
  enum class Kind { stabilizer, edge };
  Kind kind = Kind::stabilizer;
  KMatrix matrix;
  int class_id = 0;  // record id of the representative P
  std::optional<std::size_t> facet_id;  // edge generators: facet of V(P) crossed
  int target = 0;    // edge generators: representative A is equivalent to
};

/// Stab(P) generators for every representative P, then one U_A per facet of
/// V(P) with A = P_target[U_A], A the contiguous form across that facet.
/// Facets whose neighbour is literally a representative contribute nothing.
struct GLGenSet {
  std::vector<std::vector<KMatrix>> stabilizer_gens;  // per record
  std::vector<GLGenerator> generators;                // stabilizers first

  std::size_t edge_count() const;
};

GLGenSet gl_generators(const EnumerationResult& run);
GLGenSet gl_generators(const OKLattice& lattice, const EnumerationOptions& options = {});

/// Exact checks of a generator against the enumeration: g L = L, and
/// Stab: P[g] = P; edge: the neighbour across the facet equals P_target[g].
bool verify_generator(const GLGenerator& g, const EnumerationResult& run);

}  // namespace phf
