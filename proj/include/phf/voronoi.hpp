#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phf/cones.hpp"
#include "phf/hermform.hpp"
#include "phf/isometry.hpp"
#include "phf/lattice.hpp"

namespace phf {

/// Voronoi domain of a perfect form: rays x^* x for x in S, facets by DD.
PolyCone voronoi_domain(const HermForm& a, const MinVecSet& s);

/// Facet vector of a facet: R[x] = 0 on incident, R[x] > 0 on the other
/// minimal vectors.
HermForm facet_vector(const QuadField& field, int n, const PolyCone& cone, std::size_t facet_id);

/// Some x in L with R[x] < 0, searched among vectors of increasing A-length.
/// Throws InvariantViolation when R is not indefinite.
ZVec negative_witness(const HermForm& a, const HermForm& r, const OKLattice& lattice);

struct ContiguityResult {
  Rational rho;
  HermForm neighbor;  // A + rho R
  std::size_t shared_facet = 0;
  std::vector<MinVec> new_vectors;  // minimal vectors of the neighbor with R[x] < 0
};

/// The contiguous form A + rho R: rho is the largest t with min(A + t R) = min(A).
ContiguityResult contiguous(const HermForm& a, const Rational& minimum, const HermForm& r,
                            const OKLattice& lattice, std::size_t facet_id = 0);

struct FirstPerfectResult {
  HermForm form;  // minimum 1
  int steps = 0;
};

/// Perfect form reached from the identity by repeatedly moving inside the
/// orthogonal complement of the current Voronoi span.
FirstPerfectResult first_perfect(const OKLattice& lattice);

struct PerfectFormRecord {
  int id = 0;           // position in the sorted output, 0-based
  int class_id = 0;     // lattice class index a_j, 0-based
  HermForm form;        // minimum 1
  MinVecSet minvecs;
  Rational det_rel;
  std::size_t facet_count = 0;
  std::size_t aut_order = 0;
  std::string aut_type;

  friend bool operator==(const PerfectFormRecord& x, const PerfectFormRecord& y);
};

struct GraphEdge {
  int from = 0, to = 0;
  std::size_t weight = 0;
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct VoronoiGraph {
  std::vector<int> vertices;
  std::vector<GraphEdge> edges;  // sorted by (from, to)
  std::vector<int> marked;       // maximizers of the Hermite invariant

  std::size_t out_weight(int v) const;
  bool connected() const;
};

/// One Aut-orbit of facets of a class representative and where it leads.
struct FacetOrbit {
  std::size_t facet = 0;  // representative facet id
  std::vector<std::size_t> members;
  int target = 0;         // class reached through the facet
};

/// Registry of an enumeration in discovery order; enough to resume a run.
struct EnumerationState {
  std::vector<HermForm> forms;
  std::vector<bool> processed;
  std::vector<std::vector<FacetOrbit>> orbits;  // filled for processed forms
};

struct EnumerationOptions {
  int threads = 1;
  std::optional<std::chrono::seconds> time_budget;
  /// Called every `checkpoint_every` newly discovered classes and at the end.
  std::function<void(const EnumerationState&)> checkpoint;
  std::size_t checkpoint_every = 10;
  std::optional<EnumerationState> resume;
  std::function<void(const std::string&)> log;
};

struct EnumerationResult {
  OKLattice lattice;
  std::vector<PerfectFormRecord> records;  // sorted by fingerprint
  std::vector<PolyCone> cones;
  std::vector<AutGroup> auts;
  std::vector<std::vector<FacetOrbit>> orbits;
  VoronoiGraph graph;
  bool complete = true;
};

EnumerationResult enumerate_perfect(const OKLattice& lattice, const EnumerationOptions& options = {});

struct HermiteConstant {
  Rational gamma_n;  // gamma^n
  struct Maximizer {
    int class_id;   // lattice class index
    int record_id;  // record within that lattice's enumeration
  };
  std::vector<Maximizer> maximizers;
  std::vector<EnumerationResult> runs;  // one per lattice class representative
};

HermiteConstant hermite_constant(const QuadField& field, int n, const EnumerationOptions& options = {});

}  // namespace phf
