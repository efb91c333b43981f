#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "phf/glgen.hpp"
#include "phf/voronoi.hpp"

namespace phf::io {

using nlohmann::json;

inline constexpr int kSchema = 1;

// Rationals travel as "p/q" strings; K-elements as pairs [re, im] meaning
// re + im sqrt(-d). Class and record indices in documents are 1-based.
std::string rational_text(const Rational& q);
Rational rational_from(const json& j);

json kelem_json(const KElem& x);
KElem kelem_from(const QuadField& field, const json& j);

json kmatrix_json(const KMatrix& m);
KMatrix kmatrix_from(const QuadField& field, const json& j);

/// {schema, d, n, class, entries}
json form_json(const HermForm& a, int class_index);
HermForm form_from(const json& j, int* class_index = nullptr);

json record_json(const PerfectFormRecord& r);
PerfectFormRecord record_from(const json& j);

/// Whole enumeration of one lattice: records, graph, orbits.
json run_json(const EnumerationResult& run);

json state_json(const EnumerationState& s, const OKLattice& lattice);
EnumerationState state_from(const json& j, const QuadField& field);

json glgen_json(const GLGenSet& g, const OKLattice& lattice);

/// Weighted digraph; weights as label and weight attribute, maximizers
/// drawn with a double border.
std::string graph_dot(const VoronoiGraph& g, const std::string& name);

/// Plain-text table with the columns det_L(P), |S_L(P)|, facets, Aut(L,P).
std::string records_table(const std::vector<PerfectFormRecord>& records);

}  // namespace phf::io
