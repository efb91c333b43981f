#include "phf/io.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace phf::io {

std::string rational_text(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected a rational string");
}

json kelem_json(const KElem& x) { return json::array({rational_text(x.re()), rational_text(x.im())}); }

KElem kelem_from(const QuadField& field, const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected a pair [re, im]");
  return field.from_sqrt(rational_from(j[0]), rational_from(j[1]));
}

json kmatrix_json(const KMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(kelem_json(m(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

KMatrix kmatrix_from(const QuadField& field, const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a matrix");
  std::size_t r = j.size(), c = j[0].size();
  KMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (j[i].size() != c) throw std::invalid_argument("ragged matrix");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = kelem_from(field, j[i][k]);
  }
  return m;
}

namespace {

void check_schema(const json& j) {
  if (!j.contains("schema") || j.at("schema").get<int>() != kSchema)
    throw std::invalid_argument("unsupported schema");
}

json z_json(const ZVec& z) { return json(z); }

}  // namespace

json form_json(const HermForm& a, int class_index) {
  return {{"schema", kSchema},
          {"d", a.field().d()},
          {"n", a.n()},
          {"class", class_index + 1},
          {"entries", kmatrix_json(a.matrix())}};
}

HermForm form_from(const json& j, int* class_index) {
  check_schema(j);
  QuadField k(j.at("d").get<std::int64_t>());
  HermForm a(k, kmatrix_from(k, j.at("entries")));
  if (a.n() != j.at("n").get<int>()) throw std::invalid_argument("dimension mismatch");
  if (class_index) *class_index = j.at("class").get<int>() - 1;
  return a;
}

json record_json(const PerfectFormRecord& r) {
  json j = form_json(r.form, r.class_id);
  j["id"] = r.id + 1;
  j["minimum"] = rational_text(r.minvecs.minimum);
  json mv = json::array();
  for (const auto& v : r.minvecs.vectors) {
    json x = json::array();
    for (const auto& e : v.x) x.push_back(kelem_json(e));
    mv.push_back({{"z", z_json(v.z)}, {"x", x}, {"rep", v.rep + 1}, {"coeff_norm", rational_text(v.coeff_norm)}});
  }
  j["minvecs"] = mv;
  j["det"] = rational_text(r.det_rel);
  j["minvec_count"] = r.minvecs.size();
  j["facets"] = r.facet_count;
  j["aut_order"] = r.aut_order;
  j["aut_type"] = r.aut_type;
  return j;
}

PerfectFormRecord record_from(const json& j) {
  PerfectFormRecord r;
  r.form = form_from(j, &r.class_id);
  r.id = j.at("id").get<int>() - 1;
  r.minvecs.minimum = rational_from(j.at("minimum"));
  for (const auto& v : j.at("minvecs")) {
    MinVec m;
    m.z = v.at("z").get<ZVec>();
    for (const auto& e : v.at("x")) m.x.push_back(kelem_from(r.form.field(), e));
    m.rep = v.at("rep").get<int>() - 1;
    m.coeff_norm = rational_from(v.at("coeff_norm"));
    r.minvecs.vectors.push_back(std::move(m));
  }
  if (j.at("minvec_count").get<std::size_t>() != r.minvecs.size())
    throw std::invalid_argument("minimal vector count mismatch");
  r.det_rel = rational_from(j.at("det"));
  r.facet_count = j.at("facets").get<std::size_t>();
  r.aut_order = j.at("aut_order").get<std::size_t>();
  r.aut_type = j.at("aut_type").get<std::string>();
  return r;
}

json run_json(const EnumerationResult& run) {
  const OKLattice& l = run.lattice;
  json recs = json::array();
  for (const auto& r : run.records) recs.push_back(record_json(r));
  json edges = json::array();
  for (const auto& e : run.graph.edges) edges.push_back({{"from", e.from + 1}, {"to", e.to + 1}, {"weight", e.weight}});
  json marked = json::array();
  for (int v : run.graph.marked) marked.push_back(v + 1);
  json ideals = json::array();
  for (const auto& c : l.coeff_ideals()) ideals.push_back(c.to_string());
  return {{"schema", kSchema},
          {"d", l.field().d()},
          {"n", l.n()},
          {"class", l.steinitz_class() + 1},
          {"coefficient_ideals", ideals},
          {"complete", run.complete},
          {"records", recs},
          {"graph", {{"edges", edges}, {"marked", marked}}}};
}

json state_json(const EnumerationState& s, const OKLattice& lattice) {
  json forms = json::array();
  for (const auto& f : s.forms) forms.push_back(kmatrix_json(f.matrix()));
  json orbits = json::array();
  for (const auto& per : s.orbits) {
    json o = json::array();
    for (const auto& fo : per) o.push_back({{"facet", fo.facet}, {"members", fo.members}, {"target", fo.target}});
    orbits.push_back(std::move(o));
  }
  return {{"schema", kSchema},
          {"d", lattice.field().d()},
          {"n", lattice.n()},
          {"class", lattice.steinitz_class() + 1},
          {"forms", forms},
          {"processed", s.processed},
          {"orbits", orbits}};
}

EnumerationState state_from(const json& j, const QuadField& field) {
  check_schema(j);
  if (j.at("d").get<std::int64_t>() != field.d()) throw std::invalid_argument("checkpoint is for another field");
  EnumerationState s;
  for (const auto& f : j.at("forms")) s.forms.emplace_back(field, kmatrix_from(field, f));
  s.processed = j.at("processed").get<std::vector<bool>>();
  for (const auto& per : j.at("orbits")) {
    std::vector<FacetOrbit> o;
    for (const auto& fo : per)
      o.push_back({fo.at("facet").get<std::size_t>(), fo.at("members").get<std::vector<std::size_t>>(),
                   fo.at("target").get<int>()});
    s.orbits.push_back(std::move(o));
  }
  if (s.processed.size() != s.forms.size() || s.orbits.size() != s.forms.size())
    throw std::invalid_argument("inconsistent checkpoint");
  return s;
}

json glgen_json(const GLGenSet& g, const OKLattice& lattice) {
  json gens = json::array();
  for (const auto& x : g.generators) {
    bool edge = x.kind == GLGenerator::Kind::edge;
    json e = {{"kind", edge ? "edge" : "stabilizer"},
              {"class_id", x.class_id + 1},
              {"facet_id", edge ? json(*x.facet_id + 1) : json(nullptr)},
              {"matrix", kmatrix_json(x.matrix)}};
    if (edge) e["target"] = x.target + 1;
    gens.push_back(std::move(e));
  }
  return {{"schema", kSchema},
          {"d", lattice.field().d()},
          {"n", lattice.n()},
          {"class", lattice.steinitz_class() + 1},
          {"generators", gens}};
}

std::string graph_dot(const VoronoiGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  node [shape=circle];\n";
  for (int v : g.vertices) {
    bool m = std::find(g.marked.begin(), g.marked.end(), v) != g.marked.end();
    os << "  P" << v + 1 << " [label=\"P" << v + 1 << "\"" << (m ? ", peripheries=2" : "") << "];\n";
  }
  for (const auto& e : g.edges)
    os << "  P" << e.from + 1 << " -> P" << e.to + 1 << " [label=\"" << e.weight << "\", weight=" << e.weight
       << "];\n";
  os << "}\n";
  return os.str();
}

std::string records_table(const std::vector<PerfectFormRecord>& records) {
  std::ostringstream os;
  os << std::left << std::setw(6) << "P" << std::setw(12) << "det_L(P)" << std::setw(10) << "|S_L(P)|"
     << std::setw(8) << "facets"
     << "Aut(L,P)\n";
  for (const auto& r : records)
    os << std::setw(6) << ("P" + std::to_string(r.id + 1)) << std::setw(12) << to_string(r.det_rel)
       << std::setw(10) << r.minvecs.size() << std::setw(8) << r.facet_count << r.aut_type << " (" << r.aut_order
       << ")\n";
  return os.str();
}

}  // namespace phf::io
