#include "phf/glgen.hpp"

#include "phf/error.hpp"

namespace phf {

std::size_t GLGenSet::edge_count() const {
  std::size_t c = 0;
  for (const auto& g : generators) c += g.kind == GLGenerator::Kind::edge;
  return c;
}

namespace {

int orbit_target(const EnumerationResult& run, int record, std::size_t facet) {
  for (const auto& o : run.orbits.at(record))
    for (auto m : o.members)
      if (m == facet) return o.target;
  throw InvariantViolation("facet missing from every orbit");
}

HermForm neighbour(const EnumerationResult& run, int record, std::size_t facet) {
  const auto& rec = run.records.at(record);
  HermForm r = facet_vector(run.lattice.field(), run.lattice.n(), run.cones.at(record), facet);
  return contiguous(rec.form, rec.minvecs.minimum, r, run.lattice, facet).neighbor;
}

}  // namespace

GLGenSet gl_generators(const EnumerationResult& run) {
  ensure(run.complete, "generators need a complete enumeration");
  const OKLattice& l = run.lattice;
  GLGenSet out;
  for (const auto& rec : run.records) {
    out.stabilizer_gens.push_back(run.auts.at(rec.id).generators);
    for (const auto& g : out.stabilizer_gens.back()) {
      ensure(l.is_automorphism(g), "stabilizer generator leaves the lattice");
      ensure(rec.form.transformed(g) == rec.form, "stabilizer generator moves the form");
      out.generators.push_back({GLGenerator::Kind::stabilizer, g, rec.id, std::nullopt, rec.id});
    }
  }
  for (const auto& rec : run.records) {
    for (std::size_t f = 0; f < run.cones.at(rec.id).facets.size(); ++f) {
      int t = orbit_target(run, rec.id, f);
      HermForm a = neighbour(run, rec.id, f);
      bool is_rep = false;
      for (const auto& other : run.records) is_rep = is_rep || other.form == a;
      if (is_rep) continue;
      auto u = is_equivalent(run.records[t].form, a, l);
      ensure(u.has_value(), "neighbour is not equivalent to its recorded class");
      ensure(l.is_automorphism(*u), "edge generator leaves the lattice");
      out.generators.push_back({GLGenerator::Kind::edge, *u, rec.id, f, t});
    }
  }
  return out;
}

GLGenSet gl_generators(const OKLattice& lattice, const EnumerationOptions& options) {
  return gl_generators(enumerate_perfect(lattice, options));
}

bool verify_generator(const GLGenerator& g, const EnumerationResult& run) {
  if (!run.lattice.is_automorphism(g.matrix)) return false;
  const auto& p = run.records.at(g.class_id).form;
  if (g.kind == GLGenerator::Kind::stabilizer) return p.transformed(g.matrix) == p;
  if (!g.facet_id) return false;
  return run.records.at(g.target).form.transformed(g.matrix) == neighbour(run, g.class_id, *g.facet_id);
}

}  // namespace phf
