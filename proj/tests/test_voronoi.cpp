#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "phf/glgen.hpp"
#include "phf/voronoi.hpp"
#include "run_cache.hpp"
#include "table_data.hpp"

using namespace phf;

namespace {

using Tuple = std::tuple<Rational, std::size_t, std::size_t, std::size_t>;

std::multiset<Tuple> tuples(const EnumerationResult& r) {
  std::multiset<Tuple> s;
  for (const auto& x : r.records) s.insert({x.det_rel, x.minvecs.size(), x.facet_count, x.aut_order});
  return s;
}

std::multiset<Tuple> expected(std::int64_t d, int lattice) {
  std::multiset<Tuple> s;
  for (const auto& t : table_forms())
    if (t.d == d && t.lattice == lattice) s.insert({parse_rational(t.det), t.minvecs, t.facets, t.aut});
  return s;
}

std::set<ZVec> zset(const MinVecSet& s) {
  std::set<ZVec> out;
  for (const auto& v : s.vectors) out.insert(v.z);
  return out;
}

}  // namespace

TEST(Voronoi, FirstPerfectIsPerfect) {
  for (std::int64_t d : {1, 2, 3, 5, 7, 15, 23}) {
    QuadField k(d);
    auto g = std::make_shared<const ClassGroup>(class_group(k));
    for (int c = 0; c < g->order(); ++c) {
      OKLattice l = OKLattice::standard(k, g, c, 2);
      FirstPerfectResult fp = first_perfect(l);
      MinVecSet s = minimum_and_minvecs(fp.form, l);
      EXPECT_EQ(s.minimum, 1) << d;
      EXPECT_TRUE(is_perfect(s, 2).perfect) << d;
    }
  }
}

TEST(Voronoi, SmallTablesReproduced) {
  for (auto [d, c] : {std::pair{15, 0}, {15, 1}, {5, 0}, {5, 1}, {23, 0}, {6, 0}, {6, 1}, {10, 0}, {10, 1}}) {
    const auto& r = cached_run(d, c);
    EXPECT_TRUE(r.complete);
    EXPECT_EQ(tuples(r), expected(d, c)) << "d=" << d << " class " << c;
    for (std::size_t i = 0; i < r.records.size(); ++i) EXPECT_EQ(r.graph.out_weight(i), r.records[i].facet_count);
    EXPECT_TRUE(r.graph.connected());
  }
}

TEST(Voronoi, FreeGraphForD10) {
  const auto& r = cached_run(10, 0);
  ASSERT_EQ(r.records.size(), 2u);
  // P1 is the 1/8 form, P2 the 13/180 one
  int p1 = r.records[0].det_rel == make_rational(1, 8) ? 0 : 1, p2 = 1 - p1;
  std::map<std::pair<int, int>, std::size_t> w;
  for (const auto& e : r.graph.edges) w[{e.from, e.to}] = e.weight;
  std::map<std::pair<int, int>, std::size_t> want{{{p1, p1}, 2}, {{p1, p2}, 6}, {{p2, p2}, 6}, {{p2, p1}, 4}};
  EXPECT_EQ(w, want);
}

TEST(Voronoi, NonFreeGraphForD10) {
  const auto& r = cached_run(10, 1);
  ASSERT_EQ(r.records.size(), 3u);
  std::multiset<std::multiset<std::size_t>> got;
  for (int v : r.graph.vertices) {
    std::multiset<std::size_t> m;
    for (const auto& e : r.graph.edges)
      if (e.from == v) m.insert(e.weight);
    got.insert(m);
  }
  std::multiset<std::multiset<std::size_t>> want{{6, 4, 4}, {2, 6}, {6, 2}};
  EXPECT_EQ(got, want);
  ASSERT_EQ(r.graph.marked.size(), 1u);
  EXPECT_EQ(r.records[r.graph.marked[0]].det_rel, make_rational(1, 20));
}

TEST(Voronoi, ContiguityAcrossEveryFacet) {
  for (auto [d, c] : {std::pair{15, 0}, {10, 1}}) {
    const auto& r = cached_run(d, c);
    for (const auto& rec : r.records) {
      const PolyCone& cone = r.cones[rec.id];
      for (std::size_t f = 0; f < cone.facets.size(); ++f) {
        HermForm rf = facet_vector(r.lattice.field(), 2, cone, f);
        ContiguityResult res = contiguous(rec.form, 1, rf, r.lattice, f);
        EXPECT_GT(res.rho, 0);
        EXPECT_EQ(res.neighbor, rec.form.plus(rf, res.rho));
        MinVecSet mid = minimum_and_minvecs(rec.form.plus(rf, res.rho / 2), r.lattice);
        std::set<ZVec> inc;
        for (auto i : cone.facets[f].incident) inc.insert(rec.minvecs.vectors[i].z);
        EXPECT_EQ(mid.minimum, 1);
        EXPECT_EQ(zset(mid), inc);
        EXPECT_FALSE(res.new_vectors.empty());
      }
    }
  }
}

TEST(Voronoi, DimensionThreeFreeD15) {
  const auto& r = cached_run(15, 0, 3);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.records.size(), 11u);
  ASSERT_EQ(r.graph.marked.size(), 1u);
  const auto& best = r.records[r.graph.marked[0]];
  EXPECT_EQ(hermite_invariant(best.minvecs, best.form, r.lattice), 15);
  EXPECT_TRUE(r.graph.connected());
}

TEST(Voronoi, HermiteConstantsInDimensionTwo) {
  std::map<std::int64_t, Rational> want{{15, 5}, {5, 10}, {23, make_rational(23, 5)}, {6, 12}, {10, 20}};
  for (const auto& [d, g] : want) EXPECT_EQ(hermite_constant(QuadField(d), 2).gamma_n, g) << d;
}

TEST(Voronoi, ResumeFromCheckpointGivesSameRecords) {
  QuadField k(10);
  auto g = std::make_shared<const ClassGroup>(class_group(k));
  OKLattice l = OKLattice::standard(k, g, 1, 2);
  std::optional<EnumerationState> saved;
  EnumerationOptions o;
  o.checkpoint_every = 1;
  o.checkpoint = [&](const EnumerationState& s) {
    if (!saved && s.forms.size() >= 2) saved = s;
  };
  EnumerationResult full = enumerate_perfect(l, o);
  ASSERT_TRUE(saved.has_value());
  EnumerationOptions o2;
  o2.resume = saved;
  EnumerationResult resumed = enumerate_perfect(l, o2);
  EXPECT_EQ(resumed.records, full.records);
  EXPECT_EQ(resumed.graph.edges, full.graph.edges);
}

TEST(Voronoi, TimeBudgetMarksIncomplete) {
  QuadField k(5);
  auto g = std::make_shared<const ClassGroup>(class_group(k));
  EnumerationOptions o;
  o.time_budget = std::chrono::seconds(0);
  EnumerationResult r = enumerate_perfect(OKLattice::standard(k, g, 0, 3), o);
  EXPECT_FALSE(r.complete);
}

TEST(Voronoi, ThreadCountDoesNotChangeOutput) {
  QuadField k(6);
  auto g = std::make_shared<const ClassGroup>(class_group(k));
  OKLattice l = OKLattice::standard(k, g, 1, 2);
  EnumerationOptions o;
  o.threads = 3;
  EnumerationResult r = enumerate_perfect(l, o);
  EXPECT_EQ(r.records, cached_run(6, 1).records);
  EXPECT_EQ(r.graph.edges, cached_run(6, 1).graph.edges);
}

namespace {

KMatrix m2(const QuadField& k, std::vector<std::array<long, 4>> e, long scale = 1) {
  // entries (p1/p2) + (q1/q2) sqrt(-d), divided by scale
  std::vector<KElem> v;
  for (auto [p1, p2, q1, q2] : e) v.push_back(k.from_sqrt(make_rational(p1, p2 * scale), make_rational(q1, q2 * scale)));
  return KMatrix(2, 2, v);
}

}  // namespace

TEST(GLGen, NonFreeD15) {
  const auto& r = cached_run(15, 1);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.auts[0].order(), 12u);
  EXPECT_EQ(r.auts[0].type, "C3:C4");
  EXPECT_EQ(r.records[0].facet_count, 8u);
  GLGenSet gs = gl_generators(r);
  EXPECT_EQ(gs.generators.size(), 10u);
  EXPECT_EQ(gs.edge_count(), 8u);
  for (const auto& g : gs.generators) EXPECT_TRUE(verify_generator(g, r));
  // products of up to three generators stay in GL(L)
  for (const auto& a : gs.generators)
    for (const auto& b : gs.generators) {
      EXPECT_TRUE(r.lattice.is_automorphism(a.matrix * b.matrix));
      EXPECT_TRUE(r.lattice.is_automorphism(a.matrix * b.matrix * gs.generators[3].matrix));
    }
}

TEST(GLGen, PublishedMatricesPreserveL2) {
  QuadField k(15);
  const auto& l = cached_run(15, 1).lattice;
  std::vector<KMatrix> published = {
      m2(k, {{1, 1, 0, 1}, {-3, 2, -1, 2}, {3, 4, -1, 4}, {-2, 1, 0, 1}}),
      m2(k, {{1, 2, -1, 2}, {-5, 2, 1, 2}, {-1, 4, -1, 4}, {-1, 2, 1, 2}}),
      m2(k, {{-4, 1, -1, 1}, {0, 1, 2, 1}, {-4, 1, 0, 1}, {4, 1, 1, 1}}),
      m2(k, {{4, 1, 1, 1}, {-1, 2, -3, 2}, {3, 1, 0, 1}, {-5, 2, -1, 2}}),
      m2(k, {{7, 1, -1, 1}, {-15, 1, -1, 1}, {1, 1, -1, 1}, {-7, 1, 1, 1}}, 2),
      m2(k, {{1, 1, 0, 1}, {-3, 2, -1, 2}, {0, 1, 0, 1}, {-1, 1, 0, 1}}),
      m2(k, {{2, 1, -1, 1}, {-5, 2, 1, 2}, {-3, 4, -3, 4}, {-1, 2, 1, 2}}),
      m2(k, {{-3, 1, 1, 1}, {5, 1, -1, 1}, {-1, 1, 1, 1}, {3, 1, -1, 1}}, 2),
      m2(k, {{1, 1, 0, 1}, {-7, 2, -1, 2}, {0, 1, 0, 1}, {-1, 1, 0, 1}}),
      m2(k, {{1, 1, 0, 1}, {-2, 1, 0, 1}, {0, 1, 0, 1}, {-1, 1, 0, 1}}),
  };
  for (const auto& g : published) EXPECT_TRUE(l.is_automorphism(g));
  HermForm p(k, m2(k, {{1, 1, 0, 1}, {1, 2, 1, 10}, {1, 2, -1, 10}, {1, 2, 0, 1}}));
  EXPECT_EQ(p.transformed(published[0]), p);
  EXPECT_EQ(p.transformed(published[1]), p);
  EXPECT_TRUE(is_equivalent(cached_run(15, 1).records[0].form, p, l).has_value());
  // a matrix outside GL(L2): e1 -> e1 + e2 needs 1 in the second coefficient ideal
  EXPECT_FALSE(l.is_automorphism(m2(k, {{1, 1, 0, 1}, {1, 1, 0, 1}, {0, 1, 0, 1}, {1, 1, 0, 1}})));
}

TEST(GLGen, EveryGeneratorVerifiesOnSmallLattices) {
  for (auto [d, c] : {std::pair{15, 0}, {5, 1}, {6, 0}, {10, 0}, {10, 1}}) {
    const auto& r = cached_run(d, c);
    GLGenSet gs = gl_generators(r);
    std::size_t stab = 0;
    for (const auto& s : gs.stabilizer_gens) stab += s.size();
    EXPECT_EQ(gs.generators.size(), stab + gs.edge_count());
    for (const auto& g : gs.generators) EXPECT_TRUE(verify_generator(g, r)) << d;
  }
}
