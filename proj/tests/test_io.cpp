#include <gtest/gtest.h>

#include "phf/io.hpp"
#include "run_cache.hpp"

using namespace phf;
using io::json;

TEST(IO, RationalText) {
  EXPECT_EQ(io::rational_text(make_rational(-3, 6)), "-1/2");
  EXPECT_EQ(io::rational_text(Rational(4)), "4/1");
  EXPECT_EQ(io::rational_from(json("13/180")), make_rational(13, 180));
  EXPECT_EQ(io::rational_from(json("7")), 7);
  EXPECT_THROW(io::rational_from(json(0.5)), std::invalid_argument);
}

TEST(IO, RecordsRoundTrip) {
  std::size_t n = 0;
  for (const auto* r : property_runs())
    for (const auto& rec : r->records) {
      json j = io::record_json(rec);
      EXPECT_EQ(j.at("schema"), 1);
      PerfectFormRecord back = io::record_from(json::parse(j.dump()));
      EXPECT_EQ(back, rec);
      ++n;
    }
  EXPECT_GE(n, 20u);
}

TEST(IO, FormEntriesArePairs) {
  const auto& rec = cached_run(15, 1).records[0];
  json j = io::form_json(rec.form, 1);
  EXPECT_EQ(j.at("class"), 2);
  EXPECT_EQ(j.at("d"), 15);
  EXPECT_EQ(j.at("n"), 2);
  EXPECT_EQ(j.at("entries")[0][0], json::array({"1/1", "0/1"}));
  int cls = -1;
  EXPECT_EQ(io::form_from(j, &cls), rec.form);
  EXPECT_EQ(cls, 1);
  j["schema"] = 2;
  EXPECT_THROW(io::form_from(j), std::invalid_argument);
}

TEST(IO, CheckpointStateRoundTrip) {
  QuadField k(10);
  auto g = std::make_shared<const ClassGroup>(class_group(k));
  OKLattice l = OKLattice::standard(k, g, 1, 2);
  std::vector<EnumerationState> states;
  EnumerationOptions o;
  o.checkpoint_every = 1;
  o.checkpoint = [&](const EnumerationState& s) { states.push_back(s); };
  enumerate_perfect(l, o);
  ASSERT_FALSE(states.empty());
  for (const auto& s : states) {
    EnumerationState back = io::state_from(json::parse(io::state_json(s, l).dump()), k);
    EXPECT_EQ(back.forms, s.forms);
    EXPECT_EQ(back.processed, s.processed);
    ASSERT_EQ(back.orbits.size(), s.orbits.size());
    for (std::size_t i = 0; i < s.orbits.size(); ++i) {
      ASSERT_EQ(back.orbits[i].size(), s.orbits[i].size());
      for (std::size_t t = 0; t < s.orbits[i].size(); ++t) {
        EXPECT_EQ(back.orbits[i][t].facet, s.orbits[i][t].facet);
        EXPECT_EQ(back.orbits[i][t].members, s.orbits[i][t].members);
        EXPECT_EQ(back.orbits[i][t].target, s.orbits[i][t].target);
      }
    }
  }
  EXPECT_THROW(io::state_from(io::state_json(states.back(), l), QuadField(5)), std::invalid_argument);
}

TEST(IO, DotMarksMaximizerAndWeights) {
  std::string dot = io::graph_dot(cached_run(10, 1).graph, "g");
  EXPECT_NE(dot.find("peripheries=2"), std::string::npos);
  EXPECT_NE(dot.find("[label=\"6\", weight=6]"), std::string::npos);
  std::size_t doubles = 0;
  for (std::size_t p = 0; (p = dot.find("peripheries=2", p)) != std::string::npos; ++p) ++doubles;
  EXPECT_EQ(doubles, 1u);
}

TEST(IO, TableHasPublishedColumns) {
  std::string t = io::records_table(cached_run(15, 1).records);
  for (const char* h : {"det_L(P)", "|S_L(P)|", "facets", "Aut(L,P)", "1/5", "C3:C4 (12)"})
    EXPECT_NE(t.find(h), std::string::npos) << h;
}

TEST(IO, GeneratorsJson) {
  const auto& r = cached_run(15, 1);
  json j = io::glgen_json(gl_generators(r), r.lattice);
  ASSERT_EQ(j.at("generators").size(), 10u);
  std::size_t edges = 0;
  for (const auto& g : j.at("generators")) {
    EXPECT_EQ(g.at("class_id"), 1);
    if (g.at("kind") == "edge") {
      ++edges;
      EXPECT_TRUE(g.at("facet_id").is_number_integer());
    } else {
      EXPECT_TRUE(g.at("facet_id").is_null());
    }
    KMatrix m = io::kmatrix_from(r.lattice.field(), g.at("matrix"));
    EXPECT_TRUE(r.lattice.is_automorphism(m));
  }
  EXPECT_EQ(edges, 8u);
}
