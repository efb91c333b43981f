// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "phf/glgen.hpp"
#include "phf/voronoi.hpp"
#include "properties.hpp"

using namespace phf;

namespace {

// (det, |S|, facets, Aut) with Aut given by its order or by its type
using Row = std::tuple<std::string, std::size_t, std::size_t, std::string>;

struct Lattice {
  std::int64_t d;
  std::vector<std::array<long, 3>> ideal;  // generators (p + q sqrt(-d))/den; empty = O_K
  std::multiset<Row> rows;
};

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void fail(const std::string& s) {
    if (ok) note << s;
    ok = false;
  }
};

int class_index(const QuadField& k, const ClassGroup& g, const std::vector<std::array<long, 3>>& gens) {
  if (gens.empty()) return 0;
  std::vector<KElem> e;
  for (auto [p, q, den] : gens) e.push_back(k.from_sqrt(make_rational(p, den), make_rational(q, den)));
  return class_of(g, FracIdeal::from_generators(k, e)).index;
}

EnumerationResult run(std::int64_t d, const std::vector<std::array<long, 3>>& gens, int n = 2) {
  QuadField k(d);
  auto g = std::make_shared<const ClassGroup>(class_group(k));
  return enumerate_perfect(OKLattice::standard(k, g, class_index(k, *g, gens), n));
}

void compare(const Lattice& want, bool by_type, Outcome& out) {
  EnumerationResult r = run(want.d, want.ideal);
  std::multiset<Row> got;
  for (const auto& rec : r.records)
    got.insert({to_string(rec.det_rel), rec.minvecs.size(), rec.facet_count,
                by_type ? rec.aut_type : std::to_string(rec.aut_order)});
  if (!r.complete || got != want.rows) {
    std::ostringstream s;
    s << "d=" << want.d << " " << r.lattice.coeff_ideals().back().to_string() << ":";
    for (const auto& [det, sz, f, a] : got) s << " (" << det << "," << sz << "," << f << "," << a << ")";
    out.fail(s.str());
  }
}

void report(int id, const std::string& title, Outcome& o) {
  std::cout << (o.ok ? "PASS" : "FAIL") << " " << id << " " << title;
  std::string n = o.note.str();
  if (!n.empty()) std::cout << " -- " << n;
  std::cout << std::endl;
}

template <class F>
bool criterion(int id, const std::string& title, F&& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.ok) o.note << std::fixed << std::setprecision(1) << s << "s";
  report(id, title, o);
  return o.ok;
}

KMatrix m2(const QuadField& k, std::vector<std::array<long, 4>> e, long scale = 1) {
  std::vector<KElem> v;
  for (auto [p1, p2, q1, q2] : e) v.push_back(k.from_sqrt(make_rational(p1, p2 * scale), make_rational(q1, q2 * scale)));
  return KMatrix(2, 2, v);
}

}  // namespace

int main() {
  bool all = true;

  all &= criterion(1, "dimension-2 classes for d=15, 5, 23, 6 (det, |S|, facets, |Aut|)", [](Outcome& o) {
    std::vector<Lattice> t1 = {
        {15, {}, {{"1/3", 6, 8, "6"}, {"2/5", 4, 4, "4"}}},
        {15, {{2, 0, 1}, {-1, 1, 2}}, {{"1/5", 12, 8, "12"}}},
        {5, {}, {{"3/10", 6, 5, "6"}, {"1/5", 8, 6, "8"}}},
        {5, {{2, 0, 1}, {1, 1, 1}}, {{"1/10", 24, 14, "24"}}},
        {23, {}, {{"5/23", 9, 8, "6"}, {"7/23", 6, 5, "4"}}},
        {6, {}, {{"1/12", 24, 26, "24"}}},
        {6, {{2, 0, 1}, {0, 1, 1}}, {{"1/6", 8, 6, "8"}, {"1/8", 12, 8, "12"}}},
    };
    for (const auto& l : t1) compare(l, false, o);
  });

  all &= criterion(2, "dimension-2 classes for d=10, 21", [](Outcome& o) {
    std::vector<Lattice> t2 = {
        {10, {}, {{"1/8", 6, 8, "6"}, {"13/180", 12, 10, "4"}}},
        {10, {{2, 0, 1}, {0, 1, 1}}, {{"1/20", 24, 14, "24"}, {"3/40", 12, 8, "12"}, {"3/40", 12, 8, "12"}}},
    };
    for (const auto& l : t2) compare(l, false, o);
    std::vector<Lattice> t21 = {
        {21, {}, {{"1/6", 6, 8, "C6"}, {"1/28", 24, 26, "C3:C4"}, {"1/28", 24, 26, "C3:C4"},
                  {"1/6", 6, 8, "C6"}, {"1/14", 12, 8, "C6"}, {"1/7", 8, 6, "C4"}}},
        {21, {{2, 0, 1}, {-1, 1, 1}}, {{"5/42", 8, 6, "C4"}, {"1/14", 8, 6, "C4"}, {"11/126", 8, 6, "C2"},
                                 {"11/126", 8, 6, "C2"}, {"5/42", 8, 6, "C4"}}},
        {21, {{5, 0, 1}, {-2, 1, 1}}, {{"1/21", 16, 10, "Q8"}, {"1/21", 16, 10, "Q8"}, {"1/12", 8, 6, "C4"},
                                 {"1/12", 8, 6, "C4"}, {"1/27", 16, 10, "C4"}}},
        {21, {{3, 0, 1}, {0, 1, 1}}, {{"1/18", 12, 8, "C6"}, {"1/24", 16, 10, "C4"}, {"1/42", 48, 26, "SL(2,3)"},
                                {"1/42", 48, 26, "SL(2,3)"}}},
    };
    for (const auto& l : t21) compare(l, true, o);
  });

  all &= criterion(3, "Hermite constants gamma^2", [](Outcome& o) {
    std::vector<std::pair<std::int64_t, Rational>> want{
        {15, 5}, {5, 10}, {23, make_rational(23, 5)}, {6, 12}, {10, 20}, {21, 42}};
    for (const auto& [d, g] : want) {
      QuadField k(d);
      HermiteConstant hc = hermite_constant(k, 2);
      if (hc.gamma_n != g) o.fail("d=" + std::to_string(d) + " gamma^2=" + to_string(hc.gamma_n));
      if (d == 21) {
        int c3 = class_index(k, class_group(k), {{3, 0, 1}, {0, 1, 1}});
        std::size_t on_c3 = 0;
        for (const auto& m : hc.maximizers) on_c3 += m.class_id == c3;
        if (on_c3 != 2 || hc.maximizers.size() != 2)
          o.fail("d=21: " + std::to_string(hc.maximizers.size()) + " maximizers, " + std::to_string(on_c3) +
                 " on <3, sqrt(-21)>");
      }
    }
  });

  all &= criterion(4, "Voronoi graphs for d=10", [](Outcome& o) {
    EnumerationResult f = run(10, {});
    int p1 = f.records.at(0).det_rel == make_rational(1, 8) ? 0 : 1, p2 = 1 - p1;
    std::map<std::pair<int, int>, std::size_t> w;
    for (const auto& e : f.graph.edges) w[{e.from, e.to}] = e.weight;
    std::map<std::pair<int, int>, std::size_t> want{{{p1, p1}, 2}, {{p1, p2}, 6}, {{p2, p2}, 6}, {{p2, p1}, 4}};
    if (w != want) o.fail("free graph differs");
    EnumerationResult nf = run(10, {{2, 0, 1}, {0, 1, 1}});
    std::multiset<std::multiset<std::size_t>> got;
    for (int v : nf.graph.vertices) {
      std::multiset<std::size_t> m;
      for (const auto& e : nf.graph.edges)
        if (e.from == v) m.insert(e.weight);
      got.insert(m);
    }
    if (got != std::multiset<std::multiset<std::size_t>>{{6, 4, 4}, {2, 6}, {6, 2}}) o.fail("non-free graph differs");
    for (const auto* r : {&f, &nf})
      for (const auto& rec : r->records)
        if (r->graph.out_weight(rec.id) != rec.facet_count) o.fail("out-weight != facets");
  });

  all &= criterion(5, "n=3, d=15: 11 classes, gamma^3 = 15, unique maximizer", [](Outcome& o) {
    HermiteConstant hc = hermite_constant(QuadField(15), 3);
    if (hc.runs.size() != 1) o.fail("expected a single lattice class");
    if (hc.runs.at(0).records.size() != 11) o.fail(std::to_string(hc.runs[0].records.size()) + " classes");
    if (hc.gamma_n != 15) o.fail("gamma^3=" + to_string(hc.gamma_n));
    if (hc.maximizers.size() != 1) o.fail(std::to_string(hc.maximizers.size()) + " maximizers");
  });

  all &= criterion(6, "GL(L2) generators for d=15", [](Outcome& o) {
    QuadField k(15);
    EnumerationResult r = run(15, {{2, 0, 1}, {-1, 1, 2}});
    if (r.records.size() != 1) return o.fail("expected one perfect form");
    if (r.auts[0].order() != 12 || r.auts[0].type != "C3:C4") o.fail("stabilizer " + r.auts[0].type);
    if (r.records[0].facet_count != 8) o.fail("facets");
    GLGenSet gs = gl_generators(r);
    if (gs.generators.size() != 10 || gs.edge_count() != 8)
      o.fail(std::to_string(gs.generators.size()) + " generators");
    for (const auto& g : gs.generators)
      if (!verify_generator(g, r)) o.fail("generator fails verification");
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
    for (std::size_t i = 0; i < published.size(); ++i)
      if (!r.lattice.is_automorphism(published[i])) o.fail("published matrix " + std::to_string(i + 1));
  });

  all &= criterion(7, "property suites (>= 100 instances each)", [](Outcome& o) {
    std::vector<std::pair<std::string, props::Report>> reps = {
        {"scaling/GL invariance", props::scaling_and_substitution()},
        {"ideal multiples", props::ideal_multiples()},
        {"brute-force oracle", props::brute_force_oracle()},
        {"facet indefiniteness", props::facet_indefiniteness()},
        {"contiguity", props::contiguity()},
        {"reconstruction", props::reconstruction()},
        {"graph connectivity", props::graph_connectivity()},
    };
    for (const auto& [name, r] : reps) {
      if (!r.passed())
        o.fail(name + ": " + std::to_string(r.failures) + " failures in " + std::to_string(r.instances) + " (" +
               r.first_failure + ")");
      else
        o.note << name << " " << r.instances << "; ";
    }
  });

  return all ? 0 : 1;
}
