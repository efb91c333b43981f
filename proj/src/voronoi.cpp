#include "phf/voronoi.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <map>
#include <mutex>
#include <thread>

#include "phf/error.hpp"
#include "phf/short_vectors.hpp"

namespace phf {

namespace {

Rational quad(const QMatrix& g, const ZVec& z) {
  Rational s = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!z[i]) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < z.size(); ++j)
      if (z[j]) row += g(i, j) * static_cast<long>(z[j]);
    s += row * static_cast<long>(z[i]);
  }
  return s;
}

ZMatrix integral(const QMatrix& m) {
  ZMatrix z(m.rows(), m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      ensure(m(i, j).get_den() == 1, "automorphism is not integral on the lattice");
      z(i, j) = to_int64(m(i, j).get_num());
    }
  return z;
}

ZVec z_apply(const ZVec& z, const ZMatrix& m) {
  ZVec r(z.size(), 0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] == 0) continue;
    for (std::size_t j = 0; j < z.size(); ++j) r[j] += z[i] * m(i, j);
  }
  return r;
}

}  // namespace

PolyCone voronoi_domain(const HermForm& a, const MinVecSet& s) {
  std::vector<QVec> rays;
  rays.reserve(s.size());
  for (const auto& v : s.vectors) rays.push_back(outer_coords(v.x));
  return facet_enumeration(rays, trace_pairing_gram(a.n(), a.field().d()));
}

HermForm facet_vector(const QuadField& field, int n, const PolyCone& cone, std::size_t facet_id) {
  if (facet_id >= cone.facets.size()) throw std::out_of_range("facet id out of range");
  const IVec& c = cone.facets[facet_id].normal;
  QVec q(c.begin(), c.end());
  return HermForm(field, herm_from_coords(field, n, q));
}

ZVec negative_witness(const HermForm& a, const HermForm& r, const OKLattice& lattice) {
  IntGram ta = trace_form(a.matrix(), lattice);
  QMatrix tr = trace_form(r.matrix(), lattice).gram;
  ShortVectors sv(ta.gram);
  ensure(sv.positive_definite(), "witness search needs a positive definite form");
  QMatrix red = lll_reduce(ta.gram).gram;
  Rational bound = red(0, 0);
  for (std::size_t i = 1; i < red.rows(); ++i) bound = std::min(bound, red(i, i));
  for (int round = 0; round < 64; ++round) {
    std::optional<ZVec> found;
    Rational best;
    sv.for_each(bound, [&](const ZVec& z, const Rational&) {
      Rational v = quad(tr, z);
      if (sgn(v) < 0 && (!found || v < best)) {
        found = z;
        best = v;
      }
    });
    if (found) return *found;
    bound *= 2;
  }
  throw InvariantViolation("facet vector has no negative lattice vector");
}

ContiguityResult contiguous(const HermForm& a, const Rational& minimum, const HermForm& r,
                            const OKLattice& lattice, std::size_t facet_id) {
  const Rational& m = minimum;
  auto cw = canonical_vector(lattice, negative_witness(a, r, lattice));
  ensure(cw.has_value(), "zero witness");
  Rational rx = r[cw->x];
  Rational hi = (m * cw->coeff_norm - a[cw->x]) / rx;
  ensure(sgn(hi) > 0, "witness vector is already minimal");

  const Rational mtilde = lattice.max_rep_norm();
  const QMatrix tr = trace_form(r.matrix(), lattice).gram;
  Rational lo = 0, u = hi;
  for (int iter = 0; iter < 512; ++iter) {
    HermForm au = a.plus(r, u);
    ShortVectors sv(trace_form(au.matrix(), lattice).gram);
    if (!sv.positive_definite()) {
      hi = u;
      u = (lo + u) / 2;
      continue;
    }
    std::optional<Rational> root;
    std::vector<ZVec> tangent;
    sv.for_each(m * mtilde, [&](const ZVec& z, const Rational& norm) {
      int j = lattice.coeff_class_rep(z);
      if (j < 0) return;
      Rational target = m * lattice.classes().reps[j].norm();
      if (norm > target) return;
      Rational rv = quad(tr, z);
      if (norm < target) {
        ensure(sgn(rv) < 0, "violating vector with nonnegative facet value");
        Rational t = (target - (norm - u * rv)) / rv;
        if (!root || t < *root) root = t;
      } else if (sgn(rv) < 0) {
        tangent.push_back(z);
      }
    });
    if (root) {
      ensure(*root > lo, "contiguity root below the lower bound");
      hi = u;
      u = *root;
      continue;
    }
    if (!tangent.empty()) {
      ContiguityResult res{u, au, facet_id, {}};
      std::vector<ZVec> seen;
      for (const auto& z : tangent) {
        MinVec mv = *canonical_vector(lattice, z);
        if (std::find(seen.begin(), seen.end(), mv.z) != seen.end()) continue;
        seen.push_back(mv.z);
        res.new_vectors.push_back(std::move(mv));
      }
      return res;
    }
    lo = u;
    u = (lo + hi) / 2;
  }
  throw InvariantViolation("contiguous form search did not converge");
}

FirstPerfectResult first_perfect(const OKLattice& lattice) {
  const int n = lattice.n();
  const QuadField& k = lattice.field();
  HermForm a = HermForm::identity(k, n);
  a = a.scaled(1 / minimum_and_minvecs(a, lattice).minimum);
  for (int step = 0; step <= n * n; ++step) {
    MinVecSet s = minimum_and_minvecs(a, lattice);
    ensure(s.minimum == 1, "first perfect form lost its minimum");
    PerfectionInfo info = is_perfect(s, n);
    if (info.perfect) return {a, step};
    QMatrix sys(s.size(), n * n);
    for (std::size_t i = 0; i < s.size(); ++i) {
      QVec f = evaluation_functional(s.vectors[i].x);
      for (int j = 0; j < n * n; ++j) sys(i, j) = f[j];
    }
    auto null = nullspace(sys);
    ensure(!null.empty(), "non-perfect form with full rank");
    IVec c = primitive(null.front());
    HermForm r(k, herm_from_coords(k, n, QVec(c.begin(), c.end())));
    if (r.is_positive_semidefinite()) r = r.scaled(-1);
    a = contiguous(a, 1, r, lattice).neighbor;
  }
  throw InvariantViolation("no perfect form within n^2 steps");
}

bool operator==(const PerfectFormRecord& x, const PerfectFormRecord& y) {
  if (x.id != y.id || x.class_id != y.class_id || !(x.form == y.form) || x.det_rel != y.det_rel ||
      x.facet_count != y.facet_count || x.aut_order != y.aut_order || x.aut_type != y.aut_type ||
      x.minvecs.minimum != y.minvecs.minimum || x.minvecs.size() != y.minvecs.size())
    return false;
  for (std::size_t i = 0; i < x.minvecs.size(); ++i) {
    const auto& p = x.minvecs.vectors[i];
    const auto& q = y.minvecs.vectors[i];
    if (p.z != q.z || p.x != q.x || p.rep != q.rep || p.coeff_norm != q.coeff_norm) return false;
  }
  return true;
}

std::size_t VoronoiGraph::out_weight(int v) const {
  std::size_t s = 0;
  for (const auto& e : edges)
    if (e.from == v) s += e.weight;
  return s;
}

bool VoronoiGraph::connected() const {
  if (vertices.empty()) return true;
  std::map<int, std::vector<int>> adj;
  for (const auto& e : edges) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<int> stack{vertices.front()};
  std::vector<int> seen{vertices.front()};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (std::find(seen.begin(), seen.end(), w) == seen.end()) {
        seen.push_back(w);
        stack.push_back(w);
      }
  }
  return seen.size() == vertices.size();
}

namespace {

struct ClassData {
  HermForm form;
  MinVecSet minvecs;
  Rational det;
  std::vector<Rational> norms;  // sorted N(a_x) over S
  PolyCone cone;
  AutGroup aut;
};

struct Neighbor {
  std::size_t facet;
  std::vector<std::size_t> members;
  HermForm form;
  MinVecSet minvecs;
  Rational det;
};

std::vector<Rational> norm_multiset(const MinVecSet& s) {
  std::vector<Rational> v;
  for (const auto& x : s.vectors) v.push_back(x.coeff_norm);
  std::sort(v.begin(), v.end());
  return v;
}

// Orbits of the automorphism group on the facets of the Voronoi domain.
std::vector<std::vector<std::size_t>> facet_orbits(const ClassData& c, const OKLattice& lattice) {
  std::map<ZVec, std::size_t> index;
  for (std::size_t i = 0; i < c.minvecs.size(); ++i) index[c.minvecs.vectors[i].z] = i;
  std::map<std::vector<std::size_t>, std::size_t> facet_index;
  for (std::size_t f = 0; f < c.cone.facets.size(); ++f) facet_index[c.cone.facets[f].incident] = f;

  std::vector<std::vector<std::size_t>> perms;
  for (const auto& g : c.aut.elements) {
    ZMatrix zg = integral(lattice.z_matrix(g));
    std::vector<std::size_t> p(c.minvecs.size());
    for (std::size_t i = 0; i < c.minvecs.size(); ++i) {
      auto mv = canonical_vector(lattice, z_apply(c.minvecs.vectors[i].z, zg));
      auto it = index.find(mv->z);
      ensure(it != index.end(), "automorphism does not permute the minimal vectors");
      p[i] = it->second;
    }
    perms.push_back(std::move(p));
  }

  std::vector<bool> done(c.cone.facets.size(), false);
  std::vector<std::vector<std::size_t>> orbits;
  for (std::size_t f = 0; f < c.cone.facets.size(); ++f) {
    if (done[f]) continue;
    std::vector<std::size_t> orbit;
    for (const auto& p : perms) {
      std::vector<std::size_t> img;
      for (auto i : c.cone.facets[f].incident) img.push_back(p[i]);
      std::sort(img.begin(), img.end());
      auto it = facet_index.find(img);
      ensure(it != facet_index.end(), "automorphism does not permute the facets");
      if (!done[it->second]) {
        done[it->second] = true;
        orbit.push_back(it->second);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

class Enumerator {
 public:
  Enumerator(const OKLattice& lattice, const EnumerationOptions& opt) : lattice_(lattice), opt_(opt) {}

  EnumerationResult run() {
    start_ = std::chrono::steady_clock::now();
    if (opt_.resume && !opt_.resume->forms.empty()) {
      const auto& st = *opt_.resume;
      for (std::size_t i = 0; i < st.forms.size(); ++i) {
        MinVecSet s = minimum_and_minvecs(st.forms[i], lattice_);
        add_class(st.forms[i], std::move(s));
        bool done = i < st.processed.size() && st.processed[i];
        processed_[i] = done;
        if (done) orbits_[i] = st.orbits.at(i);
      }
    } else {
      HermForm p = first_perfect(lattice_).form;
      add_class(p, minimum_and_minvecs(p, lattice_));
    }

    bool complete = true;
    std::size_t since_checkpoint = 0;
    for (;;) {
      std::vector<std::size_t> batch;
      for (std::size_t i = 0; i < classes_.size(); ++i)
        if (!processed_[i]) batch.push_back(i);
      if (batch.empty()) break;
      std::size_t width = std::max(1, opt_.threads);
      if (batch.size() > width) batch.resize(width);
      if (over_budget()) {
        complete = false;
        break;
      }
      std::vector<std::vector<Neighbor>> results(batch.size());
      std::vector<std::vector<std::vector<std::size_t>>> orbit_sets(batch.size());
      run_parallel(batch.size(), [&](std::size_t b) {
        orbit_sets[b] = facet_orbits(classes_[batch[b]], lattice_);
        results[b] = neighbors(classes_[batch[b]], orbit_sets[b]);
      });
      for (std::size_t b = 0; b < batch.size(); ++b) {
        std::size_t i = batch[b];
        for (auto& nb : results[b]) {
          std::size_t before = classes_.size();
          int target = find_or_add(std::move(nb.form), std::move(nb.minvecs), nb.det);
          orbits_[i].push_back({nb.facet, nb.members, target});
          if (classes_.size() > before && ++since_checkpoint >= opt_.checkpoint_every) {
            since_checkpoint = 0;
            checkpoint();
          }
        }
        processed_[i] = true;
        std::size_t total = 0;
        for (const auto& o : orbits_[i]) total += o.members.size();
        ensure(total == classes_[i].cone.facets.size(), "facet orbits do not cover the facets");
        if (opt_.log)
          opt_.log("class " + std::to_string(i) + " done: " + std::to_string(classes_.size()) + " classes, " +
                   std::to_string(std::count(processed_.begin(), processed_.end(), false)) + " open");
      }
    }
    checkpoint();
    return finish(complete);
  }

 private:
  const OKLattice& lattice_;
  const EnumerationOptions& opt_;
  std::chrono::steady_clock::time_point start_;
  std::deque<ClassData> classes_;
  std::deque<bool> processed_;
  std::deque<std::vector<FacetOrbit>> orbits_;

  bool over_budget() const {
    return opt_.time_budget && std::chrono::steady_clock::now() - start_ > *opt_.time_budget;
  }

  template <class F>
  void run_parallel(std::size_t count, F&& f) {
    std::size_t threads = std::min<std::size_t>(count, std::max(1, opt_.threads));
    if (threads <= 1) {
      for (std::size_t i = 0; i < count; ++i) f(i);
      return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < count;) {
          try {
            f(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!error) error = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  std::vector<Neighbor> neighbors(const ClassData& c, const std::vector<std::vector<std::size_t>>& orbits) const {
    std::vector<Neighbor> out;
    for (const auto& orbit : orbits) {
      std::size_t f = orbit.front();
      HermForm r = facet_vector(lattice_.field(), lattice_.n(), c.cone, f);
      ContiguityResult res = contiguous(c.form, 1, r, lattice_, f);
      MinVecSet s = minimum_and_minvecs(res.neighbor, lattice_);
      ensure(s.minimum == 1, "contiguous form changed the minimum");
      ensure(is_perfect(s, lattice_.n()).perfect, "contiguous form is not perfect");
      Rational det = det_rel(res.neighbor, lattice_);
      out.push_back({f, orbit, std::move(res.neighbor), std::move(s), det});
    }
    return out;
  }

  std::size_t add_class(const HermForm& form, MinVecSet s) {
    ensure(s.minimum == 1, "registered form does not have minimum 1");
    ensure(is_perfect(s, lattice_.n()).perfect, "registered form is not perfect");
    ClassData c{form, std::move(s), det_rel(form, lattice_), {}, {}, {}};
    c.norms = norm_multiset(c.minvecs);
    c.cone = voronoi_domain(form, c.minvecs);
    c.aut = aut_group(form, lattice_);
    classes_.push_back(std::move(c));
    processed_.push_back(false);
    orbits_.emplace_back();
    return classes_.size() - 1;
  }

  int find_or_add(HermForm form, MinVecSet s, const Rational& det) {
    std::vector<Rational> norms = norm_multiset(s);
    for (std::size_t i = 0; i < classes_.size(); ++i) {
      const ClassData& c = classes_[i];
      if (c.det != det || c.minvecs.size() != s.size() || c.norms != norms) continue;
      if (is_equivalent(c.form, form, lattice_)) return static_cast<int>(i);
    }
    return static_cast<int>(add_class(form, std::move(s)));
  }

  void checkpoint() const {
    if (!opt_.checkpoint) return;
    EnumerationState st;
    for (std::size_t i = 0; i < classes_.size(); ++i) {
      st.forms.push_back(classes_[i].form);
      st.processed.push_back(processed_[i]);
      st.orbits.push_back(orbits_[i]);
    }
    opt_.checkpoint(st);
  }

  EnumerationResult finish(bool complete) {
    std::vector<std::size_t> order(classes_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto fingerprint = [&](std::size_t i) {
      const ClassData& c = classes_[i];
      return std::make_tuple(c.det, c.minvecs.size(), c.cone.facets.size(), c.aut.order(), c.norms);
    };
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return fingerprint(x) < fingerprint(y); });
    std::vector<int> rank(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r);

    EnumerationResult res{lattice_, {}, {}, {}, {}, {}, complete};
    std::map<std::pair<int, int>, std::size_t> weights;
    Rational best_det;
    for (std::size_t r = 0; r < order.size(); ++r) {
      ClassData& c = classes_[order[r]];
      PerfectFormRecord rec;
      rec.id = static_cast<int>(r);
      rec.class_id = lattice_.steinitz_class();
      rec.form = c.form;
      rec.minvecs = c.minvecs;
      rec.det_rel = c.det;
      rec.facet_count = c.cone.facets.size();
      rec.aut_order = c.aut.order();
      rec.aut_type = c.aut.type;
      res.records.push_back(std::move(rec));
      res.cones.push_back(c.cone);
      res.auts.push_back(c.aut);
      std::vector<FacetOrbit> orbs = orbits_[order[r]];
      for (auto& o : orbs) {
        o.target = rank[o.target];
        weights[{static_cast<int>(r), o.target}] += o.members.size();
      }
      res.orbits.push_back(std::move(orbs));
      res.graph.vertices.push_back(static_cast<int>(r));
      if (r == 0 || c.det < best_det) best_det = c.det;
    }
    for (const auto& [key, w] : weights) res.graph.edges.push_back({key.first, key.second, w});
    for (const auto& rec : res.records)
      if (rec.det_rel == best_det) res.graph.marked.push_back(rec.id);
    return res;
  }
};

}  // namespace

EnumerationResult enumerate_perfect(const OKLattice& lattice, const EnumerationOptions& options) {
  if (lattice.n() < 1) throw std::invalid_argument("dimension must be positive");
  return Enumerator(lattice, options).run();
}

HermiteConstant hermite_constant(const QuadField& field, int n, const EnumerationOptions& options) {
  auto group = std::make_shared<const ClassGroup>(class_group(field));
  HermiteConstant hc;
  bool first = true;
  for (int c : lattice_class_reps(*group, n)) {
    OKLattice l = OKLattice::standard(field, group, c, n);
    EnumerationResult run = enumerate_perfect(l, options);
    for (const auto& rec : run.records) {
      Rational g = hermite_invariant(rec.minvecs, rec.form, l);
      if (first || g > hc.gamma_n) {
        hc.gamma_n = g;
        hc.maximizers.clear();
        first = false;
      }
      if (g == hc.gamma_n) hc.maximizers.push_back({c, rec.id});
    }
    hc.runs.push_back(std::move(run));
  }
  return hc;
}

}  // namespace phf
