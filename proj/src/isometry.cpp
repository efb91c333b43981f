#include "phf/isometry.hpp"

#include <algorithm>
#include <stdexcept>

#include "phf/error.hpp"
#include "phf/short_vectors.hpp"

namespace phf {

FormPairGram form_pair_gram(const HermForm& a, const OKLattice& lattice) {
  IntGram g1 = trace_form(a.matrix(), lattice);
  IntGram g2 = omega_trace_form(a.matrix(), lattice);
  Integer l;
  mpz_lcm(l.get_mpz_t(), g1.scale.get_mpz_t(), g2.scale.get_mpz_t());
  return {g1.gram, g2.gram, lattice.omega_action(), l};
}

namespace {

using I128 = __int128;

std::int64_t narrow(I128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("isometry search: integer overflow");
  return static_cast<std::int64_t>(v);
}

std::vector<std::int64_t> scaled_row(const ZVec& y, const QMatrix& f, const Integer& scale) {
  std::size_t m = y.size();
  std::vector<std::int64_t> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    Integer s = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (y[i]) s += Rational(f(i, j) * scale).get_num() * static_cast<long>(y[i]);
    out[j] = to_int64(s);
  }
  return out;
}

std::int64_t idot(const std::vector<std::int64_t>& p, const ZVec& y) {
  I128 s = 0;
  for (std::size_t i = 0; i < y.size(); ++i) s += static_cast<I128>(p[i]) * y[i];
  return narrow(s);
}

struct Candidate {
  ZVec y;
  std::vector<std::int64_t> p1, p2;  // y F1 S, y F2 S
};

// Short K-independent vectors w_1..w_n of B, as Z-coordinates.
std::vector<ZVec> short_k_basis(const HermForm& b, const OKLattice& lattice) {
  IntGram tb = trace_form(b.matrix(), lattice);
  ShortVectors sv(tb.gram);
  if (!sv.positive_definite()) throw std::domain_error("form is not positive definite");
  const int n = lattice.n();
  QMatrix red = lll_reduce(tb.gram).gram;
  Rational bound = red(0, 0);
  for (int i = 1; i < lattice.rank(); ++i) bound = std::min(bound, red(i, i));
  for (;;) {
    auto vs = sv.collect(bound, true);
    std::stable_sort(vs.begin(), vs.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
    std::vector<ZVec> chosen;
    std::vector<KVec> rows;
    for (const auto& [z, nrm] : vs) {
      rows.push_back(lattice.vector(z));
      KMatrix m(rows.size(), n);
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < n; ++c) m(r, c) = rows[r][c];
      if (rank(m) == rows.size()) {
        chosen.push_back(z);
        if (static_cast<int>(chosen.size()) == n) return chosen;
      } else {
        rows.pop_back();
      }
    }
    bound *= 2;
  }
}

class Search {
 public:
  Search(const HermForm& a, const HermForm& b, const OKLattice& lattice, bool all)
      : a_(a), b_(b), lattice_(lattice), all_(all) {}

  std::vector<KMatrix> run() {
    const int n = lattice_.n();
    if (a_.det() != b_.det()) return {};
    FormPairGram fa = form_pair_gram(a_, lattice_);
    scale_ = fa.scale;
    w_ = short_k_basis(b_, lattice_);

    // targets: S Re h_B(w_k, w_l) and S Re(w h_B(w_k, w_l))
    FormPairGram fb = form_pair_gram(b_, lattice_);
    t1_.assign(n, std::vector<std::optional<std::int64_t>>(n));
    t2_ = t1_;
    auto target = [&](const QMatrix& f, const ZVec& x, const ZVec& y) -> std::optional<std::int64_t> {
      Rational s = 0;
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
          if (x[i] && y[j]) s += f(i, j) * static_cast<long>(x[i] * y[j]);
      s *= scale_;
      if (s.get_den() != 1) return std::nullopt;
      return to_int64(s.get_num());
    };
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        t1_[k][l] = target(fb.f1, w_[k], w_[l]);
        t2_[k][l] = target(fb.f2, w_[k], w_[l]);
        if (!t1_[k][l] || !t2_[k][l]) return {};
      }

    // candidate images: A[y] = B[w_k]
    IntGram ta = trace_form(a_.matrix(), lattice_);
    ShortVectors sv(ta.gram);
    if (!sv.positive_definite()) throw std::domain_error("form is not positive definite");
    std::vector<Rational> lengths;
    Rational bound = 0;
    for (int k = 0; k < n; ++k) {
      lengths.push_back(b_[lattice_.vector(w_[k])]);
      bound = std::max(bound, lengths.back());
    }
    cands_.assign(n, {});
    sv.for_each(bound, [&](const ZVec& y, const Rational& nrm) {
      for (int k = 0; k < n; ++k)
        if (nrm == lengths[k]) cands_[k].push_back({y, scaled_row(y, fa.f1, scale_), scaled_row(y, fa.f2, scale_)});
    }, false);

    wk_ = KMatrix(n, n);
    for (int k = 0; k < n; ++k) {
      KVec x = lattice_.vector(w_[k]);
      for (int c = 0; c < n; ++c) wk_(k, c) = x[c];
    }
    wk_inv_ = inverse(wk_);
    chosen_.assign(n, nullptr);
    descend(0);
    return found_;
  }

 private:
  const HermForm& a_;
  const HermForm& b_;
  const OKLattice& lattice_;
  bool all_;
  Integer scale_;
  std::vector<ZVec> w_;
  std::vector<std::vector<std::optional<std::int64_t>>> t1_, t2_;
  std::vector<std::vector<Candidate>> cands_;
  std::vector<const Candidate*> chosen_;
  KMatrix wk_, wk_inv_;
  std::vector<KMatrix> found_;

  bool descend(int k) {
    const int n = lattice_.n();
    if (k == n) return finish();
    for (const auto& c : cands_[k]) {
      bool ok = true;
      for (int l = 0; l < k && ok; ++l) {
        const ZVec& yl = chosen_[l]->y;
        ok = idot(c.p1, yl) == *t1_[k][l] && idot(c.p2, yl) == *t2_[k][l];
      }
      if (!ok) continue;
      chosen_[k] = &c;
      if (descend(k + 1) && !all_) return true;
    }
    return false;
  }

  bool finish() {
    const int n = lattice_.n();
    KMatrix yk(n, n);
    for (int k = 0; k < n; ++k) {
      KVec y = lattice_.vector(chosen_[k]->y);
      for (int c = 0; c < n; ++c) yk(k, c) = y[c];
    }
    KMatrix u = wk_inv_ * yk;
    if (!lattice_.is_automorphism(u)) return false;
    if (a_.transformed(u) != b_) throw InvariantViolation("isometry search produced a non-isometry");
    found_.push_back(std::move(u));
    return true;
  }
};

}  // namespace

std::optional<KMatrix> is_equivalent(const HermForm& a, const HermForm& b, const OKLattice& lattice) {
  if (a.n() != lattice.n() || b.n() != lattice.n()) throw std::invalid_argument("dimension mismatch");
  auto r = Search(a, b, lattice, false).run();
  if (r.empty()) return std::nullopt;
  return r.front();
}

std::vector<KMatrix> all_isometries(const HermForm& a, const HermForm& b, const OKLattice& lattice) {
  if (a.n() != lattice.n() || b.n() != lattice.n()) throw std::invalid_argument("dimension mismatch");
  return Search(a, b, lattice, true).run();
}

int element_order(const KMatrix& g, int bound) {
  KMatrix id = KMatrix::identity(g.rows(), KElem(1), KElem(0));
  KMatrix p = g;
  for (int k = 1; k <= bound; ++k) {
    if (p == id) return k;
    p = p * g;
  }
  throw std::domain_error("element of infinite or very large order");
}

std::string group_type(std::size_t order, const std::map<int, int>& stats) {
  auto count = [&](int o) {
    auto it = stats.find(o);
    return it == stats.end() ? 0 : it->second;
  };
  if (count(static_cast<int>(order)) > 0) return "C" + std::to_string(order);
  switch (order) {
    case 4: return "C2xC2";
    case 6: return "S3";
    case 8:
      if (count(2) == 1) return "Q8";
      if (count(2) == 5) return "D8";
      if (count(2) == 3) return "C4xC2";
      return "C2xC2xC2";
    case 12:
      if (count(2) == 1 && count(4) == 6) return "C3:C4";
      if (count(3) == 8) return "A4";
      if (count(2) == 7) return "D12";
      if (count(6) == 6) return "C6xC2";
      break;
    case 24:
      if (count(2) == 1 && count(3) == 8 && count(4) == 6 && count(6) == 8) return "SL(2,3)";
      break;
    default: break;
  }
  return "order-" + std::to_string(order);
}

AutGroup aut_group(const HermForm& a, const OKLattice& lattice) {
  AutGroup g;
  g.elements = all_isometries(a, a, lattice);
  KMatrix id = KMatrix::identity(a.n(), a.field().one(), a.field().zero());
  auto it = std::find(g.elements.begin(), g.elements.end(), id);
  if (it == g.elements.end()) throw InvariantViolation("automorphism group misses the identity");
  std::rotate(g.elements.begin(), it, it + 1);
  for (const auto& e : g.elements) ++g.order_statistics[element_order(e)];
  g.type = group_type(g.order(), g.order_statistics);

  // Cayley table on indices, then the smallest generating set found by
  // trying single elements, then pairs (orders up to 256); otherwise greedy.
  const std::size_t m = g.order();
  std::map<std::vector<std::pair<Rational, Rational>>, std::size_t> index;
  auto key = [](const KMatrix& x) {
    std::vector<std::pair<Rational, Rational>> k;
    for (const auto& e : x.data()) k.emplace_back(e.a(), e.b());
    return k;
  };
  for (std::size_t i = 0; i < m; ++i) index[key(g.elements[i])] = i;
  std::vector<std::vector<std::size_t>> table(m, std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto f = index.find(key(g.elements[i] * g.elements[j]));
      ensure(f != index.end(), "automorphism group is not closed");
      table[i][j] = f->second;
    }
  auto generated = [&](const std::vector<std::size_t>& gens) {
    std::vector<bool> seen(m, false);
    std::vector<std::size_t> queue{0};
    seen[0] = true;
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (auto s : gens) {
        auto p = table[queue[q]][s];
        if (!seen[p]) seen[p] = true, queue.push_back(p);
      }
    return queue.size();
  };
  std::vector<std::size_t> best;
  for (std::size_t i = 1; i < m && best.empty(); ++i)
    if (generated({i}) == m) best = {i};
  for (std::size_t i = 1; i < m && m <= 256 && best.empty(); ++i)
    for (std::size_t j = i + 1; j < m && best.empty(); ++j)
      if (generated({i, j}) == m) best = {i, j};
  if (best.empty() && m > 1) {
    for (std::size_t i = 1; i < m; ++i) {
      if (generated(best) == m) break;
      auto before = generated(best);
      best.push_back(i);
      if (generated(best) == before) best.pop_back();
    }
  }
  for (auto i : best) g.generators.push_back(g.elements[i]);
  return g;
}

}  // namespace phf
