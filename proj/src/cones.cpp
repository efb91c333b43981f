#include "phf/cones.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace phf {

HermCoords herm_coords(const KMatrix& a) {
  std::size_t n = a.rows();
  HermCoords c;
  c.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) c.push_back(a(i, i).re());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      c.push_back(a(i, j).re());
      c.push_back(a(i, j).im());
    }
  return c;
}

KMatrix herm_from_coords(const QuadField& field, int n, const HermCoords& c) {
  if (c.size() != static_cast<std::size_t>(n * n)) throw std::invalid_argument("wrong coordinate count");
  KMatrix a(n, n, field.zero());
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) a(i, i) = field.elem(c[k++], 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = field.from_sqrt(c[k], c[k + 1]);
      a(j, i) = a(i, j).conj();
      k += 2;
    }
  return a;
}

QMatrix trace_pairing_gram(int n, std::int64_t d) {
  std::size_t dim = n * n;
  QMatrix g(dim, dim);
  for (int i = 0; i < n; ++i) g(i, i) = 1;
  for (std::size_t k = n; k < dim; k += 2) {
    g(k, k) = 2;
    g(k + 1, k + 1) = 2 * static_cast<long>(d);
  }
  return g;
}

HermCoords outer_coords(const KVec& x) {
  std::size_t n = x.size();
  HermCoords c;
  c.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) c.push_back(x[i].norm());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      KElem w = x[i].conj() * x[j];
      c.push_back(w.re());
      c.push_back(w.im());
    }
  return c;
}

QVec evaluation_functional(const KVec& x) {
  std::size_t n = x.size();
  std::int64_t d = 0;
  for (const auto& e : x) d = std::max(d, e.d());
  QVec r = outer_coords(x);
  for (std::size_t k = n; k < r.size(); k += 2) {
    r[k] *= 2;
    r[k + 1] *= 2 * static_cast<long>(d);
  }
  return r;
}

Integer dot(const IVec& x, const IVec& y) {
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

IVec primitive(IVec v) {
  Integer g = 0;
  for (const auto& e : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
  if (g > 1)
    for (auto& e : v) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
  return v;
}

IVec primitive(const QVec& v) {
  Integer l = lcm_of_denominators(v);
  IVec z;
  z.reserve(v.size());
  for (const auto& e : v) z.push_back(Rational(e * l).get_num());
  return primitive(std::move(z));
}

namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
    return r;
  }
  bool contains(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if ((o.w_[i] & ~w_[i]) != 0) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> w_;
};

struct DdRay {
  IVec v;
  Bits zeros;
};

}  // namespace

std::vector<Facet> extreme_rays(const std::vector<IVec>& constraints) {
  if (constraints.empty()) throw std::invalid_argument("no constraints");
  const std::size_t dim = constraints[0].size();
  const std::size_t m = constraints.size();

  // Greedy basis of constraint rows.
  std::vector<std::size_t> basis;
  {
    QMatrix acc(0, dim);
    std::vector<QVec> rows;
    for (std::size_t i = 0; i < m && basis.size() < dim; ++i) {
      rows.emplace_back(constraints[i].begin(), constraints[i].end());
      QMatrix t(rows.size(), dim);
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < dim; ++c) t(r, c) = rows[r][c];
      if (rank(t) == rows.size()) basis.push_back(i);
      else rows.pop_back();
    }
  }
  if (basis.size() < dim) throw std::invalid_argument("cone is not full-dimensional");

  QMatrix ab(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) ab(r, c) = Rational(constraints[basis[r]][c]);
  QMatrix inv = inverse(ab);
  std::vector<DdRay> rays;
  for (std::size_t k = 0; k < dim; ++k) {
    QVec col(dim);
    for (std::size_t r = 0; r < dim; ++r) col[r] = inv(r, k);
    DdRay ray{primitive(col), Bits(m)};
    for (std::size_t j = 0; j < dim; ++j)
      if (j != k) ray.zeros.set(basis[j]);
    rays.push_back(std::move(ray));
  }

  std::vector<bool> in_basis(m, false);
  for (auto b : basis) in_basis[b] = true;

  for (std::size_t t = 0; t < m; ++t) {
    if (in_basis[t]) continue;
    const IVec& a = constraints[t];
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(a, rays[r].v);
      int s = sgn(val[r]);
      if (s > 0) pos.push_back(r);
      else if (s < 0) neg.push_back(r);
      else rays[r].zeros.set(t);
    }
    if (neg.empty()) continue;

    std::vector<DdRay> next;
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        Bits common = rays[p].zeros & rays[q].zeros;
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (rays[r].zeros.contains(common)) adjacent = false;
        }
        if (!adjacent) continue;
        IVec v(dim);
        for (std::size_t c = 0; c < dim; ++c) v[c] = val[p] * rays[q].v[c] - val[q] * rays[p].v[c];
        DdRay ray{primitive(std::move(v)), common};
        ray.zeros.set(t);
        next.push_back(std::move(ray));
      }
    }
    std::vector<DdRay> kept;
    kept.reserve(rays.size() - neg.size() + next.size());
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (sgn(val[r]) >= 0) kept.push_back(std::move(rays[r]));
    for (auto& r : next) kept.push_back(std::move(r));
    rays = std::move(kept);
  }

  std::vector<Facet> out;
  out.reserve(rays.size());
  for (auto& r : rays) {
    Facet f{std::move(r.v), {}};
    for (std::size_t i = 0; i < m; ++i)
      if (r.zeros.test(i)) f.incident.push_back(i);
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const Facet& x, const Facet& y) { return x.incident < y.incident; });
  return out;
}

PolyCone facet_enumeration(const std::vector<QVec>& rays, const QMatrix& pairing) {
  if (rays.empty()) throw std::invalid_argument("cone without rays");
  std::vector<IVec> constraints;
  constraints.reserve(rays.size());
  for (const auto& r : rays) {
    QVec c = pairing.rows() == 0 ? r : mul(r, pairing);
    constraints.push_back(primitive(c));
  }
  return PolyCone{rays, extreme_rays(constraints)};
}

}  // namespace phf
