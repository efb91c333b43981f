#include "phf/hermform.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "phf/cones.hpp"
#include "phf/error.hpp"
#include "phf/lp.hpp"
#include "phf/short_vectors.hpp"

namespace phf {

HermForm::HermForm(const QuadField& field, KMatrix a) : field_(field), a_(std::move(a)) {
  if (a_.rows() != a_.cols() || a_.rows() == 0) throw std::invalid_argument("Hermitian form must be square");
  if (conj_transpose(a_) != a_) throw std::invalid_argument("matrix is not Hermitian");
  for (std::size_t i = 0; i < a_.rows(); ++i)
    for (std::size_t j = 0; j < a_.cols(); ++j) a_(i, j) = field_.elem(a_(i, j).a(), a_(i, j).b());
}

HermForm HermForm::identity(const QuadField& field, int n) {
  return HermForm(field, KMatrix::identity(n, field.one(), field.zero()));
}

Rational HermForm::operator[](const KVec& x) const {
  if (x.size() != a_.rows()) throw std::invalid_argument("dimension mismatch");
  return hermitian_value(a_, x);
}

Rational HermForm::det() const { return determinant(a_).re(); }

namespace {

KMatrix principal_submatrix(const KMatrix& a, const std::vector<std::size_t>& idx) {
  KMatrix s(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = a(idx[i], idx[j]);
  return s;
}

}  // namespace

bool HermForm::is_positive_definite() const {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < a_.rows(); ++k) {
    idx.push_back(k);
    if (sgn(determinant(principal_submatrix(a_, idx)).re()) <= 0) return false;
  }
  return true;
}

bool HermForm::is_positive_semidefinite() const {
  std::size_t n = a_.rows();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < n; ++k)
      if (mask >> k & 1) idx.push_back(k);
    if (sgn(determinant(principal_submatrix(a_, idx)).re()) < 0) return false;
  }
  return true;
}

HermForm HermForm::scaled(const Rational& s) const { return HermForm(field_, phf::scaled(a_, KElem(s))); }

HermForm HermForm::plus(const HermForm& r, const Rational& t) const {
  return HermForm(field_, a_ + phf::scaled(r.a_, KElem(t)));
}

HermForm HermForm::transformed(const KMatrix& u) const {
  return HermForm(field_, u * a_ * conj_transpose(u));
}

HermForm HermForm::inverse() const { return HermForm(field_, phf::inverse(a_)); }

std::string HermForm::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < a_.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < a_.cols(); ++j) os << (j ? ", " : "") << a_(i, j).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

Rational evaluate(const HermForm& a, const KVec& x) { return a[x]; }

Rational det_rel(const HermForm& a, const OKLattice& lattice) {
  if (a.n() != lattice.n()) throw std::invalid_argument("dimension mismatch");
  return a.det() * lattice.ideal_norm_product();
}

namespace {

ZVec apply(const ZVec& z, const ZMatrix& m) {
  ZVec r(z.size(), 0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] == 0) continue;
    for (std::size_t j = 0; j < z.size(); ++j) r[j] += z[i] * m(i, j);
  }
  return r;
}

ZVec unit_reduce(const OKLattice& lattice, const ZVec& z) {
  ZVec best = z;
  for (const auto& u : lattice.unit_actions()) best = std::min(best, apply(z, u));
  return best;
}

}  // namespace

std::optional<MinVec> canonical_vector(const OKLattice& lattice, const ZVec& z) {
  if (std::all_of(z.begin(), z.end(), [](auto v) { return v == 0; })) return std::nullopt;
  int j = lattice.coeff_class_rep(z);
  ZVec w = z;
  if (j < 0) {
    ClassMembership cm = class_of(lattice.classes(), lattice.coeff_ideal(lattice.vector(z)));
    KVec x = lattice.vector(z);
    for (auto& e : x) e = cm.alpha * e;
    auto c = lattice.coordinates(x);
    if (!c) throw InvariantViolation("scaled vector left the lattice");
    w = *c;
    j = cm.index;
  }
  MinVec mv;
  mv.z = unit_reduce(lattice, w);
  mv.x = lattice.vector(mv.z);
  mv.rep = j;
  mv.coeff_norm = lattice.classes().reps[j].norm();
  return mv;
}

MinVecSet minimum_and_minvecs(const HermForm& a, const OKLattice& lattice) {
  if (a.n() != lattice.n()) throw std::invalid_argument("dimension mismatch");
  IntGram tf = trace_form(a.matrix(), lattice);
  ShortVectors sv(tf.gram);
  if (!sv.positive_definite()) throw std::domain_error("form is not positive definite");

  const int dim = lattice.rank();
  Rational m0;
  bool first = true;
  // starting bound from the reduced basis; the given one may be very skewed
  LllResult red = lll_reduce(tf.gram);
  for (int i = 0; i < dim; ++i) {
    Rational v = red.gram(i, i) / lattice.coeff_norm(red.transform[i]);
    if (first || v < m0) m0 = v;
    first = false;
  }
  Rational mtilde = lattice.max_rep_norm();

  Rational best = m0;
  struct Cand {
    ZVec z;
    int rep;
    Rational value;
  };
  std::vector<Cand> cands;
  sv.for_each(m0 * mtilde, [&](const ZVec& v, const Rational& norm) {
    if (norm > best * mtilde) return;
    int j = lattice.coeff_class_rep(v);
    if (j < 0) return;
    Rational value = norm / lattice.classes().reps[j].norm();
    if (value > best) return;
    best = value;
    cands.push_back({v, j, value});
  });

  MinVecSet out;
  out.minimum = best;
  std::vector<ZVec> seen;
  for (const auto& c : cands) {
    if (c.value != best) continue;
    ZVec z = unit_reduce(lattice, c.z);
    if (std::find(seen.begin(), seen.end(), z) != seen.end()) continue;
    seen.push_back(z);
    MinVec mv;
    mv.z = z;
    mv.x = lattice.vector(z);
    mv.rep = c.rep;
    mv.coeff_norm = lattice.classes().reps[c.rep].norm();
    out.vectors.push_back(std::move(mv));
  }
  std::sort(out.vectors.begin(), out.vectors.end(), [](const MinVec& x, const MinVec& y) { return x.z < y.z; });
  return out;
}

Rational hermite_invariant(const MinVecSet& s, const HermForm& a, const OKLattice& lattice) {
  Rational p = 1;
  for (int i = 0; i < a.n(); ++i) p *= s.minimum;
  return p / det_rel(a, lattice);
}

Rational hermite_invariant(const HermForm& a, const OKLattice& lattice) {
  return hermite_invariant(minimum_and_minvecs(a, lattice), a, lattice);
}

PerfectionInfo is_perfect(const MinVecSet& s, int n) {
  std::size_t dim = n * n;
  QMatrix m(s.size(), dim);
  for (std::size_t r = 0; r < s.size(); ++r) {
    QVec f = evaluation_functional(s.vectors[r].x);
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = f[c];
  }
  PerfectionInfo info;
  info.rank = s.size() ? rank(m) : 0;
  info.perfect = info.rank == dim;
  return info;
}

PerfectionInfo is_perfect(const HermForm& a, const OKLattice& lattice) {
  return is_perfect(minimum_and_minvecs(a, lattice), a.n());
}

Rational trace_pairing(const HermForm& x, const HermForm& y) {
  Rational t = 0;
  for (int i = 0; i < x.n(); ++i)
    for (int j = 0; j < x.n(); ++j) t += (x(i, j) * y(j, i)).re();
  return t;
}

EutaxyCertificate eutaxy_certificate(const HermForm& a, const MinVecSet& s) {
  const int n = a.n();
  const std::size_t dim = n * n;
  const std::size_t k = s.size();
  const std::int64_t d = a.field().d();
  HermCoords target = herm_coords(a.inverse().matrix());
  std::vector<HermCoords> rays;
  for (const auto& v : s.vectors) rays.push_back(outer_coords(v.x));

  QMatrix xs(dim, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < dim; ++r) xs(r, c) = rays[c][r];

  // y is a functional on coordinates; R has coordinates G^{-1} y.
  auto witness_from = [&](QVec y) {
    for (std::size_t r = n; r < dim; r += 2) {
      y[r] /= 2;
      y[r + 1] /= 2 * static_cast<long>(d);
    }
    return HermForm(a.field(), herm_from_coords(a.field(), n, y));
  };

  EutaxyCertificate cert;
  if (!solve(xs, target)) {
    // some functional vanishes on every ray but not on the target
    for (auto& y : nullspace(xs.transpose())) {
      Rational v = dot(y, target);
      if (sgn(v) == 0) continue;
      if (sgn(v) > 0)
        for (auto& e : y) e = -e;
      cert.witness = witness_from(y);
      return cert;
    }
    throw InvariantViolation("eutaxy: missing separating functional");
  }

  // max t  s.t.  sum (mu_x + t) X_x = T,  mu >= 0,  t = tp - tm,  tp + slack = 1
  QMatrix lp(dim + 1, k + 3);
  QVec b(dim + 1), c(k + 3, 0);
  for (std::size_t r = 0; r < dim; ++r) {
    Rational sum = 0;
    for (std::size_t j = 0; j < k; ++j) {
      lp(r, j) = rays[j][r];
      sum += rays[j][r];
    }
    lp(r, k) = sum;
    lp(r, k + 1) = -sum;
    b[r] = target[r];
  }
  lp(dim, k) = 1;
  lp(dim, k + 2) = 1;
  b[dim] = 1;
  c[k] = 1;
  c[k + 1] = -1;
  LpResult res = lp_maximize(lp, b, c);
  if (res.status != LpResult::Status::optimal) throw InvariantViolation("eutaxy: unexpected LP status");
  if (sgn(res.value) > 0) {
    cert.eutactic = true;
    for (std::size_t j = 0; j < k; ++j) cert.coefficients.push_back(res.x[j] + res.value);
    return cert;
  }
  QVec y(res.dual.begin(), res.dual.begin() + dim);
  cert.witness = witness_from(y);
  return cert;
}

EutaxyCertificate eutaxy_certificate(const HermForm& a, const OKLattice& lattice) {
  return eutaxy_certificate(a, minimum_and_minvecs(a, lattice));
}

bool verify_eutaxy(const HermForm& a, const MinVecSet& s, const EutaxyCertificate& cert) {
  HermForm inv = a.inverse();
  if (cert.eutactic) {
    if (cert.coefficients.size() != s.size()) return false;
    HermCoords target = herm_coords(inv.matrix());
    HermCoords sum(target.size(), 0);
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (sgn(cert.coefficients[j]) <= 0) return false;
      HermCoords r = outer_coords(s.vectors[j].x);
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += cert.coefficients[j] * r[i];
    }
    return sum == target;
  }
  if (!cert.witness) return false;
  const HermForm& r = *cert.witness;
  bool strict = false;
  for (const auto& v : s.vectors) {
    Rational val = r[v.x];
    if (sgn(val) < 0) return false;
    if (sgn(val) > 0) strict = true;
  }
  Rational t = trace_pairing(inv, r);
  if (sgn(t) > 0) return false;
  return strict || sgn(t) < 0;
}

HermForm reconstruct_from_minvecs(const QuadField& field, int n, const Rational& m, const MinVecSet& s) {
  const std::size_t dim = n * n;
  QMatrix sys(s.size(), dim);
  QVec rhs(s.size());
  for (std::size_t r = 0; r < s.size(); ++r) {
    if (s.vectors[r].x.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("dimension mismatch");
    QVec f = evaluation_functional(s.vectors[r].x);
    for (std::size_t c = 0; c < dim; ++c) sys(r, c) = f[c];
    rhs[r] = m * s.vectors[r].coeff_norm;
  }
  if (s.size() < dim || rank(sys) < dim) throw std::invalid_argument("minimal vectors do not determine the form");
  auto sol = solve(sys, rhs);
  if (!sol) throw std::invalid_argument("inconsistent minimal vector data");
  return HermForm(field, herm_from_coords(field, n, *sol));
}

}  // namespace phf
