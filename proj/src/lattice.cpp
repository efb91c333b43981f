#include "phf/lattice.hpp"

#include <stdexcept>

#include "phf/error.hpp"

namespace phf {

namespace {

std::int64_t checked(__int128 x) {
  if (x > INT64_MAX || x < INT64_MIN) throw std::overflow_error("64-bit overflow in lattice arithmetic");
  return static_cast<std::int64_t>(x);
}

struct SmallXgcd {
  std::int64_t g, s, t;
};

SmallXgcd small_xgcd(std::int64_t x, std::int64_t y) {
  std::int64_t r0 = x, r1 = y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) return {-r0, -s0, -t0};
  return {r0, s0, t0};
}

std::int64_t small_gcd(std::int64_t x, std::int64_t y) {
  if (x < 0) x = -x;
  if (y < 0) y = -y;
  while (y != 0) {
    std::int64_t t = x % y;
    x = y;
    y = t;
  }
  return x;
}

QVec flatten(const KVec& x) {
  QVec out;
  out.reserve(2 * x.size());
  for (const auto& e : x) {
    out.push_back(e.a());
    out.push_back(e.b());
  }
  return out;
}

}  // namespace

SmallHnf small_hnf2(const std::vector<std::array<std::int64_t, 2>>& rows) {
  std::int64_t rp = 0, rq = 0, acc = 0;
  for (const auto& [p, q] : rows) {
    if (q == 0) {
      acc = small_gcd(acc, p);
      continue;
    }
    SmallXgcd e = small_xgcd(rq, q);
    std::int64_t np = checked(static_cast<__int128>(e.s) * rp + static_cast<__int128>(e.t) * p);
    std::int64_t other =
        checked(static_cast<__int128>(q / e.g) * rp - static_cast<__int128>(rq / e.g) * p);
    acc = small_gcd(acc, other);
    rp = np;
    rq = e.g;
  }
  if (rq == 0 || acc == 0) throw std::invalid_argument("Z-module of rank < 2");
  std::int64_t b = rp % acc;
  if (b < 0) b += acc;
  return {acc, b, rq};
}

OKLattice::OKLattice(const QuadField& field, std::vector<FracIdeal> coeff_ideals, KMatrix directions,
                     std::shared_ptr<const ClassGroup> classes)
    : field_(field),
      n_(static_cast<int>(coeff_ideals.size())),
      coeff_ideals_(std::move(coeff_ideals)),
      directions_(std::move(directions)),
      classes_(std::move(classes)) {
  if (n_ < 1) throw std::invalid_argument("lattice needs at least one coefficient ideal");
  if (directions_.rows() != static_cast<std::size_t>(n_) || directions_.cols() != static_cast<std::size_t>(n_))
    throw std::invalid_argument("direction basis must be n x n");
  if (determinant(directions_).is_zero()) throw std::invalid_argument("direction basis is singular");
  if (!classes_) classes_ = std::make_shared<const ClassGroup>(class_group(field_));
  build();
}

OKLattice OKLattice::standard(const QuadField& field, std::shared_ptr<const ClassGroup> classes,
                              int class_index, int n) {
  if (!classes) classes = std::make_shared<const ClassGroup>(class_group(field));
  if (class_index < 0 || class_index >= classes->order())
    throw std::out_of_range("class index " + std::to_string(class_index + 1) + " out of range 1.." +
                            std::to_string(classes->order()));
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  std::vector<FracIdeal> ideals(n, FracIdeal::unit(field));
  ideals.back() = classes->reps[class_index];
  KMatrix e = KMatrix::identity(n, field.one(), field.zero());
  return OKLattice(field, std::move(ideals), std::move(e), std::move(classes));
}

void OKLattice::build() {
  const std::size_t n = n_;
  z_basis_ = KMatrix(2 * n, n, field_.zero());
  for (std::size_t k = 0; k < n; ++k) {
    auto g = coeff_ideals_[k].basis();
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t j = 0; j < n; ++j) z_basis_(2 * k + r, j) = g[r] * directions_(k, j);
    k_basis_rows_.push_back(2 * k);
  }
  QMatrix zq(2 * n, 2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    QVec f = flatten(z_basis_.row_vec(i));
    for (std::size_t j = 0; j < 2 * n; ++j) zq(i, j) = f[j];
  }
  z_basis_q_inv_ = inverse(zq);

  auto integral_action = [&](const KElem& s) {
    ZMatrix m(2 * n, 2 * n, 0);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      KVec y = z_basis_.row_vec(i);
      for (auto& e : y) e = s * e;
      QVec c = rational_coordinates(y);
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (c[j].get_den() != 1) throw std::invalid_argument("lattice is not an O_K-module");
        m(i, j) = to_int64(c[j].get_num());
      }
    }
    return m;
  };
  omega_action_ = integral_action(field_.omega());
  for (const auto& u : field_.units()) unit_actions_.push_back(integral_action(u));

  // Coefficient ideal generators x_k h, h running over a Z-basis of c_k^{-1}.
  KMatrix p = z_basis_ * inverse(directions_);
  std::vector<std::array<QVec, 2>> forms;
  QVec all;
  for (std::size_t k = 0; k < n; ++k) {
    auto h = coeff_ideals_[k].inverse().basis();
    for (const auto& hh : h) {
      std::array<QVec, 2> f{QVec(2 * n), QVec(2 * n)};
      for (std::size_t i = 0; i < 2 * n; ++i) {
        KElem e = p(i, k) * hh;
        f[0][i] = e.a();
        f[1][i] = e.b();
        all.push_back(e.a());
        all.push_back(e.b());
      }
      forms.push_back(std::move(f));
    }
  }
  coeff_scale_ = to_int64(lcm_of_denominators(all));
  for (const auto& f : forms) {
    std::array<ZVec, 2> z{ZVec(2 * n), ZVec(2 * n)};
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t i = 0; i < 2 * n; ++i)
        z[r][i] = to_int64(Rational(f[r][i] * static_cast<long>(coeff_scale_)).get_num());
    coeff_forms_.push_back(std::move(z));
  }
  KElem scale(static_cast<std::int64_t>(coeff_scale_));
  for (const auto& rep : classes_->reps) {
    FracIdeal s = rep.scaled(scale);
    rep_hnfs_.push_back({to_int64(s.hnf_a()), to_int64(s.hnf_b()), to_int64(s.hnf_c())});
  }
}

KVec OKLattice::vector(const ZVec& v) const {
  KVec x(n_, field_.zero());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    KElem c(static_cast<std::int64_t>(v[i]));
    for (int j = 0; j < n_; ++j) x[j] += c * z_basis_(i, j);
  }
  return x;
}

QVec OKLattice::rational_coordinates(const KVec& x) const {
  if (x.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("vector has wrong dimension");
  return mul(flatten(x), z_basis_q_inv_);
}

std::optional<ZVec> OKLattice::coordinates(const KVec& x) const {
  QVec c = rational_coordinates(x);
  ZVec v(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].get_den() != 1) return std::nullopt;
    v[i] = to_int64(c[i].get_num());
  }
  return v;
}

FracIdeal OKLattice::coeff_ideal(const KVec& x) const {
  KVec coords = mul(x, inverse(directions_));
  std::vector<KElem> gens;
  for (int k = 0; k < n_; ++k) {
    if (coords[k].is_zero()) continue;
    for (const auto& h : coeff_ideals_[k].inverse().basis()) gens.push_back(coords[k] * h);
  }
  if (gens.empty()) throw std::invalid_argument("coefficient ideal of the zero vector");
  return FracIdeal::from_generators(field_, gens);
}

SmallHnf OKLattice::coeff_hnf(const ZVec& v) const {
  std::vector<std::array<std::int64_t, 2>> rows;
  rows.reserve(coeff_forms_.size());
  for (const auto& f : coeff_forms_) {
    __int128 p = 0, q = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      p += static_cast<__int128>(f[0][i]) * v[i];
      q += static_cast<__int128>(f[1][i]) * v[i];
    }
    rows.push_back({checked(p), checked(q)});
  }
  return small_hnf2(rows);
}

Rational OKLattice::coeff_norm(const ZVec& v) const {
  SmallHnf h = coeff_hnf(v);
  Integer s = static_cast<long>(coeff_scale_);
  return make_rational(Integer(static_cast<long>(h.a)) * static_cast<long>(h.c), s * s);
}

int OKLattice::coeff_class_rep(const ZVec& v) const {
  SmallHnf h = coeff_hnf(v);
  for (std::size_t j = 0; j < rep_hnfs_.size(); ++j)
    if (rep_hnfs_[j] == h) return static_cast<int>(j);
  return -1;
}

int OKLattice::steinitz_class() const {
  FracIdeal prod = coeff_ideals_[0];
  for (int k = 1; k < n_; ++k) prod = prod * coeff_ideals_[k];
  return class_of(*classes_, prod).index;
}

Rational OKLattice::ideal_norm_product() const {
  Rational r = 1;
  for (const auto& c : coeff_ideals_) r *= c.norm();
  return r;
}

Rational OKLattice::max_rep_norm() const { return Rational(classes_->max_rep_norm()); }

OKLattice OKLattice::scaled(const FracIdeal& p) const {
  std::vector<FracIdeal> ideals;
  for (const auto& c : coeff_ideals_) ideals.push_back(p * c);
  return OKLattice(field_, std::move(ideals), directions_, classes_);
}

QMatrix OKLattice::z_matrix(const KMatrix& g) const {
  QMatrix m(2 * n_, 2 * n_);
  for (int i = 0; i < 2 * n_; ++i) {
    QVec c = rational_coordinates(mul(z_basis_.row_vec(i), g));
    for (int j = 0; j < 2 * n_; ++j) m(i, j) = c[j];
  }
  return m;
}

std::optional<KMatrix> OKLattice::k_matrix(const QMatrix& m) const {
  const std::size_t n = n_;
  auto image = [&](std::size_t i) {
    KVec y(n, field_.zero());
    for (std::size_t k = 0; k < 2 * n; ++k) {
      if (sgn(m(i, k)) == 0) continue;
      KElem c(m(i, k));
      for (std::size_t j = 0; j < n; ++j) y[j] += c * z_basis_(k, j);
    }
    return y;
  };
  KMatrix src(n, n), dst(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    KVec y = image(k_basis_rows_[r]);
    for (std::size_t j = 0; j < n; ++j) {
      src(r, j) = z_basis_(k_basis_rows_[r], j);
      dst(r, j) = y[j];
    }
  }
  KMatrix u = inverse(src) * dst;
  for (std::size_t i = 0; i < 2 * n; ++i)
    if (mul(z_basis_.row_vec(i), u) != image(i)) return std::nullopt;
  return u;
}

bool OKLattice::is_automorphism(const KMatrix& g) const {
  if (g.rows() != static_cast<std::size_t>(n_) || g.cols() != static_cast<std::size_t>(n_)) return false;
  QMatrix m = z_matrix(g);
  for (const auto& e : m.data())
    if (e.get_den() != 1) return false;
  Rational det = determinant(m);
  return det == 1 || det == -1;
}

namespace {

IntGram pair_form(const KMatrix& a, const OKLattice& lattice, const KElem& twist) {
  const KMatrix& b = lattice.z_basis();
  std::size_t m = b.rows();
  KMatrix ba = b * a;
  KMatrix bstar = conj_transpose(b);
  KMatrix full = ba * bstar;
  IntGram g{QMatrix(m, m), 1};
  QVec all;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      g.gram(i, j) = (twist * full(i, j)).re();
      all.push_back(g.gram(i, j));
    }
  g.scale = lcm_of_denominators(all);
  return g;
}

void require_hermitian(const KMatrix& a) {
  if (a.rows() != a.cols() || conj_transpose(a) != a)
    throw std::invalid_argument("form is not Hermitian");
}

}  // namespace

IntGram trace_form(const KMatrix& a, const OKLattice& lattice) {
  require_hermitian(a);
  return pair_form(a, lattice, KElem(1));
}

IntGram omega_trace_form(const KMatrix& a, const OKLattice& lattice) {
  require_hermitian(a);
  return pair_form(a, lattice, lattice.field().omega());
}

}  // namespace phf
