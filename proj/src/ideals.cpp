#include "phf/ideals.hpp"

#include <algorithm>
#include <stdexcept>

#include "phf/error.hpp"
#include "phf/matrix.hpp"
#include "phf/short_vectors.hpp"

namespace phf {

namespace {

struct Xgcd {
  Integer g, s, t;  // g = s*x + t*y, g >= 0
};

Xgcd xgcd(const Integer& x, const Integer& y) {
  Xgcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return r;
}

Integer gcd(const Integer& x, const Integer& y) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return g;
}

Integer mod(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

Hnf2 hnf2(const std::vector<std::array<Integer, 2>>& rows) {
  Integer rp = 0, rq = 0, acc = 0;
  for (const auto& [p, q] : rows) {
    if (q == 0) {
      acc = gcd(acc, p);
      continue;
    }
    Xgcd e = xgcd(rq, q);
    Integer np = e.s * rp + e.t * p;
    Integer other = (q / e.g) * rp - (rq / e.g) * p;
    acc = gcd(acc, other);
    rp = np;
    rq = e.g;
  }
  if (rq == 0 || acc == 0) throw std::invalid_argument("Z-module of rank < 2");
  return {acc, mod(rp, acc), rq};
}

FracIdeal FracIdeal::from_generators(const QuadField& field, const std::vector<KElem>& gens) {
  std::vector<KElem> zgens;
  KElem w = field.omega();
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    zgens.push_back(g);
    zgens.push_back(g * w);
  }
  if (zgens.empty()) throw std::invalid_argument("ideal generated by zero");
  QVec coords;
  for (const auto& g : zgens) {
    coords.push_back(g.a());
    coords.push_back(g.b());
  }
  Integer den = lcm_of_denominators(coords);
  std::vector<std::array<Integer, 2>> rows;
  for (const auto& g : zgens) {
    Rational pa = g.a() * den, pb = g.b() * den;
    rows.push_back({pa.get_num(), pb.get_num()});
  }
  Hnf2 h = hnf2(rows);
  FracIdeal I;
  I.d_ = field.d();
  Integer g = gcd(gcd(den, h.a), gcd(h.b, h.c));
  I.den_ = den / g;
  I.a_ = h.a / g;
  I.b_ = h.b / g;
  I.c_ = h.c / g;
  return I;
}

FracIdeal FracIdeal::unit(const QuadField& field) { return from_generators(field, {field.one()}); }

FracIdeal FracIdeal::from_hnf(const QuadField& field, const Integer& den, const Integer& a,
                              const Integer& b, const Integer& c) {
  Rational inv_den = make_rational(1, den);
  FracIdeal I = from_generators(field, {field.elem(Rational(a) * inv_den, 0),
                                        field.elem(Rational(b) * inv_den, Rational(c) * inv_den)});
  if (I.norm() != Rational(a * c) * inv_den * inv_den)
    throw std::invalid_argument("HNF data does not describe an O_K-ideal");
  return I;
}

std::array<KElem, 2> FracIdeal::basis() const {
  Rational inv = make_rational(1, den_);
  return {KElem(d_, Rational(a_) * inv, 0), KElem(d_, Rational(b_) * inv, Rational(c_) * inv)};
}

Rational FracIdeal::norm() const { return make_rational(a_ * c_, den_ * den_); }

bool FracIdeal::contains(const KElem& x) const {
  // x = u * a/den + v * (b + c w)/den with u, v integers.
  Rational v = x.b() * den_ / c_;
  if (v.get_den() != 1) return false;
  Rational u = (x.a() * den_ - v * b_) / a_;
  return u.get_den() == 1;
}

FracIdeal FracIdeal::operator*(const FracIdeal& other) const {
  QuadField field(d_);
  auto x = basis();
  auto y = other.basis();
  return from_generators(field, {x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]});
}

FracIdeal FracIdeal::operator+(const FracIdeal& other) const {
  QuadField field(d_);
  auto x = basis();
  auto y = other.basis();
  return from_generators(field, {x[0], x[1], y[0], y[1]});
}

FracIdeal FracIdeal::scaled(const KElem& alpha) const {
  if (alpha.is_zero()) throw std::invalid_argument("scaling an ideal by zero");
  QuadField field(d_);
  auto x = basis();
  return from_generators(field, {x[0] * alpha, x[1] * alpha});
}

FracIdeal FracIdeal::conj() const {
  QuadField field(d_);
  auto x = basis();
  return from_generators(field, {x[0].conj(), x[1].conj()});
}

FracIdeal FracIdeal::inverse() const { return conj().scaled(KElem(1 / norm())); }

bool operator<(const FracIdeal& x, const FracIdeal& y) {
  Rational nx = x.norm(), ny = y.norm();
  if (nx != ny) return nx < ny;
  if (x.den_ != y.den_) return x.den_ < y.den_;
  if (x.a_ != y.a_) return x.a_ < y.a_;
  if (x.c_ != y.c_) return x.c_ < y.c_;
  // Larger HNF offset first among equal-norm ideals.
  return x.b_ > y.b_;
}

std::string FracIdeal::to_string() const {
  if (norm() == 1 && den_ == 1) return "O_K";
  QuadField field(d_);
  Integer b = b_;
  if (2 * b > a_) b -= a_;
  Rational inv = make_rational(1, den_);
  KElem g1 = field.elem(Rational(a_) * inv, 0);
  KElem g2 = field.elem(Rational(b) * inv, Rational(c_) * inv);
  return "<" + g1.to_string() + ", " + g2.to_string() + ">";
}

std::vector<FracIdeal> integral_ideals_of_norm(const QuadField& field, const Integer& norm) {
  std::vector<FracIdeal> out;
  for (Integer c = 1; c * c <= norm; ++c) {
    if (norm % c != 0) continue;
    Integer a = norm / c;
    if (a % c != 0) continue;
    for (Integer b = 0; b < a; b += c) {
      FracIdeal I = FracIdeal::from_generators(field, {field.elem(Rational(a), 0),
                                                       field.elem(Rational(b), Rational(c))});
      if (I.den() == 1 && I.hnf_a() == a && I.hnf_b() == b && I.hnf_c() == c) out.push_back(I);
    }
  }
  return out;
}

std::optional<KElem> principal_generator(const FracIdeal& ideal) {
  auto g = ideal.basis();
  QMatrix gram(2, 2);
  gram(0, 0) = g[0].norm();
  gram(1, 1) = g[1].norm();
  gram(0, 1) = gram(1, 0) = (g[0] * g[1].conj()).re();
  Rational target = ideal.norm();
  std::optional<KElem> found;
  ShortVectors sv(gram);
  sv.for_each(target, [&](const ZVec& v, const Rational& n) {
    if (!found && n == target)
      found = g[0] * KElem(static_cast<long>(v[0])) + g[1] * KElem(static_cast<long>(v[1]));
  });
  return found;
}

int ClassGroup::inverse(int c) const {
  for (int j = 0; j < order(); ++j)
    if (table[c][j] == 0) return j;
  throw InvariantViolation("class without inverse");
}

int ClassGroup::power(int c, int e) const {
  int r = 0;
  for (int i = 0; i < e; ++i) r = table[r][c];
  return r;
}

Integer ClassGroup::max_rep_norm() const {
  Integer m = 1;
  for (const auto& r : reps) m = std::max(m, r.norm().get_num());
  return m;
}

ClassMembership class_of(const ClassGroup& group, const FracIdeal& ideal) {
  for (int j = 0; j < group.order(); ++j) {
    const FracIdeal& rep = group.reps[j];
    if (auto beta = principal_generator(ideal * rep.conj())) {
      ClassMembership m;
      m.index = j;
      m.alpha = KElem(rep.norm()) / *beta;
      ensure(ideal.scaled(m.alpha) == rep, "class_of scaling");
      return m;
    }
  }
  throw InvariantViolation("ideal matches no class representative");
}

ClassGroup class_group(const QuadField& field) {
  // Every class holds an integral ideal of norm <= sqrt(|D|/3), the bound on
  // the leading coefficient of a reduced binary form of discriminant D.
  Integer disc = Integer(static_cast<long>(-field.discriminant()));
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(disc / 3).get_mpz_t());
  while ((bound + 1) * (bound + 1) * 3 <= disc) ++bound;

  ClassGroup g;
  g.d = field.d();
  for (Integer n = 1; n <= bound; ++n) {
    for (const auto& I : integral_ideals_of_norm(field, n)) {
      bool placed = false;
      for (auto& rep : g.reps) {
        if (principal_generator(I * rep.conj())) {
          if (I < rep) rep = I;
          placed = true;
          break;
        }
      }
      if (!placed) g.reps.push_back(I);
    }
  }
  // O_K is the unique norm-1 ideal, so it already sits first.
  std::sort(g.reps.begin() + 1, g.reps.end());
  int h = g.order();
  g.table.assign(h, std::vector<int>(h, 0));
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) g.table[i][j] = class_of(g, g.reps[i] * g.reps[j]).index;
  return g;
}

std::vector<int> lattice_class_reps(const ClassGroup& group, int n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  int h = group.order();
  std::vector<int> powers;
  for (int c = 0; c < h; ++c) powers.push_back(group.power(c, n));
  std::vector<bool> seen(h, false);
  std::vector<int> reps;
  for (int c = 0; c < h; ++c) {
    if (seen[c]) continue;
    reps.push_back(c);
    for (int base : {c, group.inverse(c)})
      for (int p : powers) seen[group.table[base][p]] = true;
  }
  return reps;
}

}  // namespace phf
