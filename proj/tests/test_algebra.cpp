#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>

#include "phf/cones.hpp"
#include "phf/ideals.hpp"
#include "phf/lattice.hpp"
#include "phf/qfield.hpp"
#include "phf/short_vectors.hpp"

using namespace phf;

namespace {

// Reduced primitive positive definite binary forms of discriminant D.
int reduced_form_count(std::int64_t disc) {
  std::int64_t D = -disc;
  int count = 0;
  for (std::int64_t a = 1; 3 * a * a <= D; ++a)
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if ((b * b + D) % (4 * a) != 0) continue;
      std::int64_t c = (b * b + D) / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
      ++count;
    }
  return count;
}

}  // namespace

TEST(QuadField, ArithmeticAndNorm) {
  QuadField k(15);
  KElem w = k.omega();
  EXPECT_EQ(w * w, w - KElem(4));
  KElem s = k.sqrt_minus_d();
  EXPECT_EQ(s * s, KElem(-15));
  KElem x = k.elem(3, -2);
  EXPECT_EQ(x.norm(), (x * x.conj()).re());
  EXPECT_EQ(x * x.inv(), k.one());
  EXPECT_THROW(k.zero().inv(), std::domain_error);
  EXPECT_THROW(QuadField(12), std::invalid_argument);
  EXPECT_THROW(QuadField(-3), std::invalid_argument);

  QuadField k5(5);
  KElem s5 = k5.omega();
  EXPECT_EQ(s5 * s5, KElem(-5));
  EXPECT_EQ(k5.units().size(), 2u);
  EXPECT_EQ(QuadField(1).units().size(), 4u);
  EXPECT_EQ(QuadField(3).units().size(), 6u);
}

TEST(QuadField, RandomNormMultiplicative) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dist(-20, 20);
  for (std::int64_t d : {1, 2, 3, 5, 6, 7, 10, 15, 21, 23}) {
    QuadField k(d);
    for (int t = 0; t < 50; ++t) {
      KElem x = k.elem(make_rational(dist(rng), 3), dist(rng));
      KElem y = k.elem(dist(rng), make_rational(dist(rng), 2));
      EXPECT_EQ((x * y).norm(), x.norm() * y.norm());
      EXPECT_EQ((x * y).conj(), x.conj() * y.conj());
      EXPECT_EQ((x + y).trace(), x.trace() + y.trace());
    }
  }
}

TEST(ClassGroup, MatchesReducedFormCount) {
  for (std::int64_t d = 1; d <= 60; ++d) {
    if (!is_squarefree(d)) continue;
    QuadField k(d);
    ClassGroup g = class_group(k);
    EXPECT_EQ(g.order(), reduced_form_count(k.discriminant())) << "d=" << d;
    EXPECT_EQ(g.reps[0], FracIdeal::unit(k));
    for (int i = 0; i < g.order(); ++i) {
      EXPECT_EQ(g.table[i][0], i);
      EXPECT_EQ(g.table[i][g.inverse(i)], 0);
    }
  }
}

TEST(ClassGroup, RepresentativesOfSmallFields) {
  QuadField k15(15);
  ClassGroup g15 = class_group(k15);
  ASSERT_EQ(g15.order(), 2);
  EXPECT_EQ(g15.reps[1], FracIdeal::from_generators(k15, {KElem(2), k15.omega() + KElem(1)}));
  QuadField k21(21);
  ClassGroup g21 = class_group(k21);
  ASSERT_EQ(g21.order(), 4);
  KElem s = k21.sqrt_minus_d();
  EXPECT_EQ(g21.reps[1], FracIdeal::from_generators(k21, {KElem(2), s - KElem(1)}));
  EXPECT_EQ(g21.reps[2], FracIdeal::from_generators(k21, {KElem(3), s}));
  EXPECT_EQ(g21.reps[3], FracIdeal::from_generators(k21, {KElem(5), s - KElem(2)}));
  EXPECT_EQ(class_group(QuadField(23)).order(), 3);
}

TEST(Ideals, InverseAndClassMembership) {
  QuadField k(5);
  ClassGroup g = class_group(k);
  FracIdeal p = g.reps[1];
  FracIdeal prod = p * p.inverse();
  EXPECT_EQ(prod, FracIdeal::unit(k));
  EXPECT_EQ(p.norm(), 2);
  FracIdeal p3 = FracIdeal::from_generators(k, {KElem(3), k.omega() + KElem(1)});
  auto m = class_of(g, p3);
  EXPECT_EQ(m.index, 1);
  EXPECT_EQ(p3.scaled(m.alpha), g.reps[1]);
  EXPECT_FALSE(principal_generator(p3).has_value());
  EXPECT_TRUE(principal_generator(p3 * p).has_value());
}

TEST(ShortVectors, BruteForceAgreement) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int t = 0; t < 60; ++t) {
    QMatrix b(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) b(i, j) = dist(rng) + (i == j ? 5 : 0);
    QMatrix gram = b * b.transpose();
    ShortVectors sv(gram);
    ASSERT_TRUE(sv.positive_definite());
    Rational bound = 60;
    std::size_t count = 0;
    sv.for_each(bound, [&](const ZVec& v, const Rational& norm) {
      QVec q(v.begin(), v.end());
      EXPECT_EQ(norm, dot(mul(q, gram), q));
      EXPECT_LE(norm, bound);
      ++count;
    }, false);
    // |x_i| <= sqrt(bound * (G^-1)_ii)
    QMatrix ginv = inverse(gram);
    std::array<long, 3> r{};
    for (int i = 0; i < 3; ++i) r[i] = floor_plus_sqrt(0, bound * ginv(i, i)).get_si();
    if (*std::max_element(r.begin(), r.end()) > 20) continue;  // too skew for brute force
    std::size_t brute = 0;
    for (long x = -r[0]; x <= r[0]; ++x)
      for (long y = -r[1]; y <= r[1]; ++y)
        for (long z = -r[2]; z <= r[2]; ++z) {
          if (!x && !y && !z) continue;
          QVec v{Rational(x), Rational(y), Rational(z)};
          if (dot(mul(v, gram), v) <= bound) ++brute;
        }
    EXPECT_EQ(count, brute);
  }
}

TEST(Lattice, StandardLatticeStructure) {
  QuadField k(15);
  auto g = std::make_shared<const ClassGroup>(class_group(k));
  OKLattice l = OKLattice::standard(k, g, 1, 2);
  EXPECT_EQ(l.steinitz_class(), 1);
  EXPECT_EQ(l.ideal_norm_product(), 2);
  EXPECT_TRUE(l.is_automorphism(KMatrix::identity(2, k.one(), k.zero())));
  KMatrix bad = KMatrix::identity(2, k.one(), k.zero());
  bad(1, 1) = KElem(2);
  EXPECT_FALSE(l.is_automorphism(bad));
  // coefficient ideal of a vector
  ZVec v{1, 0, 0, 0};
  EXPECT_EQ(l.coeff_class_rep(v), 0);
  // 2 e_2 has coefficient ideal 2 a^{-1} = conj(a), not the representative
  ZVec w{0, 0, 1, 0};
  EXPECT_EQ(l.coeff_class_rep(w), -1);
  EXPECT_EQ(l.coeff_norm(w), 2);
  for (const auto& u : l.unit_actions()) EXPECT_EQ(u.rows(), 4u);
}

TEST(Lattice, FastCoefficientPathAgrees) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> dist(-4, 4);
  for (std::int64_t d : {5, 6, 10, 15, 21, 23}) {
    QuadField k(d);
    auto g = std::make_shared<const ClassGroup>(class_group(k));
    for (int c = 0; c < g->order(); ++c) {
      OKLattice l = OKLattice::standard(k, g, c, 2);
      for (int t = 0; t < 40; ++t) {
        ZVec v(4);
        for (auto& e : v) e = dist(rng);
        if (v == ZVec(4, 0)) continue;
        FracIdeal a = l.coeff_ideal(l.vector(v));
        EXPECT_EQ(a.norm(), l.coeff_norm(v));
        int j = l.coeff_class_rep(v);
        if (j >= 0) EXPECT_EQ(a, g->reps[j]);
        else EXPECT_TRUE(std::find(g->reps.begin(), g->reps.end(), a) == g->reps.end());
      }
    }
  }
}

TEST(Cones, CubeFacets) {
  // cone over a square: 4 rays, 4 facets
  std::vector<QVec> rays{{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}};
  PolyCone c = facet_enumeration(rays);
  EXPECT_EQ(c.facets.size(), 4u);
  for (const auto& f : c.facets) {
    EXPECT_EQ(f.incident.size(), 2u);
    for (const auto& r : rays) {
      QVec n(f.normal.begin(), f.normal.end());
      EXPECT_GE(sgn(dot(n, r)), 0);
    }
  }
  EXPECT_THROW(facet_enumeration({{1, 0, 0}, {0, 1, 0}}), std::invalid_argument);
}

TEST(Cones, HermitianCoordinatesRoundTrip) {
  QuadField k(10);
  KMatrix a(2, 2, k.zero());
  a(0, 0) = KElem(3);
  a(1, 1) = make_rational(1, 2);
  a(0, 1) = k.from_sqrt(make_rational(1, 3), 2);
  a(1, 0) = a(0, 1).conj();
  EXPECT_EQ(herm_from_coords(k, 2, herm_coords(a)), a);
  KVec x{k.elem(1, 2), k.elem(-3, 1)};
  EXPECT_EQ(dot(evaluation_functional(x), herm_coords(a)), hermitian_value(a, x));
}
