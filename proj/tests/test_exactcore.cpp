#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "pfaffcubic/field.hpp"
#include "pfaffcubic/matrix.hpp"
#include "pfaffcubic/parse.hpp"
#include "pfaffcubic/poly.hpp"
#include "pfaffcubic/random.hpp"

using namespace pfc;

namespace {

TowerPtr gaussian() { return FieldTower::extend(nullptr, 0, 1); }

// Q(i, sqrt2, sqrt3)
TowerPtr klein_tower() {
  return FieldTower::from_relations({{0, 1}, {0, -2}, {0, -3}});
}

// Determinant by the Leibniz formula, independent of elimination.
FieldElement leibniz_det(const Matrix<FieldElement>& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  FieldElement acc(0);
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    FieldElement term(sign);
    for (std::size_t i = 0; i < n; ++i) term = term * a(i, perm[i]);
    acc = acc + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

}  // namespace

TEST(Field, RationalArithmetic) {
  EXPECT_EQ(FieldElement(Rational(3, 4)) / FieldElement(Rational(-2, 5)), FieldElement(Rational(-15, 8)));
  EXPECT_EQ((FieldElement(Rational(-15, 8))).str(), "-15/8");
  EXPECT_THROW(FieldElement(1) / FieldElement(0), ArithmeticError);
}

TEST(Field, GaussianDifferenceOfSquares) {
  const auto t = gaussian();
  const auto i = FieldElement::generator(t, 1);
  EXPECT_EQ((FieldElement(1) + i) * (FieldElement(1) - i), FieldElement(2));
  EXPECT_EQ(i * i, FieldElement(-1));
}

TEST(Field, VietaOnCyclotomicQuadratic) {
  const auto t = FieldTower::extend(nullptr, 1, 1);
  const auto u = FieldElement::generator(t, 1);
  const auto v = u.conjugate(1);
  EXPECT_EQ(v, FieldElement(-1) - u);
  EXPECT_EQ(u + v, FieldElement(-1));
  EXPECT_EQ(u * v, FieldElement(1));
  EXPECT_EQ(v.conjugate(1), u);
  EXPECT_EQ(FieldElement(Rational(2, 3)).in_tower(t).conjugate(1), FieldElement(Rational(2, 3)));
}

TEST(Field, ExtensionRejectsDegenerateRelations) {
  EXPECT_THROW(FieldTower::extend(nullptr, 2, 1), ArithmeticError);   // zero discriminant
  EXPECT_THROW(FieldTower::extend(nullptr, 0, -4), ArithmeticError);  // x^2 = 4 splits
  const auto t = FieldTower::extend(nullptr, 0, -2);
  EXPECT_THROW(FieldTower::extend(t, 0, -8), ArithmeticError);  // sqrt8 = 2 sqrt2 already present
}

TEST(Field, TowerMismatch) {
  const auto a = FieldTower::extend(nullptr, 0, 1);
  const auto b = FieldTower::extend(nullptr, 0, -2);
  EXPECT_THROW(FieldElement::generator(a, 1) + FieldElement::generator(b, 1), ArithmeticError);
  // structurally equal towers built separately are compatible
  const auto c = FieldTower::extend(nullptr, 0, 1);
  EXPECT_EQ(FieldElement::generator(a, 1) * FieldElement::generator(c, 1), FieldElement(-1));
}

TEST(Field, KleinConstants) {
  const auto t = klein_tower();
  const auto i = FieldElement::generator(t, 1);
  const auto r2 = FieldElement::generator(t, 2);
  const auto r3 = FieldElement::generator(t, 3);
  const auto u = (FieldElement(-1) + i * r3) / FieldElement(2);
  EXPECT_TRUE((u * u + u + FieldElement(1)).is_zero());
  EXPECT_EQ(u.conjugate(1), FieldElement(-1) - u);
  EXPECT_EQ(u.str(), "-1/2 + 1/2*g1*g3");
  EXPECT_EQ((r2 * r3) * (r2 * r3), FieldElement(6));
  const auto c = u.to_complex();
  EXPECT_NEAR(c.real(), -0.5, 1e-15);
  EXPECT_NEAR(c.imag(), std::sqrt(3.0) / 2, 1e-15);
}

TEST(Field, SquareRoots) {
  const auto t = klein_tower();
  const auto r2 = FieldElement::generator(t, 2);
  const auto r3 = FieldElement::generator(t, 3);
  SplitMix64 rng(7);
  for (int k = 0; k < 30; ++k) {
    const auto x = random_element(rng, t, 4);
    const auto s = (x * x).sqrt();
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(*s * *s, x * x);
  }
  EXPECT_TRUE(FieldElement(6).in_tower(t).sqrt().has_value());
  EXPECT_FALSE(FieldElement(5).in_tower(t).sqrt().has_value());
  EXPECT_FALSE((r2 + r3).sqrt().has_value());
}

TEST(Field, AxiomsAtDepthsOneToThree) {
  SplitMix64 rng(11);
  for (int depth = 1; depth <= 3; ++depth) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto t = random_tower(rng, depth);
      const auto x = random_element(rng, t), y = random_element(rng, t), z = random_element(rng, t);
      EXPECT_EQ((x + y) + z, x + (y + z));
      EXPECT_EQ((x * y) * z, x * (y * z));
      EXPECT_EQ(x * (y + z), x * y + x * z);
      EXPECT_EQ(x * y, y * x);
      EXPECT_EQ(x - x, FieldElement(0));
      if (!x.is_zero()) {
        EXPECT_EQ(x * x.inverse(), FieldElement(1));
      }
      // the top conjugation is always an automorphism
      EXPECT_EQ((x * y).conjugate(depth), x.conjugate(depth) * y.conjugate(depth));
      EXPECT_EQ((x + y).conjugate(depth), x.conjugate(depth) + y.conjugate(depth));
      EXPECT_EQ(x.conjugate(depth).conjugate(depth), x);
    }
  }
}

TEST(Field, EveryLevelConjugatesInRationalTower) {
  SplitMix64 rng(3);
  const auto t = klein_tower();
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_element(rng, t), y = random_element(rng, t);
    for (int lvl = 1; lvl <= 3; ++lvl) {
      EXPECT_EQ((x * y).conjugate(lvl), x.conjugate(lvl) * y.conjugate(lvl));
      EXPECT_EQ(x.conjugate(lvl).conjugate(lvl), x);
    }
  }
  EXPECT_THROW(FieldElement(1).in_tower(t).conjugate(4), ArithmeticError);
}

TEST(Field, ConjugationThatDoesNotExtendIsRefused) {
  const auto base = FieldTower::extend(nullptr, 0, -2);
  const auto r2 = FieldElement::generator(base, 1);
  const auto t = FieldTower::extend(base, 0, -(FieldElement(1) + r2));
  EXPECT_THROW(FieldElement::generator(t, 2).conjugate(1), ArithmeticError);
}

TEST(Parse, ScalarsAndPolynomials) {
  const auto t = klein_tower();
  EXPECT_EQ(parse_scalar("1/2 - 1/2*g1*g3", t), (FieldElement(1) - FieldElement::generator(t, 1) * FieldElement::generator(t, 3)) / FieldElement(2));
  EXPECT_EQ(parse_scalar("-15/8"), FieldElement(Rational(-15, 8)));
  EXPECT_THROW(parse_scalar("g4", t), ParseError);
  EXPECT_THROW(parse_scalar("1 +"), ParseError);
  EXPECT_THROW(parse_scalar("1/0"), ParseError);
  const auto f = parse_poly("(w0 + w1)*(w0 - w1)", w_vars());
  EXPECT_EQ(f, parse_poly("w0^2 - w1^2", w_vars()));
  EXPECT_EQ(f.str(), "w0^2 - w1^2");
  EXPECT_EQ(parse_poly(f.str(), w_vars()), f);
  EXPECT_THROW(parse_poly("w0/w1", w_vars()), ParseError);
  EXPECT_THROW(parse_poly("y0", w_vars()), ParseError);
}

TEST(Poly, BasicOperations) {
  const auto w = [](std::size_t i) { return MultiPoly::variable(w_vars(), i); };
  EXPECT_EQ((w(0) + w(1)) * (w(0) - w(1)), w(0) * w(0) - w(1) * w(1));
  const std::vector<FieldElement> pt{0, 0, 0, 1};
  EXPECT_TRUE((w(0) * w(1) * w(2)).eval(pt).is_zero());
  EXPECT_EQ((w(0) * w(1) * w(2)).degree(), 3);
  EXPECT_EQ(MultiPoly(w_vars()).degree(), -1);
  EXPECT_THROW(w(0) + MultiPoly::variable(x_vars(), 0), ShapeError);
  // constants mix freely with any variable set
  EXPECT_EQ((w(0) + MultiPoly(3)).constant_term(), FieldElement(3));
}

TEST(Poly, DegreeOfSubstitutedCubic) {
  // w0 w2 w4 with w4 = w0 + w1 + w2 + w3
  const auto w = [](std::size_t i) { return MultiPoly::variable(w_vars(), i); };
  const MultiPoly w4 = w(0) + w(1) + w(2) + w(3);
  EXPECT_EQ((w(0) * w(2) * w4).degree(), 3);
}

TEST(Poly, SubstituteLinear) {
  const auto f = parse_poly("w0^2*w1 - 3*w2*w3 + w0", w_vars());
  const auto id = Matrix<FieldElement>::identity(4);
  EXPECT_EQ(substitute_linear(f, id), f);
  Matrix<FieldElement> swap = Matrix<FieldElement>::identity(4);
  swap(0, 0) = 0;
  swap(1, 1) = 0;
  swap(0, 1) = 1;
  swap(1, 0) = 1;
  EXPECT_EQ(substitute_linear(parse_poly("w0", w_vars()), swap), parse_poly("w1", w_vars()));
  Matrix<FieldElement> singular(4, 4, FieldElement(1));
  EXPECT_THROW(substitute_linear(f, singular), ArithmeticError);
}

TEST(Poly, SubstituteLinearCompositionLaw) {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly f(w_vars());
    for (int k = 0; k < 6; ++k) {
      Exponents e{};
      for (int v = 0; v < 4; ++v) e[v] = static_cast<std::uint8_t>(rng.uniform(0, 2));
      f = f + MultiPoly(w_vars(), MultiPoly::Terms{{e, FieldElement(rng.nonzero(-5, 5))}});
    }
    Matrix<FieldElement> c1(4, 4), c2(4, 4);
    for (auto* c : {&c1, &c2}) {
      do {
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = 0; j < 4; ++j) (*c)(i, j) = rng.uniform(-3, 3);
      } while (det(*c).is_zero());
    }
    // w = C x composes as f(C1 C2 x) = (f o C1) o C2
    EXPECT_EQ(substitute_linear(f, c1 * c2), substitute_linear(substitute_linear(f, c1), c2));
    EXPECT_EQ(substitute_linear(f, c1).degree(), f.degree());
  }
}

TEST(LinAlg, Examples) {
  EXPECT_EQ(rank(Matrix<FieldElement>::identity(6)), 6u);
  const Matrix<FieldElement> j2{{0, 1}, {-1, 0}};
  EXPECT_EQ(det(j2), FieldElement(1));
  // 15 x 10 full column rank -> transpose has 5-dimensional kernel
  SplitMix64 rng(1);
  Matrix<FieldElement> a(15, 10);
  do {
    for (std::size_t i = 0; i < 15; ++i)
      for (std::size_t j = 0; j < 10; ++j) a(i, j) = rng.uniform(-4, 4);
  } while (rank(a) != 10);
  EXPECT_EQ(kernel(a.transpose()).cols(), 5u);
}

TEST(LinAlg, RankNullityAndDeterminantOracle) {
  SplitMix64 rng(9);
  const auto t = gaussian();
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = static_cast<std::size_t>(rng.uniform(1, 6)), c = static_cast<std::size_t>(rng.uniform(1, 7));
    Matrix<FieldElement> a(r, c);
    const long k = rng.uniform(1, 3);
    // low-rank-ish: product of random factors
    Matrix<FieldElement> left(r, static_cast<std::size_t>(k)), right(static_cast<std::size_t>(k), c);
    for (auto* m : {&left, &right})
      for (std::size_t i = 0; i < m->rows(); ++i)
        for (std::size_t j = 0; j < m->cols(); ++j) (*m)(i, j) = random_element(rng, t, 3);
    a = left * right;
    const auto kr = kernel(a);
    EXPECT_EQ(rank(a) + kr.cols(), c);
    if (kr.cols() > 0) {
      const auto image = a * kr;
      for (const auto& e : image.data()) EXPECT_TRUE(e.is_zero());
    }
  }
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 5));
    Matrix<FieldElement> a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = random_element(rng, t, 3);
    EXPECT_EQ(det(a), leibniz_det(a));
    if (!det(a).is_zero()) {
      EXPECT_EQ(a * inverse(a), Matrix<FieldElement>::identity(n));
    }
  }
}

TEST(LinAlg, SolveAndSpans) {
  const Matrix<FieldElement> a{{1, 2}, {2, 4}};
  EXPECT_THROW(solve(a, {1, 3}), ArithmeticError);
  const auto x = solve(a, {FieldElement(1), FieldElement(2)});
  EXPECT_EQ(x[0] + FieldElement(2) * x[1], FieldElement(1));
  // span{e0, e1} n span{e1, e2} = span{e1}
  const Matrix<FieldElement> s1{{1, 0}, {0, 1}, {0, 0}}, s2{{0, 0}, {1, 0}, {0, 1}};
  const auto meet = intersect_spans(s1, s2);
  ASSERT_EQ(meet.cols(), 1u);
  EXPECT_TRUE(same_span(meet, Matrix<FieldElement>{{0}, {1}, {0}}));
  EXPECT_FALSE(same_span(s1, s2));
}
