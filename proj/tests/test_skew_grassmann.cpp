#include <gtest/gtest.h>

#include <vector>

#include "pfaffcubic/explicit.hpp"
#include "pfaffcubic/grassmann.hpp"
#include "pfaffcubic/parse.hpp"
#include "pfaffcubic/random.hpp"
#include "pfaffcubic/skew.hpp"

using namespace pfc;

namespace {

// Pfaffian as a signed sum over perfect matchings.
FieldElement matching_pfaffian(const Matrix<FieldElement>& a, std::vector<std::size_t> idx) {
  if (idx.empty()) return 1;
  FieldElement acc(0);
  const std::size_t first = idx[0];
  for (std::size_t k = 1; k < idx.size(); ++k) {
    std::vector<std::size_t> rest;
    for (std::size_t m = 1; m < idx.size(); ++m)
      if (m != k) rest.push_back(idx[m]);
    // moving idx[k] next to idx[0] crosses k-1 entries
    const FieldElement sign = (k % 2 == 1) ? 1 : -1;
    acc = acc + sign * a(first, idx[k]) * matching_pfaffian(a, rest);
  }
  return acc;
}

Matrix<FieldElement> random_skew(SplitMix64& rng, std::size_t n, const TowerPtr& t = nullptr) {
  Matrix<FieldElement> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = t ? random_element(rng, t, 4) : FieldElement(rng.uniform(-6, 6));
      a(j, i) = -a(i, j);
    }
  return a;
}

Matrix<FieldElement> j6() {
  Matrix<FieldElement> a(6, 6);
  for (std::size_t k = 0; k < 3; ++k) {
    a(2 * k, 2 * k + 1) = 1;
    a(2 * k + 1, 2 * k) = -1;
  }
  return a;
}

Vector6 random_vector(SplitMix64& rng) {
  Vector6 v;
  for (auto& x : v) x = rng.uniform(-5, 5);
  return v;
}

MultiPoly wv(std::size_t i) { return MultiPoly::variable(w_vars(), i); }

MultiPoly det3(const Matrix<MultiPoly>& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

}  // namespace

TEST(Pfaffian, Examples) {
  EXPECT_EQ(pfaffian(Matrix<FieldElement>{{0, 1}, {-1, 0}}), FieldElement(1));
  EXPECT_EQ(pfaffian(j6()), FieldElement(1));
  const MultiPoly f = wv(0) + wv(2);
  EXPECT_EQ(pfaffian(Matrix<MultiPoly>{{MultiPoly(w_vars()), f}, {-f, MultiPoly(w_vars())}}), f);
  EXPECT_THROW(pfaffian(Matrix<FieldElement>(3, 3)), ShapeError);
  EXPECT_THROW(pfaffian(Matrix<FieldElement>{{0, 1}, {1, 0}}), ShapeError);
}

TEST(Pfaffian, SquareIsDeterminantAndMatchingsAgree) {
  SplitMix64 rng(21);
  const auto t = FieldTower::extend(nullptr, 0, 1);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 * static_cast<std::size_t>(rng.uniform(1, 4));
    const auto a = random_skew(rng, n, trial % 2 ? t : nullptr);
    const FieldElement pf = pfaffian(a);
    EXPECT_EQ(pf * pf, det(a));
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    EXPECT_EQ(pf, matching_pfaffian(a, idx));
  }
}

TEST(Pfaffian, CongruenceScalesByDeterminant) {
  SplitMix64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_skew(rng, 6);
    Matrix<FieldElement> p(6, 6);
    do {
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) p(i, j) = rng.uniform(-3, 3);
    } while (det(p).is_zero());
    EXPECT_EQ(pfaffian(congruence(p, a)), det(p) * pfaffian(a));
  }
}

TEST(Pfaffian, SubPfaffiansOfJ6) {
  const auto s = sub_pfaffians4(j6());
  ASSERT_EQ(s.size(), 15u);
  for (std::size_t k = 0; k < 15; ++k) {
    const auto [i, j] = kPairs[k];
    const bool block = (i % 2 == 0) && j == i + 1;
    EXPECT_EQ(s[k], FieldElement(block ? 1 : 0)) << i << j;
  }
  Bivector15 e03;
  e03[pair_index(0, 3)] = 1;
  for (const auto& x : sub_pfaffians4(to_skew(e03))) EXPECT_TRUE(x.is_zero());
}

TEST(Pfaffian, SubPfaffiansAtVertex) {
  const auto inst = build_instance(ParamsA9{});
  const std::vector<FieldElement> vertex{0, 0, 0, 1};
  const auto mv = inst.m.at(vertex);
  EXPECT_TRUE(pfaffian(mv).is_zero());
  bool some_nonzero = false;
  for (const auto& x : sub_pfaffians4(mv)) some_nonzero = some_nonzero || !x.is_zero();
  EXPECT_TRUE(some_nonzero);
}

TEST(Pfaffian, PairIndexMatchesTable) {
  for (std::size_t k = 0; k < 15; ++k) EXPECT_EQ(pair_index(kPairs[k].first, kPairs[k].second), k);
}

TEST(SkewShape, BlockShapeCheck) {
  const MultiPoly z(w_vars());
  Matrix<MultiPoly> n(6, 6, z);
  for (std::size_t i = 0; i < 3; ++i) {
    n(i, i + 3) = wv(i);
    n(i + 3, i) = -wv(i);
  }
  EXPECT_TRUE(block_shape_check(n));
  const auto jw = j6().map([&](const FieldElement& x) { return x * wv(0); });
  EXPECT_FALSE(block_shape_check(jw));
}

TEST(SkewShape, BlockShapeGivesMinusDeterminant) {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix<MultiPoly> a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i; j < 3; ++j) {
        MultiPoly e(w_vars());
        for (std::size_t k = 0; k < 4; ++k) e = e + FieldElement(rng.uniform(-3, 3)) * wv(k);
        a(i, j) = e;
        a(j, i) = e;
      }
    Matrix<MultiPoly> n(6, 6, MultiPoly(w_vars()));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        n(i, j + 3) = a(i, j);
        n(j + 3, i) = -a(i, j);
      }
    ASSERT_TRUE(block_shape_check(n));
    EXPECT_EQ(pfaffian(n), -det3(a));
  }
}

TEST(SkewShape, Isotropy) {
  const auto e = [](std::initializer_list<int> cols) {
    Matrix<FieldElement> b(6, 3);
    std::size_t c = 0;
    for (int k : cols) b(static_cast<std::size_t>(k), c++) = 1;
    return b;
  };
  const auto jw = j6().map([&](const FieldElement& x) { return x * wv(0); });
  EXPECT_FALSE(isotropy_check(e({0, 1, 2}), jw));
  EXPECT_TRUE(isotropy_check(e({0, 2, 4}), jw));
  EXPECT_TRUE(isotropy_check(e({0, 1, 2}), Matrix<MultiPoly>(6, 6, MultiPoly(w_vars()))));
  EXPECT_THROW(isotropy_check(Matrix<FieldElement>(6, 3), jw), PreconditionError);

  const auto inst = build_instance(ParamsA9{.a024 = 2, .a034 = 5, .a124 = 3, .a134 = -2, .a234 = 7});
  const auto p3 = conjugators(inst)[3];
  EXPECT_TRUE(isotropy_check(p3.block(0, 0, 6, 3), restrict_to_plane(inst, inst.m.matrix(), 3)));
}

TEST(SkewShape, RankAtPoint) {
  const auto inst = build_instance(ParamsA9{});
  const std::vector<FieldElement> e0{1, 0, 0, 0}, generic{1, 2, -3, 5}, vertex{0, 0, 0, 1};
  EXPECT_EQ(rank_at_point(inst.m0123, e0), 2u);
  ASSERT_FALSE(expected_cubic(inst.params).eval(generic).is_zero());
  EXPECT_EQ(rank_at_point(inst.m, generic), 6u);
  EXPECT_EQ(rank_at_point(inst.m, vertex), 4u);
  EXPECT_THROW(rank_at_point(inst.m, std::vector<FieldElement>{0, 0, 0, 0}), PreconditionError);

  SplitMix64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FieldElement> pt;
    for (int k = 0; k < 4; ++k) pt.push_back(rng.uniform(-2, 2));
    if (pt == std::vector<FieldElement>{0, 0, 0, 0}) continue;
    const std::size_t r = rank_at_point(inst.m, pt);
    EXPECT_EQ(r % 2, 0u);
    EXPECT_EQ(r + kernel(inst.m.at(pt)).cols(), 6u);
  }
}

TEST(Grassmann, WedgeExamples) {
  const Bivector15 e03 = wedge(basis_vector(0), basis_vector(3));
  EXPECT_TRUE(wedge2(e03, e03).is_zero());
  const FourForm15 f = wedge2(wedge(basis_vector(0), basis_vector(1)), wedge(basis_vector(2), basis_vector(3)));
  for (std::size_t k = 0; k < 15; ++k) EXPECT_EQ(f[k], FieldElement(k == 0 ? 1 : 0));
}

TEST(Grassmann, WedgeIsSymmetricBilinearAndTwicePfaffian) {
  SplitMix64 rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    Bivector15 a, b, c;
    for (auto* x : {&a, &b, &c})
      for (auto& e : x->p) e = rng.uniform(-4, 4);
    const FieldElement s = rng.uniform(-4, 4);
    EXPECT_EQ(wedge2(a, b), wedge2(b, a));
    const auto lhs = wedge2(a + s * b, c);
    const auto r1 = wedge2(a, c), r2 = wedge2(b, c);
    for (std::size_t k = 0; k < 15; ++k) EXPECT_EQ(lhs[k], r1[k] + s * r2[k]);
    const auto sq = wedge2(a, a);
    const auto subs = sub_pfaffians4(to_skew(a));
    for (std::size_t k = 0; k < 15; ++k) {
      const auto [i, j] = kPairs[k];
      EXPECT_EQ(sq[complement_quad(i, j)], FieldElement(2) * subs[k]);
    }
  }
}

TEST(Grassmann, DecomposabilityThreeWayAgreement) {
  SplitMix64 rng(26);
  for (int trial = 0; trial < 40; ++trial) {
    Bivector15 w = wedge(random_vector(rng), random_vector(rng));
    if (trial % 2) w = w + wedge(random_vector(rng), random_vector(rng));
    if (is_zero(w)) continue;
    const bool by_wedge = wedge2(w, w).is_zero();
    const bool by_rank = rank(to_skew(w)) == 2;
    EXPECT_EQ(is_decomposable(w), by_wedge);
    EXPECT_EQ(by_wedge, by_rank);
    if (by_wedge) {
      const auto [v, vp] = decompose_rank2(w);
      EXPECT_EQ(wedge(v, vp), w);
      EXPECT_TRUE(wedge2(wedge(v, vp), wedge(v, vp)).is_zero());
    }
  }
  EXPECT_THROW(is_decomposable(Bivector15{}), PreconditionError);
  EXPECT_FALSE(is_decomposable(wedge(basis_vector(0), basis_vector(3)) + wedge(basis_vector(1), basis_vector(4))));
}

TEST(Grassmann, DecomposeExamples) {
  const auto [v, vp] = decompose_rank2(wedge(basis_vector(0), basis_vector(3)));
  EXPECT_EQ(v, basis_vector(0));
  EXPECT_EQ(vp, basis_vector(3));
  EXPECT_THROW(decompose_rank2(wedge(basis_vector(0), basis_vector(3)) + wedge(basis_vector(1), basis_vector(4))),
               PreconditionError);

  const auto inst = build_instance(ParamsA9{});
  EXPECT_EQ(from_skew(inst.m0123.at(std::vector<FieldElement>{0, 1, 0, 0})), wedge(basis_vector(1), basis_vector(4)));

  // all-ones M4 is the line (-e0 + v e4 - e5) ^ (u e1 - e2 + e3 + e4 + e5), up to sign
  const FieldElement& u = inst.u;
  const FieldElement& v4 = inst.v;
  const Vector6 x{-1, 0, 0, 0, v4, -1};
  const Vector6 y{0, u, -1, 1, 1, 1};
  const Bivector15 printed = wedge(x, y);
  const Bivector15 m4 = from_skew(inst.m4);
  EXPECT_EQ(m4, FieldElement(-1) * printed);
  const auto [a, b] = decompose_rank2(m4);
  EXPECT_EQ(wedge(a, b), m4);
  EXPECT_EQ(span_and_membership(std::vector<Bivector15>{printed}, wedge(a, b)).dimension, 1u);
  EXPECT_TRUE(span_and_membership(std::vector<Bivector15>{printed}, wedge(a, b)).member);
}

TEST(Grassmann, SpanAndMembership) {
  const Bivector15 e03 = wedge(basis_vector(0), basis_vector(3));
  const auto r = span_and_membership(std::vector<Bivector15>{e03}, FieldElement(2) * e03);
  EXPECT_EQ(r.dimension, 1u);
  EXPECT_TRUE(r.member);
  EXPECT_FALSE(span_and_membership(std::vector<Bivector15>{e03}, wedge(basis_vector(1), basis_vector(4))).member);
}

TEST(Grassmann, PluckerQuadricVanishesOnDecomposables) {
  SplitMix64 rng(27);
  FourForm15 phi;
  for (auto& x : phi.c) x = rng.uniform(-3, 3);
  const MultiPoly q = plucker_quadric(phi);
  for (int trial = 0; trial < 5; ++trial) {
    Bivector15 w;
    for (auto& x : w.p) x = rng.uniform(-3, 3);
    EXPECT_EQ(q.eval(std::vector<FieldElement>(w.p.begin(), w.p.end())), pairing(phi, wedge2(w, w)));
  }
}
