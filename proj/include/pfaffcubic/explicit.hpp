#pragma once

// The explicit pfaffian representation M = M0123 + w4 M4 of a chart cubic,
// its block-diagonalizing conjugators, its five lines, and the symmetric
// instance over Q(i, sqrt2, sqrt3).

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfaffcubic/errors.hpp"
#include "pfaffcubic/field.hpp"
#include "pfaffcubic/grassmann.hpp"
#include "pfaffcubic/matrix.hpp"
#include "pfaffcubic/pentahedron.hpp"
#include "pfaffcubic/poly.hpp"
#include "pfaffcubic/random.hpp"
#include "pfaffcubic/skew.hpp"

namespace pfc {

enum class RootChoice { first, second };

struct ExplicitInstance {
  ParamsA9 params;
  TowerPtr tower;
  RootChoice root = RootChoice::first;
  FieldElement u, v, e1, e2, e3;
  MultiPoly w4;             // sum_{i<4} (b4/bi) wi
  Matrix<FieldElement> m4;  // constant coefficient of w4
  SkewLinMat6 m0123;
  SkewLinMat6 m;            // M0123 + w4 M4 in w0..w3
  /// Level whose conjugation exchanges u and v, when there is one.
  std::optional<int> swap_level;
};

/// s in the u-quadratic X^2 + s X + a024.
inline FieldElement quadratic_linear_coeff(const ParamsA9& t) { return FieldElement(1) + t.a024 - t.a034; }

inline MultiPoly relation_form(const ParamsA9& t) { return chart_forms(t, w_vars())[4]; }

inline Matrix<FieldElement> make_m4(const ParamsA9& t, const FieldElement& u, const FieldElement& v,
                                    const FieldElement& e1, const FieldElement& e2, const FieldElement& e3) {
  const FieldElement& a024 = t.a024;
  const FieldElement& a124 = t.a124;
  return Matrix<FieldElement>{{0, u, -1, a124, e1, e2},
                              {-u, 0, 0, 0, a024, -u},
                              {1, 0, 0, 0, -v, 1},
                              {-a124, 0, 0, 0, a124 * v, -a124},
                              {-e1, -a024, v, -(a124 * v), 0, e3},
                              {-e2, u, -1, a124, -e3, 0}};
}

inline SkewLinMat6 make_m0123() {
  const auto w = [](std::size_t i) { return MultiPoly::variable(w_vars(), i); };
  Matrix<MultiPoly> m(6, 6, MultiPoly(w_vars()));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const MultiPoly e = i == j ? w(i) + w(3) : w(3);
      m(i, j + 3) = e;
      m(j + 3, i) = -e;
    }
  return SkewLinMat6(std::move(m));
}

inline SkewLinMat6 assemble_m(const SkewLinMat6& m0123, const Matrix<FieldElement>& m4, const MultiPoly& w4) {
  return SkewLinMat6(m0123.matrix() + m4.map([&](const FieldElement& x) { return x * w4; }));
}

namespace detail {

inline std::optional<int> find_swap_level(const FieldElement& u, const FieldElement& v) {
  for (int lvl = tower_depth(u.tower()); lvl >= 1; --lvl) {
    try {
      if (u.conjugate(lvl) == v) return lvl;
    } catch (const ArithmeticError&) {
      // this level's conjugation does not extend to the whole tower
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Named denominators of the conjugators, and v+1 which P1 and P2 need to be
/// invertible; all must be nonzero.
inline std::vector<std::pair<std::string, FieldElement>> guard_values(const ParamsA9& t, const FieldElement& u) {
  const FieldElement v = -quadratic_linear_coeff(t) - u;
  return {{"u", u},
          {"u+1", u + FieldElement(1)},
          {"v+1", v + FieldElement(1)},
          {"a124", t.a124},
          {"a134", t.a134},
          {"a234", t.a234},
          {"a024", t.a024},
          {"a024*u+a024-u*a234", t.a024 * u + t.a024 - u * t.a234}};
}

inline void check_guards(const std::string& stage, const ParamsA9& t, const FieldElement& u) {
  for (const auto& [name, value] : guard_values(t, u))
    if (value.is_zero()) throw PreconditionError(stage, "guard " + name + " vanishes");
}

inline bool guards_hold(const ParamsA9& t, const FieldElement& u) {
  for (const auto& [name, value] : guard_values(t, u))
    if (value.is_zero()) return false;
  return true;
}

/// Builds the instance. Root selection: reuse a tower level with relation
/// (s, a024) if present, else a square root of the discriminant already in the
/// tower, else extend the tower by one level. `root`, when given, must solve
/// the quadratic and is used as is.
inline ExplicitInstance build_instance(const ParamsA9& t, RootChoice choice = RootChoice::first,
                                       std::optional<FieldElement> root = std::nullopt) {
  const std::string stage = "build_instance";
  t.validate();
  const FieldElement s = quadratic_linear_coeff(t);
  const FieldElement disc = s * s - FieldElement(4) * t.a024;
  if (disc.is_zero()) throw PreconditionError(stage, "zero discriminant of the u-quadratic");

  ExplicitInstance inst;
  inst.params = t;
  inst.root = choice;
  TowerPtr tower = t.tower();
  FieldElement u;
  if (root) {
    tower = join_towers(tower, root->tower());
    u = root->in_tower(tower);
    if (!(u * u + s * u + t.a024).is_zero()) throw PreconditionError(stage, "supplied root does not solve the u-quadratic");
  } else {
    std::optional<int> level;
    for (int k = 1; k <= tower_depth(tower) && !level; ++k) {
      const auto& node = tower->level(k);
      if (node.p() == s && node.q() == t.a024) level = k;
    }
    if (level) {
      const FieldElement g = FieldElement::generator(tower, *level);
      u = choice == RootChoice::first ? g : -s - g;
    } else if (auto r = disc.in_tower(tower).sqrt()) {
      u = (-s + (choice == RootChoice::first ? *r : -*r)) / FieldElement(2);
      u = u.in_tower(tower);
    } else {
      tower = FieldTower::extend(tower, s.in_tower(tower), t.a024.in_tower(tower));
      const FieldElement g = FieldElement::generator(tower, tower_depth(tower));
      u = choice == RootChoice::first ? g : -s - g;
    }
  }
  inst.tower = tower;
  inst.u = u;
  inst.v = -s - u;

  inst.e1 = t.a024 + t.a124 - t.a234;
  inst.e2 = FieldElement(1) + t.a124 - t.a134;
  inst.e3 = (-t.a124 + t.a134 - FieldElement(1)) * inst.v - t.a124 - t.a024 + t.a234;
  inst.w4 = relation_form(t);
  inst.m4 = make_m4(t, inst.u, inst.v, inst.e1, inst.e2, inst.e3);
  inst.m0123 = make_m0123();
  inst.m = assemble_m(inst.m0123, inst.m4, inst.w4);
  inst.swap_level = detail::find_swap_level(inst.u, inst.v);
  return inst;
}

/// A random instance over Q (or one quadratic extension) on which every
/// conjugator guard holds.
inline ExplicitInstance random_instance(SplitMix64& rng, long range = 9, bool random_frame = false) {
  for (;;) {
    try {
      ExplicitInstance inst = build_instance(random_params(rng, range, random_frame));
      if (guards_hold(inst.params, inst.u)) return inst;
    } catch (const PreconditionError&) {
      // zero discriminant: draw again
    }
  }
}

/// The cubic sum a_ijk wi wj wk (k <= 4) with w4 expanded through the relation.
inline MultiPoly expected_cubic(const ParamsA9& t) {
  const auto w = chart_forms(t, w_vars());
  std::array<MultiPoly, 5> ww;
  for (std::size_t i = 0; i < 4; ++i) ww[i] = MultiPoly::variable(w_vars(), i);
  ww[4] = w[4];
  return chart_cubic(t, ww);
}

/// Pf(M) equals minus the chart cubic under the first-row sign convention.
inline bool pfaffian_identity(const ExplicitInstance& inst) {
  return (pfaffian(inst.m.matrix()) + expected_cubic(inst.params)).is_zero();
}

/// P0..P4; t(P_i) M P_i is block anti-diagonal with symmetric blocks on the
/// plane w_i = 0.
inline std::array<Matrix<FieldElement>, 5> conjugators(const ExplicitInstance& inst) {
  const ParamsA9& t = inst.params;
  check_guards("conjugators", t, inst.u);
  using F = FieldElement;
  const F& u = inst.u;
  const F& v = inst.v;
  const F& a024 = t.a024;
  const F& a124 = t.a124;
  const F& a134 = t.a134;
  const F& a234 = t.a234;
  const F one(1);
  const F g = a024 * u + a024 - u * a234;
  const F k = a024 * a134 - a024 * u - a024 + u * a234;  // numerator shared by P0 and P1
  const F up1 = u + one;

  std::array<Matrix<F>, 5> p;
  p[4] = Matrix<F>::identity(6);
  p[3] = Matrix<F>{{0, 0, 0, 0, 0, 1},
                   {v / u, 0, 0, (-a024 - a124 + a234) / u, 0, 0},
                   {0, 1, 0, 0, one + a124 - a134, 0},
                   {0, 0, -(one / a124), 0, 0, 0},
                   {0, 0, 0, 1, 0, 0},
                   {0, 0, 0, 0, 1, 0}};
  p[1] = Matrix<F>{{0, 0, -(a024 / a234), 0, 0, 0},
                   {-(u * (a024 + u)) / (a024 * up1), 1, a024 / a234, k / (a024 * up1), -(a124 / u), 0},
                   {u * (a024 + u) / (a024 * up1), 0, 0, -k / (a024 * up1), 0, 0},
                   {0, 0, u / a234, 0, 0, -1},
                   {0, 0, -(u / a234), -1, 1, 1},
                   {0, 0, 0, 1, 0, 0}};
  p[2] = Matrix<F>{{one / a134, 0, 0, 0, 0, 0},
                   {0, (one + v) / up1, 0, 0, (-v - a024 + a234 + v * a134) / up1, 0},
                   {-(one / a134), (-one - v) / up1, 1, 0, (v + a024 - a234 - v * a134) / up1, a124},
                   {one / a134, 0, 0, 1, 0, 0},
                   {0, 0, 0, 0, 1, 0},
                   {-(one / a134), 0, 0, -1, -1, 1}};
  const F g2 = g * g / (u * u * a234);
  p[0] = Matrix<F>{{a124, -g2, -a134, -(a124 * a024) / g, 0, k / g},
                   {0, g2, 0, 0, 0, 0},
                   {0, 0, a134, 0, 0, -k / g},
                   {1, up1 * g / (a234 * u), 0, u * (a024 - a234) / g, -1, -1},
                   {0, -up1 * g / (a234 * u), 0, 0, 1, 0},
                   {0, 0, 0, 0, 0, 1}};
  return p;
}

/// M restricted to the plane H_i: w_i = 0 for i < 4; for i = 4, w3 is
/// eliminated through w4 = 0.
inline Matrix<MultiPoly> restrict_to_plane(const ExplicitInstance& inst, const Matrix<MultiPoly>& m, int i) {
  std::vector<MultiPoly> images;
  for (std::size_t k = 0; k < 4; ++k) images.push_back(MultiPoly::variable(w_vars(), k));
  if (i < 4) {
    images[static_cast<std::size_t>(i)] = MultiPoly(w_vars());
  } else {
    const auto c = inst.w4.linear_coeffs();
    MultiPoly w3(w_vars());
    for (std::size_t k = 0; k < 3; ++k) w3 = w3 - (c[k] / c[3]) * images[k];
    images[3] = w3;
  }
  return compose(m, images);
}

struct Phi1Report {
  std::array<bool, 5> block_shape{};
  std::array<bool, 5> isotropic{};
  std::array<Matrix<MultiPoly>, 5> blocks;  // the symmetric A_i

  bool all() const {
    for (std::size_t i = 0; i < 5; ++i)
      if (!block_shape[i] || !isotropic[i]) return false;
    return true;
  }
};

inline Phi1Report verify_phi1(const ExplicitInstance& inst, const std::array<Matrix<FieldElement>, 5>& p) {
  Phi1Report r;
  for (int i = 0; i < 5; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const Matrix<MultiPoly> mi = restrict_to_plane(inst, inst.m.matrix(), i);
    const Matrix<MultiPoly> n = congruence(p[idx], mi);
    r.block_shape[idx] = block_shape_check(n);
    r.blocks[idx] = n.block(0, 3, 3, 3);
    const Matrix<FieldElement> basis = p[idx].block(0, 0, 6, 3);
    r.isotropic[idx] = rank(basis) == 3 && isotropy_check(basis, mi);
  }
  return r;
}

inline Phi1Report verify_phi1(const ExplicitInstance& inst) { return verify_phi1(inst, conjugators(inst)); }

/// [M0123(e0), M0123(e1), M0123(e2), M0123(e3), M4] as bivectors.
inline std::array<Bivector15, 5> five_lines(const ExplicitInstance& inst) {
  std::array<Bivector15, 5> out;
  for (std::size_t k = 0; k < 4; ++k) {
    std::vector<FieldElement> pt(4, FieldElement(0));
    pt[k] = 1;
    out[k] = from_skew(inst.m0123.at(pt));
  }
  out[4] = from_skew(inst.m4);
  for (std::size_t k = 0; k < 5; ++k) {
    if (is_zero(out[k]) || !is_decomposable(out[k])) {
      throw PreconditionError("five_lines", "line " + std::to_string(k) + " does not have rank 2");
    }
  }
  return out;
}

/// The functional on line coordinates whose kernel is the instance's W4:
/// M(w) = sum_{k<4} wk (u_k + (b4/bk) u_4).
inline std::array<FieldElement, 5> forward_functional(const ParamsA9& t) {
  return {t.b[4] / t.b[0], t.b[4] / t.b[1], t.b[4] / t.b[2], t.b[4] / t.b[3], FieldElement(-1)};
}

/// The chart pentahedron in w-coordinates (planes w0..w3 and w4).
inline PentahedronData w_pentahedron(const ExplicitInstance& inst) {
  PentahedronData pd;
  for (std::size_t k = 0; k < 4; ++k) pd.planes[k] = MultiPoly::variable(w_vars(), k);
  pd.planes[4] = inst.w4;
  pd.cubic = expected_cubic(inst.params);
  return pd;
}

struct IncidenceReport {
  bool in_span = true;
  bool rank_at_most_4 = true;
  bool all() const { return in_span && rank_at_most_4; }
};

/// Each vertex H_i n H_j n H_k gives M(vertex) on the line through the two
/// complementary rank-2 points.
inline IncidenceReport vertex_line_incidence(const ExplicitInstance& inst, const std::array<Bivector15, 5>& lines) {
  IncidenceReport r;
  const auto verts = vertices(w_pentahedron(inst));
  for (std::size_t t = 0; t < kTriples.size(); ++t) {
    std::vector<Bivector15> pair;
    for (int k = 0; k < 5; ++k) {
      const auto& tr = kTriples[t];
      if (k != tr[0] && k != tr[1] && k != tr[2]) pair.push_back(lines[static_cast<std::size_t>(k)]);
    }
    const Matrix<FieldElement> mv = inst.m.at(verts[t]);
    r.in_span = r.in_span && span_and_membership(pair, from_skew(mv)).member;
    r.rank_at_most_4 = r.rank_at_most_4 && rank(mv) <= 4;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Symmetries

struct SymmetryAction {
  enum class Kind { swap_uv, permute };
  Kind kind = Kind::swap_uv;
  int i = 0, j = 0;

  static SymmetryAction swap() { return {}; }
  static SymmetryAction permute(int a, int b) { return {Kind::permute, a, b}; }
};

/// The substitution (w0..w3) induced by exchanging w_i and w_j, with w4 given
/// by its relation. Throws when the relation is not carried to itself.
inline std::vector<MultiPoly> permutation_substitution(const ExplicitInstance& inst, int i, int j) {
  const std::string stage = "check_symmetry";
  if (i < 0 || j < 0 || i > 4 || j > 4 || i == j) throw PreconditionError(stage, "invalid transposition");
  std::array<MultiPoly, 5> forms;
  for (std::size_t k = 0; k < 4; ++k) forms[k] = MultiPoly::variable(w_vars(), k);
  forms[4] = inst.w4;
  const auto sigma = [&](int k) { return k == i ? j : k == j ? i : k; };
  std::vector<MultiPoly> images;
  for (int k = 0; k < 4; ++k) images.push_back(forms[static_cast<std::size_t>(sigma(k))]);
  if (!(inst.w4.compose(images) == forms[static_cast<std::size_t>(sigma(4))])) {
    throw PreconditionError(stage, "b-gauge is not stable under the transposition (" + std::to_string(i) + " " +
                                       std::to_string(j) + ")");
  }
  return images;
}

/// Applies the conjugation of `level` to every coefficient, read in `tower`.
inline Matrix<MultiPoly> conjugate_coefficients(const Matrix<MultiPoly>& m, const TowerPtr& tower, int level) {
  return m.map([&](const MultiPoly& p) {
    MultiPoly::Terms terms;
    for (const auto& [e, c] : p.terms()) terms.emplace(e, c.in_tower(tower).conjugate(level));
    return MultiPoly(p.vars(), std::move(terms));
  });
}

/// t(g) M g == M with the action applied.
inline bool check_symmetry(const ExplicitInstance& inst, const Matrix<MultiPoly>& m, const Matrix<FieldElement>& g,
                           const SymmetryAction& action) {
  const Matrix<MultiPoly> lhs = congruence(g, m);
  Matrix<MultiPoly> rhs;
  if (action.kind == SymmetryAction::Kind::swap_uv) {
    if (!inst.swap_level) throw PreconditionError("check_symmetry", "no tower level exchanges u and v");
    rhs = conjugate_coefficients(m, inst.tower, *inst.swap_level);
  } else {
    rhs = compose(m, permutation_substitution(inst, action.i, action.j));
  }
  return lhs == rhs;
}

struct KleinSymmetry {
  std::string name;
  Matrix<FieldElement> g;
  SymmetryAction action;
};

struct KleinData {
  ExplicitInstance instance;
  Matrix<FieldElement> p_uv;
  std::vector<KleinSymmetry> transpositions;  // (0 1), (0 2), (0 3), (3 4)
};

/// Q(g1 = i)(g2 = sqrt2)(g3 = sqrt3).
inline TowerPtr klein_tower() {
  static const TowerPtr t = FieldTower::from_relations({{0, 1}, {0, -2}, {0, -3}});
  return t;
}

/// P_T = T (x) I3: the 2x2 block repeated on the index pairs (i, i+3).
inline Matrix<FieldElement> block_pattern(const Matrix<FieldElement>& t2) { return kron_identity3(t2); }

inline KleinData klein_instance() {
  using F = FieldElement;
  const TowerPtr t = klein_tower();
  const F i = F::generator(t, 1);
  const F r2 = F::generator(t, 2);
  const F r3 = F::generator(t, 3);
  const F half(Rational(1, 2));
  const F inv_r2 = r2 * half;   // 1/sqrt2
  const F r6_2 = r2 * r3 * half;  // sqrt6/2
  const F u = (F(-1) + i * r3) * half;

  ParamsA9 params;
  params.b = {1, 1, 1, 1, -1};
  KleinData kd;
  kd.instance = build_instance(params, RootChoice::first, u);
  const F v = kd.instance.v;

  kd.p_uv = block_pattern(Matrix<F>{{i * u * inv_r2, r6_2}, {-r6_2, i * v * inv_r2}});

  const auto d = [](const Matrix<F>& m3) { return block_diag2(m3); };
  const Matrix<F> t01{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
  const Matrix<F> t02{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
  const Matrix<F> t03{{1, 1, 1}, {0, -1, 0}, {0, 0, -1}};
  const Matrix<F> t34{{0, -(F(1) / v), 0}, {0, 0, 1}, {1, 0, 0}};
  const Matrix<F> p01 = block_pattern(Matrix<F>{{u * inv_r2, (v + F(2)) * inv_r2}, {-inv_r2, -u * inv_r2}});
  const Matrix<F> p02 = block_pattern(Matrix<F>{{(F(1) + u) * inv_r2, -i * r6_2}, {-u * inv_r2, v * inv_r2}});
  const Matrix<F> p03 = block_pattern(Matrix<F>{{i * r6_2, -u * inv_r2}, {-v * inv_r2, -i * r6_2}});
  const Matrix<F> p34 = block_pattern(Matrix<F>{{-v * inv_r2, -i * r6_2}, {-i * r6_2, u * inv_r2}});
  const Matrix<F> p3 = conjugators(kd.instance)[3];

  kd.transpositions = {{"(0 1)", d(t01) * p01, SymmetryAction::permute(0, 1)},
                       {"(0 2)", d(t02) * p02, SymmetryAction::permute(0, 2)},
                       {"(0 3)", d(t03) * p03, SymmetryAction::permute(0, 3)},
                       {"(3 4)", p3 * d(t34) * p34, SymmetryAction::permute(3, 4)}};
  return kd;
}

}  // namespace pfc
