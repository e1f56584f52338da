#pragma once

// Inscribed complete pentahedra and the (a, b, P) chart of cubics carrying an
// ordered one.
//
// Chart: w = P x, w4 = sum_{i<4} (b4/bi) wi, cubic = sum_{i<j<k} a_ijk wi wj wk
// with a_ijk = 1 whenever k <= 3, a_014 = 1, and the gauge b3 = 1.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "pfaffcubic/errors.hpp"
#include "pfaffcubic/field.hpp"
#include "pfaffcubic/matrix.hpp"
#include "pfaffcubic/poly.hpp"

namespace pfc {

using Triple = std::array<int, 3>;

/// All i<j<k in {0..4}, lexicographic.
inline constexpr std::array<Triple, 10> kTriples{{{0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 4},
                                                  {0, 3, 4}, {1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}};

inline std::size_t triple_index(int i, int j, int k) {
  for (std::size_t t = 0; t < kTriples.size(); ++t)
    if (kTriples[t] == Triple{i, j, k}) return t;
  throw ShapeError("invalid triple");
}

struct ParamsA9 {
  FieldElement a024 = 1, a034 = 1, a124 = 1, a134 = 1, a234 = 1;
  std::array<FieldElement, 5> b{1, 1, 1, 1, 1};
  Matrix<FieldElement> P = Matrix<FieldElement>::identity(4);

  FieldElement a(int i, int j, int k) const {
    if (k <= 3) return 1;
    const int key = i * 10 + j;
    switch (key) {
      case 1: return 1;
      case 2: return a024;
      case 3: return a034;
      case 12: return a124;
      case 13: return a134;
      case 23: return a234;
      default: throw ShapeError("invalid triple");
    }
  }

  std::array<FieldElement, 5> free_a() const { return {a024, a034, a124, a134, a234}; }

  TowerPtr tower() const {
    TowerPtr t;
    for (const auto& x : free_a()) t = join_towers(t, x.tower());
    for (const auto& x : b) t = join_towers(t, x.tower());
    for (const auto& x : P.data()) t = join_towers(t, x.tower());
    return t;
  }

  void validate() const {
    if (P.rows() != 4 || P.cols() != 4) throw ShapeError("frame must be 4x4");
    for (const auto& x : b)
      if (x.is_zero()) throw PreconditionError("params", "zero b coefficient");
    if (!b[3].is_one()) throw PreconditionError("params", "gauge requires b3 = 1");
    if (det(P).is_zero()) throw PreconditionError("params", "singular frame P");
  }

  friend bool operator==(const ParamsA9& x, const ParamsA9& y) {
    return x.free_a() == y.free_a() && x.b == y.b && x.P == y.P;
  }
};

/// The linear forms w0..w4 of the chart as polynomials in `vars` (w = P x).
inline std::array<MultiPoly, 5> chart_forms(const ParamsA9& t, const Vars& vars) {
  std::array<MultiPoly, 5> w;
  for (std::size_t i = 0; i < 4; ++i) w[i] = MultiPoly::linear(vars, t.P.row(i));
  w[4] = MultiPoly(vars);
  for (std::size_t i = 0; i < 4; ++i) w[4] = w[4] + (t.b[4] / t.b[i]) * w[i];
  return w;
}

/// sum a_ijk wi wj wk for the given forms.
inline MultiPoly chart_cubic(const ParamsA9& t, const std::array<MultiPoly, 5>& w) {
  MultiPoly c(w[0].vars());
  for (const auto& [i, j, k] : kTriples) c = c + t.a(i, j, k) * (w[i] * w[j] * w[k]);
  return c;
}

struct PentahedronData {
  std::array<MultiPoly, 5> planes;
  MultiPoly cubic;

  /// 4 x 5 matrix whose column i holds the coefficients of plane i.
  Matrix<FieldElement> plane_matrix() const {
    Matrix<FieldElement> m(4, 5);
    for (std::size_t i = 0; i < 5; ++i) {
      const auto c = planes[i].linear_coeffs();
      if (c.size() != 4) throw ShapeError("planes must be linear forms in four variables");
      for (std::size_t r = 0; r < 4; ++r) m(r, i) = c[r];
    }
    return m;
  }

  /// Any four of the five planes are independent.
  void validate() const {
    if (cubic.is_zero()) throw PreconditionError("pentahedron", "zero cubic");
    const Matrix<FieldElement> m = plane_matrix();
    for (std::size_t skip = 0; skip < 5; ++skip) {
      std::vector<std::vector<FieldElement>> cols;
      for (std::size_t i = 0; i < 5; ++i)
        if (i != skip) cols.push_back(m.col(i));
      if (rank(Matrix<FieldElement>::from_columns(cols)) != 4) {
        throw PreconditionError("pentahedron", "four of the planes are dependent");
      }
    }
  }
};

/// Vertices H_i n H_j n H_k in kTriples order, scaled so the first nonzero
/// coordinate is 1.
inline std::vector<std::vector<FieldElement>> vertices(const PentahedronData& pd) {
  const Matrix<FieldElement> m = pd.plane_matrix();
  std::vector<std::vector<FieldElement>> out;
  for (const auto& tr : kTriples) {
    Matrix<FieldElement> eqs(3, 4);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 4; ++c) eqs(r, c) = m(c, static_cast<std::size_t>(tr[r]));
    const Matrix<FieldElement> k = kernel(eqs);
    if (k.cols() != 1) throw PreconditionError("vertices", "degenerate plane triple");
    std::vector<FieldElement> v = k.col(0);
    std::size_t lead = 0;
    while (v[lead].is_zero()) ++lead;
    const FieldElement inv = v[lead].inverse();
    for (auto& x : v) x = x * inv;
    out.push_back(std::move(v));
  }
  return out;
}

inline bool inscription_check(const PentahedronData& pd) {
  if (pd.cubic.is_zero()) throw PreconditionError("inscription_check", "zero cubic");
  for (const auto& v : vertices(pd))
    if (!pd.cubic.eval(v).is_zero()) return false;
  return true;
}

inline PentahedronData pentahedron_from_params(const ParamsA9& t) {
  t.validate();
  const auto w = chart_forms(t, x_vars());
  PentahedronData pd{w, chart_cubic(t, w)};
  if (pd.cubic.is_zero()) throw PreconditionError("pentahedron_from_params", "cubic degenerates to zero");
  return pd;
}

struct ChartInverse {
  ParamsA9 params;
  std::array<FieldElement, 5> relation;   // mu with sum mu_i g_i = 0
  std::array<FieldElement, 10> coeffs;    // A_ijk in kTriples order
  FieldElement scale;                     // lambda
};

/// Inverse chart. order[k] names the plane of `pd` used as the k-th plane.
inline ChartInverse params_from_pentahedron_full(const PentahedronData& pd, const std::array<int, 5>& order) {
  const std::string stage = "params_from_pentahedron";
  {
    std::array<bool, 5> seen{};
    for (int o : order) {
      if (o < 0 || o > 4 || seen[static_cast<std::size_t>(o)]) throw PreconditionError(stage, "order is not a permutation");
      seen[static_cast<std::size_t>(o)] = true;
    }
  }
  pd.validate();
  std::array<MultiPoly, 5> g;
  for (std::size_t k = 0; k < 5; ++k) g[k] = pd.planes[static_cast<std::size_t>(order[k])];
  const Vars vars = g[0].vars();

  Matrix<FieldElement> gm(4, 5);
  for (std::size_t k = 0; k < 5; ++k) {
    const auto c = g[k].linear_coeffs();
    for (std::size_t r = 0; r < 4; ++r) gm(r, k) = c[r];
  }
  const Matrix<FieldElement> rel = kernel(gm);
  if (rel.cols() != 1) throw PreconditionError(stage, "planes do not satisfy a unique linear relation");
  ChartInverse out;
  for (std::size_t i = 0; i < 5; ++i) {
    out.relation[i] = rel(i, 0);
    if (out.relation[i].is_zero()) throw PreconditionError(stage, "degenerate relation: coefficient " + std::to_string(i) + " vanishes");
  }

  std::array<MultiPoly, 5> h;
  for (std::size_t i = 0; i < 4; ++i) h[i] = (-(out.relation[i] / out.relation[4])) * g[i];
  h[4] = g[4];

  // cubic = sum A_ijk hi hj hk: one equation per cubic monomial in x.
  std::array<MultiPoly, 10> monos;
  for (std::size_t t = 0; t < 10; ++t) {
    const auto& [i, j, k] = kTriples[t];
    monos[t] = h[i] * h[j] * h[k];
  }
  std::vector<Exponents> support;
  for (int e0 = 3; e0 >= 0; --e0)
    for (int e1 = 3 - e0; e1 >= 0; --e1)
      for (int e2 = 3 - e0 - e1; e2 >= 0; --e2) {
        Exponents e{};
        e[0] = static_cast<std::uint8_t>(e0);
        e[1] = static_cast<std::uint8_t>(e1);
        e[2] = static_cast<std::uint8_t>(e2);
        e[3] = static_cast<std::uint8_t>(3 - e0 - e1 - e2);
        support.push_back(e);
      }
  Matrix<FieldElement> sys(support.size(), 10);
  std::vector<FieldElement> rhs;
  for (std::size_t r = 0; r < support.size(); ++r) {
    for (std::size_t t = 0; t < 10; ++t) sys(r, t) = monos[t].coeff(support[r]);
    rhs.push_back(pd.cubic.coeff(support[r]));
  }
  bool cubic_form = vars->size() == 4 && pd.cubic.nvars() == 4;
  for (const auto& [e, c] : pd.cubic.terms()) cubic_form = cubic_form && total_degree(e) == 3;
  if (!cubic_form) throw PreconditionError(stage, "cubic is not a cubic form in four variables");
  std::vector<FieldElement> coeffs;
  try {
    coeffs = solve(sys, rhs);
  } catch (const ArithmeticError&) {
    throw PreconditionError(stage, "cubic is not in the span of the pentahedral monomials");
  }
  for (std::size_t t = 0; t < 10; ++t) out.coeffs[t] = coeffs[t];
  const auto A = [&](int i, int j, int k) { return out.coeffs[triple_index(i, j, k)]; };

  for (const auto& [i, j, k] : std::array<Triple, 5>{{{0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {1, 2, 3}}}) {
    if (A(i, j, k).is_zero()) {
      throw PreconditionError(stage, "vanishing coefficient A_" + std::to_string(i) + std::to_string(j) + std::to_string(k));
    }
  }

  ParamsA9& p = out.params;
  p.b = {A(0, 1, 2) / A(1, 2, 3), A(0, 1, 2) / A(0, 2, 3), A(0, 1, 2) / A(0, 1, 3), FieldElement(1),
         A(0, 1, 4) / A(0, 1, 3)};
  out.scale = A(0, 2, 3) * A(0, 1, 3) * A(1, 2, 3) / (A(0, 1, 2) * A(0, 1, 2));
  const auto chart_a = [&](int i, int j, int k) {
    return A(i, j, k) / (out.scale * p.b[static_cast<std::size_t>(i)] * p.b[static_cast<std::size_t>(j)] *
                         p.b[static_cast<std::size_t>(k)]);
  };
  for (const auto& [i, j, k] : kTriples) {
    if (k <= 3 || (i == 0 && j == 1)) {
      if (!chart_a(i, j, k).is_one()) throw ArithmeticError("chart normalization failed for a fixed coefficient");
    }
  }
  p.a024 = chart_a(0, 2, 4);
  p.a034 = chart_a(0, 3, 4);
  p.a124 = chart_a(1, 2, 4);
  p.a134 = chart_a(1, 3, 4);
  p.a234 = chart_a(2, 3, 4);
  // the ratio form (A_ij4 / A_ij3)(A_013 / A_014) of a_ij4 must agree
  for (const auto& [i, j] : std::array<std::pair<int, int>, 2>{{{0, 2}, {1, 2}}}) {
    if (!(A(i, j, 3).is_zero()) && !((A(i, j, 4) / A(i, j, 3)) * (A(0, 1, 3) / A(0, 1, 4)) == chart_a(i, j, 4))) {
      throw ArithmeticError("chart ratio formula disagrees");
    }
  }

  Matrix<FieldElement> frame(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto c = h[i].linear_coeffs();
    const FieldElement s = p.b[i] / p.b[4];
    for (std::size_t j = 0; j < 4; ++j) frame(i, j) = s * c[j];
  }
  p.P = std::move(frame);
  return out;
}

inline ParamsA9 params_from_pentahedron(const PentahedronData& pd, const std::array<int, 5>& order = {0, 1, 2, 3, 4}) {
  return params_from_pentahedron_full(pd, order).params;
}

}  // namespace pfc
