#pragma once

// The quadrics through P(W4) and the Grassmannian, the 5-secant space W5
// containing W4, its rank-2 points, and the pentahedron they cut on P(W4).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pfaffcubic/errors.hpp"
#include "pfaffcubic/field.hpp"
#include "pfaffcubic/grassmann.hpp"
#include "pfaffcubic/matrix.hpp"
#include "pfaffcubic/pentahedron.hpp"
#include "pfaffcubic/poly.hpp"
#include "pfaffcubic/random.hpp"
#include "pfaffcubic/skew.hpp"

namespace pfc {

struct SubspaceW {
  enum class Label { W4, W5 };

  std::vector<Bivector15> basis;
  Label label = Label::W4;

  std::size_t expected_dim() const { return label == Label::W4 ? 4 : 5; }
  Matrix<FieldElement> columns() const { return bivector_columns(basis); }

  void validate(const std::string& stage) const {
    if (basis.size() != expected_dim()) {
      throw PreconditionError(stage, "expected " + std::to_string(expected_dim()) + " basis vectors, got " +
                                         std::to_string(basis.size()));
    }
    if (rank(columns()) != basis.size()) throw PreconditionError(stage, "basis is linearly dependent");
  }
};

struct QuadricSpaceH {
  std::vector<FourForm15> basis;

  std::vector<MultiPoly> quadrics() const {
    std::vector<MultiPoly> out;
    for (const auto& phi : basis) out.push_back(plucker_quadric(phi));
    return out;
  }
};

namespace detail {

inline Bivector15 unit_bivector(std::size_t k) {
  Bivector15 e;
  e[k] = 1;
  return e;
}

}  // namespace detail

/// 15 x 10 matrix: row K, column (i <= j) holds the K-th coordinate of b_i ^ b_j.
inline Matrix<FieldElement> restriction_matrix(const SubspaceW& w4) {
  Matrix<FieldElement> m(15, 10);
  std::size_t col = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j, ++col) {
      const FourForm15 f = wedge2(w4.basis[i], w4.basis[j]);
      for (std::size_t k = 0; k < 15; ++k) m(k, col) = f[k];
    }
  return m;
}

/// The 4-forms whose Plucker quadric vanishes on P(W4).
inline QuadricSpaceH restriction_quadrics(const SubspaceW& w4) {
  const std::string stage = "restriction_quadrics";
  w4.validate(stage);
  const Matrix<FieldElement> k = kernel(restriction_matrix(w4).transpose());
  if (k.cols() != 5) throw PreconditionError(stage, "quadric space has dimension " + std::to_string(k.cols()) + ", expected 5");
  QuadricSpaceH h;
  for (std::size_t c = 0; c < 5; ++c) {
    FourForm15 phi;
    for (std::size_t r = 0; r < 15; ++r) phi[r] = k(r, c);
    h.basis.push_back(phi);
  }
  return h;
}

/// Rows (q, i) in q-major order: the functional eta -> <phi_q, b_i ^ eta>.
inline Matrix<FieldElement> orthogonal_conditions(const SubspaceW& w4, const QuadricSpaceH& h) {
  Matrix<FieldElement> m(h.basis.size() * w4.basis.size(), 15);
  std::size_t row = 0;
  for (const auto& phi : h.basis)
    for (const auto& b : w4.basis) {
      for (std::size_t k = 0; k < 15; ++k) m(row, k) = pairing(phi, wedge2(b, detail::unit_bivector(k)));
      ++row;
    }
  return m;
}

/// Linear forms in p01..p45 spanning the equations of W5.
inline std::vector<MultiPoly> linear_equations(const Matrix<FieldElement>& conditions) {
  const Matrix<FieldElement> rb = row_basis(conditions);
  std::vector<MultiPoly> out;
  for (std::size_t r = 0; r < rb.rows(); ++r) out.push_back(MultiPoly::linear(plucker_vars(), rb.row(r)));
  return out;
}

/// W5: the common orthogonal of W4 for every quadric of H. The returned basis
/// starts with the basis of W4.
inline SubspaceW w5_from_w4(const SubspaceW& w4, const QuadricSpaceH& h) {
  const std::string stage = "w5_from_w4";
  if (h.basis.size() != 5) throw PreconditionError(stage, "quadric space must have 5 elements");
  const Matrix<FieldElement> k = kernel(orthogonal_conditions(w4, h));
  if (k.cols() != 5) throw PreconditionError(stage, "orthogonal has dimension " + std::to_string(k.cols()) + ", expected 5");
  std::vector<Bivector15> all = w4.basis;
  for (const auto& v : columns_as_bivectors(k)) all.push_back(v);
  if (rank(bivector_columns(all)) != 5) throw PreconditionError(stage, "W4 is not contained in the orthogonal");

  SubspaceW w5{w4.basis, SubspaceW::Label::W5};
  for (const auto& v : columns_as_bivectors(k)) {
    w5.basis.push_back(v);
    if (rank(w5.columns()) == 5) break;
    w5.basis.pop_back();
  }
  return w5;
}

// ---------------------------------------------------------------------------
// Numeric rank-2 points

using ComplexBivector = Bivector15Of<std::complex<double>>;

struct NumericPoint {
  ComplexBivector p;     // scaled so p[lead] = 1
  std::size_t lead = 0;  // first significant coordinate
  double residual = 0;   // max |sub-pfaffian| at the unit-norm representative
};

struct NumericPoints {
  std::vector<NumericPoint> points;
  bool complete = false;
  int starts = 0;
};

struct NumericOptions {
  double tol = 1e-8;
  std::uint64_t seed = 0;
  int budget = 400;
  int max_iterations = 60;
};

namespace detail {

using CVec = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 1>;
using CMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>;

inline ComplexBivector to_bivector(const CVec& v) {
  ComplexBivector b;
  for (std::size_t k = 0; k < 15; ++k) b[k] = v(static_cast<Eigen::Index>(k));
  return b;
}

inline CVec from_bivector(const ComplexBivector& b) {
  CVec v(15);
  for (std::size_t k = 0; k < 15; ++k) v(static_cast<Eigen::Index>(k)) = b[k];
  return v;
}

/// The 15 coordinates of w ^ n.
inline CVec wedge_vec(const CVec& w, const CVec& n) {
  const auto f = wedge2_generic(to_bivector(w), to_bivector(n));
  CVec out(15);
  for (std::size_t k = 0; k < 15; ++k) out(static_cast<Eigen::Index>(k)) = f[k];
  return out;
}

inline std::complex<double> random_complex(SplitMix64& rng) {
  return {2.0 * rng.unit() - 1.0, 2.0 * rng.unit() - 1.0};
}

inline double sub_pfaffian_residual(const CVec& omega) {
  const CVec unit = omega / omega.norm();
  return wedge_vec(unit, unit).cwiseAbs().maxCoeff() / 2.0;
}

inline NumericPoint normalize_leading(const CVec& omega, double residual) {
  const double big = omega.cwiseAbs().maxCoeff();
  Eigen::Index lead = 0;
  while (std::abs(omega(lead)) <= 1e-8 * big) ++lead;
  return {to_bivector(omega / omega(lead)), static_cast<std::size_t>(lead), residual};
}

inline bool ordered_before(const NumericPoint& a, const NumericPoint& b) {
  if (a.lead != b.lead) return a.lead < b.lead;
  for (std::size_t k = 0; k < 15; ++k) {
    if (std::abs(a.p[k].real() - b.p[k].real()) > 1e-9) return a.p[k].real() < b.p[k].real();
    if (std::abs(a.p[k].imag() - b.p[k].imag()) > 1e-9) return a.p[k].imag() < b.p[k].imag();
  }
  return false;
}

}  // namespace detail

/// Phase-invariant distance between two points of P(C^15).
inline double projective_distance(const ComplexBivector& a, const ComplexBivector& b) {
  const detail::CVec x = detail::from_bivector(a).normalized();
  const detail::CVec y = detail::from_bivector(b).normalized();
  const double c = std::abs(x.dot(y));
  return std::sqrt(std::max(0.0, 1.0 - c * c));
}

/// Multi-start Newton for the rank-2 points of P(W5). Each start solves four
/// random combinations of the sub-pfaffian quadrics plus a random affine
/// chart; solutions off the Grassmannian fail the residual filter.
inline NumericPoints rank2_points_numeric(const SubspaceW& w5, const NumericOptions& opt = {}) {
  using namespace detail;
  w5.validate("rank2_points_numeric");
  const Eigen::Index n = static_cast<Eigen::Index>(w5.basis.size());
  CMat basis(15, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index k = 0; k < 15; ++k)
      basis(k, c) = w5.basis[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)].to_complex();
  for (Eigen::Index c = 0; c < n; ++c) basis.col(c).normalize();

  SplitMix64 rng(opt.seed);
  NumericPoints out;
  std::vector<CVec> found;
  for (out.starts = 0; out.starts < opt.budget; ++out.starts) {
    SplitMix64 local = rng.split();
    CMat combo(n - 1, 15);
    for (Eigen::Index r = 0; r < n - 1; ++r)
      for (Eigen::Index k = 0; k < 15; ++k) combo(r, k) = random_complex(local);
    CVec chart(n), c(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      chart(k) = random_complex(local);
      c(k) = random_complex(local);
    }
    c /= chart.dot(c);

    const auto system = [&](const CVec& x) {
      const CVec omega = basis * x;
      CVec f(n);
      f.head(n - 1) = combo * wedge_vec(omega, omega);
      f(n - 1) = chart.dot(x) - 1.0;
      return f;
    };
    for (int it = 0; it < opt.max_iterations; ++it) {
      const CVec omega = basis * c;
      const CVec f = system(c);
      CMat jac(n, n);
      for (Eigen::Index m = 0; m < n; ++m) {
        jac.col(m).head(n - 1) = 2.0 * (combo * wedge_vec(omega, basis.col(m)));
        jac(n - 1, m) = std::conj(chart(m));
      }
      const CVec step = jac.partialPivLu().solve(f);
      if (!step.allFinite()) break;
      // backtrack until |F| decreases enough
      const double f0 = f.norm();
      double t = 1.0;
      while (f0 > 1e-14 && t > 1e-4 && system(c - t * step).norm() >= (1.0 - 0.25 * t) * f0) t *= 0.5;
      c -= t * step;
      if (step.norm() <= 1e-15 * (1.0 + c.norm())) break;
    }
    if (!c.allFinite()) continue;

    const CVec omega = basis * c;
    const double residual = sub_pfaffian_residual(omega);
    if (!(residual < opt.tol)) continue;
    const CVec unit = omega.normalized();
    bool duplicate = false;
    for (const auto& g : found) {
      const double d = std::abs(g.dot(unit));
      duplicate = duplicate || std::sqrt(std::max(0.0, 1.0 - d * d)) < 1e-6;
    }
    if (duplicate) continue;
    found.push_back(unit);
    out.points.push_back(normalize_leading(omega, residual));
  }
  std::sort(out.points.begin(), out.points.end(), ordered_before);

  if (out.points.size() == 5) {
    CMat pts(15, 5);
    for (Eigen::Index k = 0; k < 5; ++k) pts.col(k) = from_bivector(out.points[static_cast<std::size_t>(k)].p).normalized();
    const Eigen::JacobiSVD<CMat> svd(pts);
    out.complete = svd.singularValues()(4) > 1e-6;
  }
  return out;
}

/// Gap between a numeric point and an exact bivector, both scaled to 1 at the
/// point's leading coordinate.
inline double normalized_gap(const NumericPoint& pt, const Bivector15& exact) {
  const std::complex<double> pivot = exact[pt.lead].to_complex();
  if (std::abs(pivot) < 1e-12) return std::numeric_limits<double>::infinity();
  double gap = 0;
  for (std::size_t k = 0; k < 15; ++k) gap = std::max(gap, std::abs(pt.p[k] - exact[k].to_complex() / pivot));
  return gap;
}

/// True iff there are exactly as many points as lines and each line matches
/// exactly one point within tol.
inline bool matches_exact(const NumericPoints& found, std::span<const Bivector15> exact, double tol) {
  if (found.points.size() != exact.size()) return false;
  for (const auto& line : exact) {
    int hits = 0;
    for (const auto& pt : found.points) hits += normalized_gap(pt, line) < tol;
    if (hits != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Pentahedron cut by the rank-2 points

/// M(x) = sum x_k skew(b_k) over the W4 basis.
inline SkewLinMat6 tautological_matrix(const SubspaceW& w4, const Vars& vars = x_vars()) {
  std::vector<MultiPoly> upper(15, MultiPoly(vars));
  for (std::size_t k = 0; k < 4; ++k) {
    const MultiPoly xk = MultiPoly::variable(vars, k);
    for (std::size_t q = 0; q < 15; ++q)
      if (!w4.basis[k][q].is_zero()) upper[q] = upper[q] + w4.basis[k][q] * xk;
  }
  return SkewLinMat6::from_upper(upper);
}

/// Plane i is P(W4) n span(points j != i), one linear form in W4-coordinates.
inline PentahedronData pentahedron_from_lines(const SubspaceW& w4, const std::array<Bivector15, 5>& points) {
  const std::string stage = "pentahedron_from_lines";
  w4.validate(stage);
  for (std::size_t k = 0; k < 5; ++k) {
    if (is_zero(points[k]) || !is_decomposable(points[k])) {
      throw PreconditionError(stage, "point " + std::to_string(k) + " does not have rank 2");
    }
  }
  const std::vector<Bivector15> pts(points.begin(), points.end());
  if (rank(bivector_columns(pts)) != 5) throw PreconditionError(stage, "points are linearly dependent");
  std::vector<Bivector15> joint = pts;
  joint.insert(joint.end(), w4.basis.begin(), w4.basis.end());
  if (rank(bivector_columns(joint)) != 5) throw PreconditionError(stage, "W4 is not contained in the span of the points");

  PentahedronData pd;
  for (std::size_t i = 0; i < 5; ++i) {
    Matrix<FieldElement> sys(15, 8);
    std::size_t col = 4;
    for (std::size_t k = 0; k < 15; ++k)
      for (std::size_t c = 0; c < 4; ++c) sys(k, c) = w4.basis[c][k];
    for (std::size_t j = 0; j < 5; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < 15; ++k) sys(k, col) = -points[j][k];
      ++col;
    }
    const Matrix<FieldElement> ker = kernel(sys);
    const Matrix<FieldElement> coords = ker.block(0, 0, 4, ker.cols());
    if (rank(coords) != 3) {
      throw PreconditionError(stage, "plane " + std::to_string(i) + " has dimension " + std::to_string(rank(coords)) +
                                         ", expected 3");
    }
    const Matrix<FieldElement> form = kernel(coords.transpose());
    pd.planes[i] = MultiPoly::linear(x_vars(), form.col(0));
  }
  pd.cubic = pfaffian(tautological_matrix(w4).matrix());
  return pd;
}

}  // namespace pfc
