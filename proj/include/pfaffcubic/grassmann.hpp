#pragma once

// Plucker coordinates on the second exterior power of a 6-dimensional space.
//
// A Bivector15 stores p_(i,j), i < j, in kPairs order and stands for
// sum p_(i,j) e_i ^ e_j; its skew matrix has A(i, j) = p_(i,j).
// A FourForm15 stores one coordinate per 4-subset {i<j<k<l} in lexicographic
// order. The wedge of two bivectors is
//   (w ^ n)_K = sum over splittings K = {i,j} u {k,l}, i<j, k<l,
//               of sgn(i,j,k,l) w_(i,j) n_(k,l),
// where sgn is the sign of the permutation sorting (i,j,k,l). Hence
// (w ^ w)_K = 2 Pf(A restricted to K).

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pfaffcubic/errors.hpp"
#include "pfaffcubic/field.hpp"
#include "pfaffcubic/matrix.hpp"
#include "pfaffcubic/poly.hpp"
#include "pfaffcubic/skew.hpp"

namespace pfc {

using Vector6 = std::array<FieldElement, 6>;

/// 4-subsets of {0..5} in lexicographic order.
inline constexpr std::array<std::array<int, 4>, 15> kQuads{{{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 2, 5},
                                                            {0, 1, 3, 4}, {0, 1, 3, 5}, {0, 1, 4, 5},
                                                            {0, 2, 3, 4}, {0, 2, 3, 5}, {0, 2, 4, 5},
                                                            {0, 3, 4, 5}, {1, 2, 3, 4}, {1, 2, 3, 5},
                                                            {1, 2, 4, 5}, {1, 3, 4, 5}, {2, 3, 4, 5}}};

/// Index of the 4-subset complementary to the pair (i, j).
inline std::size_t complement_quad(int i, int j) {
  for (std::size_t q = 0; q < kQuads.size(); ++q) {
    bool hit = false;
    for (int x : kQuads[q]) hit = hit || x == i || x == j;
    if (!hit) return q;
  }
  throw ShapeError("invalid pair");
}

template <class T>
struct Bivector15Of {
  std::array<T, 15> p{};

  T& operator[](std::size_t k) { return p[k]; }
  const T& operator[](std::size_t k) const { return p[k]; }
  const T& at(int i, int j) const { return p[pair_index(i, j)]; }

  friend bool operator==(const Bivector15Of& a, const Bivector15Of& b) { return a.p == b.p; }
};

using Bivector15 = Bivector15Of<FieldElement>;

struct FourForm15 {
  std::array<FieldElement, 15> c{};

  FieldElement& operator[](std::size_t k) { return c[k]; }
  const FieldElement& operator[](std::size_t k) const { return c[k]; }
  bool is_zero() const {
    for (const auto& x : c)
      if (!x.is_zero()) return false;
    return true;
  }
  friend bool operator==(const FourForm15& a, const FourForm15& b) { return a.c == b.c; }
};

inline bool is_zero(const Bivector15& w) {
  for (const auto& x : w.p)
    if (!x.is_zero()) return false;
  return true;
}

inline Bivector15 operator+(const Bivector15& a, const Bivector15& b) {
  Bivector15 r;
  for (std::size_t k = 0; k < 15; ++k) r[k] = a[k] + b[k];
  return r;
}
inline Bivector15 operator-(const Bivector15& a, const Bivector15& b) {
  Bivector15 r;
  for (std::size_t k = 0; k < 15; ++k) r[k] = a[k] - b[k];
  return r;
}
inline Bivector15 operator*(const FieldElement& s, const Bivector15& a) {
  Bivector15 r;
  for (std::size_t k = 0; k < 15; ++k) r[k] = s * a[k];
  return r;
}

/// v ^ w for two vectors of the 6-space.
inline Bivector15 wedge(const Vector6& v, const Vector6& w) {
  Bivector15 r;
  for (std::size_t k = 0; k < 15; ++k) {
    const auto [i, j] = kPairs[k];
    r[k] = v[i] * w[j] - v[j] * w[i];
  }
  return r;
}

inline Vector6 basis_vector(int i) {
  Vector6 v;
  v.fill(FieldElement(0));
  v[static_cast<std::size_t>(i)] = FieldElement(1);
  return v;
}

inline Matrix<FieldElement> to_skew(const Bivector15& w) {
  Matrix<FieldElement> a(6, 6);
  for (std::size_t k = 0; k < 15; ++k) {
    const auto [i, j] = kPairs[k];
    a(i, j) = w[k];
    a(j, i) = -w[k];
  }
  return a;
}

inline Bivector15 from_skew(const Matrix<FieldElement>& a) {
  if (a.rows() != 6 || !is_skew(a)) throw ShapeError("expected a skew 6x6 matrix");
  Bivector15 w;
  for (std::size_t k = 0; k < 15; ++k) w[k] = a(kPairs[k].first, kPairs[k].second);
  return w;
}

namespace detail {

inline int sort_sign(std::array<int, 4> s) {
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (s[i] > s[j]) sign = -sign;
  return sign;
}

/// For each 4-subset, its three splittings {i,j} | {k,l} with sign.
struct Splitting {
  std::size_t left, right;
  int sign;
};

inline const std::array<std::array<Splitting, 6>, 15>& splittings() {
  static const auto table = [] {
    std::array<std::array<Splitting, 6>, 15> t{};
    for (std::size_t q = 0; q < 15; ++q) {
      const auto& k = kQuads[q];
      std::size_t n = 0;
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
          std::array<int, 2> rest{};
          int r = 0;
          for (int c = 0; c < 4; ++c)
            if (c != a && c != b) rest[r++] = k[c];
          t[q][n++] = {pair_index(k[a], k[b]), pair_index(rest[0], rest[1]),
                       sort_sign({k[a], k[b], rest[0], rest[1]})};
        }
    }
    return t;
  }();
  return table;
}

}  // namespace detail

template <class T>
std::array<T, 15> wedge2_generic(const Bivector15Of<T>& w, const Bivector15Of<T>& n) {
  std::array<T, 15> out{};
  const auto& table = detail::splittings();
  for (std::size_t q = 0; q < 15; ++q) {
    T acc{};
    for (const auto& s : table[q]) {
      const T term = w[s.left] * n[s.right];
      acc = s.sign > 0 ? acc + term : acc - term;
    }
    out[q] = acc;
  }
  return out;
}

inline FourForm15 wedge2(const Bivector15& w, const Bivector15& n) {
  FourForm15 f;
  f.c = wedge2_generic(w, n);
  return f;
}

/// The basis pairing <phi, x> = sum_K phi_K x_K.
inline FieldElement pairing(const FourForm15& phi, const FourForm15& x) {
  FieldElement acc(0);
  for (std::size_t k = 0; k < 15; ++k)
    if (!phi[k].is_zero() && !x[k].is_zero()) acc = acc + phi[k] * x[k];
  return acc;
}

inline bool is_decomposable(const Bivector15& w) {
  if (is_zero(w)) throw PreconditionError("is_decomposable", "zero bivector");
  return wedge2(w, w).is_zero();
}

/// Factors a rank-2 bivector as v ^ v'. With i the first nonzero row of the
/// skew matrix A and j the first nonzero column in that row,
/// v = -row_j / A(i, j) (so v_i = 1) and v' = row_i.
inline std::pair<Vector6, Vector6> decompose_rank2(const Bivector15& w) {
  if (is_zero(w) || !wedge2(w, w).is_zero()) throw PreconditionError("decompose_rank2", "bivector does not have rank 2");
  const Matrix<FieldElement> a = to_skew(w);
  std::size_t i = 0, j = 0;
  [&] {
    for (i = 0; i < 6; ++i)
      for (j = 0; j < 6; ++j)
        if (!a(i, j).is_zero()) return;
  }();
  const FieldElement scale = -a(i, j).inverse();
  Vector6 v, vp;
  for (std::size_t k = 0; k < 6; ++k) {
    v[k] = scale * a(j, k);
    vp[k] = a(i, k);
  }
  if (!(wedge(v, vp) == w)) throw ArithmeticError("decompose_rank2: reassembly mismatch");
  return {v, vp};
}

/// 15 x k matrix whose columns are the given bivectors.
inline Matrix<FieldElement> bivector_columns(std::span<const Bivector15> vs) {
  Matrix<FieldElement> m(15, vs.size());
  for (std::size_t c = 0; c < vs.size(); ++c)
    for (std::size_t k = 0; k < 15; ++k) m(k, c) = vs[c][k];
  return m;
}

inline std::vector<Bivector15> columns_as_bivectors(const Matrix<FieldElement>& m) {
  if (m.rows() != 15) throw ShapeError("expected 15 rows");
  std::vector<Bivector15> out(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t k = 0; k < 15; ++k) out[c][k] = m(k, c);
  return out;
}

struct SpanMembership {
  std::size_t dimension = 0;
  bool member = false;
};

inline SpanMembership span_and_membership(std::span<const Bivector15> vs, const Bivector15& probe) {
  if (vs.empty()) return {0, is_zero(probe)};
  const Matrix<FieldElement> m = bivector_columns(vs);
  const std::size_t dim = rank(m);
  std::vector<Bivector15> with(vs.begin(), vs.end());
  with.push_back(probe);
  return {dim, rank(bivector_columns(with)) == dim};
}

/// The Plucker quadric q(p) = <phi, p ^ p> as a polynomial in p01..p45.
inline const Vars& plucker_vars() {
  static const Vars v = [] {
    VarNames names;
    for (const auto& [i, j] : kPairs) names.push_back("p" + std::to_string(i) + std::to_string(j));
    return make_vars(std::move(names));
  }();
  return v;
}

inline MultiPoly plucker_quadric(const FourForm15& phi) {
  MultiPoly q(plucker_vars());
  const auto& table = detail::splittings();
  for (std::size_t k = 0; k < 15; ++k) {
    if (phi[k].is_zero()) continue;
    for (const auto& s : table[k]) {
      const MultiPoly mono = MultiPoly::variable(plucker_vars(), s.left) * MultiPoly::variable(plucker_vars(), s.right);
      q = q + FieldElement(s.sign) * phi[k] * mono;
    }
  }
  return q;
}

}  // namespace pfc
