#pragma once

// Skew-symmetric matrices, pfaffians and the shape predicates used on 6x6
// matrices of linear forms.
//
// Sign convention: Pf([[0, 1], [-1, 0]]) = +1, expansion along the first row,
//   Pf(A) = sum_{j >= 1} (-1)^(j+1) a_{0j} Pf(A without rows/cols 0, j).

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pfaffcubic/errors.hpp"
#include "pfaffcubic/field.hpp"
#include "pfaffcubic/matrix.hpp"
#include "pfaffcubic/poly.hpp"

namespace pfc {

/// Pairs (i, j), 0 <= i < j <= 5, in lexicographic order.
inline constexpr std::array<std::pair<int, int>, 15> kPairs{{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5},
                                                             {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3},
                                                             {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}};

inline constexpr std::size_t pair_index(int i, int j) {
  // offset of row i in the upper triangle, then the column
  return static_cast<std::size_t>(i * (11 - i) / 2 + (j - i - 1));
}

template <class T>
bool is_skew(const Matrix<T>& a) {
  if (!a.square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!is_zero(a(i, i))) return false;
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (!is_zero(a(i, j) + a(j, i))) return false;
  }
  return true;
}

namespace detail {

template <class T>
T pfaffian_rec(const Matrix<T>& a, std::span<const std::size_t> idx) {
  const std::size_t n = idx.size();
  if (n == 0) return T(1);
  if (n == 2) return a(idx[0], idx[1]);
  if (n == 4) {
    const auto at = [&](int i, int j) -> const T& { return a(idx[i], idx[j]); };
    return at(0, 1) * at(2, 3) - at(0, 2) * at(1, 3) + at(0, 3) * at(1, 2);
  }
  T acc(0);
  std::vector<std::size_t> rest;
  rest.reserve(n - 2);
  for (std::size_t j = 1; j < n; ++j) {
    const T& head = a(idx[0], idx[j]);
    if (is_zero(head)) continue;
    rest.clear();
    for (std::size_t k = 1; k < n; ++k)
      if (k != j) rest.push_back(idx[k]);
    T term = head * pfaffian_rec(a, std::span<const std::size_t>(rest));
    acc = (j % 2 == 1) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace detail

/// Pfaffian of an even skew matrix of size at most 8.
template <class T>
T pfaffian(const Matrix<T>& a) {
  if (!a.square()) throw ShapeError("pfaffian of a non-square matrix");
  if (a.rows() % 2 != 0) throw ShapeError("pfaffian of an odd-size matrix");
  if (a.rows() > 8) throw ShapeError("pfaffian size above 8");
  if (!is_skew(a)) throw ShapeError("pfaffian of a non-skew matrix");
  std::vector<std::size_t> idx(a.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return detail::pfaffian_rec(a, std::span<const std::size_t>(idx));
}

/// The 15 pfaffians of the 4x4 principal submatrices, indexed by the deleted
/// pair (i, j) in kPairs order.
template <class T>
std::vector<T> sub_pfaffians4(const Matrix<T>& a) {
  if (a.rows() != 6 || !is_skew(a)) throw ShapeError("sub_pfaffians4 expects a skew 6x6 matrix");
  std::vector<T> out;
  out.reserve(15);
  for (const auto& [i, j] : kPairs) {
    std::array<std::size_t, 4> keep{};
    std::size_t n = 0;
    for (int k = 0; k < 6; ++k)
      if (k != i && k != j) keep[n++] = static_cast<std::size_t>(k);
    out.push_back(detail::pfaffian_rec(a, std::span<const std::size_t>(keep)));
  }
  return out;
}

/// A 6x6 skew matrix whose entries are linear forms (possibly constants).
class SkewLinMat6 {
 public:
  SkewLinMat6() : m_(6, 6) {}
  explicit SkewLinMat6(Matrix<MultiPoly> m) : m_(std::move(m)) {
    if (m_.rows() != 6 || m_.cols() != 6) throw ShapeError("SkewLinMat6 must be 6x6");
    if (!is_skew(m_)) throw ShapeError("SkewLinMat6 must be skew-symmetric");
    for (const auto& e : m_.data())
      if (e.degree() > 1) throw ShapeError("SkewLinMat6 entries must have degree <= 1");
  }

  /// Lifts a scalar skew matrix to constant entries.
  static SkewLinMat6 constant(const Matrix<FieldElement>& m, const Vars& vars) {
    return SkewLinMat6(m.map([&](const FieldElement& x) { return MultiPoly(x) + MultiPoly(vars); }));
  }

  /// From the 15 upper-triangle entries in kPairs order.
  static SkewLinMat6 from_upper(std::span<const MultiPoly> upper) {
    if (upper.size() != 15) throw ShapeError("expected 15 upper-triangle entries");
    Matrix<MultiPoly> m(6, 6);
    for (std::size_t k = 0; k < 15; ++k) {
      const auto [i, j] = kPairs[k];
      m(i, j) = upper[k];
      m(j, i) = -upper[k];
    }
    return SkewLinMat6(std::move(m));
  }

  std::vector<MultiPoly> upper() const {
    std::vector<MultiPoly> out;
    for (const auto& [i, j] : kPairs) out.push_back(m_(i, j));
    return out;
  }

  const Matrix<MultiPoly>& matrix() const noexcept { return m_; }
  const MultiPoly& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  Matrix<FieldElement> at(std::span<const FieldElement> point) const { return evaluate(m_, point); }

  friend bool operator==(const SkewLinMat6& a, const SkewLinMat6& b) { return a.m_ == b.m_; }

 private:
  Matrix<MultiPoly> m_;
};

/// True iff N = [[0, A], [-A, 0]] with A a symmetric 3x3 matrix of linear forms.
inline bool block_shape_check(const Matrix<MultiPoly>& n) {
  if (n.rows() != 6 || n.cols() != 6) return false;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (!n(i, j).is_zero() || !n(i + 3, j + 3).is_zero()) return false;
      if (!(n(i, j + 3) == n(j, i + 3))) return false;
      if (!(n(i + 3, j) == -n(i, j + 3))) return false;
      if (n(i, j + 3).degree() > 1) return false;
    }
  return true;
}

/// True iff the 3-plane spanned by the columns of b is isotropic for every
/// form M(w), i.e. t(B) M B vanishes identically.
inline bool isotropy_check(const Matrix<FieldElement>& b, const Matrix<MultiPoly>& m) {
  if (b.rows() != 6 || b.cols() != 3) throw ShapeError("isotropy_check expects a 6x3 basis");
  if (rank(b) != 3) throw PreconditionError("isotropy_check", "basis has rank below 3");
  const Matrix<MultiPoly> r = congruence(b, m);
  for (const auto& e : r.data())
    if (!e.is_zero()) return false;
  return true;
}

/// Rank of M at a nonzero point; always even.
inline std::size_t rank_at_point(const SkewLinMat6& m, std::span<const FieldElement> point) {
  bool nonzero = false;
  for (const auto& x : point) nonzero = nonzero || !x.is_zero();
  if (!nonzero) throw PreconditionError("rank_at_point", "zero point");
  return rank(m.at(point));
}

}  // namespace pfc
