#pragma once

// Dense row-major matrices over an arbitrary ring-like T, and exact Gaussian
// elimination for field-valued T (FieldElement, Rational).

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfaffcubic/errors.hpp"
#include "pfaffcubic/field.hpp"

namespace pfc {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ShapeError("ragged matrix initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows.front().size();
    for (const auto& r : rows) {
      if (r.size() != m.cols_) throw ShapeError("ragged matrix rows");
      m.data_.insert(m.data_.end(), r.begin(), r.end());
    }
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& cols) {
    return from_rows(cols).transpose();
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }

  Matrix transpose() const {
    Matrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.data_.reserve(data_.size());
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t i = 0; i < rows_; ++i) t.data_.push_back((*this)(i, j));
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block out of range");
    Matrix b;
    b.rows_ = nr;
    b.cols_ = nc;
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b.data_.push_back((*this)(r0 + i, c0 + j));
    return b;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    Matrix<decltype(f(std::declval<const T&>()))> out;
    std::vector<std::vector<decltype(f(std::declval<const T&>()))>> rows(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) rows[i].push_back(f((*this)(i, j)));
    if (rows_ == 0) return out;
    return decltype(out)::from_rows(rows);
  }

  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix r(a);
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix r(a);
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix r(a);
    for (auto& x : r.data_) x = -x;
    return r;
  }

 private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class A, class B>
auto operator*(const Matrix<A>& a, const Matrix<B>& b) {
  using R = decltype(std::declval<const A&>() * std::declval<const B&>());
  if (a.cols() != b.rows() || a.cols() == 0) throw ShapeError("matrix product shape mismatch");
  std::vector<std::vector<R>> rows(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    rows[i].reserve(b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
      R acc = a(i, 0) * b(0, j);
      for (std::size_t k = 1; k < a.cols(); ++k) acc = acc + a(i, k) * b(k, j);
      rows[i].push_back(std::move(acc));
    }
  }
  return Matrix<R>::from_rows(rows);
}

template <class S, class T>
auto scale(const S& s, const Matrix<T>& m) {
  return m.map([&](const T& x) { return s * x; });
}

/// t(P) * M * P, the congruence action.
template <class A, class B>
auto congruence(const Matrix<A>& p, const Matrix<B>& m) {
  return p.transpose() * m * p;
}

template <class T>
Matrix<T> kron_identity3(const Matrix<T>& t2) {
  // t2 (x) I3: the 2x2 pattern repeated on the three index pairs (i, i+3).
  if (t2.rows() != 2 || t2.cols() != 2) throw ShapeError("expected a 2x2 block");
  Matrix<T> m(6, 6, T(0));
  for (std::size_t i = 0; i < 3; ++i) {
    m(i, i) = t2(0, 0);
    m(i, i + 3) = t2(0, 1);
    m(i + 3, i) = t2(1, 0);
    m(i + 3, i + 3) = t2(1, 1);
  }
  return m;
}

template <class T>
Matrix<T> block_diag2(const Matrix<T>& t) {
  const std::size_t n = t.rows();
  Matrix<T> m(2 * n, 2 * n, T(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = t(i, j);
      m(n + i, n + j) = t(i, j);
    }
  return m;
}

// ---------------------------------------------------------------------------
// Exact linear algebra. Pivoting is on the first nonzero entry of the column,
// so every output is deterministic and bases come out in reduced row echelon
// form.

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

template <class T>
struct Rref {
  Matrix<T> reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

template <class T>
Rref<T> rref(Matrix<T> a) {
  Rref<T> out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && is_zero(a(piv, col))) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    const T inv = T(1) / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) = a(row, j) * inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || is_zero(a(i, col))) continue;
      const T f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) = a(i, j) - f * a(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

template <class T>
std::size_t rank(const Matrix<T>& a) {
  return rref(a).pivots.size();
}

/// Basis of the right kernel, one vector per column (n x d).
template <class T>
Matrix<T> kernel(const Matrix<T>& a) {
  const auto r = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(a.cols(), T(0));
    v[free] = T(1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, free);
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return Matrix<T>(a.cols(), 0);
  return Matrix<T>::from_columns(basis);
}

template <class T>
T det(const Matrix<T>& a) {
  if (!a.square()) throw ShapeError("determinant of a non-square matrix");
  Matrix<T> m(a);
  const std::size_t n = m.rows();
  T d(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(m(piv, col))) ++piv;
    if (piv == n) return T(0);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      d = -d;
    }
    d = d * m(col, col);
    const T inv = T(1) / m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (is_zero(m(i, col))) continue;
      const T f = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) = m(i, j) - f * m(col, j);
    }
  }
  return d;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  if (!a.square()) throw ShapeError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix<T> aug(n, 2 * n, T(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = T(1);
  }
  const auto r = rref(aug);
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) throw ArithmeticError("singular matrix");
  return r.reduced.block(0, n, n, n);
}

/// A particular solution of a x = b (free variables set to zero).
template <class T>
std::vector<T> solve(const Matrix<T>& a, const std::vector<T>& b) {
  if (b.size() != a.rows()) throw ShapeError("solve: right-hand side size mismatch");
  Matrix<T> aug(a.rows(), a.cols() + 1, T(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == a.cols()) throw ArithmeticError("inconsistent linear system");
  std::vector<T> x(a.cols(), T(0));
  for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.reduced(i, a.cols());
  return x;
}

/// Canonical basis (nonzero RREF rows) of the row space.
template <class T>
Matrix<T> row_basis(const Matrix<T>& a) {
  auto r = rref(a);
  if (r.pivots.empty()) return Matrix<T>(0, a.cols());
  return r.reduced.block(0, 0, r.pivots.size(), a.cols());
}

/// Canonical basis of the column span, one vector per column.
template <class T>
Matrix<T> column_basis(const Matrix<T>& a) {
  return row_basis(a.transpose()).transpose();
}

/// Basis of span(cols a) intersected with span(cols b), as columns in canonical form.
template <class T>
Matrix<T> intersect_spans(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw ShapeError("intersect_spans: ambient dimension mismatch");
  const std::size_t n = a.rows();
  if (a.cols() == 0 || b.cols() == 0) return Matrix<T>(n, 0);
  Matrix<T> joint(n, a.cols() + b.cols(), T(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) joint(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) joint(i, a.cols() + j) = -b(i, j);
  }
  const Matrix<T> k = kernel(joint);
  if (k.cols() == 0) return Matrix<T>(n, 0);
  const Matrix<T> coeffs = k.block(0, 0, a.cols(), k.cols());
  Matrix<T> vecs = a * coeffs;
  Matrix<T> basis = column_basis(vecs);
  if (basis.cols() == 0) return Matrix<T>(n, 0);
  return basis;
}

/// True iff the two column spans coincide.
template <class T>
bool same_span(const Matrix<T>& a, const Matrix<T>& b) {
  return row_basis(a.transpose()) == row_basis(b.transpose());
}

}  // namespace pfc
