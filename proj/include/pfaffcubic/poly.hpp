#pragma once

// Sparse multivariate polynomials with FieldElement coefficients.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "pfaffcubic/errors.hpp"
#include "pfaffcubic/field.hpp"
#include "pfaffcubic/matrix.hpp"

namespace pfc {

inline constexpr std::size_t kMaxVars = 16;

using Exponents = std::array<std::uint8_t, kMaxVars>;
using VarNames = std::vector<std::string>;
using Vars = std::shared_ptr<const VarNames>;

inline int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Graded order, larger monomials first; w0 dominates w1 within a degree.
struct MonomialOrder {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

inline Vars make_vars(VarNames names) {
  if (names.size() > kMaxVars) throw ShapeError("too many polynomial variables");
  return std::make_shared<const VarNames>(std::move(names));
}

inline Vars indexed_vars(const std::string& prefix, std::size_t n) {
  VarNames names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return make_vars(std::move(names));
}

/// w0..w3: coordinates of pi_3 adapted to the pentahedron.
inline const Vars& w_vars() {
  static const Vars v = indexed_vars("w", 4);
  return v;
}

/// x0..x3: the reference frame of pi_3.
inline const Vars& x_vars() {
  static const Vars v = indexed_vars("x", 4);
  return v;
}

/// w0..w4 with w4 kept as a free symbol.
inline const Vars& w5_vars() {
  static const Vars v = indexed_vars("w", 5);
  return v;
}

class MultiPoly {
 public:
  using Terms = std::map<Exponents, FieldElement, MonomialOrder>;

  /// The zero constant. Constants carry no variables and combine with any
  /// variable set.
  MultiPoly() = default;
  MultiPoly(FieldElement c) {  // NOLINT: implicit
    if (!c.is_zero()) terms_.emplace(Exponents{}, std::move(c));
  }
  template <std::integral I>
  MultiPoly(I n) : MultiPoly(FieldElement(n)) {}  // NOLINT: implicit
  explicit MultiPoly(Vars vars) : vars_(std::move(vars)) {}
  MultiPoly(Vars vars, Terms terms) : vars_(std::move(vars)), terms_(std::move(terms)) {
    std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
  }

  static MultiPoly variable(const Vars& vars, std::size_t i) {
    if (i >= vars->size()) throw ShapeError("variable index out of range");
    Exponents e{};
    e[i] = 1;
    return MultiPoly(vars, Terms{{e, FieldElement(1)}});
  }

  /// sum_i coeffs[i] * var_i.
  static MultiPoly linear(const Vars& vars, std::span<const FieldElement> coeffs) {
    if (coeffs.size() != vars->size()) throw ShapeError("linear form size mismatch");
    Terms t;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i].is_zero()) continue;
      Exponents e{};
      e[i] = 1;
      t.emplace(e, coeffs[i]);
    }
    return MultiPoly(vars, std::move(t));
  }

  const Vars& vars() const noexcept { return vars_; }
  std::size_t nvars() const noexcept { return vars_ ? vars_->size() : 0; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

  FieldElement coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? FieldElement(0) : it->second;
  }
  FieldElement constant_term() const { return coeff(Exponents{}); }

  /// Coefficients of a homogeneous linear form, one per variable.
  std::vector<FieldElement> linear_coeffs() const {
    std::vector<FieldElement> c(nvars(), FieldElement(0));
    for (const auto& [e, v] : terms_) {
      if (total_degree(e) != 1) throw ShapeError("not a homogeneous linear form: " + str());
      for (std::size_t i = 0; i < nvars(); ++i)
        if (e[i] == 1) c[i] = v;
    }
    return c;
  }

  TowerPtr tower() const {
    TowerPtr t;
    for (const auto& [e, v] : terms_) t = join_towers(t, v.tower());
    return t;
  }

  MultiPoly operator-() const {
    MultiPoly r(*this);
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r(common_vars(a, b));
    r.terms_ = a.terms_;
    for (const auto& [e, v] : b.terms_) r.accumulate(e, v);
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r(common_vars(a, b));
    for (const auto& [ea, va] : a.terms_) {
      for (const auto& [eb, vb] : b.terms_) {
        Exponents e{};
        for (std::size_t i = 0; i < kMaxVars; ++i) {
          const int d = ea[i] + eb[i];
          if (d > 255) throw ShapeError("polynomial degree overflow");
          e[i] = static_cast<std::uint8_t>(d);
        }
        r.accumulate(e, va * vb);
      }
    }
    return r;
  }
  friend MultiPoly operator*(const FieldElement& s, const MultiPoly& p) {
    if (s.is_zero()) return MultiPoly(p.vars_);
    MultiPoly r(p);
    for (auto& [e, v] : r.terms_) v = s * v;
    return r;
  }
  friend MultiPoly operator*(const MultiPoly& p, const FieldElement& s) { return s * p; }

  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly pow(unsigned n) const {
    MultiPoly r(FieldElement(1));
    r.vars_ = vars_;
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars() && b.nvars()) common_vars(a, b);
    return a.terms_ == b.terms_;
  }

  FieldElement eval(std::span<const FieldElement> point) const {
    if (point.size() != nvars() && !is_constant()) throw ShapeError("evaluation point has the wrong size");
    FieldElement acc(0);
    for (const auto& [e, v] : terms_) {
      FieldElement term = v;
      for (std::size_t i = 0; i < point.size(); ++i)
        for (int k = 0; k < e[i]; ++k) term = term * point[i];
      acc = acc + term;
    }
    return acc;
  }

  /// Replace variable i by images[i] (all images share one variable set).
  MultiPoly compose(std::span<const MultiPoly> images) const {
    if (images.size() != nvars() && !is_constant()) throw ShapeError("composition arity mismatch");
    Vars out_vars;
    for (const auto& im : images)
      if (im.nvars()) out_vars = im.vars_;
    MultiPoly acc(out_vars);
    for (const auto& [e, v] : terms_) {
      MultiPoly term(v);
      term.vars_ = out_vars;
      for (std::size_t i = 0; i < images.size(); ++i)
        for (int k = 0; k < e[i]; ++k) term = term * images[i];
      acc = acc + term;
    }
    return acc;
  }

  /// The same polynomial relabelled onto another variable set of equal size.
  MultiPoly rename(const Vars& vars) const {
    if (!is_constant() && vars->size() != nvars()) throw ShapeError("rename: variable count mismatch");
    MultiPoly r(*this);
    r.vars_ = vars;
    return r;
  }

  std::string str() const;

 private:
  static Vars common_vars(const MultiPoly& a, const MultiPoly& b) {
    if (!a.nvars()) return b.vars_;
    if (!b.nvars() || a.vars_ == b.vars_ || *a.vars_ == *b.vars_) return a.vars_;
    throw ShapeError("variable-set mismatch");
  }

  void accumulate(const Exponents& e, const FieldElement& v) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!v.is_zero()) terms_.emplace(e, v);
      return;
    }
    it->second = it->second + v;
    if (it->second.is_zero()) terms_.erase(it);
  }

  Vars vars_;
  Terms terms_;
};

inline bool is_zero(const MultiPoly& p) { return p.is_zero(); }

inline std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, v] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += (*vars_)[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coef;
    bool negative = false;
    if (v.is_rational()) {
      negative = sgn(v.rational()) < 0;
      const Rational mag = abs(v.rational());
      if (mono.empty() || mag != 1) coef = mag.get_str();
    } else {
      coef = "(" + v.str() + ")";
    }
    std::string term = coef;
    if (!mono.empty()) term += (coef.empty() ? "" : "*") + mono;
    if (out.empty()) {
      out = (negative ? "-" : "") + term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
  }
  return out;
}

/// Rows are the polynomials, columns the union of their monomials.
inline Matrix<FieldElement> coefficient_matrix(std::span<const MultiPoly> polys) {
  std::map<Exponents, std::size_t, MonomialOrder> cols;
  for (const auto& f : polys)
    for (const auto& [e, c] : f.terms()) cols.emplace(e, 0);
  std::size_t n = 0;
  for (auto& [e, idx] : cols) idx = n++;
  Matrix<FieldElement> m(polys.size(), n);
  for (std::size_t r = 0; r < polys.size(); ++r)
    for (const auto& [e, c] : polys[r].terms()) m(r, cols.at(e)) = c;
  return m;
}

/// True iff the two families span the same space of polynomials.
inline bool same_polynomial_span(std::span<const MultiPoly> a, std::span<const MultiPoly> b) {
  std::vector<MultiPoly> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  const Matrix<FieldElement> m = coefficient_matrix(all);
  const std::size_t joint = rank(m);
  const std::size_t ra = a.empty() ? 0 : rank(m.block(0, 0, a.size(), m.cols()));
  const std::size_t rb = b.empty() ? 0 : rank(m.block(a.size(), 0, b.size(), m.cols()));
  return joint == ra && joint == rb;
}

/// f with each variable w_i replaced by sum_j c(i, j) x_j, i.e. f(C x).
/// The result uses `out_vars` (default: the variables of f).
inline MultiPoly substitute_linear(const MultiPoly& f, const Matrix<FieldElement>& c, Vars out_vars = nullptr) {
  if (!c.square() || c.rows() != f.nvars()) throw ShapeError("substitute_linear: matrix size mismatch");
  if (det(c).is_zero()) throw ArithmeticError("substitute_linear: singular change of frame");
  if (!out_vars) out_vars = f.vars();
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < c.rows(); ++i) images.push_back(MultiPoly::linear(out_vars, c.row(i)));
  return f.compose(images);
}

/// Entrywise evaluation of a polynomial matrix at a point.
inline Matrix<FieldElement> evaluate(const Matrix<MultiPoly>& m, std::span<const FieldElement> point) {
  return m.map([&](const MultiPoly& p) { return p.eval(point); });
}

/// Entrywise composition of a polynomial matrix with variable images.
inline Matrix<MultiPoly> compose(const Matrix<MultiPoly>& m, std::span<const MultiPoly> images) {
  return m.map([&](const MultiPoly& p) { return p.compose(images); });
}

}  // namespace pfc
