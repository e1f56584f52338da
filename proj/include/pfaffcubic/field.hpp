#pragma once

// Exact scalars: rationals and towers of quadratic extensions of Q.
//
// A tower of depth n is Q = K_0 c K_1 c ... c K_n with K_k = K_{k-1}(g_k) and
// g_k^2 = -p_k g_k - q_k, where p_k, q_k are in K_{k-1}. An element of K_k is
// stored densely as 2^k rationals, the coefficient of index m multiplying the
// monomial prod g_j^{bit j-1 of m}. Equivalently: the lower half of the array
// is c_0 and the upper half is c_1 in c_0 + c_1 g_k. Arrays are trimmed to the
// smallest level that holds the element, so equality is structural.

#include <gmpxx.h>

#include <algorithm>
#include <complex>
#include <concepts>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfaffcubic/errors.hpp"

namespace pfc {

using Rational = mpq_class;

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

namespace detail {
using Coeffs = std::vector<Rational>;
}

class FieldElement {
 public:
  FieldElement() : c_{Rational(0)} {}
  template <std::integral I>
  FieldElement(I n) : c_{Rational(static_cast<long>(n))} {}  // NOLINT: implicit
  FieldElement(Rational r) : c_{std::move(r)} { c_[0].canonicalize(); }  // NOLINT: implicit
  FieldElement(TowerPtr tower, detail::Coeffs coeffs);

  /// The generator g_k of the given tower.
  static FieldElement generator(const TowerPtr& tower, int level);

  const TowerPtr& tower() const noexcept { return tower_; }
  const detail::Coeffs& coeffs() const noexcept { return c_; }
  /// Smallest k with this element in K_k.
  int level() const noexcept;
  bool is_zero() const noexcept { return c_.size() == 1 && sgn(c_[0]) == 0; }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  bool is_rational() const noexcept { return c_.size() == 1; }
  const Rational& rational() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  FieldElement inverse() const;

  /// Applies the automorphism g_level -> -p_level - g_level, fixing K_{level-1}
  /// and every higher generator. Higher relations must be fixed by it.
  FieldElement conjugate(int level) const;

  /// A square root in the full tower the element lives in, if one exists.
  std::optional<FieldElement> sqrt() const;

  /// The same element viewed in a tower that extends its own.
  FieldElement in_tower(const TowerPtr& tower) const;

  /// Image under the tower's designated complex embedding.
  std::complex<double> to_complex() const;

  /// "1/2 - 1/2*g1*g3" style rendering.
  std::string str() const;

 private:
  TowerPtr tower_;
  detail::Coeffs c_;
};

/// One node of a persistent tower of quadratic extensions. Each node is the
/// tower up to its own level; extending never mutates an existing node.
class FieldTower {
 public:
  /// K(g) with g^2 = -p g - q. Throws if p^2 - 4q is zero or a square in the
  /// base (the extension would not be a field).
  static TowerPtr extend(const TowerPtr& base, const FieldElement& p, const FieldElement& q);

  /// Builds a tower from an ordered list of (p, q) relations. Each relation
  /// may refer to the generators introduced before it.
  static TowerPtr from_relations(
      const std::vector<std::pair<FieldElement, FieldElement>>& relations);

  int depth() const noexcept { return static_cast<int>(chain_.size()); }
  /// The node of level k, 1 <= k <= depth().
  const FieldTower& level(int k) const;
  const TowerPtr& base() const noexcept { return base_; }
  const FieldElement& p() const noexcept { return p_; }
  const FieldElement& q() const noexcept { return q_; }
  /// Complex value of the generator: (-p + sqrt(p^2 - 4q)) / 2, principal branch.
  std::complex<double> root() const noexcept { return root_; }

  /// True when `other` is (structurally) a prefix of this tower.
  bool extends(const FieldTower& other) const;

  std::vector<std::pair<FieldElement, FieldElement>> relations() const;

 private:
  FieldTower() = default;

  TowerPtr base_;
  FieldElement p_;
  FieldElement q_;
  std::vector<const FieldTower*> chain_;
  std::complex<double> root_;
};

inline int tower_depth(const TowerPtr& t) noexcept { return t ? t->depth() : 0; }

/// The smaller tower containing both arguments; throws on unrelated towers.
inline TowerPtr join_towers(const TowerPtr& a, const TowerPtr& b) {
  if (!a || a == b) return b ? b : a;
  if (!b) return a;
  const TowerPtr& deep = a->depth() >= b->depth() ? a : b;
  const TowerPtr& shallow = a->depth() >= b->depth() ? b : a;
  if (!deep->extends(*shallow)) throw ArithmeticError("tower mismatch");
  return deep;
}

namespace detail {

inline std::size_t level_of_size(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

inline bool is_zero(const Coeffs& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& r) { return sgn(r) == 0; });
}

inline void trim(Coeffs& a) {
  if (a.empty()) a.emplace_back(0);
  while (a.size() > 1) {
    const std::size_t half = a.size() / 2;
    if (!std::all_of(a.begin() + static_cast<std::ptrdiff_t>(half), a.end(),
                     [](const Rational& r) { return sgn(r) == 0; })) {
      break;
    }
    a.resize(half);
  }
}

inline Coeffs lower(const Coeffs& a, std::size_t half) {
  if (a.size() <= half) return a;
  Coeffs r(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(half));
  trim(r);
  return r;
}

inline Coeffs upper(const Coeffs& a, std::size_t half) {
  if (a.size() <= half) return {Rational(0)};
  Coeffs r(a.begin() + static_cast<std::ptrdiff_t>(half), a.end());
  trim(r);
  return r;
}

inline Coeffs combine(const Coeffs& c0, const Coeffs& c1, std::size_t half) {
  Coeffs r(2 * half, Rational(0));
  std::copy(c0.begin(), c0.end(), r.begin());
  std::copy(c1.begin(), c1.end(), r.begin() + static_cast<std::ptrdiff_t>(half));
  trim(r);
  return r;
}

inline Coeffs add(const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

inline Coeffs neg(const Coeffs& a) {
  Coeffs r(a);
  for (auto& x : r) x = -x;
  return r;
}

inline Coeffs sub(const Coeffs& a, const Coeffs& b) { return add(a, neg(b)); }

inline Coeffs scale(const Coeffs& a, const Rational& s) {
  Coeffs r(a);
  for (auto& x : r) x *= s;
  trim(r);
  return r;
}

inline Coeffs mul(const FieldTower* top, const Coeffs& a, const Coeffs& b) {
  if (is_zero(a) || is_zero(b)) return {Rational(0)};
  const std::size_t n = std::max(a.size(), b.size());
  if (n == 1) return {a[0] * b[0]};
  if (a.size() == 1) return scale(b, a[0]);
  if (b.size() == 1) return scale(a, b[0]);
  const auto& node = top->level(static_cast<int>(level_of_size(n)));
  const std::size_t half = n / 2;
  const Coeffs a0 = lower(a, half), a1 = upper(a, half);
  const Coeffs b0 = lower(b, half), b1 = upper(b, half);
  const Coeffs t = mul(top, a1, b1);
  const Coeffs c0 = sub(mul(top, a0, b0), mul(top, node.q().coeffs(), t));
  const Coeffs c1 = sub(add(mul(top, a0, b1), mul(top, a1, b0)), mul(top, node.p().coeffs(), t));
  return combine(c0, c1, half);
}

// (c0 + c1 g)^{-1} = (c0 - c1 p - c1 g) / (c0^2 - c0 c1 p + c1^2 q)
inline Coeffs inv(const FieldTower* top, const Coeffs& a) {
  if (is_zero(a)) throw ArithmeticError("division by zero");
  if (a.size() == 1) return {1 / a[0]};
  const auto& node = top->level(static_cast<int>(level_of_size(a.size())));
  const std::size_t half = a.size() / 2;
  const Coeffs a0 = lower(a, half), a1 = upper(a, half);
  const Coeffs conj = combine(sub(a0, mul(top, node.p().coeffs(), a1)), neg(a1), half);
  const Coeffs norm = mul(top, a, conj);
  return mul(top, conj, inv(top, norm));
}

inline Coeffs conj(const FieldTower* top, const Coeffs& a, std::size_t lvl) {
  if (a.size() <= (std::size_t{1} << (lvl - 1))) return a;
  const std::size_t k = level_of_size(a.size());
  const std::size_t half = a.size() / 2;
  const Coeffs a0 = lower(a, half), a1 = upper(a, half);
  if (k == lvl) {
    const auto& node = top->level(static_cast<int>(k));
    return combine(sub(a0, mul(top, node.p().coeffs(), a1)), neg(a1), half);
  }
  return combine(conj(top, a0, lvl), conj(top, a1, lvl), half);
}

inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (sgn(r) < 0) return std::nullopt;
  if (mpz_perfect_square_p(r.get_num_mpz_t()) == 0 || mpz_perfect_square_p(r.get_den_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class num, den;
  mpz_sqrt(num.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), r.get_den_mpz_t());
  Rational s(num, den);
  s.canonicalize();
  return s;
}

// Square root searched in K_level. With h = 2g + p (so h^2 = delta = p^2 - 4q),
// a square x = C0 + C1 h has a root a + b h with
// a^2 = (C0 +- sqrt(C0^2 - delta C1^2)) / 2 and b = C1 / 2a.
inline std::optional<Coeffs> sqrt(const FieldTower* top, const Coeffs& x, std::size_t level) {
  if (level == 0) {
    if (x.size() != 1) return std::nullopt;
    auto r = rational_sqrt(x[0]);
    if (!r) return std::nullopt;
    return Coeffs{*r};
  }
  const auto& node = top->level(static_cast<int>(level));
  const std::size_t half = std::size_t{1} << (level - 1);
  const Coeffs& p = node.p().coeffs();
  const Coeffs delta = sub(mul(top, p, p), scale(node.q().coeffs(), 4));
  const Coeffs c0 = lower(x, half), c1 = upper(x, half);
  const Coeffs big0 = sub(c0, scale(mul(top, p, c1), Rational(1, 2)));
  const Coeffs big1 = scale(c1, Rational(1, 2));
  auto from_h_basis = [&](const Coeffs& a, const Coeffs& b) {
    return combine(add(a, mul(top, b, p)), scale(b, 2), half);
  };
  if (is_zero(big1)) {
    if (auto y = sqrt(top, big0, level - 1)) return *y;
    if (auto z = sqrt(top, mul(top, big0, inv(top, delta)), level - 1)) return from_h_basis({Rational(0)}, *z);
    return std::nullopt;
  }
  const Coeffs norm = sub(mul(top, big0, big0), mul(top, delta, mul(top, big1, big1)));
  const auto root_norm = sqrt(top, norm, level - 1);
  if (!root_norm) return std::nullopt;
  for (int sign : {1, -1}) {
    const Coeffs t = scale(add(big0, scale(*root_norm, sign)), Rational(1, 2));
    if (is_zero(t)) continue;
    const auto a = sqrt(top, t, level - 1);
    if (!a) continue;
    const Coeffs b = mul(top, big1, inv(top, scale(*a, 2)));
    Coeffs y = from_h_basis(*a, b);
    if (mul(top, y, y) == x) return y;
  }
  return std::nullopt;
}

inline std::complex<double> embed(const FieldTower* top, const Coeffs& a) {
  if (a.size() == 1) return {a[0].get_d(), 0.0};
  const auto& node = top->level(static_cast<int>(level_of_size(a.size())));
  const std::size_t half = a.size() / 2;
  return embed(top, lower(a, half)) + embed(top, upper(a, half)) * node.root();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// FieldTower

inline TowerPtr FieldTower::extend(const TowerPtr& base, const FieldElement& p, const FieldElement& q) {
  const TowerPtr joined = join_towers(join_towers(base, p.tower()), q.tower());
  if (tower_depth(joined) != tower_depth(base)) {
    throw ArithmeticError("tower relation uses generators outside the base");
  }
  const FieldElement disc = (p * p - FieldElement(4) * q).in_tower(base);
  if (disc.is_zero()) throw ArithmeticError("tower relation has zero discriminant");
  if (disc.sqrt()) throw ArithmeticError("tower relation is reducible: discriminant is a square");

  std::shared_ptr<FieldTower> node(new FieldTower());
  node->base_ = base;
  node->p_ = FieldElement(base, p.coeffs());
  node->q_ = FieldElement(base, q.coeffs());
  if (base) node->chain_ = base->chain_;
  node->chain_.push_back(node.get());
  node->root_ = (-p.to_complex() + std::sqrt(disc.to_complex())) / 2.0;
  return node;
}

inline TowerPtr FieldTower::from_relations(
    const std::vector<std::pair<FieldElement, FieldElement>>& relations) {
  TowerPtr t;
  for (const auto& [p, q] : relations) t = extend(t, p, q);
  return t;
}

inline const FieldTower& FieldTower::level(int k) const {
  if (k < 1 || k > depth()) throw ArithmeticError("invalid tower level " + std::to_string(k));
  return *chain_[static_cast<std::size_t>(k - 1)];
}

inline bool FieldTower::extends(const FieldTower& other) const {
  if (other.depth() > depth()) return false;
  for (int k = other.depth(); k >= 1; --k) {
    if (&level(k) == &other.level(k)) return true;
    if (level(k).p_.coeffs() != other.level(k).p_.coeffs() ||
        level(k).q_.coeffs() != other.level(k).q_.coeffs()) {
      return false;
    }
  }
  return true;
}

inline std::vector<std::pair<FieldElement, FieldElement>> FieldTower::relations() const {
  std::vector<std::pair<FieldElement, FieldElement>> out;
  for (int k = 1; k <= depth(); ++k) out.emplace_back(level(k).p_, level(k).q_);
  return out;
}

// ---------------------------------------------------------------------------
// FieldElement

inline FieldElement::FieldElement(TowerPtr tower, detail::Coeffs coeffs)
    : tower_(std::move(tower)), c_(std::move(coeffs)) {
  const std::size_t n = c_.empty() ? 1 : c_.size();
  if ((n & (n - 1)) != 0 || detail::level_of_size(n) > static_cast<std::size_t>(tower_depth(tower_))) {
    throw ArithmeticError("coefficient array does not fit the tower");
  }
  for (auto& r : c_) r.canonicalize();
  detail::trim(c_);
}

inline FieldElement FieldElement::generator(const TowerPtr& tower, int level) {
  if (level < 1 || level > tower_depth(tower)) {
    throw ArithmeticError("invalid tower level " + std::to_string(level));
  }
  detail::Coeffs c(std::size_t{1} << level, Rational(0));
  c[std::size_t{1} << (level - 1)] = 1;
  return {tower, std::move(c)};
}

inline int FieldElement::level() const noexcept {
  return static_cast<int>(detail::level_of_size(c_.size()));
}

inline const Rational& FieldElement::rational() const {
  if (!is_rational()) throw ArithmeticError("element is not rational: " + str());
  return c_[0];
}

inline FieldElement FieldElement::operator-() const {
  FieldElement r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  FieldElement r;
  r.tower_ = join_towers(a.tower_, b.tower_);
  r.c_ = detail::add(a.c_, b.c_);
  return r;
}

inline FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  FieldElement r;
  r.tower_ = join_towers(a.tower_, b.tower_);
  r.c_ = detail::sub(a.c_, b.c_);
  return r;
}

inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  FieldElement r;
  r.tower_ = join_towers(a.tower_, b.tower_);
  r.c_ = detail::mul(r.tower_.get(), a.c_, b.c_);
  return r;
}

inline FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  FieldElement r;
  r.tower_ = join_towers(a.tower_, b.tower_);
  r.c_ = detail::mul(r.tower_.get(), a.c_, detail::inv(r.tower_.get(), b.c_));
  return r;
}

inline bool operator==(const FieldElement& a, const FieldElement& b) {
  if (a.tower_ != b.tower_) join_towers(a.tower_, b.tower_);
  return a.c_ == b.c_;
}

inline FieldElement FieldElement::inverse() const { return FieldElement(1) / *this; }

inline FieldElement FieldElement::conjugate(int lvl) const {
  const int depth = tower_depth(tower_);
  if (lvl < 1 || lvl > depth) throw ArithmeticError("invalid tower level " + std::to_string(lvl));
  const FieldTower* top = tower_.get();
  for (int j = lvl + 1; j <= depth; ++j) {
    const auto& node = top->level(j);
    if (detail::conj(top, node.p().coeffs(), static_cast<std::size_t>(lvl)) != node.p().coeffs() ||
        detail::conj(top, node.q().coeffs(), static_cast<std::size_t>(lvl)) != node.q().coeffs()) {
      throw ArithmeticError("conjugation at level " + std::to_string(lvl) +
                            " does not extend past level " + std::to_string(j));
    }
  }
  FieldElement r;
  r.tower_ = tower_;
  r.c_ = detail::conj(top, c_, static_cast<std::size_t>(lvl));
  return r;
}

inline std::optional<FieldElement> FieldElement::sqrt() const {
  auto r = detail::sqrt(tower_.get(), c_, static_cast<std::size_t>(tower_depth(tower_)));
  if (!r) return std::nullopt;
  FieldElement out;
  out.tower_ = tower_;
  out.c_ = std::move(*r);
  return out;
}

inline FieldElement FieldElement::in_tower(const TowerPtr& tower) const {
  FieldElement r(*this);
  r.tower_ = join_towers(tower_, tower);
  if (tower_depth(r.tower_) != tower_depth(tower)) throw ArithmeticError("tower mismatch");
  r.tower_ = tower;
  return r;
}

inline std::complex<double> FieldElement::to_complex() const { return detail::embed(tower_.get(), c_); }

inline std::string FieldElement::str() const {
  std::string out;
  for (std::size_t m = 0; m < c_.size(); ++m) {
    const Rational& c = c_[m];
    if (sgn(c) == 0) continue;
    std::string mono;
    for (std::size_t bit = 0; (std::size_t{1} << bit) <= m; ++bit) {
      if ((m >> bit) & 1U) {
        if (!mono.empty()) mono += "*";
        mono += "g" + std::to_string(bit + 1);
      }
    }
    const Rational mag = abs(c);
    std::string term;
    if (mono.empty()) {
      term = mag.get_str();
    } else if (mag == 1) {
      term = mono;
    } else {
      term = mag.get_str() + "*" + mono;
    }
    if (out.empty()) {
      out = (sgn(c) < 0 ? "-" : "") + term;
    } else {
      out += (sgn(c) < 0 ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

inline bool is_zero(const FieldElement& x) { return x.is_zero(); }

}  // namespace pfc
