#pragma once

// Deterministic, splittable pseudo-randomness for the seeded suites.

#include <cstdint>
#include <limits>

#include "pfaffcubic/field.hpp"
#include "pfaffcubic/matrix.hpp"
#include "pfaffcubic/pentahedron.hpp"

namespace pfc {

/// SplitMix64. Satisfies UniformRandomBitGenerator; `split` derives an
/// independent child stream so every suite owns its own sequence.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  SplitMix64 split() { return SplitMix64((*this)() ^ 0xD1B54A32D192ED03ULL); }

  /// Uniform integer in [lo, hi], by rejection (platform independent).
  long uniform(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = max() - max() % span;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return lo + static_cast<long>(x % span);
  }

  long nonzero(long lo, long hi) {
    long x;
    do {
      x = uniform(lo, hi);
    } while (x == 0);
    return x;
  }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Random chart parameters with integer entries in [-range, range]: the five
/// free a's and the b's nonzero, b3 = 1, and an invertible frame.
inline ParamsA9 random_params(SplitMix64& rng, long range = 9, bool random_frame = true) {
  ParamsA9 t;
  t.a024 = rng.nonzero(-range, range);
  t.a034 = rng.uniform(-range, range);
  t.a124 = rng.nonzero(-range, range);
  t.a134 = rng.nonzero(-range, range);
  t.a234 = rng.nonzero(-range, range);
  for (std::size_t i = 0; i < 5; ++i) t.b[i] = i == 3 ? FieldElement(1) : FieldElement(rng.nonzero(-range, range));
  if (random_frame) {
    do {
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) t.P(i, j) = rng.uniform(-range, range);
    } while (det(t.P).is_zero());
  }
  return t;
}

/// A random rational with numerator in [-range, range] and denominator in [1, den].
inline Rational random_rational(SplitMix64& rng, long range = 9, long den = 5) {
  Rational r(rng.uniform(-range, range), rng.uniform(1, den));
  r.canonicalize();
  return r;
}

/// A random element of the full tower.
inline FieldElement random_element(SplitMix64& rng, const TowerPtr& tower, long range = 9) {
  detail::Coeffs c(std::size_t{1} << tower_depth(tower));
  for (auto& x : c) x = random_rational(rng, range);
  return {tower, std::move(c)};
}

/// A random tower of the given depth whose relations draw on earlier levels.
inline TowerPtr random_tower(SplitMix64& rng, int depth) {
  TowerPtr t;
  while (tower_depth(t) < depth) {
    const FieldElement p = rng.uniform(0, 1) ? random_element(rng, t, 3) : FieldElement(rng.uniform(-3, 3));
    const FieldElement q = rng.uniform(0, 1) ? random_element(rng, t, 3) : FieldElement(rng.uniform(-5, 5));
    try {
      t = FieldTower::extend(t, p.in_tower(t), q.in_tower(t));
    } catch (const ArithmeticError&) {
      // reducible or degenerate relation: draw again
    }
  }
  return t;
}

}  // namespace pfc
