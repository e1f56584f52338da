#pragma once

// Normal-form parameters of five lines in P5: pick W4 inside the span of the
// lines, cut the pentahedron, normalize it in the chart and rebuild the
// explicit pfaffian representation.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "pfaffcubic/errors.hpp"
#include "pfaffcubic/explicit.hpp"
#include "pfaffcubic/fivesecant.hpp"
#include "pfaffcubic/grassmann.hpp"
#include "pfaffcubic/pentahedron.hpp"
#include "pfaffcubic/random.hpp"

namespace pfc {

struct LineConfig {
  std::array<Bivector15, 5> lines;
  std::optional<std::uint64_t> seed;

  static LineConfig from_point_pairs(const std::array<std::pair<Vector6, Vector6>, 5>& pairs) {
    LineConfig cfg;
    for (std::size_t k = 0; k < 5; ++k) cfg.lines[k] = wedge(pairs[k].first, pairs[k].second);
    return cfg;
  }

  /// Each line as a pair of points, via decompose_rank2.
  std::array<std::pair<Vector6, Vector6>, 5> point_pairs() const {
    std::array<std::pair<Vector6, Vector6>, 5> out;
    for (std::size_t k = 0; k < 5; ++k) out[k] = decompose_rank2(lines[k]);
    return out;
  }

  void validate() const {
    for (std::size_t k = 0; k < 5; ++k) {
      if (is_zero(lines[k]) || !is_decomposable(lines[k])) {
        throw PreconditionError("lines", "line " + std::to_string(k) + " is not a rank-2 bivector");
      }
    }
    const std::vector<Bivector15> v(lines.begin(), lines.end());
    if (rank(bivector_columns(v)) != 5) throw PreconditionError("lines", "the five lines span less than dimension 5");
  }
};

/// (u, v, a124, e1, e2).
struct NormalParams {
  FieldElement u, v, a124, e1, e2;
  friend bool operator==(const NormalParams&, const NormalParams&) = default;
};

struct NormalFormResult {
  std::pair<FieldElement, FieldElement> quadratic;  // (p, q) of X^2 + p X + q
  NormalParams params;
  ParamsA9 chart;
  std::array<FieldElement, 5> w4_choice;  // W4 = kernel of this functional on line coordinates
  SubspaceW w4;
  PentahedronData pentahedron;
  ExplicitInstance instance;
  int draws = 0;
};

struct NormalFormOptions {
  std::uint64_t seed = 0;
  std::optional<std::array<FieldElement, 5>> functional;
  RootChoice root_choice = RootChoice::first;
  std::optional<FieldElement> root;
  int max_draws = 100;
};

/// W4 of a forward instance: the bivectors M(e_k), k = 0..3.
inline SubspaceW instance_w4(const ExplicitInstance& inst) {
  SubspaceW w;
  for (std::size_t k = 0; k < 4; ++k) {
    std::vector<FieldElement> e(4, FieldElement(0));
    e[k] = 1;
    w.basis.push_back(from_skew(inst.m.at(e)));
  }
  return w;
}

/// W4 spanned by the combinations of the lines annihilated by `functional`.
inline SubspaceW w4_from_functional(const std::array<Bivector15, 5>& lines, const std::array<FieldElement, 5>& functional) {
  Matrix<FieldElement> f(1, 5);
  for (std::size_t i = 0; i < 5; ++i) f(0, i) = functional[i];
  const Matrix<FieldElement> k = kernel(f);
  if (k.cols() != 4) throw PreconditionError("choose_w4", "zero functional");
  SubspaceW w;
  for (std::size_t c = 0; c < 4; ++c) {
    Bivector15 b;
    for (std::size_t i = 0; i < 5; ++i)
      if (!k(i, c).is_zero()) b = b + k(i, c) * lines[i];
    w.basis.push_back(b);
  }
  return w;
}

namespace detail {

inline NormalFormResult normal_form_with(const LineConfig& cfg, const std::array<FieldElement, 5>& functional,
                                         const NormalFormOptions& opt) {
  NormalFormResult r;
  r.w4_choice = functional;
  r.w4 = w4_from_functional(cfg.lines, functional);
  const QuadricSpaceH h = restriction_quadrics(r.w4);
  const SubspaceW w5 = w5_from_w4(r.w4, h);
  const std::vector<Bivector15> span(cfg.lines.begin(), cfg.lines.end());
  if (!same_span(w5.columns(), bivector_columns(span))) {
    throw PreconditionError("w5_from_w4", "the lines do not span the 5-secant space of W4");
  }
  r.pentahedron = pentahedron_from_lines(r.w4, cfg.lines);
  r.chart = params_from_pentahedron(r.pentahedron);
  r.instance = build_instance(r.chart, opt.root_choice, opt.root);
  r.quadratic = {quadratic_linear_coeff(r.chart), r.chart.a024};
  r.params = {r.instance.u, r.instance.v, r.chart.a124, r.instance.e1, r.instance.e2};
  return r;
}

}  // namespace detail

/// Runs the pipeline. Without a supplied functional, W4 is drawn at random
/// (small nonzero integers) until every stage accepts it.
inline NormalFormResult normal_form(const LineConfig& cfg, const NormalFormOptions& opt = {}) {
  cfg.validate();
  if (opt.functional) {
    auto r = detail::normal_form_with(cfg, *opt.functional, opt);
    r.draws = 1;
    return r;
  }
  SplitMix64 rng(cfg.seed.value_or(opt.seed));
  std::string last;
  for (int draw = 1; draw <= opt.max_draws; ++draw) {
    std::array<FieldElement, 5> f;
    for (auto& x : f) x = rng.nonzero(-9, 9);
    try {
      auto r = detail::normal_form_with(cfg, f, opt);
      r.draws = draw;
      return r;
    } catch (const PreconditionError& e) {
      last = e.what();
    }
  }
  throw PreconditionError("choose_w4", "no admissible W4 after " + std::to_string(opt.max_draws) +
                                           " draws; last failure: " + last);
}

/// Re-runs the pipeline on the result's own five lines, with its W4 choice
/// carried to those lines and the same root, and compares every parameter
/// exactly.
inline bool roundtrip_check(const NormalFormResult& res) {
  try {
    LineConfig again;
    again.lines = five_lines(res.instance);
    NormalFormOptions opt;
    opt.functional = forward_functional(res.chart);
    opt.root_choice = res.instance.root;
    opt.root = res.instance.u;
    const NormalFormResult r = normal_form(again, opt);
    return r.params == res.params && r.quadratic == res.quadratic && r.chart.free_a() == res.chart.free_a() &&
           r.chart.b == res.chart.b;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace pfc
