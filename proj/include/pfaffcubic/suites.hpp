#pragma once

// Seeded property suites shared by the selftest command and the acceptance
// runner. Each suite counts passing trials and keeps the first failures.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pfaffcubic/errors.hpp"
#include "pfaffcubic/explicit.hpp"
#include "pfaffcubic/fivesecant.hpp"
#include "pfaffcubic/linesnormal.hpp"
#include "pfaffcubic/random.hpp"
#include "pfaffcubic/reference_data.hpp"

namespace pfc::suites {

struct SuiteResult {
  explicit SuiteResult(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  int passed = 0;
  int total = 0;
  std::vector<std::string> failures;  // first few only

  bool ok() const { return total > 0 && passed == total; }

  void record(bool pass, const std::string& label) {
    ++total;
    if (pass) {
      ++passed;
    } else if (failures.size() < 10) {
      failures.push_back(label);
    }
  }

  /// Runs `check`, recording an exception as a failure with its message.
  template <class F>
  void run(const std::string& label, F&& check) {
    try {
      record(check(), label);
    } catch (const Error& e) {
      record(false, label + ": " + e.what());
    }
  }
};

inline std::vector<ExplicitInstance> random_instances(SplitMix64& rng, int n) {
  std::vector<ExplicitInstance> out;
  for (int k = 0; k < n; ++k) out.push_back(random_instance(rng, 9, true));
  return out;
}

inline std::string trial_label(int k) { return "trial " + std::to_string(k); }

inline SuiteResult pfaffian_identity(const std::vector<ExplicitInstance>& insts) {
  SuiteResult r{"pfaffian_identity"};
  for (std::size_t k = 0; k < insts.size(); ++k)
    r.run(trial_label(static_cast<int>(k)), [&] { return pfaffian_identity(insts[k]); });
  return r;
}

inline SuiteResult phi1(const std::vector<ExplicitInstance>& insts, std::size_t count) {
  SuiteResult r{"phi1_block_shape"};
  for (std::size_t k = 0; k < std::min(count, insts.size()); ++k)
    r.run(trial_label(static_cast<int>(k)), [&] { return verify_phi1(insts[k]).all(); });
  return r;
}

/// Decomposable, independent lines and the vertex/line incidence.
inline bool phi2_holds(const ExplicitInstance& inst) {
  const auto lines = five_lines(inst);
  const std::vector<Bivector15> v(lines.begin(), lines.end());
  return rank(bivector_columns(v)) == 5 && vertex_line_incidence(inst, lines).all();
}

inline SuiteResult phi2_lines(const std::vector<ExplicitInstance>& insts, std::size_t count) {
  SuiteResult r{"phi2_lines"};
  for (std::size_t k = 0; k < std::min(count, insts.size()); ++k)
    r.run(trial_label(static_cast<int>(k)), [&] { return phi2_holds(insts[k]); });
  return r;
}

inline SuiteResult inscription(const std::vector<ExplicitInstance>& insts) {
  SuiteResult r{"inscription"};
  for (std::size_t k = 0; k < insts.size(); ++k)
    r.run(trial_label(static_cast<int>(k)), [&] {
      return inscription_check(pentahedron_from_params(insts[k].params)) && inscription_check(w_pentahedron(insts[k]));
    });
  return r;
}

/// Quadrics, W5 and the linear equations of the reference configuration.
inline SuiteResult worked_example() {
  SuiteResult r{"worked_example"};
  const SubspaceW w4 = reference::w4();
  QuadricSpaceH h;
  r.run("quadric space has dimension 5", [&] {
    h = restriction_quadrics(w4);
    return h.basis.size() == 5;
  });
  r.run("quadrics span the printed quadrics", [&] {
    const auto printed = reference::quadrics();
    return same_polynomial_span(h.quadrics(), printed);
  });
  SubspaceW w5;
  r.run("W5 has dimension 5 and contains W4", [&] {
    w5 = w5_from_w4(w4, h);
    return w5.basis.size() == 5;
  });
  r.run("orthogonal equations span the printed equations", [&] {
    return same_polynomial_span(linear_equations(orthogonal_conditions(w4, h)), reference::linear_equations());
  });
  r.run("W5 is the span of the five lines", [&] {
    const auto lines = reference::lines();
    const std::vector<Bivector15> v(lines.begin(), lines.end());
    return same_span(w5.columns(), bivector_columns(v));
  });
  return r;
}

/// The six symmetry checks: P_uv on M4, the four transpositions on M, and
/// the block stabilizer of M0123 over `unimodular_trials` random blocks.
inline std::vector<std::pair<std::string, bool>> klein_checks(SplitMix64& rng, int unimodular_trials) {
  std::vector<std::pair<std::string, bool>> out;
  const KleinData kd = klein_instance();
  const auto& inst = kd.instance;
  const auto m4 = inst.m4.map([](const FieldElement& x) { return MultiPoly(x); });
  out.emplace_back("P_uv conjugates M4", check_symmetry(inst, m4, kd.p_uv, SymmetryAction::swap()));
  for (const auto& s : kd.transpositions)
    out.emplace_back("transposition " + s.name, check_symmetry(inst, inst.m.matrix(), s.g, s.action));
  bool stable = true;
  const auto& m0123 = inst.m0123.matrix();
  for (int k = 0; k < unimodular_trials; ++k) {
    const FieldElement a(rng.nonzero(-6, 6)), b(rng.uniform(-6, 6)), c(rng.uniform(-6, 6));
    const Matrix<FieldElement> t{{a, b}, {c, (FieldElement(1) + b * c) / a}};
    stable = stable && congruence(block_pattern(t), m0123) == m0123;
  }
  out.emplace_back("P_T stabilizes M0123", stable);
  return out;
}

inline SuiteResult klein(SplitMix64& rng, int unimodular_trials) {
  SuiteResult r{"klein"};
  try {
    for (const auto& [name, pass] : klein_checks(rng, unimodular_trials)) r.record(pass, name);
  } catch (const Error& e) {
    r.record(false, e.what());
  }
  return r;
}

inline SuiteResult chart_roundtrip(SplitMix64& rng, int n) {
  SuiteResult r{"chart_roundtrip"};
  for (int k = 0; k < n; ++k) {
    const ParamsA9 t = random_params(rng, 9, true);
    r.run(trial_label(k), [&] { return params_from_pentahedron(pentahedron_from_params(t)) == t; });
  }
  return r;
}

inline SuiteResult normal_form_idempotence(SplitMix64& rng, int n) {
  SuiteResult r{"normal_form_idempotence"};
  for (int k = 0; k < n; ++k) {
    const ExplicitInstance inst = random_instance(rng, 9, false);
    LineConfig cfg;
    cfg.lines = five_lines(inst);
    NormalFormOptions opt;
    opt.seed = rng();
    r.run(trial_label(k), [&] { return roundtrip_check(normal_form(cfg, opt)); });
  }
  return r;
}

/// `recovered` counts instances whose complete result matches the exact
/// lines; an incomplete result is best effort and only counts toward
/// `incomplete`. `mismatched` collects complete results that disagree.
struct NumericSuite {
  int instances = 0;
  int recovered = 0;
  int incomplete = 0;
  SuiteResult mismatched{"numeric_recovery"};

  double incomplete_rate() const { return instances ? static_cast<double>(incomplete) / instances : 0.0; }
};

inline NumericSuite numeric_oracle(SplitMix64& rng, int n, int budget = 400, double tol = 1e-8) {
  NumericSuite s;
  for (int k = 0; k < n; ++k) {
    const ExplicitInstance inst = random_instance(rng, 9, false);
    NumericOptions opt;
    opt.seed = rng();
    opt.budget = budget;
    ++s.instances;
    s.mismatched.run(trial_label(k), [&] {
      const SubspaceW w4 = instance_w4(inst);
      const SubspaceW w5 = w5_from_w4(w4, restriction_quadrics(w4));
      const NumericPoints found = rank2_points_numeric(w5, opt);
      if (!found.complete) {
        ++s.incomplete;
        return true;
      }
      const bool match = matches_exact(found, five_lines(inst), tol);
      s.recovered += match;
      return match;
    });
  }
  return s;
}

inline Matrix<FieldElement> random_skew(SplitMix64& rng, std::size_t n) {
  Matrix<FieldElement> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = FieldElement(random_rational(rng, 9, 4));
      a(j, i) = -a(i, j);
    }
  return a;
}

/// Pf^2 = det on sizes 2, 4, 6 in rotation.
inline SuiteResult pfaffian_determinant(SplitMix64& rng, int n) {
  SuiteResult r{"pfaffian_squared_is_determinant"};
  for (int k = 0; k < n; ++k) {
    const auto a = random_skew(rng, 2 * static_cast<std::size_t>(1 + k % 3));
    r.run(trial_label(k), [&] {
      const FieldElement pf = pfaffian(a);
      return pf * pf == det(a);
    });
  }
  return r;
}

/// Ring axioms, inverses, and the conjugations of every level that extends
/// to the whole tower.
inline SuiteResult field_axioms(SplitMix64& rng, int per_depth) {
  SuiteResult r{"field_axioms"};
  for (int depth = 1; depth <= 3; ++depth) {
    for (int k = 0; k < per_depth; ++k) {
      const TowerPtr t = random_tower(rng, depth);
      const FieldElement x = random_element(rng, t), y = random_element(rng, t), z = random_element(rng, t);
      r.run("depth " + std::to_string(depth) + " " + trial_label(k), [&] {
        bool ok = (x + y) + z == x + (y + z) && (x * y) * z == x * (y * z) && x * (y + z) == x * y + x * z &&
                  x * y == y * x && (x - x).is_zero();
        if (!x.is_zero()) ok = ok && x * x.inverse() == FieldElement(1) && (y / x) * x == y;
        for (int lvl = 1; lvl <= depth; ++lvl) {
          FieldElement cx, cy;
          try {
            cx = x.conjugate(lvl);
            cy = y.conjugate(lvl);
          } catch (const ArithmeticError&) {
            if (lvl == depth) return false;  // the top level always conjugates
            continue;
          }
          ok = ok && (x * y).conjugate(lvl) == cx * cy && (x + y).conjugate(lvl) == cx + cy &&
               cx.conjugate(lvl) == x;
        }
        return ok;
      });
    }
  }
  return r;
}

}  // namespace pfc::suites
