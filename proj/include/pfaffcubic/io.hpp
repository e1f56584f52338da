#pragma once

// JSON schemas (format 1). Scalars are strings in the tower syntax
// ("1/2 - 1/2*g1*g3"); integers are also accepted on input. A tower is a list
// of [p, q] pairs, level k meaning g_k^2 = -p g_k - q with p, q over the
// earlier levels. Bivectors are 15 entries in the order p01, p02, ..., p45.

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pfaffcubic/errors.hpp"
#include "pfaffcubic/explicit.hpp"
#include "pfaffcubic/fivesecant.hpp"
#include "pfaffcubic/linesnormal.hpp"
#include "pfaffcubic/parse.hpp"
#include "pfaffcubic/pentahedron.hpp"

namespace pfc::io {

using json = nlohmann::ordered_json;

inline constexpr int kFormat = 1;

[[noreturn]] inline void schema_error(const std::string& what) { throw ParseError("schema: " + what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline void expect_array(const json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) schema_error(what + " must be an array of " + std::to_string(n));
}

// ---------------------------------------------------------------------------
// Scalars and towers

inline json to_json(const FieldElement& x) { return x.str(); }

inline FieldElement scalar_from_json(const json& j, const TowerPtr& tower) {
  if (j.is_number_integer()) return FieldElement(Rational(j.get<long>()));
  if (!j.is_string()) schema_error("scalar must be a string or an integer");
  return parse_scalar(j.get<std::string>(), tower);
}

inline json tower_to_json(const TowerPtr& t) {
  json out = json::array();
  for (int k = 1; k <= tower_depth(t); ++k) out.push_back({t->level(k).p().str(), t->level(k).q().str()});
  return out;
}

inline TowerPtr tower_from_json(const json& j) {
  if (j.is_null()) return nullptr;
  if (!j.is_array()) schema_error("tower must be an array of [p, q] pairs");
  TowerPtr t;
  for (const auto& rel : j) {
    expect_array(rel, 2, "tower relation");
    const FieldElement p = scalar_from_json(rel[0], t);
    const FieldElement q = scalar_from_json(rel[1], t);
    t = FieldTower::extend(t, p.in_tower(t), q.in_tower(t));
  }
  return t;
}

inline TowerPtr optional_tower(const json& j) { return j.contains("tower") ? tower_from_json(j.at("tower")) : nullptr; }

// ---------------------------------------------------------------------------
// Matrices, bivectors, polynomials

inline json to_json(const Matrix<FieldElement>& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(row);
  }
  return out;
}

inline Matrix<FieldElement> matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const TowerPtr& t,
                                             const std::string& what) {
  expect_array(j, rows, what);
  Matrix<FieldElement> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    expect_array(j[r], cols, what + " row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(j[r][c], t);
  }
  return m;
}

inline json to_json(const Bivector15& b) {
  json out = json::array();
  for (const auto& x : b.p) out.push_back(to_json(x));
  return out;
}

inline Bivector15 bivector_from_json(const json& j, const TowerPtr& t) {
  expect_array(j, 15, "bivector");
  Bivector15 b;
  for (std::size_t k = 0; k < 15; ++k) b[k] = scalar_from_json(j[k], t);
  return b;
}

inline json to_json(const Vector6& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline Vector6 vector6_from_json(const json& j, const TowerPtr& t) {
  expect_array(j, 6, "point");
  Vector6 v;
  for (std::size_t k = 0; k < 6; ++k) v[k] = scalar_from_json(j[k], t);
  return v;
}

inline json to_json(const MultiPoly& p) { return p.str(); }

inline MultiPoly poly_from_json(const json& j, const Vars& vars, const TowerPtr& t) {
  if (!j.is_string()) schema_error("polynomial must be a string");
  return parse_poly(j.get<std::string>(), vars, t);
}

/// Skew serialization: the 15 upper-triangle entries in p01..p45 order.
inline json to_json(const SkewLinMat6& m) {
  json out = json::array();
  for (const auto& e : m.upper()) out.push_back(e.str());
  return out;
}

inline SkewLinMat6 skew_from_json(const json& j, const Vars& vars, const TowerPtr& t) {
  expect_array(j, 15, "skew matrix");
  std::vector<MultiPoly> upper;
  for (const auto& e : j) upper.push_back(poly_from_json(e, vars, t));
  return SkewLinMat6::from_upper(upper);
}

inline json skew_constant_to_json(const Matrix<FieldElement>& m) { return to_json(from_skew(m)); }

// ---------------------------------------------------------------------------
// Chart data

inline json to_json(const ParamsA9& t) {
  json a = json::object();
  a["024"] = to_json(t.a024);
  a["034"] = to_json(t.a034);
  a["124"] = to_json(t.a124);
  a["134"] = to_json(t.a134);
  a["234"] = to_json(t.a234);
  json b = json::array();
  for (const auto& x : t.b) b.push_back(to_json(x));
  return {{"a", a}, {"b", b}, {"P", to_json(t.P)}};
}

/// Missing a's default to 1, a missing frame to the identity. b is rescaled
/// by 1/b3 into the gauge b3 = 1.
inline ParamsA9 params_from_json(const json& j, const TowerPtr& t) {
  ParamsA9 p;
  if (j.contains("a")) {
    const json& a = j.at("a");
    if (!a.is_object()) schema_error("'a' must be an object keyed by \"024\", \"034\", \"124\", \"134\", \"234\"");
    for (const auto& [key, value] : a.items()) {
      const FieldElement x = scalar_from_json(value, t);
      if (key == "024") p.a024 = x;
      else if (key == "034") p.a034 = x;
      else if (key == "124") p.a124 = x;
      else if (key == "134") p.a134 = x;
      else if (key == "234") p.a234 = x;
      else if (key == "012" || key == "013" || key == "014" || key == "023" || key == "123") {
        if (!x.is_one()) schema_error("a" + key + " is fixed to 1 in the chart");
      } else {
        schema_error("unknown coefficient a" + key);
      }
    }
  }
  if (j.contains("b")) {
    expect_array(j.at("b"), 5, "'b'");
    for (std::size_t i = 0; i < 5; ++i) p.b[i] = scalar_from_json(j.at("b")[i], t);
    if (p.b[3].is_zero()) throw PreconditionError("params", "b3 = 0 cannot be gauged to 1");
    const FieldElement inv = p.b[3].inverse();
    for (auto& x : p.b) x = x * inv;
  }
  if (j.contains("P")) p.P = matrix_from_json(j.at("P"), 4, 4, t, "'P'");
  return p;
}

inline json to_json(const PentahedronData& pd) {
  json planes = json::array();
  for (const auto& h : pd.planes) planes.push_back(to_json(h));
  return {{"planes", planes}, {"cubic", to_json(pd.cubic)}};
}

inline PentahedronData pentahedron_from_json(const json& j, const Vars& vars, const TowerPtr& t) {
  PentahedronData pd;
  expect_array(field(j, "planes"), 5, "'planes'");
  for (std::size_t i = 0; i < 5; ++i) pd.planes[i] = poly_from_json(j.at("planes")[i], vars, t);
  pd.cubic = poly_from_json(field(j, "cubic"), vars, t);
  return pd;
}

// ---------------------------------------------------------------------------
// Explicit instances

inline json to_json(const ExplicitInstance& inst) {
  return {{"format", kFormat},
          {"tower", tower_to_json(inst.tower)},
          {"params", to_json(inst.params)},
          {"root", inst.root == RootChoice::first ? "first" : "second"},
          {"u", to_json(inst.u)},
          {"v", to_json(inst.v)},
          {"e", json::array({to_json(inst.e1), to_json(inst.e2), to_json(inst.e3)})},
          {"w4", to_json(inst.w4)},
          {"m4", skew_constant_to_json(inst.m4)},
          {"m0123", to_json(inst.m0123)},
          {"m", to_json(inst.m)}};
}

/// Rebuilds from params and u; matrices present in the JSON replace the
/// rebuilt ones, so a stored instance is checked as stored.
inline ExplicitInstance instance_from_json(const json& j) {
  const TowerPtr t = optional_tower(j);
  const ParamsA9 params = params_from_json(field(j, "params"), t);
  RootChoice choice = RootChoice::first;
  if (j.contains("root")) {
    const std::string r = j.at("root").get<std::string>();
    if (r == "second") choice = RootChoice::second;
    else if (r != "first") schema_error("root must be \"first\" or \"second\"");
  }
  std::optional<FieldElement> u;
  if (j.contains("u")) u = scalar_from_json(j.at("u"), t);
  ExplicitInstance inst = build_instance(params, choice, u);
  if (j.contains("m4")) inst.m4 = to_skew(bivector_from_json(j.at("m4"), inst.tower));
  if (j.contains("m0123")) inst.m0123 = skew_from_json(j.at("m0123"), w_vars(), inst.tower);
  if (j.contains("m")) inst.m = skew_from_json(j.at("m"), w_vars(), inst.tower);
  return inst;
}

// ---------------------------------------------------------------------------
// Lines and subspaces

inline LineConfig line_config_from_json(const json& j) {
  const TowerPtr t = optional_tower(j);
  LineConfig cfg;
  if (j.contains("bivectors")) {
    expect_array(j.at("bivectors"), 5, "'bivectors'");
    for (std::size_t k = 0; k < 5; ++k) cfg.lines[k] = bivector_from_json(j.at("bivectors")[k], t);
  } else if (j.contains("point_pairs")) {
    expect_array(j.at("point_pairs"), 5, "'point_pairs'");
    std::array<std::pair<Vector6, Vector6>, 5> pairs;
    for (std::size_t k = 0; k < 5; ++k) {
      const json& pr = j.at("point_pairs")[k];
      expect_array(pr, 2, "point pair");
      pairs[k] = {vector6_from_json(pr[0], t), vector6_from_json(pr[1], t)};
    }
    cfg = LineConfig::from_point_pairs(pairs);
  } else {
    schema_error("line config needs 'bivectors' or 'point_pairs'");
  }
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  return cfg;
}

inline json to_json(const LineConfig& cfg) {
  json b = json::array();
  for (const auto& l : cfg.lines) b.push_back(to_json(l));
  return {{"format", kFormat}, {"bivectors", b}};
}

inline json to_json(const SubspaceW& w) {
  json out = json::array();
  for (const auto& b : w.basis) out.push_back(to_json(b));
  return out;
}

inline SubspaceW subspace_from_json(const json& j, std::size_t n, const TowerPtr& t) {
  expect_array(j, n, "subspace basis");
  SubspaceW w;
  w.label = n == 4 ? SubspaceW::Label::W4 : SubspaceW::Label::W5;
  for (const auto& b : j) w.basis.push_back(bivector_from_json(b, t));
  return w;
}

inline json to_json(const NormalFormResult& r) {
  json choice = json::array();
  for (const auto& x : r.w4_choice) choice.push_back(to_json(x));
  return {{"quadratic", json::array({to_json(r.quadratic.first), to_json(r.quadratic.second)})},
          {"params",
           {{"u", to_json(r.params.u)},
            {"v", to_json(r.params.v)},
            {"a124", to_json(r.params.a124)},
            {"e1", to_json(r.params.e1)},
            {"e2", to_json(r.params.e2)}}},
          {"w4_choice", choice},
          {"draws", r.draws},
          {"w4", to_json(r.w4)},
          {"pentahedron", to_json(r.pentahedron)},
          {"chart", to_json(r.chart)},
          {"instance", to_json(r.instance)}};
}

inline json to_json(const NumericPoint& p) {
  json re = json::array(), im = json::array();
  for (const auto& z : p.p.p) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"re", re}, {"im", im}, {"residual", p.residual}};
}

}  // namespace pfc::io
