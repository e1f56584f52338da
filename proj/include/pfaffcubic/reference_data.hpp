#pragma once

// Reference five-line configuration with its quadrics and linear equations.

#include <array>
#include <string_view>
#include <vector>

#include "pfaffcubic/fivesecant.hpp"
#include "pfaffcubic/grassmann.hpp"
#include "pfaffcubic/parse.hpp"

namespace pfc::reference {

inline Vector6 sum_of(std::initializer_list<int> idx) {
  Vector6 v;
  for (auto& x : v) x = 0;
  for (int i : idx) v[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)] + FieldElement(1);
  return v;
}

/// e0^e3, e1^e4, e2^e5, (e0+e1+e2)^(e3+e4+e5), (e1+e2+e4)^(e1+e3+e5).
inline std::array<Bivector15, 5> lines() {
  return {wedge(sum_of({0}), sum_of({3})), wedge(sum_of({1}), sum_of({4})), wedge(sum_of({2}), sum_of({5})),
          wedge(sum_of({0, 1, 2}), sum_of({3, 4, 5})), wedge(sum_of({1, 4, 2}), sum_of({3, 1, 5}))};
}

/// W4 = { sum l_i u_i : sum l_i = 0 }, basis u_i - u_4.
inline SubspaceW w4() {
  const auto u = lines();
  SubspaceW w;
  for (std::size_t i = 0; i < 4; ++i) w.basis.push_back(u[i] - u[4]);
  return w;
}

inline constexpr std::array<std::string_view, 5> kQuadrics{
    "p34*p15-p14*p35+p13*p45",
    "p12*p05-p24*p05-p02*p15+p23*p15+p01*p25-p13*p25+p04*p25-p34*p25+p12*p35+p24*p35-p02*p45-p23*p45",
    "p23*p04-p03*p24+p02*p34-p13*p05+p24*p05-p34*p05+p03*p15-p23*p15+p13*p25-p04*p25+p34*p25-p01*p35-p12*p35"
    "+p04*p35-p24*p35+p02*p45-p03*p45+p23*p45",
    "p12*p04-p02*p14+p01*p24-p24*p05+p23*p15-p13*p25+p04*p25-p34*p25+p12*p35+p24*p35-p02*p45-p23*p45",
    "p12*p03-p02*p13+p01*p23-p24*p05+p34*p05+p23*p15-p13*p25+p04*p25-p34*p25+p12*p35-p04*p35+p24*p35-p02*p45"
    "+p03*p45-p23*p45",
};

inline constexpr std::array<std::string_view, 10> kLinearEquations{
    "p35",         "p05-p15+p45", "p34+p45", "p24-p15+p45", "p04-p15+p45",
    "p23-p15",     "p13-p15",     "p12+p45", "p02",         "p01",
};

inline std::vector<MultiPoly> quadrics() {
  std::vector<MultiPoly> out;
  for (auto s : kQuadrics) out.push_back(parse_poly(std::string(s), plucker_vars()));
  return out;
}

inline std::vector<MultiPoly> linear_equations() {
  std::vector<MultiPoly> out;
  for (auto s : kLinearEquations) out.push_back(parse_poly(std::string(s), plucker_vars()));
  return out;
}

}  // namespace pfc::reference
