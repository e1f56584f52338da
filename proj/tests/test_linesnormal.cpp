#include <gtest/gtest.h>

#include "pfaffcubic/linesnormal.hpp"
#include "pfaffcubic/reference_data.hpp"

using namespace pfc;

namespace {

LineConfig config_of(const ExplicitInstance& inst) {
  LineConfig cfg;
  cfg.lines = five_lines(inst);
  return cfg;
}

}  // namespace

TEST(LinesNormal, ForwardInstanceIsRecovered) {
  SplitMix64 rng(61);
  for (int trial = 0; trial < 8; ++trial) {
    const auto inst = trial == 0 ? build_instance(ParamsA9{}) : random_instance(rng);
    NormalFormOptions opt;
    opt.functional = forward_functional(inst.params);
    opt.root = inst.u;
    const auto res = normal_form(config_of(inst), opt);
    EXPECT_EQ(res.chart.free_a(), inst.params.free_a()) << trial;
    EXPECT_EQ(res.chart.b, inst.params.b) << trial;
    EXPECT_EQ(res.quadratic, std::make_pair(quadratic_linear_coeff(inst.params), inst.params.a024));
    EXPECT_EQ(res.params, (NormalParams{inst.u, inst.v, inst.params.a124, inst.e1, inst.e2}));
    EXPECT_TRUE(roundtrip_check(res));
  }
}

TEST(LinesNormal, RandomW4ChoiceRoundTrips) {
  SplitMix64 rng(62);
  for (int trial = 0; trial < 4; ++trial) {
    const auto inst = random_instance(rng);
    NormalFormOptions opt;
    opt.seed = static_cast<std::uint64_t>(trial);
    const auto res = normal_form(config_of(inst), opt);
    EXPECT_GE(res.draws, 1);
    EXPECT_TRUE(pfaffian_identity(res.instance));
    EXPECT_TRUE(roundtrip_check(res)) << trial;
  }
}

TEST(LinesNormal, FixedFourLinesAppearLiterally) {
  const auto res = normal_form(LineConfig{reference::lines(), 5});
  const auto lines = five_lines(res.instance);
  const auto ref = reference::lines();
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(lines[k], ref[k]);
}

TEST(LinesNormal, ReferenceLines) {
  const auto res = normal_form(LineConfig{reference::lines(), 1});
  EXPECT_TRUE(pfaffian_identity(res.instance));
  // the a's do not depend on the W4 choice for this configuration
  const auto other = normal_form(LineConfig{reference::lines(), 2});
  EXPECT_EQ(other.chart.free_a(), res.chart.free_a());
  EXPECT_EQ(res.params.a124, FieldElement(0));
  EXPECT_THROW(conjugators(res.instance), PreconditionError);
  EXPECT_TRUE(roundtrip_check(res));
  const auto again = normal_form(LineConfig{reference::lines(), 1});
  EXPECT_EQ(again.params, res.params);
  EXPECT_EQ(again.w4_choice, res.w4_choice);
}

TEST(LinesNormal, PointPairsAgreeWithBivectors) {
  const LineConfig cfg{reference::lines(), 2};
  const auto pairs = cfg.point_pairs();
  const LineConfig rebuilt = LineConfig::from_point_pairs(pairs);
  EXPECT_EQ(rebuilt.lines, cfg.lines);
}

TEST(LinesNormal, PerturbedResultFailsRoundTrip) {
  const auto res = normal_form(LineConfig{reference::lines(), 1});
  auto bad = res;
  bad.params.a124 = bad.params.a124 + FieldElement(1);
  EXPECT_FALSE(roundtrip_check(bad));
}

TEST(LinesNormal, KleinLines) {
  const auto kd = klein_instance();
  NormalFormOptions opt;
  opt.functional = forward_functional(kd.instance.params);
  opt.root = kd.instance.u;
  const auto res = normal_form(config_of(kd.instance), opt);
  for (const auto& a : res.chart.free_a()) EXPECT_EQ(a, FieldElement(1));
  EXPECT_EQ(res.chart.b, (std::array<FieldElement, 5>{1, 1, 1, 1, -1}));
  EXPECT_TRUE(roundtrip_check(res));
}

TEST(LinesNormal, IntersectingLinesAreRejected) {
  auto lines = reference::lines();
  const auto e = [](int i) { return basis_vector(i); };
  lines[0] = wedge(e(0), e(1));
  lines[1] = wedge(e(0), e(2));
  NormalFormOptions opt;
  opt.max_draws = 10;
  try {
    normal_form(LineConfig{lines, 0}, opt);
    FAIL() << "expected a genericity error";
  } catch (const PreconditionError& err) {
    EXPECT_TRUE(err.stage() == "lines" || err.stage() == "choose_w4") << err.stage();
  }
}

TEST(LinesNormal, InvalidInput) {
  auto lines = reference::lines();
  lines[2] = lines[2] + lines[0];
  EXPECT_THROW(normal_form(LineConfig{lines, 0}), PreconditionError);
  auto dependent = reference::lines();
  dependent[4] = dependent[0];
  EXPECT_THROW(normal_form(LineConfig{dependent, 0}), PreconditionError);
}
