//------------------------------------------------------------------------------
//
//   Copyright 2026 The gibbsmax Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------


#include "fixtures.hpp"

#include "gibbsmax/bounds.hpp"
#include "gibbsmax/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace gibbsmax;

namespace {

constexpr std::size_t kN = 20000;

}  // namespace

TEST(FinishReport, VerdictRules)
{
  BoundConfig cfg;
  BoundReport r;
  r.lhs = {1.0, 0.1};
  r.rhs = {1.5, 0.0};
  EXPECT_EQ(finish_report(r, cfg, false).verdict, Verdict::Holds);
  r.rhs = {0.8, 0.0};  // z = -2
  EXPECT_EQ(finish_report(r, cfg, false).verdict, Verdict::Holds);
  r.rhs = {0.5, 0.0};  // z = -5
  auto v = finish_report(r, cfg, false);
  EXPECT_EQ(v.verdict, Verdict::Violated);
  EXPECT_DOUBLE_EQ(v.slack, -0.5);
  EXPECT_DOUBLE_EQ(v.z, -5.0);
  r.relation = Relation::LhsAtLeastRhs;
  EXPECT_EQ(finish_report(r, cfg, false).verdict, Verdict::Holds);
  EXPECT_EQ(finish_report(r, cfg, true).verdict, Verdict::Inconclusive);
  // zero standard error: exact comparison up to the numerical tolerance
  r.relation = Relation::LhsAtMostRhs;
  r.lhs      = {1.0, 0.0};
  r.rhs      = {1.0 - 1e-12, 0.0};
  EXPECT_EQ(finish_report(r, cfg, false).verdict, Verdict::Holds);
  r.rhs = {0.9, 0.0};
  EXPECT_EQ(finish_report(r, cfg, false).verdict, Verdict::Violated);
}

TEST(SqrtMoment, DeltaMethodAndGuard)
{
  bool       shaky = false;
  auto const m     = detail::sqrt_moment({4.0, 0.4}, 3.0, shaky);
  EXPECT_DOUBLE_EQ(m.mean, 6.0);
  EXPECT_DOUBLE_EQ(m.se, 3.0 * 0.4 / 4.0);
  EXPECT_FALSE(shaky);
  detail::sqrt_moment({1.0, 0.3}, 1.0, shaky);
  EXPECT_TRUE(shaky);
}

TEST(GUpper, ZeroTemperatureEnds)
{
  auto const ens = build_iid(8, 1.0);
  auto const r0  = g_upper(ens, 0.0, kN, 1);
  EXPECT_EQ(r0.rhs.mean, 0.0);
  EXPECT_EQ(r0.verdict, Verdict::Holds);
  auto const r = g_upper(ens, 200.0, kN, 1);
  EXPECT_NEAR(r.rhs.mean, std::sqrt(2.0 * std::log(8.0)), 0.01);
}

TEST(GUpper, HoldsIid8)
{
  auto const ens = build_iid(8, 1.0);
  for (double beta : {0.5, 1.0, 2.0, 8.0})
  {
    EXPECT_EQ(g_upper(ens, beta, kN, 2).verdict, Verdict::Holds) << beta;
  }
}

TEST(GUpper, EntropyFormMatches)
{
  for (auto const &ens : {build_iid(16, 1.0), fixtures::chain8()})
  {
    for (double beta : {0.0, 1.0, 5.0})
    {
      auto const a = g_upper(ens, beta, 5000, 3);
      auto const b = g_upper_entropy_form(ens, beta, 5000, 3);
      EXPECT_NEAR(a.rhs.mean, b.rhs.mean, 1e-10);
      EXPECT_EQ(a.lhs.mean, b.lhs.mean);
    }
  }
  auto const z = g_upper_entropy_form(build_iid(16, 1.0), 200.0, kN, 4);
  EXPECT_NEAR(z.rhs.mean, std::sqrt(2.0 * std::log(16.0)), 0.01);
}

TEST(GLowerLowtemp, RegimeAndVerdict)
{
  auto const ens = build_iid(8, 1.0);
  auto const th  = beta_star(ens, 1.0 / 17.0, 5000, 5);
  auto const in  = g_lower_lowtemp(ens, 2.0 * th.beta_star, th, kN, 6);
  EXPECT_EQ(in.verdict, Verdict::Holds);
  EXPECT_FALSE(in.out_of_regime);
  auto const out = g_lower_lowtemp(ens, 0.5 * th.beta_star, th, kN, 6);
  EXPECT_TRUE(out.out_of_regime);
  EXPECT_EQ(out.verdict, Verdict::Inconclusive);
  auto const cold = g_lower_lowtemp(ens, 200.0, th, kN, 6);
  EXPECT_NEAR(cold.rhs.mean, std::sqrt(2.0 * std::log(8.0)) / 17.0, 1e-3);
  EXPECT_THROW(g_lower_lowtemp(build_iid(9, 1.0), 1.0, th, kN, 6), Error);
}

TEST(GLowerIid, ConstantsAndRegime)
{
  auto const ens = build_iid(16, 1.0);
  for (double beta : {0.25, 1.0, 4.0})
  {
    auto const r = g_lower_iid(ens, beta, kN, 7);
    EXPECT_EQ(r.verdict, Verdict::Holds) << beta;
    EXPECT_FALSE(r.note.empty());
  }
  auto const r0 = g_lower_iid(ens, 0.0, kN, 7);
  EXPECT_EQ(r0.rhs.mean, 0.0);
  EXPECT_EQ(r0.verdict, Verdict::Holds);

  // Above the threshold kappa switches from c / sqrt(2) to c.
  auto const th   = beta_star(ens, 1.0 / 17.0, 2000, 8);
  auto const hi   = g_lower_iid(ens, 2.0 * th.beta_star, kN, 7, {}, &th);
  auto const base = g_lower_iid(ens, 2.0 * th.beta_star, kN, 7);
  EXPECT_NEAR(hi.rhs.mean, std::sqrt(2.0) * base.rhs.mean, 1e-12);
  EXPECT_THROW(g_lower_iid(fixtures::chain8(), 1.0, kN, 7), Error);
}

TEST(PhiBounds, Iid)
{
  auto const e8 = build_iid(8, 1.0);
  auto const z  = phi_upper(e8, 0.0, kN, 9);
  EXPECT_EQ(z.lhs.mean, 0.0);
  EXPECT_EQ(z.rhs.mean, 0.0);
  EXPECT_EQ(z.verdict, Verdict::Holds);
  for (double beta : {0.5, 2.0, 8.0})
  {
    EXPECT_EQ(phi_upper(e8, beta, kN, 9).verdict, Verdict::Holds);
  }
  auto const e16 = build_iid(16, 1.0);
  EXPECT_EQ(phi_lower_iid(e16, 0.0, kN, 10).verdict, Verdict::Holds);
  for (double beta : {0.5, 2.0, 8.0})
  {
    EXPECT_EQ(phi_lower_iid(e16, beta, kN, 10).verdict, Verdict::Holds);
  }
  EXPECT_THROW(phi_lower_iid(fixtures::chain8(), 1.0, kN, 10), Error);
  // zero temperature: phi -> E max - log|T| / beta, under sqrt(2 sigma^2 log |T|)
  auto const cold = phi_upper(e8, 200.0, kN, 11);
  EXPECT_EQ(cold.verdict, Verdict::Holds);
  EXPECT_NEAR(cold.rhs.mean, std::sqrt(2.0 * std::log(8.0)), 0.01);
}

TEST(MaxBounds, TwoPoints)
{
  auto const [upper, lower] = max_bounds(build_iid(2, 1.0), 100000, 12);
  EXPECT_LE(std::abs(upper.lhs.mean - 1.0 / std::sqrt(std::numbers::pi)), 3 * upper.lhs.se);
  EXPECT_DOUBLE_EQ(upper.rhs.mean, std::sqrt(2.0 * std::log(2.0)));
  EXPECT_DOUBLE_EQ(lower.rhs.mean, std::sqrt(2.0) * std::sqrt(std::log(2.0)) / 17.0);
  EXPECT_EQ(upper.verdict, Verdict::Holds);
  EXPECT_EQ(lower.verdict, Verdict::Holds);
  for (auto const &ens : {build_iid(8, 2.0), fixtures::chain8(), fixtures::correlated3()})
  {
    auto const [u, l] = max_bounds(ens, 1000, 13);
    EXPECT_GE(u.rhs.mean, l.rhs.mean);
  }
}

TEST(SudakovCover, TwoClusters)
{
  auto const ens   = fixtures::two_clusters();
  auto const cover = sudakov_cover(ens, fixtures::kTwoClusterRadius);
  ASSERT_EQ(cover.packing, (Subset{0, 6}));
  EXPECT_EQ(cover.balls[0], (Subset{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(cover.balls[1], (Subset{6, 7, 8, 9, 10, 11}));
  EXPECT_EQ(cover.union_of_balls.size(), 12u);
}

TEST(SoftSuperSudakov, SingletonPackingAtDefaultRadius)
{
  auto const ens = build_iid(8, 1.0);
  auto const r   = soft_super_sudakov(ens, 1.0, kN, 14);
  EXPECT_NE(r.note.find("packing size 1"), std::string::npos);
  EXPECT_EQ(r.verdict, Verdict::Holds);
  ASSERT_TRUE(r.full_set.has_value());
  EXPECT_LE(r.rhs.mean, r.full_set->mean + 3 * std::hypot(r.rhs.se, r.full_set->se));
}

TEST(SoftSuperSudakov, TwoClustersHold)
{
  auto const ens = fixtures::two_clusters();
  for (double beta : {0.5, 2.0, 10.0})
  {
    auto const r = soft_super_sudakov(ens, beta, kN, 15, {}, fixtures::kTwoClusterRadius);
    EXPECT_EQ(r.verdict, Verdict::Holds) << beta;
    EXPECT_LE(r.lhs.mean, r.full_set->mean + 1e-12);
  }
  EXPECT_THROW(soft_super_sudakov(ens, 0.0, kN, 15), Error);
}

TEST(Sandwich, Cases)
{
  std::vector<double> z{0, 0, 0};
  auto const          flat = sandwich_suite(z, 1.0);
  EXPECT_NEAR(flat.softmax_upper, 0.0, 1e-15);
  EXPECT_TRUE(flat.all_hold);
  std::vector<double> peak{1.0, 0.2, -0.4};
  auto const          cold = sandwich_suite(peak, 1e4);
  EXPECT_LE(cold.softmax_lower, 1e-3);
  EXPECT_LE(cold.gibbs_upper, 1e-3);
  EXPECT_TRUE(cold.all_hold);
  SampleStream        s(16, 0);
  std::vector<double> x(64);
  s.fill_normal(x);
  EXPECT_TRUE(sandwich_suite(x, 0.1).all_hold);
}

// Delta-method se of sqrt-form right-hand sides against a bootstrap over samples.
TEST(DeltaMethod, AgreesWithBootstrap)
{
  auto const          ens  = build_iid(8, 1.0);
  double const        beta = 1.0;
  std::size_t const   n    = 4000;
  Columns const       cols = ensemble_columns(
    ens, n, 17, 1, [&](std::span<double const> x, std::span<double> row) {
      row[0] = kl_to_uniform(x, beta);
    });
  auto const          rep = g_upper(ens, beta, n, 17);
  std::vector<double> boot;
  for (int b = 0; b < 200; ++b)
  {
    SampleStream        r(18, static_cast<std::uint64_t>(b));
    std::vector<double> re(n);
    for (double &v : re)
    {
      v = cols[0][static_cast<std::size_t>(r.uniform() * static_cast<double>(n))];
    }
    boot.push_back(std::sqrt(2.0 * summarize(re).mean));
  }
  double const boot_se = summarize(boot).sd;
  EXPECT_GT(rep.rhs.se / boot_se, 0.5);
  EXPECT_LT(rep.rhs.se / boot_se, 2.0);
}

TEST(Bounds, Deterministic)
{
  auto const ens = fixtures::chain8();
  set_thread_count(1);
  auto const a = g_upper(ens, 1.5, 3001, 19);
  set_thread_count(5);
  auto const b = g_upper(ens, 1.5, 3001, 19);
  set_thread_count(0);
  EXPECT_EQ(a.lhs.mean, b.lhs.mean);
  EXPECT_EQ(a.rhs.mean, b.rhs.mean);
  EXPECT_EQ(a.rhs.se, b.rhs.se);
}
