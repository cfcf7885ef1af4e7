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


#include "gibbsmax/rem.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace gibbsmax;

namespace {

double const kLog2 = std::log(2.0);
double const kC    = 1.0 / 17.0;

std::vector<double> grid(double start, double stop, double step)
{
  std::vector<double> out;
  for (int k = 0; start + k * step <= stop + 1e-12; ++k)
  {
    out.push_back(start + k * step);
  }
  return out;
}

ErrorKind kind_of(auto &&fn)
{
  try
  {
    fn();
  }
  catch (Error const &e)
  {
    return e.kind();
  }
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST(RemModel, Shapes)
{
  auto const m1 = rem_model(1);
  EXPECT_EQ(m1.size, 2u);
  EXPECT_DOUBLE_EQ(m1.variance, 0.5);
  auto const m10 = rem_model(10);
  EXPECT_EQ(m10.size, 1024u);
  EXPECT_TRUE(m10.ensemble.is_iid());
  EXPECT_NEAR(std::pow(m10.ensemble.geometry().min_sep, 2), 10.0, 1e-12);
  EXPECT_EQ(m10.ensemble.labels()[5], "0000000101");
  EXPECT_EQ(kind_of([] { rem_model(20); }), ErrorKind::Scale);
  EXPECT_EQ(kind_of([] { rem_model(0); }), ErrorKind::Scale);
  EXPECT_NEAR(m10.beta_c, 1.6651092223153954, 1e-15);
}

TEST(LimitPressure, Branches)
{
  double const bc = rem_beta_c();
  EXPECT_EQ(limit_pressure(0.0), kLog2);
  EXPECT_NEAR(limit_pressure(bc), 2.0 * kLog2, 1e-15);
  EXPECT_NEAR(kLog2 + bc * bc / 4.0, 2.0 * kLog2, 1e-15);
  EXPECT_NEAR(limit_pressure(2.0 * bc), 4.0 * kLog2, 1e-14);
  double const h = 1e-3;
  for (double b = h; b < 6.0; b += h)
  {
    double const d2 = limit_pressure(b + h) - 2.0 * limit_pressure(b) + limit_pressure(b - h);
    ASSERT_GE(d2, -1e-10) << b;
  }
}

TEST(Pressure, ZeroAndHighTemperature)
{
  auto const m  = rem_model(10);
  auto const p0 = pressure_estimate(m, 0.0, 50, 1);
  EXPECT_EQ(p0.mean, kLog2);
  EXPECT_EQ(p0.std_error, 0.0);
  auto const p1 = pressure_estimate(m, 1.0, 2000, 42);
  EXPECT_NEAR(p1.mean, kLog2 + 0.25, 0.05);
  EXPECT_LE(p1.mean, kLog2 + 0.25 + 3 * p1.std_error);
}

TEST(Pressure, AnnealedBoundOnGrid)
{
  for (std::size_t spins : {4u, 8u, 10u})
  {
    auto const m = rem_model(spins);
    for (double beta : {0.5, 1.0, 2.0, 4.0})
    {
      auto const p = pressure_estimate(m, beta, 500, 3);
      EXPECT_LE(p.mean, kLog2 + beta * beta / 4.0 + 3 * p.std_error);
    }
  }
}

TEST(QLower, PiecesAndContinuity)
{
  auto const m  = rem_model(10);
  auto const th = beta_star(m.ensemble, kC, 500, 42);
  EXPECT_EQ(q_lower(m, 0.0, th, kC, 500, 42), kLog2);
  double const bs    = th.beta_star;
  double const left  = q_lower(m, bs, th, kC, 500, 42);
  double const right = q_lower(m, std::nextafter(bs, 1e300), th, kC, 500, 42);
  EXPECT_LE(std::abs(left - right), 1e-12);
  EXPECT_DOUBLE_EQ(left, kLog2 + kC * kC * bs * bs / 8.0);
  auto const p = pressure_estimate(m, 2.0 * bs, 500, 42);
  EXPECT_LE(q_lower(m, 2.0 * bs, th, kC, 500, 42), p.mean + 3 * p.std_error);
  EXPECT_THROW(q_lower(rem_model(9), 1.0, th, kC, 500, 42), Error);
}

TEST(QUpper, Pieces)
{
  auto const m = rem_model(10);
  for (double beta : {0.0, 0.7, 2.0})
  {
    EXPECT_DOUBLE_EQ(q_upper(m, beta, 2.0, 200, 1), kLog2 + beta * beta / 4.0);
  }
  double const bc = rem_beta_c();
  for (double beta : {bc, 2.0, 3.0, 6.0, 20.0})
  {
    EXPECT_LE(q_upper_capped(beta, bc), beta * std::sqrt(kLog2) + 1e-12);
  }
  auto const   g = grid(0.0, 3.0, 0.5);
  auto const   p = pressure_estimate(m, 3.0, 2000, 42);
  double const q = q_upper_min(m, 3.0, g, 2000, 42);
  EXPECT_GE(q, p.mean - 3 * p.std_error);
  EXPECT_EQ(kind_of([&] { q_upper_min(m, 3.0, std::vector<double>{}, 200, 1); }),
            ErrorKind::InvalidParameter);
}

TEST(Sweep, AcceptanceConfiguration)
{
  auto const m     = rem_model(10);
  auto const g     = grid(0.0, 4.0, 0.25);
  auto const curve = pressure_sweep(m, g, 2000, 42, kC);
  ASSERT_EQ(curve.rows.size(), 17u);
  EXPECT_EQ(curve.rows.front().p_hat.mean, kLog2);
  for (auto const &row : curve.rows)
  {
    double const se = row.p_hat.std_error;
    EXPECT_EQ(row.sandwich, Verdict::Holds) << row.beta;
    EXPECT_LE(row.q_lower, row.p_hat.mean + 3 * se);
    EXPECT_LE(row.p_hat.mean, row.q_upper_min + 3 * se);
    EXPECT_LE(row.q_lower, row.q_upper_min + 1e-9);
  }
  for (auto const &check : curve.integral)
  {
    EXPECT_TRUE(check.pass) << check.beta << " " << check.residual << " " << check.tolerance;
    EXPECT_LE(std::abs(check.residual), 0.01);
  }
  // Gibbs averages under common random numbers are nondecreasing in beta.
  for (std::size_t k = 1; k < curve.rows.size(); ++k)
  {
    EXPECT_GE(curve.rows[k].g_hat.mean, curve.rows[k - 1].g_hat.mean);
  }
}

TEST(Sweep, Rejections)
{
  auto const m = rem_model(4);
  EXPECT_EQ(kind_of([&] { pressure_sweep(m, std::vector<double>{1.0, 0.5}, 100, 1, kC); }),
            ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of([&] { pressure_sweep(m, std::vector<double>{}, 100, 1, kC); }),
            ErrorKind::InvalidParameter);
}

// Regression expectation: larger systems sit closer to the limit curve.
TEST(Sweep, MonotoneApproach)
{
  auto const m6  = rem_model(6);
  auto const m12 = rem_model(12);
  for (double beta : {1.0, rem_beta_c(), 3.0})
  {
    auto const   p6  = pressure_estimate(m6, beta, 2000, 5);
    auto const   p12 = pressure_estimate(m12, beta, 2000, 5);
    double const lim = limit_pressure(beta);
    EXPECT_LE(std::abs(p12.mean - lim),
              std::abs(p6.mean - lim) + 3 * std::hypot(p6.std_error, p12.std_error))
      << beta;
  }
}
