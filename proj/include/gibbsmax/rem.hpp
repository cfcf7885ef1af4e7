#pragma once
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

// Random Energy Model: 2^N configurations with i.i.d. N(0, N/2) energies.
// Quenched pressure P_N(beta) = (1/N) E log Z_N(beta) and the finite-N
// sandwich  Q_lower(beta; beta_*) <= P_N(beta) <= inf_{beta0} Q_upper(beta; beta0).

#include "gibbsmax/bounds.hpp"
#include "gibbsmax/ensemble.hpp"
#include "gibbsmax/error.hpp"
#include "gibbsmax/gibbs.hpp"
#include "gibbsmax/parallel.hpp"
#include "gibbsmax/quench.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gibbsmax {

inline constexpr std::size_t kRemMaxSpins = 16;

struct RemModel
{
  std::size_t     n_spins  = 0;
  std::size_t     size     = 0;  // 2^N
  double          variance = 0.0;
  double          beta_c   = 0.0;
  IndexedEnsemble ensemble;
};

/// Critical inverse temperature 2 sqrt(log 2).
inline double rem_beta_c() noexcept
{
  return 2.0 * std::sqrt(std::log(2.0));
}

/// Label of configuration i: N characters, '1' for spin +1 and '0' for -1,
/// most significant spin first.
inline std::string spin_label(std::size_t config, std::size_t n_spins)
{
  std::string label(n_spins, '0');
  for (std::size_t k = 0; k < n_spins; ++k)
  {
    if ((config >> (n_spins - 1 - k)) & 1u)
    {
      label[k] = '1';
    }
  }
  return label;
}

inline RemModel rem_model(std::size_t n_spins)
{
  if (n_spins < 1 || n_spins > kRemMaxSpins)
  {
    fail(ErrorKind::Scale, "REM needs 1 <= N <= " + std::to_string(kRemMaxSpins) + ", got N = " +
                             std::to_string(n_spins));
  }
  std::size_t const        size = std::size_t{1} << n_spins;
  std::vector<std::string> labels;
  labels.reserve(size);
  for (std::size_t i = 0; i < size; ++i)
  {
    labels.push_back(spin_label(i, n_spins));
  }
  double const variance = 0.5 * static_cast<double>(n_spins);
  return RemModel{n_spins, size, variance, rem_beta_c(), build_iid(std::move(labels), variance)};
}

/// lim_{N -> inf} P_N(beta): log 2 + beta^2/4 below beta_c, beta sqrt(log 2) above.
inline double limit_pressure(double beta)
{
  detail::check_beta(beta);
  if (beta < rem_beta_c())
  {
    return std::log(2.0) + 0.25 * beta * beta;
  }
  return beta * std::sqrt(std::log(2.0));
}

/// Per-realization statistics at one beta, all from the same realizations.
struct RemStatistics
{
  QuenchedEstimate    pressure;  // (1/N) Lambda(beta)
  QuenchedEstimate    gibbs;     // <x>_beta
  QuenchedEstimate    kl;        // D(nu_beta || uniform)
  std::vector<double> pressure_samples;
  std::vector<double> gibbs_samples;
};

inline RemStatistics rem_statistics(RemModel const &model, double beta, std::size_t n,
                                    std::uint64_t seed)
{
  detail::check_beta(beta);
  double const  inv_n = 1.0 / static_cast<double>(model.n_spins);
  Columns       cols  = ensemble_columns(
    model.ensemble, n, seed, 3, [&](std::span<double const> x, std::span<double> row) {
      row[0] = beta == 0.0 ? std::log(2.0) : inv_n * log_partition(x, beta);
      row[1] = gibbs_average(x, beta);
      row[2] = kl_to_uniform(x, beta);
    });
  RemStatistics out;
  out.pressure = to_estimate(Observable::free_energy(), beta, cols[0], seed);
  out.gibbs    = to_estimate(Observable::gibbs_average(), beta, cols[1], seed);
  out.kl       = to_estimate(Observable::kl_to_uniform(), beta, cols[2], seed);
  out.pressure_samples = std::move(cols[0]);
  out.gibbs_samples    = std::move(cols[1]);
  return out;
}

/// P_N(beta) estimate; exactly log 2 with zero error at beta = 0.
inline QuenchedEstimate pressure_estimate(RemModel const &model, double beta, std::size_t n,
                                          std::uint64_t seed)
{
  return rem_statistics(model, beta, n, seed).pressure;
}

namespace detail {

inline double q_lower_value(RemModel const &model, double beta, double beta_star, double c,
                            double kl_at_star)
{
  double const log2 = std::log(2.0);
  if (beta <= beta_star)
  {
    return log2 + c * c * beta * beta / 8.0;
  }
  double const n = static_cast<double>(model.n_spins);
  return log2 + c * c * beta_star * beta_star / 8.0 +
         c * (beta - beta_star) * std::sqrt(std::max(kl_at_star, 0.0) / (2.0 * n));
}

inline double q_upper_value(RemModel const &model, double beta, double beta0, double kl_at_beta)
{
  double const log2 = std::log(2.0);
  if (beta <= beta0)
  {
    return log2 + 0.25 * beta * beta;
  }
  double const n = static_cast<double>(model.n_spins);
  return log2 + 0.25 * beta0 * beta0 +
         (beta - beta0) * std::sqrt(std::max(kl_at_beta, 0.0) / n);
}

inline void check_threshold(RemModel const &model, ThresholdResult const &threshold)
{
  if (threshold.ensemble_fingerprint != model.ensemble.fingerprint())
  {
    fail(ErrorKind::InvalidInput, "threshold was not computed on this REM ensemble");
  }
}

}  // namespace detail

/// Lower sandwich piece: quadratic log 2 + c^2 beta^2 / 8 up to beta_*, then
/// linear with slope c sqrt(E D(nu_{beta_*}) / (2N)).
inline double q_lower(RemModel const &model, double beta, ThresholdResult const &threshold,
                      double c, std::size_t n, std::uint64_t seed)
{
  detail::check_beta(beta);
  detail::check_threshold(model, threshold);
  double kl_star = 0.0;
  if (beta > threshold.beta_star)
  {
    kl_star = rem_statistics(model, threshold.beta_star, n, seed).kl.mean;
  }
  return detail::q_lower_value(model, beta, threshold.beta_star, c, kl_star);
}

/// Upper sandwich piece at one beta0, with E D evaluated at beta.
inline double q_upper(RemModel const &model, double beta, double beta0, std::size_t n,
                      std::uint64_t seed)
{
  detail::check_beta(beta);
  detail::check_beta(beta0);
  double kl = 0.0;
  if (beta > beta0)
  {
    kl = rem_statistics(model, beta, n, seed).kl.mean;
  }
  return detail::q_upper_value(model, beta, beta0, kl);
}

/// Q_upper(beta; beta0) with E D replaced by its cap N log 2.
inline double q_upper_capped(double beta, double beta0)
{
  detail::check_beta(beta);
  detail::check_beta(beta0);
  double const log2 = std::log(2.0);
  if (beta <= beta0)
  {
    return log2 + 0.25 * beta * beta;
  }
  return log2 + 0.25 * beta0 * beta0 + (beta - beta0) * std::sqrt(log2);
}

namespace detail {

inline std::vector<double> with_beta_c(std::span<double const> grid)
{
  if (grid.empty())
  {
    fail(ErrorKind::InvalidParameter, "beta0 grid is empty");
  }
  std::vector<double> out(grid.begin(), grid.end());
  out.push_back(rem_beta_c());
  return out;
}

inline double q_upper_min_value(RemModel const &model, double beta, std::span<double const> grid,
                                double kl_at_beta)
{
  double best = std::numeric_limits<double>::infinity();
  for (double beta0 : grid)
  {
    check_beta(beta0);
    best = std::min(best, q_upper_value(model, beta, beta0, kl_at_beta));
  }
  return best;
}

}  // namespace detail

/// min over beta0 in grid U {beta_c} of Q_upper(beta; beta0).
inline double q_upper_min(RemModel const &model, double beta, std::span<double const> beta0_grid,
                          std::size_t n, std::uint64_t seed)
{
  detail::check_beta(beta);
  auto const   grid = detail::with_beta_c(beta0_grid);
  double const kl   = rem_statistics(model, beta, n, seed).kl.mean;
  return detail::q_upper_min_value(model, beta, grid, kl);
}

struct PressureRow
{
  double           beta = 0.0;
  QuenchedEstimate p_hat;
  QuenchedEstimate g_hat;
  double           q_lower     = 0.0;
  double           q_upper_min = 0.0;
  double           q_upper_cap = 0.0;
  double           limit       = 0.0;
  Verdict          sandwich    = Verdict::Inconclusive;
};

/// P(beta_k) - P(beta_0) - (1/N) trapezoid(g; beta_0..beta_k), per sample.
struct IntegralCheck
{
  double beta      = 0.0;
  double residual  = 0.0;
  double se        = 0.0;
  double tolerance = 0.0;  // trapezoid error estimate + 3 se
  bool   pass      = false;
};

struct PressureCurve
{
  std::vector<PressureRow>   rows;
  std::vector<IntegralCheck> integral;
  ThresholdResult            threshold;
  double                     kl_at_star = 0.0;
};

/// Sweeps a sorted beta grid with common random numbers across rows.
/// `beta0_grid` defaults to the sweep grid itself (beta_c is always added).
inline PressureCurve pressure_sweep(RemModel const &model, std::span<double const> beta_grid,
                                    std::size_t n, std::uint64_t seed, double c,
                                    std::span<double const> beta0_grid = {},
                                    double                  z_threshold = 3.0)
{
  if (beta_grid.empty())
  {
    fail(ErrorKind::InvalidParameter, "beta grid is empty");
  }
  if (!std::is_sorted(beta_grid.begin(), beta_grid.end()))
  {
    fail(ErrorKind::InvalidParameter, "beta grid must be sorted ascending");
  }
  for (double b : beta_grid)
  {
    detail::check_beta(b);
  }
  auto const b0_grid = detail::with_beta_c(beta0_grid.empty() ? beta_grid : beta0_grid);

  PressureCurve curve;
  curve.threshold  = beta_star(model.ensemble, c, n, seed);
  curve.kl_at_star = rem_statistics(model, curve.threshold.beta_star, n, seed).kl.mean;

  double const             tol  = 1e-12;
  double const             inv_n = 1.0 / static_cast<double>(model.n_spins);
  std::vector<RemStatistics> stats;
  stats.reserve(beta_grid.size());
  for (double beta : beta_grid)
  {
    RemStatistics s = rem_statistics(model, beta, n, seed);
    PressureRow   row;
    row.beta        = beta;
    row.p_hat       = s.pressure;
    row.g_hat       = s.gibbs;
    row.q_lower     = detail::q_lower_value(model, beta, curve.threshold.beta_star, c,
                                            curve.kl_at_star);
    row.q_upper_min = detail::q_upper_min_value(model, beta, b0_grid, s.kl.mean);
    row.q_upper_cap = q_upper_capped(beta, model.beta_c);
    row.limit       = limit_pressure(beta);

    double const margin  = z_threshold * row.p_hat.std_error + tol;
    bool const   lower   = row.q_lower <= row.p_hat.mean + margin;
    bool const   upper   = row.p_hat.mean <= row.q_upper_min + margin;
    bool const   annealed = row.p_hat.mean <= std::log(2.0) + 0.25 * beta * beta + margin;
    row.sandwich         = lower && upper && annealed ? Verdict::Holds : Verdict::Violated;
    curve.rows.push_back(std::move(row));
    stats.push_back(std::move(s));
  }

  // Trapezoid consistency of P with the integral of g.
  std::size_t const   m = beta_grid.size();
  std::vector<double> curvature(m, 0.0);
  for (std::size_t k = 1; k + 1 < m; ++k)
  {
    double const h0 = beta_grid[k] - beta_grid[k - 1];
    double const h1 = beta_grid[k + 1] - beta_grid[k];
    if (h0 > 0.0 && h1 > 0.0)
    {
      double const d0 = (stats[k].gibbs.mean - stats[k - 1].gibbs.mean) / h0;
      double const d1 = (stats[k + 1].gibbs.mean - stats[k].gibbs.mean) / h1;
      curvature[k]    = std::abs(2.0 * (d1 - d0) / (h0 + h1));
    }
  }
  if (m >= 3)
  {
    curvature[0]     = curvature[1];
    curvature[m - 1] = curvature[m - 2];
  }

  std::vector<double> integral(n, 0.0);
  std::vector<double> residual(n);
  double              trap_bound = 0.0;
  for (std::size_t k = 0; k < m; ++k)
  {
    if (k > 0)
    {
      double const h = beta_grid[k] - beta_grid[k - 1];
      for (std::size_t i = 0; i < n; ++i)
      {
        integral[i] +=
          0.5 * h * inv_n * (stats[k - 1].gibbs_samples[i] + stats[k].gibbs_samples[i]);
      }
      trap_bound += h * h * h / 12.0 * inv_n * std::max(curvature[k - 1], curvature[k]);
    }
    for (std::size_t i = 0; i < n; ++i)
    {
      residual[i] = stats[k].pressure_samples[i] - stats[0].pressure_samples[i] - integral[i];
    }
    SampleSummary const s = summarize(residual);
    IntegralCheck       check;
    check.beta      = beta_grid[k];
    check.residual  = s.mean;
    check.se        = s.std_error;
    check.tolerance = trap_bound + z_threshold * s.std_error + tol;
    check.pass      = std::abs(s.mean) <= check.tolerance;
    curve.integral.push_back(check);
  }
  return curve;
}

}  // namespace gibbsmax
