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

// Monte Carlo estimation of quenched (disorder-averaged) observables.
//
// Sample i always draws its realization from SampleStream(seed, i), and the
// per-sample values are reduced by a fixed pairwise tree, so an estimate is a
// pure function of (ensemble, observable, beta, n, seed). Two estimates that
// share (seed, n) see the same realizations: that is how common random
// numbers are obtained across inverse temperatures and across both sides of
// an identity.

#include "gibbsmax/ensemble.hpp"
#include "gibbsmax/error.hpp"
#include "gibbsmax/gibbs.hpp"
#include "gibbsmax/parallel.hpp"
#include "gibbsmax/rng.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gibbsmax {

struct QuenchedEstimate
{
  Observable    observable;
  double        beta      = 0.0;
  double        mean      = 0.0;
  double        std_error = 0.0;
  std::size_t   n_samples = 0;
  std::uint64_t seed      = 0;
};

/// k columns of n per-sample statistics.
using Columns = std::vector<std::vector<double>>;

inline void check_sample_count(std::size_t n)
{
  if (n < 2)
  {
    fail(ErrorKind::InvalidParameter, "need at least 2 samples for a standard error");
  }
}

/// Runs fn(i, stream_i, row_i) for every sample i; row_i has k slots.
template <typename Fn>
Columns sample_columns(std::size_t n, std::uint64_t seed, std::size_t k, Fn &&fn)
{
  check_sample_count(n);
  Columns cols(k, std::vector<double>(n));
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<double> row(k);
    for (std::size_t i = begin; i < end; ++i)
    {
      SampleStream stream(seed, i);
      fn(i, stream, std::span<double>(row));
      for (std::size_t j = 0; j < k; ++j)
      {
        cols[j][i] = row[j];
      }
    }
  });
  return cols;
}

/// Draws realization i of `ens` and runs fn(x_i, row_i).
template <typename Fn>
Columns ensemble_columns(IndexedEnsemble const &ens, std::size_t n, std::uint64_t seed,
                         std::size_t k, Fn &&fn)
{
  check_sample_count(n);
  Columns cols(k, std::vector<double>(n));
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<double> row(k);
    Realization         x(ens.size());
    for (std::size_t i = begin; i < end; ++i)
    {
      SampleStream stream(seed, i);
      ens.sample_into(stream, x);
      fn(std::span<double const>(x), std::span<double>(row));
      for (std::size_t j = 0; j < k; ++j)
      {
        cols[j][i] = row[j];
      }
    }
  });
  return cols;
}

inline QuenchedEstimate to_estimate(Observable obs, double beta, std::span<double const> column,
                                    std::uint64_t seed)
{
  SampleSummary const s = summarize(column);
  return {std::move(obs), beta, s.mean, s.std_error, s.n, seed};
}

/// Estimates several observables from the same n realizations.
inline std::vector<QuenchedEstimate> mc_estimate_many(IndexedEnsemble const        &ens,
                                                      std::vector<Observable> const &obs,
                                                      double beta, std::size_t n,
                                                      std::uint64_t seed)
{
  detail::check_beta(beta);
  Columns const cols = ensemble_columns(
    ens, n, seed, obs.size(), [&](std::span<double const> x, std::span<double> row) {
      for (std::size_t j = 0; j < obs.size(); ++j)
      {
        row[j] = evaluate(obs[j], ens, x, beta);
      }
    });
  std::vector<QuenchedEstimate> out;
  out.reserve(obs.size());
  for (std::size_t j = 0; j < obs.size(); ++j)
  {
    out.push_back(to_estimate(obs[j], beta, cols[j], seed));
  }
  return out;
}

inline QuenchedEstimate mc_estimate(IndexedEnsemble const &ens, Observable const &obs, double beta,
                                    std::size_t n, std::uint64_t seed)
{
  return mc_estimate_many(ens, {obs}, beta, n, seed).front();
}

/// g(beta) through the two-replica representation; uses the collapsed
/// beta sigma^2 (1 - ||nu||^2) statistic when the covariance is scalar.
inline QuenchedEstimate replica_gibbs_estimate(IndexedEnsemble const &ens, double beta,
                                               std::size_t n, std::uint64_t seed)
{
  return mc_estimate(ens, Observable::replica_gibbs(), beta, n, seed);
}

inline QuenchedEstimate expected_max_estimate(IndexedEnsemble const &ens, std::size_t n,
                                              std::uint64_t seed)
{
  return mc_estimate(ens, Observable::expected_max(), 0.0, n, seed);
}

//------------------------------------------------------------------------------
// Low-temperature threshold
//------------------------------------------------------------------------------

struct ThresholdResult
{
  double           beta_star = 0.0;
  double           lo        = 0.0;
  double           hi        = 0.0;
  double           target    = 0.0;  // c^2 a^2 / (2 Delta^2)
  QuenchedEstimate r_at_star;
  std::uint64_t    ensemble_fingerprint = 0;
  std::string      note;
};

/// Mean participation ratio at `beta` over realizations (seed, 0..n-1).
inline QuenchedEstimate participation_estimate(IndexedEnsemble const &ens, double beta,
                                               std::size_t n, std::uint64_t seed)
{
  return mc_estimate(ens, Observable::participation_ratio(), beta, n, seed);
}

/// Smallest beta (to within `resolution`) with 1 - r(beta) <= c^2 a^2 / (2 Delta^2),
/// found by bisection; r is nondecreasing per realization and every probe uses
/// the same realizations, so the bracket stays consistent.
/// `resolution` defaults to 1e-3 / sigma.
inline ThresholdResult beta_star(IndexedEnsemble const &ens, double c, std::size_t n,
                                 std::uint64_t seed, std::optional<double> resolution = {})
{
  if (!(c > 0.0 && c < 1.0))
  {
    fail(ErrorKind::InvalidParameter, "Sudakov constant must lie in (0, 1)");
  }
  check_sample_count(n);
  Geometry const &geo   = ens.geometry();
  double const    sigma = geo.sigma;
  double const    step  = resolution.value_or(1e-3 / sigma);
  if (!(step > 0.0))
  {
    fail(ErrorKind::InvalidParameter, "threshold resolution must be positive");
  }

  ThresholdResult out;
  out.ensemble_fingerprint = ens.fingerprint();
  out.target = c * c * geo.min_sep * geo.min_sep / (2.0 * geo.diameter * geo.diameter);

  double const uniform_gap = 1.0 - 1.0 / static_cast<double>(ens.size());
  if (out.target >= uniform_gap)
  {
    out.r_at_star = participation_estimate(ens, 0.0, n, seed);
    out.note      = "criterion already met at beta = 0";
    return out;
  }

  auto gap_at = [&](double beta) { return participation_estimate(ens, beta, n, seed); };

  double const beta_max = 1e4 / sigma;
  double       lo       = 0.0;
  double       hi       = 1.0 / sigma;
  auto         est      = gap_at(hi);
  while (1.0 - est.mean > out.target)
  {
    lo = hi;
    hi *= 2.0;
    if (hi > beta_max)
    {
      fail(ErrorKind::UnboundedThreshold,
           "1 - r(beta) = " + std::to_string(1.0 - est.mean) + " still above target " +
             std::to_string(out.target) + " at beta = " + std::to_string(lo) +
             " (limit " + std::to_string(beta_max) + ")");
    }
    est = gap_at(hi);
  }
  while (hi - lo > step)
  {
    double const mid = 0.5 * (lo + hi);
    auto         m   = gap_at(mid);
    if (1.0 - m.mean <= out.target)
    {
      hi  = mid;
      est = std::move(m);
    }
    else
    {
      lo = mid;
    }
  }
  out.beta_star = hi;
  out.lo        = lo;
  out.hi        = hi;
  out.r_at_star = std::move(est);
  return out;
}

}  // namespace gibbsmax
