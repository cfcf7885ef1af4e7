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

// Quantities of a single realization x at fixed inverse temperature beta:
// log-partition, Gibbs weights, soft maxima, participation ratio, entropy and
// divergences of the Gibbs measure from the uniform measure.
//
// Every exponential goes through log_sum_exp with the running maximum
// factored out, so beta * x may be as large as ~1e6 without overflow.

#include "gibbsmax/ensemble.hpp"
#include "gibbsmax/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace gibbsmax {

namespace detail {

inline void check_beta(double beta)
{
  if (!(beta >= 0.0) || !std::isfinite(beta))
  {
    fail(ErrorKind::InvalidParameter, "inverse temperature must be finite and >= 0");
  }
}

inline void check_finite(std::span<double const> x)
{
  if (x.empty())
  {
    fail(ErrorKind::InvalidInput, "empty realization");
  }
  for (double v : x)
  {
    if (!std::isfinite(v))
    {
      fail(ErrorKind::InvalidInput, "realization has non-finite entries");
    }
  }
}

inline double max_of(std::span<double const> x) noexcept
{
  return *std::max_element(x.begin(), x.end());
}

/// log sum_t exp(scale * (x_t - shift)); requires scale * (x_t - shift) <= 0
/// for the maximizer, i.e. shift = max x.
inline double shifted_lse(std::span<double const> x, double scale, double shift) noexcept
{
  double acc = 0.0;
  for (double v : x)
  {
    acc += std::exp(scale * (v - shift));
  }
  return std::log(acc);
}

/// Gibbs average of (x - shift) at `beta`.
inline double shifted_average(std::span<double const> x, double beta, double shift) noexcept
{
  double num = 0.0;
  double den = 0.0;
  for (double v : x)
  {
    double const w = std::exp(beta * (v - shift));
    num += w * (v - shift);
    den += w;
  }
  return num / den;
}

}  // namespace detail

/// Numerically stable log sum_t exp(v_t).
inline double log_sum_exp(std::span<double const> v)
{
  if (v.empty())
  {
    fail(ErrorKind::InvalidInput, "log_sum_exp of an empty set");
  }
  double const m = detail::max_of(v);
  if (m == -std::numeric_limits<double>::infinity())
  {
    return m;
  }
  return m + detail::shifted_lse(v, 1.0, m);
}

/// Lambda(beta) = log sum_t exp(beta x_t). Lambda(0) = log |T| exactly.
inline double log_partition(std::span<double const> x, double beta)
{
  detail::check_beta(beta);
  detail::check_finite(x);
  if (beta == 0.0)
  {
    return std::log(static_cast<double>(x.size()));
  }
  double const m = detail::max_of(x);
  return beta * m + detail::shifted_lse(x, beta, m);
}

struct GibbsState
{
  double              beta  = 0.0;
  double              log_z = 0.0;
  std::vector<double> log_weights;
  std::vector<double> weights;

  std::size_t size() const noexcept
  {
    return weights.size();
  }
};

inline GibbsState gibbs_measure(std::span<double const> x, double beta)
{
  GibbsState state;
  state.beta  = beta;
  state.log_z = log_partition(x, beta);
  state.log_weights.resize(x.size());
  state.weights.resize(x.size());
  if (beta == 0.0)
  {
    double const lw = -std::log(static_cast<double>(x.size()));
    std::fill(state.log_weights.begin(), state.log_weights.end(), lw);
    std::fill(state.weights.begin(), state.weights.end(), 1.0 / static_cast<double>(x.size()));
    return state;
  }
  double const m     = detail::max_of(x);
  double const shift = state.log_z - beta * m;
  for (std::size_t t = 0; t < x.size(); ++t)
  {
    state.log_weights[t] = beta * (x[t] - m) - shift;
    state.weights[t]     = std::exp(state.log_weights[t]);
  }
  return state;
}

/// <x>_beta; equals Lambda'(beta).
inline double gibbs_average(GibbsState const &state, std::span<double const> x)
{
  if (state.size() != x.size())
  {
    fail(ErrorKind::InvalidInput, "Gibbs state and realization differ in length");
  }
  double acc = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t)
  {
    acc += state.weights[t] * x[t];
  }
  return acc;
}

inline double gibbs_average(std::span<double const> x, double beta)
{
  detail::check_beta(beta);
  detail::check_finite(x);
  double const m = detail::max_of(x);
  return m + detail::shifted_average(x, beta, m);
}

/// <x^2>_beta - <x>_beta^2; equals Lambda''(beta).
inline double gibbs_variance(std::span<double const> x, double beta)
{
  GibbsState const state = gibbs_measure(x, beta);
  double const     mean  = gibbs_average(state, x);
  double           acc   = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t)
  {
    acc += state.weights[t] * (x[t] - mean) * (x[t] - mean);
  }
  return acc;
}

/// (1/beta) log sum_{t in subset} exp(beta x_t).
inline double soft_max(std::span<double const> x, double beta, std::span<std::size_t const> subset)
{
  if (!(beta > 0.0) || !std::isfinite(beta))
  {
    fail(ErrorKind::InvalidParameter, "soft_max needs a finite beta > 0");
  }
  if (subset.empty())
  {
    fail(ErrorKind::InvalidInput, "soft_max over an empty subset");
  }
  detail::check_finite(x);
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t t : subset)
  {
    if (t >= x.size())
    {
      fail(ErrorKind::InvalidInput, "subset index out of range");
    }
    m = std::max(m, x[t]);
  }
  double acc = 0.0;
  for (std::size_t t : subset)
  {
    acc += std::exp(beta * (x[t] - m));
  }
  return m + std::log(acc) / beta;
}

inline double soft_max(std::span<double const> x, double beta)
{
  if (!(beta > 0.0) || !std::isfinite(beta))
  {
    fail(ErrorKind::InvalidParameter, "soft_max needs a finite beta > 0");
  }
  detail::check_finite(x);
  double const m = detail::max_of(x);
  return m + detail::shifted_lse(x, beta, m) / beta;
}

/// log ||nu_beta||_2^2 = Lambda(2 beta) - 2 Lambda(beta).
inline double log_participation_ratio(std::span<double const> x, double beta)
{
  detail::check_beta(beta);
  detail::check_finite(x);
  if (beta == 0.0)
  {
    return -std::log(static_cast<double>(x.size()));
  }
  double const m = detail::max_of(x);
  return detail::shifted_lse(x, 2.0 * beta, m) - 2.0 * detail::shifted_lse(x, beta, m);
}

/// ||nu_beta||_2^2 = Z(2 beta) / Z(beta)^2, in [1/|T|, 1].
inline double participation_ratio(std::span<double const> x, double beta)
{
  return std::exp(log_participation_ratio(x, beta));
}

/// d/dbeta ||nu_beta||_2^2 = 2 ||nu_beta||_2^2 (<x>_{2 beta} - <x>_beta).
inline double participation_derivative(std::span<double const> x, double beta)
{
  detail::check_beta(beta);
  detail::check_finite(x);
  double const m = detail::max_of(x);
  double const gap =
    detail::shifted_average(x, 2.0 * beta, m) - detail::shifted_average(x, beta, m);
  return 2.0 * participation_ratio(x, beta) * gap;
}

/// D(nu_beta || uniform) = log|T| + beta <x>_beta - Lambda(beta).
inline double kl_to_uniform(std::span<double const> x, double beta)
{
  detail::check_beta(beta);
  detail::check_finite(x);
  if (beta == 0.0)
  {
    return 0.0;
  }
  double const m = detail::max_of(x);
  return std::log(static_cast<double>(x.size())) + beta * detail::shifted_average(x, beta, m) -
         detail::shifted_lse(x, beta, m);
}

/// Order-alpha Renyi divergence of nu_beta from uniform,
/// log|T| + (Lambda(alpha beta) - alpha Lambda(beta)) / (alpha - 1).
/// Within 1e-8 of alpha = 1 the KL form is returned instead.
inline double renyi_to_uniform(std::span<double const> x, double beta, double alpha)
{
  if (!(alpha > 0.0) || !std::isfinite(alpha))
  {
    fail(ErrorKind::InvalidParameter, "Renyi order must be finite and > 0");
  }
  if (std::abs(alpha - 1.0) < 1e-8)
  {
    return kl_to_uniform(x, beta);
  }
  detail::check_beta(beta);
  detail::check_finite(x);
  if (beta == 0.0)
  {
    return 0.0;
  }
  double const m = detail::max_of(x);
  double const num =
    detail::shifted_lse(x, alpha * beta, m) - alpha * detail::shifted_lse(x, beta, m);
  return std::log(static_cast<double>(x.size())) + num / (alpha - 1.0);
}

/// D_{1/2}(nu_beta || uniform) = log|T| + log ||nu_{beta/2}||_2^2.
inline double renyi_half_via_participation(std::span<double const> x, double beta)
{
  return std::log(static_cast<double>(x.size())) + log_participation_ratio(x, 0.5 * beta);
}

/// H(mu) with 0 log 0 = 0.
inline double shannon_entropy(GibbsState const &state) noexcept
{
  double h = 0.0;
  for (std::size_t t = 0; t < state.size(); ++t)
  {
    if (state.weights[t] > 0.0)
    {
      h -= state.weights[t] * state.log_weights[t];
    }
  }
  return h;
}

inline double shannon_entropy(std::span<double const> x, double beta)
{
  return shannon_entropy(gibbs_measure(x, beta));
}

/// (beta/2) sum_{s,t} d^2(s,t) nu(s) nu(t): the two-replica form of <x>_beta.
inline double replica_statistic(Geometry const &geo, std::span<double const> x, double beta)
{
  GibbsState const state = gibbs_measure(x, beta);
  std::size_t const n     = x.size();
  if (geo.size() != n)
  {
    fail(ErrorKind::InvalidInput, "geometry and realization differ in length");
  }
  double acc = 0.0;
  for (std::size_t s = 0; s < n; ++s)
  {
    double row = 0.0;
    for (std::size_t t = 0; t < n; ++t)
    {
      double const d = geo.distance(s, t);
      row += d * d * state.weights[t];
    }
    acc += state.weights[s] * row;
  }
  return 0.5 * beta * acc;
}

/// Collapsed replica form for i.i.d. N(0, variance): beta variance (1 - ||nu||^2).
inline double replica_statistic_iid(double variance, std::span<double const> x, double beta)
{
  return beta * variance * (1.0 - participation_ratio(x, beta));
}

//------------------------------------------------------------------------------
// Observables: per-realization functionals that quench averages.
//------------------------------------------------------------------------------

enum class ObservableKind
{
  GibbsAverage,
  FreeEnergy,
  SoftMax,
  ParticipationRatio,
  KLToUniform,
  RenyiToUniform,
  ShannonEntropy,
  ExpectedMax,
  ReplicaGibbs,
};

struct Observable
{
  ObservableKind kind  = ObservableKind::GibbsAverage;
  Subset         subset;       // SoftMax only; empty means the whole index set
  double         alpha = 1.0;  // RenyiToUniform only

  static Observable gibbs_average()
  {
    return {ObservableKind::GibbsAverage, {}, 1.0};
  }
  static Observable free_energy()
  {
    return {ObservableKind::FreeEnergy, {}, 1.0};
  }
  static Observable soft_max(Subset subset = {})
  {
    return {ObservableKind::SoftMax, std::move(subset), 1.0};
  }
  static Observable participation_ratio()
  {
    return {ObservableKind::ParticipationRatio, {}, 1.0};
  }
  static Observable kl_to_uniform()
  {
    return {ObservableKind::KLToUniform, {}, 1.0};
  }
  static Observable renyi_to_uniform(double alpha)
  {
    if (!(alpha > 0.0))
    {
      fail(ErrorKind::InvalidParameter, "Renyi order must be > 0");
    }
    return {ObservableKind::RenyiToUniform, {}, alpha};
  }
  static Observable shannon_entropy()
  {
    return {ObservableKind::ShannonEntropy, {}, 1.0};
  }
  static Observable expected_max()
  {
    return {ObservableKind::ExpectedMax, {}, 1.0};
  }
  static Observable replica_gibbs()
  {
    return {ObservableKind::ReplicaGibbs, {}, 1.0};
  }

  std::string name() const
  {
    switch (kind)
    {
    case ObservableKind::GibbsAverage:
      return "gibbs_average";
    case ObservableKind::FreeEnergy:
      return "free_energy";
    case ObservableKind::SoftMax:
      return "soft_max";
    case ObservableKind::ParticipationRatio:
      return "participation_ratio";
    case ObservableKind::KLToUniform:
      return "kl_to_uniform";
    case ObservableKind::RenyiToUniform: {
      std::string a = std::to_string(alpha);
      a.erase(a.find_last_not_of('0') + 1);
      if (!a.empty() && a.back() == '.')
      {
        a.pop_back();
      }
      return "renyi_to_uniform(" + a + ")";
    }
    case ObservableKind::ShannonEntropy:
      return "shannon_entropy";
    case ObservableKind::ExpectedMax:
      return "expected_max";
    case ObservableKind::ReplicaGibbs:
      return "replica_gibbs";
    }
    return "unknown";
  }
};

/// phi(x; beta) = (Lambda(beta) - log|T|) / beta, with the beta = 0 limit 0.
inline double free_energy(std::span<double const> x, double beta)
{
  detail::check_beta(beta);
  detail::check_finite(x);
  if (beta == 0.0)
  {
    return 0.0;
  }
  double const m = detail::max_of(x);
  return m + (detail::shifted_lse(x, beta, m) - std::log(static_cast<double>(x.size()))) / beta;
}

/// Evaluates `obs` on one realization drawn from `ens`.
inline double evaluate(Observable const &obs, IndexedEnsemble const &ens,
                       std::span<double const> x, double beta)
{
  switch (obs.kind)
  {
  case ObservableKind::GibbsAverage:
    return gibbs_average(x, beta);
  case ObservableKind::FreeEnergy:
    return free_energy(x, beta);
  case ObservableKind::SoftMax:
    return obs.subset.empty() ? soft_max(x, beta) : soft_max(x, beta, obs.subset);
  case ObservableKind::ParticipationRatio:
    return participation_ratio(x, beta);
  case ObservableKind::KLToUniform:
    return kl_to_uniform(x, beta);
  case ObservableKind::RenyiToUniform:
    return renyi_to_uniform(x, beta, obs.alpha);
  case ObservableKind::ShannonEntropy:
    return shannon_entropy(x, beta);
  case ObservableKind::ExpectedMax:
    detail::check_finite(x);
    return detail::max_of(x);
  case ObservableKind::ReplicaGibbs:
    if (ens.is_iid())
    {
      return replica_statistic_iid(ens.max_variance(), x, beta);
    }
    return replica_statistic(ens.geometry(), x, beta);
  }
  fail(ErrorKind::InvalidParameter, "unknown observable");
}

}  // namespace gibbsmax
