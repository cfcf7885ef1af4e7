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

// Both sides of each inequality on quenched soft maxima, estimated from the
// same realizations, with a statistical verdict.
//
// A report reads "lhs <= rhs" for upper bounds and "lhs >= rhs" for lower
// bounds; `slack` is signed so that a positive value always means the
// inequality holds, and z = slack / sqrt(lhs.se^2 + rhs.se^2).

#include "gibbsmax/ensemble.hpp"
#include "gibbsmax/error.hpp"
#include "gibbsmax/gibbs.hpp"
#include "gibbsmax/parallel.hpp"
#include "gibbsmax/quench.hpp"
#include "gibbsmax/rng.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gibbsmax {

struct BoundConfig
{
  double                c           = 1.0 / 17.0;  // Sudakov constant
  double                z_threshold = 3.0;
  std::optional<double> iid_high_temp_constant;     // defaults to c / sqrt(2)
  double                numerical_tolerance = 1e-9;

  double high_temp_constant() const noexcept
  {
    return iid_high_temp_constant.value_or(c / std::sqrt(2.0));
  }

  void validate() const
  {
    if (!(c > 0.0 && c < 1.0))
    {
      fail(ErrorKind::InvalidParameter, "Sudakov constant must lie in (0, 1)");
    }
    if (!(z_threshold > 0.0))
    {
      fail(ErrorKind::InvalidParameter, "z threshold must be positive");
    }
  }
};

struct Moment
{
  double mean = 0.0;
  double se   = 0.0;
};

enum class Verdict
{
  Holds,
  Violated,
  Inconclusive,
};

inline constexpr std::string_view to_string(Verdict v) noexcept
{
  switch (v)
  {
  case Verdict::Holds:
    return "holds";
  case Verdict::Violated:
    return "violated";
  case Verdict::Inconclusive:
    return "inconclusive";
  }
  return "inconclusive";
}

enum class Relation
{
  LhsAtMostRhs,
  LhsAtLeastRhs,
};

struct BoundReport
{
  std::string           name;
  double                beta = 0.0;
  Relation              relation = Relation::LhsAtMostRhs;
  Moment                lhs;
  Moment                rhs;
  double                slack   = 0.0;
  double                z       = 0.0;
  Verdict               verdict = Verdict::Inconclusive;
  bool                  out_of_regime = false;
  std::string           note;
  std::optional<Moment> full_set;  // soft_super_sudakov: E Phi_beta(X; T)
};

inline Moment to_moment(SampleSummary const &s) noexcept
{
  return {s.mean, s.std_error};
}

inline Moment to_moment(QuenchedEstimate const &e) noexcept
{
  return {e.mean, e.std_error};
}

namespace detail {

/// k sqrt(m) with delta-method error k se / (2 sqrt(m)). Sets `unreliable`
/// when m < 4 se, where the linearisation is not trustworthy.
inline Moment sqrt_moment(Moment m, double k, bool &unreliable) noexcept
{
  if (m.mean < 4.0 * m.se)
  {
    unreliable = true;
  }
  double const root = std::sqrt(std::max(m.mean, 0.0));
  double       se   = 0.0;
  if (root > 0.0)
  {
    se = k * m.se / (2.0 * root);
  }
  else if (m.se > 0.0)
  {
    se = std::numeric_limits<double>::infinity();
  }
  return {k * root, se};
}

}  // namespace detail

/// Fills slack, z and verdict.
inline BoundReport finish_report(BoundReport rep, BoundConfig const &cfg, bool force_inconclusive)
{
  double const diff = rep.rhs.mean - rep.lhs.mean;
  rep.slack         = rep.relation == Relation::LhsAtMostRhs ? diff : -diff;
  double const se   = std::sqrt(rep.lhs.se * rep.lhs.se + rep.rhs.se * rep.rhs.se);
  if (se > 0.0)
  {
    rep.z = rep.slack / se;
  }
  else
  {
    rep.z = rep.slack >= -cfg.numerical_tolerance ? std::numeric_limits<double>::infinity()
                                                  : -std::numeric_limits<double>::infinity();
  }
  if (force_inconclusive || rep.out_of_regime || !std::isfinite(se))
  {
    rep.verdict = Verdict::Inconclusive;
  }
  else if (rep.z < -cfg.z_threshold && rep.slack < -cfg.numerical_tolerance)
  {
    rep.verdict = Verdict::Violated;
  }
  else if (rep.slack >= -(cfg.numerical_tolerance + cfg.z_threshold * se))
  {
    rep.verdict = Verdict::Holds;
  }
  else
  {
    rep.verdict = Verdict::Inconclusive;
  }
  return rep;
}

namespace detail {

inline void require_iid(IndexedEnsemble const &ens, char const *bound)
{
  if (!ens.is_iid())
  {
    fail(ErrorKind::Regime, std::string(bound) + " requires an i.i.d. ensemble (scalar covariance)");
  }
}

/// Columns (<x>_beta, D(nu_beta || uniform)) under common random numbers.
inline std::pair<SampleSummary, SampleSummary>
gibbs_and_kl(IndexedEnsemble const &ens, double beta, std::size_t n, std::uint64_t seed)
{
  check_beta(beta);
  Columns const cols =
    ensemble_columns(ens, n, seed, 2, [&](std::span<double const> x, std::span<double> row) {
      row[0] = gibbs_average(x, beta);
      row[1] = kl_to_uniform(x, beta);
    });
  return {summarize(cols[0]), summarize(cols[1])};
}

}  // namespace detail

/// g(beta) <= sqrt(2 sigma^2 E D(nu_beta || uniform)).
inline BoundReport g_upper(IndexedEnsemble const &ens, double beta, std::size_t n,
                           std::uint64_t seed, BoundConfig const &cfg = {})
{
  cfg.validate();
  auto const [g, kl] = detail::gibbs_and_kl(ens, beta, n, seed);
  bool       shaky   = false;
  BoundReport rep;
  rep.name     = "g_upper";
  rep.beta     = beta;
  rep.relation = Relation::LhsAtMostRhs;
  rep.lhs      = to_moment(g);
  rep.rhs      = detail::sqrt_moment(to_moment(kl), std::sqrt(2.0 * ens.max_variance()), shaky);
  return finish_report(std::move(rep), cfg, shaky);
}

/// g(beta) <= sqrt(2 sigma^2 (log|T| - E H(nu_beta))).
inline BoundReport g_upper_entropy_form(IndexedEnsemble const &ens, double beta, std::size_t n,
                                        std::uint64_t seed, BoundConfig const &cfg = {})
{
  cfg.validate();
  detail::check_beta(beta);
  Columns const cols =
    ensemble_columns(ens, n, seed, 2, [&](std::span<double const> x, std::span<double> row) {
      row[0] = gibbs_average(x, beta);
      row[1] = shannon_entropy(x, beta);
    });
  SampleSummary const h       = summarize(cols[1]);
  double const        log_t   = std::log(static_cast<double>(ens.size()));
  Moment const        deficit = {log_t - h.mean, h.std_error};
  bool                shaky   = false;
  BoundReport         rep;
  rep.name     = "g_upper_entropy_form";
  rep.beta     = beta;
  rep.relation = Relation::LhsAtMostRhs;
  rep.lhs      = to_moment(summarize(cols[0]));
  rep.rhs      = detail::sqrt_moment(deficit, std::sqrt(2.0 * ens.max_variance()), shaky);
  return finish_report(std::move(rep), cfg, shaky);
}

/// g(beta) >= c a sqrt(E D(nu_beta || uniform)) for beta >= beta_*.
/// Below the threshold the report is flagged out of regime and inconclusive.
inline BoundReport g_lower_lowtemp(IndexedEnsemble const &ens, double beta,
                                   ThresholdResult const &threshold, std::size_t n,
                                   std::uint64_t seed, BoundConfig const &cfg = {})
{
  cfg.validate();
  if (threshold.ensemble_fingerprint != ens.fingerprint())
  {
    fail(ErrorKind::InvalidInput, "threshold was computed for a different ensemble");
  }
  auto const [g, kl] = detail::gibbs_and_kl(ens, beta, n, seed);
  bool       shaky   = false;
  BoundReport rep;
  rep.name     = "g_lower_lowtemp";
  rep.beta     = beta;
  rep.relation = Relation::LhsAtLeastRhs;
  rep.lhs      = to_moment(g);
  rep.rhs      = detail::sqrt_moment(to_moment(kl), cfg.c * ens.geometry().min_sep, shaky);
  if (beta < threshold.beta_star)
  {
    rep.out_of_regime = true;
    rep.note          = "beta below threshold " + std::to_string(threshold.beta_star);
  }
  return finish_report(std::move(rep), cfg, shaky);
}

/// i.i.d. case: g(beta) >= kappa sigma sqrt(E D(nu_beta || uniform)) with
/// kappa = cfg.high_temp_constant() below beta_* and kappa = c at or above it.
/// Without a threshold the high-temperature constant is used throughout; it is
/// the smaller of the two, so the bound stays valid for every beta.
inline BoundReport g_lower_iid(IndexedEnsemble const &ens, double beta, std::size_t n,
                               std::uint64_t seed, BoundConfig const &cfg = {},
                               ThresholdResult const *threshold = nullptr)
{
  cfg.validate();
  detail::require_iid(ens, "g_lower_iid");
  double kappa = cfg.high_temp_constant();
  BoundReport rep;
  if (threshold != nullptr)
  {
    if (threshold->ensemble_fingerprint != ens.fingerprint())
    {
      fail(ErrorKind::InvalidInput, "threshold was computed for a different ensemble");
    }
    if (beta >= threshold->beta_star)
    {
      kappa = cfg.c;
    }
  }
  else
  {
    rep.note = "no threshold supplied; high-temperature constant used";
  }
  auto const [g, kl] = detail::gibbs_and_kl(ens, beta, n, seed);
  bool shaky         = false;
  rep.name           = "g_lower_iid";
  rep.beta           = beta;
  rep.relation       = Relation::LhsAtLeastRhs;
  rep.lhs            = to_moment(g);
  rep.rhs = detail::sqrt_moment(to_moment(kl), kappa * ens.geometry().sigma, shaky);
  return finish_report(std::move(rep), cfg, shaky);
}

namespace detail {

inline std::pair<SampleSummary, SampleSummary>
free_energy_and_renyi_half(IndexedEnsemble const &ens, double beta, std::size_t n,
                           std::uint64_t seed)
{
  check_beta(beta);
  Columns const cols =
    ensemble_columns(ens, n, seed, 2, [&](std::span<double const> x, std::span<double> row) {
      row[0] = free_energy(x, beta);
      row[1] = renyi_half_via_participation(x, beta);
    });
  return {summarize(cols[0]), summarize(cols[1])};
}

}  // namespace detail

/// phi(beta) <= sqrt(2 sigma^2 E D_{1/2}(nu_beta || uniform)).
inline BoundReport phi_upper(IndexedEnsemble const &ens, double beta, std::size_t n,
                             std::uint64_t seed, BoundConfig const &cfg = {})
{
  cfg.validate();
  auto const [phi, d_half] = detail::free_energy_and_renyi_half(ens, beta, n, seed);
  bool       shaky         = false;
  BoundReport rep;
  rep.name     = "phi_upper";
  rep.beta     = beta;
  rep.relation = Relation::LhsAtMostRhs;
  rep.lhs      = to_moment(phi);
  rep.rhs = detail::sqrt_moment(to_moment(d_half), std::sqrt(2.0 * ens.max_variance()), shaky);
  return finish_report(std::move(rep), cfg, shaky);
}

/// i.i.d. case: phi(beta) >= (c sigma / 2) sqrt(E D_{1/2}(nu_beta || uniform)).
inline BoundReport phi_lower_iid(IndexedEnsemble const &ens, double beta, std::size_t n,
                                 std::uint64_t seed, BoundConfig const &cfg = {})
{
  cfg.validate();
  detail::require_iid(ens, "phi_lower_iid");
  auto const [phi, d_half] = detail::free_energy_and_renyi_half(ens, beta, n, seed);
  bool       shaky         = false;
  BoundReport rep;
  rep.name     = "phi_lower_iid";
  rep.beta     = beta;
  rep.relation = Relation::LhsAtLeastRhs;
  rep.lhs      = to_moment(phi);
  rep.rhs = detail::sqrt_moment(to_moment(d_half), 0.5 * cfg.c * ens.geometry().sigma, shaky);
  return finish_report(std::move(rep), cfg, shaky);
}

/// Zero-temperature baselines around E max X:
/// E max <= sqrt(2 sigma^2 log|T|) and E max >= c a sqrt(log|T|).
inline std::pair<BoundReport, BoundReport> max_bounds(IndexedEnsemble const &ens, std::size_t n,
                                                      std::uint64_t      seed,
                                                      BoundConfig const &cfg = {})
{
  cfg.validate();
  QuenchedEstimate const emax  = expected_max_estimate(ens, n, seed);
  double const           log_t = std::log(static_cast<double>(ens.size()));

  BoundReport upper;
  upper.name     = "gauss_max";
  upper.relation = Relation::LhsAtMostRhs;
  upper.lhs      = to_moment(emax);
  upper.rhs      = {std::sqrt(2.0 * ens.max_variance() * log_t), 0.0};

  BoundReport lower;
  lower.name     = "sudakov";
  lower.relation = Relation::LhsAtLeastRhs;
  lower.lhs      = to_moment(emax);
  lower.rhs      = {cfg.c * ens.geometry().min_sep * std::sqrt(log_t), 0.0};

  return {finish_report(std::move(upper), cfg, false), finish_report(std::move(lower), cfg, false)};
}

/// Packing and balls used by soft_super_sudakov at ball radius `radius`.
struct SudakovCover
{
  double              radius = 0.0;
  Subset              packing;  // greedy 4 radius packing
  std::vector<Subset> balls;    // B(s, radius) for s in packing
  Subset              union_of_balls;
};

inline SudakovCover sudakov_cover(IndexedEnsemble const &ens, double radius)
{
  SudakovCover cover;
  cover.radius  = radius;
  cover.packing = greedy_packing(ens, 4.0 * radius);
  std::vector<bool> in_union(ens.size(), false);
  for (std::size_t s : cover.packing)
  {
    cover.balls.push_back(ball(ens, s, radius));
    for (std::size_t t : cover.balls.back())
    {
      in_union[t] = true;
    }
  }
  for (std::size_t t = 0; t < ens.size(); ++t)
  {
    if (in_union[t])
    {
      cover.union_of_balls.push_back(t);
    }
  }
  return cover;
}

/// Seed tag for the auxiliary standard Gaussian vector on the packing.
inline constexpr std::uint64_t kSudakovAuxTag = 0x5375646B6F76ull;

/// Soft super-Sudakov minoration with packing 4 rho and balls of radius rho:
///   E Phi_beta(X; U B(s, rho)) >= rho E Phi_{beta rho}(G; S)
///                                 + (1/|S|) sum_s E Phi_beta(X; B(s, rho)).
/// rho defaults to sigma = max standard deviation. Since d(s,t) <= 2 sigma for
/// any centered process, that default always gives |S| = 1; pass a smaller
/// radius to see a nontrivial packing.
inline BoundReport soft_super_sudakov(IndexedEnsemble const &ens, double beta, std::size_t n,
                                      std::uint64_t seed, BoundConfig const &cfg = {},
                                      std::optional<double> radius = {})
{
  cfg.validate();
  if (!(beta > 0.0) || !std::isfinite(beta))
  {
    fail(ErrorKind::InvalidParameter, "soft_super_sudakov needs a finite beta > 0");
  }
  double const rho = radius.value_or(ens.geometry().sigma);
  if (!(rho > 0.0))
  {
    fail(ErrorKind::InvalidParameter, "ball radius must be positive");
  }
  SudakovCover const  cover    = sudakov_cover(ens, rho);
  std::size_t const   k        = cover.packing.size();
  std::uint64_t const aux_seed = derive_seed(seed, kSudakovAuxTag);

  Columns const cols =
    ensemble_columns(ens, n, seed, 3, [&](std::span<double const> x, std::span<double> row) {
      row[0] = soft_max(x, beta, cover.union_of_balls);
      row[2] = soft_max(x, beta);
      double balls = 0.0;
      for (auto const &b : cover.balls)
      {
        balls += soft_max(x, beta, b);
      }
      row[1] = balls / static_cast<double>(k);
    });

  // G is independent of X: sample i draws it from its own stream family.
  Columns const aux = sample_columns(n, aux_seed, 1, [&](std::size_t, SampleStream &stream,
                                                         std::span<double> row) {
    std::vector<double> g(k);
    stream.fill_normal(g);
    row[0] = k == 1 ? rho * g[0] : rho * soft_max(g, beta * rho);
  });

  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    rhs[i] = aux[0][i] + cols[1][i];
  }

  BoundReport rep;
  rep.name     = "soft_super_sudakov";
  rep.beta     = beta;
  rep.relation = Relation::LhsAtLeastRhs;
  rep.lhs      = to_moment(summarize(cols[0]));
  rep.rhs      = to_moment(summarize(rhs));
  rep.full_set = to_moment(summarize(cols[2]));
  rep.note     = "packing size " + std::to_string(k) + ", ball radius " + std::to_string(rho);
  return finish_report(std::move(rep), cfg, false);
}

/// Slacks of the per-realization sandwiches at one beta; every slack is
/// nonnegative when the inequalities hold:
///   max x <= Phi_beta <= max x + log|T|/beta,
///   max x - log|T|/beta <= <x>_beta <= max x.
struct SandwichDiagnostics
{
  double softmax_lower = 0.0;  // Phi - max
  double softmax_upper = 0.0;  // max + log|T|/beta - Phi
  double gibbs_lower   = 0.0;  // <x> - (max - log|T|/beta)
  double gibbs_upper   = 0.0;  // max - <x>
  bool   all_hold      = false;
};

inline SandwichDiagnostics sandwich_suite(std::span<double const> x, double beta,
                                          double tolerance = 1e-9)
{
  if (!(beta > 0.0))
  {
    fail(ErrorKind::InvalidParameter, "sandwich_suite needs beta > 0");
  }
  double const m     = detail::max_of(x);
  double const width = std::log(static_cast<double>(x.size())) / beta;
  double const phi   = soft_max(x, beta);
  double const g     = gibbs_average(x, beta);

  SandwichDiagnostics out;
  out.softmax_lower = phi - m;
  out.softmax_upper = m + width - phi;
  out.gibbs_lower   = g - (m - width);
  out.gibbs_upper   = m - g;
  out.all_hold      = out.softmax_lower >= -tolerance && out.softmax_upper >= -tolerance &&
                 out.gibbs_lower >= -tolerance && out.gibbs_upper >= -tolerance;
  return out;
}

}  // namespace gibbsmax
