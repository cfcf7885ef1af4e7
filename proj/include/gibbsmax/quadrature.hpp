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

// Deterministic expectations over X = L g for tiny index sets, used as the
// reference that the Monte Carlo estimators are checked against.

#include "gibbsmax/ensemble.hpp"
#include "gibbsmax/error.hpp"
#include "gibbsmax/gibbs.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

namespace gibbsmax {

struct QuadratureRule
{
  std::vector<double> nodes;
  std::vector<double> weights;  // sum to 1
};

/// Gauss-Hermite rule for E f(G), G ~ N(0, 1) (Golub-Welsch).
inline QuadratureRule gauss_hermite(std::size_t n)
{
  if (n < 1)
  {
    fail(ErrorKind::InvalidParameter, "Gauss-Hermite rule needs at least one node");
  }
  auto const      dim = static_cast<Eigen::Index>(n);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd sub(std::max<Eigen::Index>(dim - 1, 0));
  for (Eigen::Index k = 0; k + 1 < dim; ++k)
  {
    sub(k) = std::sqrt(static_cast<double>(k + 1));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  double total = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k)
  {
    double const v0    = eig.eigenvectors()(0, k);
    rule.nodes[k]      = eig.eigenvalues()(k);
    rule.weights[k]    = v0 * v0;
    total             += rule.weights[k];
  }
  for (double &w : rule.weights)
  {
    w /= total;
  }
  return rule;
}

inline constexpr std::size_t kOracleMaxSize = 4;

/// Default nodes per dimension: as many as keeps the tensor grid near 2e6 points.
inline std::size_t default_oracle_nodes(std::size_t dims) noexcept
{
  switch (dims)
  {
  case 1:
  case 2:
    return 256;
  case 3:
    return 128;
  default:
    return 36;
  }
}

/// E f(X) by tensor-product Gauss-Hermite quadrature on X = L g.
/// Accurate for smooth observables; ExpectedMax has a kink and converges
/// only algebraically.
inline double quadrature_oracle(IndexedEnsemble const &ens, Observable const &obs, double beta,
                                std::optional<std::size_t> nodes_per_dim = {})
{
  std::size_t const dims = ens.size();
  if (dims > kOracleMaxSize)
  {
    fail(ErrorKind::OracleScale, "quadrature oracle supports |T| <= 4, got |T| = " +
                                   std::to_string(dims));
  }
  std::size_t const nodes = nodes_per_dim.value_or(default_oracle_nodes(dims));
  if (nodes < 32)
  {
    fail(ErrorKind::InvalidParameter, "quadrature oracle needs >= 32 nodes per dimension");
  }
  detail::check_beta(beta);

  QuadratureRule const   rule = gauss_hermite(nodes);
  Eigen::MatrixXd const &L    = ens.factor();
  std::vector<std::size_t> idx(dims, 0);
  Eigen::VectorXd          g(static_cast<Eigen::Index>(dims));
  Realization              x(dims);
  long double              acc = 0.0L;
  for (;;)
  {
    double w = 1.0;
    for (std::size_t d = 0; d < dims; ++d)
    {
      g(static_cast<Eigen::Index>(d)) = rule.nodes[idx[d]];
      w *= rule.weights[idx[d]];
    }
    Eigen::Map<Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(dims)).noalias() = L * g;
    acc += static_cast<long double>(w) * evaluate(obs, ens, x, beta);

    std::size_t d = 0;
    while (d < dims && ++idx[d] == nodes)
    {
      idx[d] = 0;
      ++d;
    }
    if (d == dims)
    {
      break;
    }
  }
  return static_cast<double>(acc);
}

namespace detail {

template <typename F>
double integrate_gauss_kronrod(F f, double a, double b)
{
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-15,
                                                                       &error);
}

inline double normal_pdf(double x, double sd) noexcept
{
  return std::exp(-0.5 * (x / sd) * (x / sd)) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace detail

/// For two i.i.d. N(0, variance) points: g(beta) = E[(D/2) tanh(beta D / 2)],
/// D ~ N(0, 2 variance), by adaptive Gauss-Kronrod on the half line.
inline double two_point_gibbs_average(double variance, double beta)
{
  double const sd = std::sqrt(2.0 * variance);
  auto         f  = [&](double d) {
    return (0.5 * d) * std::tanh(0.5 * beta * d) * detail::normal_pdf(d, sd);
  };
  return 2.0 * detail::integrate_gauss_kronrod(f, 0.0, std::numeric_limits<double>::infinity());
}

/// For two i.i.d. N(0, variance) points: E max = E|D| / 2, D ~ N(0, 2 variance).
inline double two_point_expected_max(double variance)
{
  double const sd = std::sqrt(2.0 * variance);
  auto         f  = [&](double d) { return 0.5 * d * detail::normal_pdf(d, sd); };
  return 2.0 * detail::integrate_gauss_kronrod(f, 0.0, std::numeric_limits<double>::infinity());
}

}  // namespace gibbsmax
