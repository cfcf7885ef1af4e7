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


// Shared test ensembles.

#include "gibbsmax/ensemble.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <vector>

namespace fixtures {

/// Correlated three-point law with mixed-sign correlations.
inline gibbsmax::IndexedEnsemble correlated3()
{
  Eigen::Matrix3d cov;
  cov << 1.0, 0.4, -0.2, 0.4, 1.5, 0.3, -0.2, 0.3, 0.8;
  return gibbsmax::build_from_covariance({"a", "b", "c"}, cov);
}

/// Correlated two-point law.
inline gibbsmax::IndexedEnsemble correlated2()
{
  Eigen::Matrix2d cov;
  cov << 1.0, 0.6, 0.6, 2.0;
  return gibbsmax::build_from_covariance({"a", "b"}, cov);
}

/// Stationary chain on eight sites, Cov = rho^|s - t|.
inline gibbsmax::IndexedEnsemble chain8(double rho = 0.5)
{
  Eigen::MatrixXd cov(8, 8);
  for (int s = 0; s < 8; ++s)
  {
    for (int t = 0; t < 8; ++t)
    {
      cov(s, t) = std::pow(rho, std::abs(s - t));
    }
  }
  return gibbsmax::build_from_covariance(gibbsmax::default_labels(8), cov);
}

/// Linear process X_t = <p_t, Y>, Y ~ N(0, I_2), on two clusters of six points
/// around (1, 0) and (-1, 0). Every point is within 0.3 of its cluster's first
/// point and the clusters are at least 1.6 apart, so a 0.4 ball radius gives a
/// two-point packing whose balls are the clusters. The covariance has rank 2.
inline gibbsmax::IndexedEnsemble two_clusters()
{
  std::vector<std::array<double, 2>> const offsets = {
    {0.0, 0.0}, {0.1, 0.1}, {-0.1, 0.15}, {0.2, -0.1}, {-0.15, -0.2}, {0.05, 0.25}};
  Eigen::MatrixXd p(12, 2);
  for (int k = 0; k < 6; ++k)
  {
    p(k, 0)     = 1.0 + offsets[k][0];
    p(k, 1)     = offsets[k][1];
    p(k + 6, 0) = -1.0 - offsets[k][1];
    p(k + 6, 1) = offsets[k][0];
  }
  Eigen::MatrixXd const cov = p * p.transpose();
  return gibbsmax::build_from_covariance(gibbsmax::default_labels(12), cov);
}

inline constexpr double kTwoClusterRadius = 0.4;

}  // namespace fixtures
