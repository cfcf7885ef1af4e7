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

#include "gibbsmax/error.hpp"
#include "gibbsmax/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

namespace gibbsmax {

/// One draw of the process, one coordinate per label (energy units).
using Realization = std::vector<double>;

/// A set of indices into an ensemble's labels.
using Subset = std::vector<std::size_t>;

struct EnsembleTolerances
{
  double symmetry_rel   = 1e-12;  // |S_st - S_ts| relative to max |S|
  double psd_rel        = 1e-10;  // lowest admissible eigenvalue / spectral norm
  double degenerate_rel = 1e-12;  // d^2(s,t) at or below this (times max |S|) counts as zero
};

/// Metric geometry of (T, d) with d(s,t) = sqrt(E|X_s - X_t|^2).
class Geometry
{
public:
  double min_sep  = 0.0;  // a
  double diameter = 0.0;  // Delta
  double sigma    = 0.0;  // max_t sqrt(S_tt)

  double distance(std::size_t s, std::size_t t) const noexcept
  {
    if (s == t)
    {
      return 0.0;
    }
    return uniform_ ? uniform_distance_
                    : dist_(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
  }

  std::size_t size() const noexcept
  {
    return size_;
  }

  /// Dense |T| x |T| distance matrix.
  Eigen::MatrixXd matrix() const
  {
    if (!uniform_)
    {
      return dist_;
    }
    auto const      n = static_cast<Eigen::Index>(size_);
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, uniform_distance_);
    m.diagonal().setZero();
    return m;
  }

  static Geometry uniform(std::size_t n, double variance)
  {
    Geometry geo;
    geo.size_             = n;
    geo.uniform_          = true;
    geo.uniform_distance_ = std::sqrt(2.0 * variance);
    geo.min_sep           = geo.uniform_distance_;
    geo.diameter          = geo.uniform_distance_;
    geo.sigma             = std::sqrt(variance);
    return geo;
  }

  static Geometry from_covariance(Eigen::MatrixXd const &cov)
  {
    auto const n = cov.rows();
    Geometry   geo;
    geo.size_ = static_cast<std::size_t>(n);
    geo.dist_.resize(n, n);
    geo.min_sep = std::numeric_limits<double>::infinity();
    for (Eigen::Index s = 0; s < n; ++s)
    {
      geo.sigma = std::max(geo.sigma, std::sqrt(cov(s, s)));
      for (Eigen::Index t = 0; t < n; ++t)
      {
        double const d2 = cov(s, s) + cov(t, t) - 2.0 * cov(s, t);
        double const d  = s == t ? 0.0 : std::sqrt(std::max(d2, 0.0));
        geo.dist_(s, t) = d;
        if (s != t)
        {
          geo.min_sep  = std::min(geo.min_sep, d);
          geo.diameter = std::max(geo.diameter, d);
        }
      }
    }
    return geo;
  }

private:
  Eigen::MatrixXd dist_;
  std::size_t     size_             = 0;
  bool            uniform_          = false;
  double          uniform_distance_ = 0.0;
};

/// Law of a centered Gaussian process on a finite index set.
///
/// Immutable after construction. A general law keeps its covariance and a
/// factor L with L L^T = covariance (Cholesky, or a clamped eigendecomposition
/// when the covariance is only semidefinite). An i.i.d. law keeps only its
/// variance, so index sets of 2^16 points stay cheap.
class IndexedEnsemble
{
public:
  std::size_t size() const noexcept
  {
    return labels_.size();
  }
  std::vector<std::string> const &labels() const noexcept
  {
    return labels_;
  }
  Geometry const &geometry() const noexcept
  {
    return geometry_;
  }

  double covariance(std::size_t s, std::size_t t) const noexcept
  {
    if (iid_)
    {
      return s == t ? variance_ : 0.0;
    }
    return covariance_(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
  }

  /// Dense covariance matrix.
  Eigen::MatrixXd covariance() const
  {
    if (!iid_)
    {
      return covariance_;
    }
    auto const n = static_cast<Eigen::Index>(size());
    return variance_ * Eigen::MatrixXd::Identity(n, n);
  }

  /// Dense factor L with L L^T = covariance.
  Eigen::MatrixXd factor() const
  {
    if (!iid_)
    {
      return factor_;
    }
    auto const n = static_cast<Eigen::Index>(size());
    return std::sqrt(variance_) * Eigen::MatrixXd::Identity(n, n);
  }

  bool factor_is_cholesky() const noexcept
  {
    return cholesky_;
  }

  /// True when the covariance is a scalar multiple of the identity.
  bool is_iid() const noexcept
  {
    return iid_;
  }

  /// Common variance when is_iid(); otherwise the largest variance.
  double max_variance() const noexcept
  {
    return geometry_.sigma * geometry_.sigma;
  }

  /// Stable fingerprint of (labels, covariance) used to catch results that
  /// are applied to the wrong ensemble.
  std::uint64_t fingerprint() const noexcept
  {
    return fingerprint_;
  }

  std::size_t index_of(std::string const &label) const
  {
    auto const it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
    {
      fail(ErrorKind::Lookup, "unknown label '" + label + "'");
    }
    return static_cast<std::size_t>(it - labels_.begin());
  }

  /// Writes x = L g with g standard normal drawn from `stream`.
  void sample_into(SampleStream &stream, std::span<double> out) const
  {
    auto const n = size();
    if (iid_)
    {
      double const sd = geometry_.sigma;
      for (std::size_t t = 0; t < n; ++t)
      {
        out[t] = sd * stream.normal();
      }
      return;
    }
    thread_local Eigen::VectorXd g;
    g.resize(static_cast<Eigen::Index>(n));
    stream.fill_normal(std::span<double>(g.data(), n));
    Eigen::Map<Eigen::VectorXd> x(out.data(), static_cast<Eigen::Index>(n));
    if (cholesky_)
    {
      x.noalias() = factor_.triangularView<Eigen::Lower>() * g;
    }
    else
    {
      x.noalias() = factor_ * g;
    }
  }

  friend IndexedEnsemble build_iid(std::vector<std::string> labels, double variance);
  friend IndexedEnsemble build_from_covariance(std::vector<std::string> labels,
                                               Eigen::MatrixXd const &covariance,
                                               EnsembleTolerances const &tol);

private:
  IndexedEnsemble() = default;

  void set_fingerprint()
  {
    std::uint64_t h   = 0xCBF29CE484222325ull;
    auto          mix = [&h](void const *data, std::size_t bytes) {
      auto const *p = static_cast<unsigned char const *>(data);
      for (std::size_t i = 0; i < bytes; ++i)
      {
        h ^= p[i];
        h *= 0x100000001B3ull;
      }
    };
    for (auto const &label : labels_)
    {
      mix(label.data(), label.size());
      mix("", 1);
    }
    if (iid_)
    {
      mix(&variance_, sizeof variance_);
    }
    else
    {
      mix(covariance_.data(), sizeof(double) * static_cast<std::size_t>(covariance_.size()));
    }
    fingerprint_ = h;
  }

  std::vector<std::string> labels_;
  Eigen::MatrixXd          covariance_;
  Eigen::MatrixXd          factor_;
  Geometry                 geometry_;
  double                   variance_    = 0.0;
  bool                     cholesky_    = true;
  bool                     iid_         = false;
  std::uint64_t            fingerprint_ = 0;
};

/// Labels "0", "1", ... used for generated ensembles.
inline std::vector<std::string> default_labels(std::size_t n)
{
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    labels.push_back(std::to_string(i));
  }
  return labels;
}

inline IndexedEnsemble build_iid(std::vector<std::string> labels, double variance)
{
  auto const n = labels.size();
  if (n < 2)
  {
    fail(ErrorKind::InvalidSize, "index set needs at least 2 points, got " + std::to_string(n));
  }
  if (!(variance > 0.0) || !std::isfinite(variance))
  {
    fail(ErrorKind::InvalidParameter, "variance must be positive and finite");
  }
  IndexedEnsemble ens;
  ens.labels_    = std::move(labels);
  ens.variance_  = variance;
  ens.cholesky_  = true;
  ens.iid_       = true;
  ens.geometry_  = Geometry::uniform(n, variance);
  ens.set_fingerprint();
  return ens;
}

inline IndexedEnsemble build_iid(std::size_t n, double variance)
{
  if (n < 2)
  {
    fail(ErrorKind::InvalidSize, "index set needs at least 2 points, got " + std::to_string(n));
  }
  return build_iid(default_labels(n), variance);
}

inline IndexedEnsemble build_from_covariance(std::vector<std::string> labels,
                                             Eigen::MatrixXd const   &covariance,
                                             EnsembleTolerances const &tol = {})
{
  auto const n = labels.size();
  if (n < 2)
  {
    fail(ErrorKind::InvalidSize, "index set needs at least 2 points, got " + std::to_string(n));
  }
  if (covariance.rows() != static_cast<Eigen::Index>(n) ||
      covariance.cols() != static_cast<Eigen::Index>(n))
  {
    std::ostringstream msg;
    msg << "covariance is " << covariance.rows() << "x" << covariance.cols() << " but there are "
        << n << " labels";
    fail(ErrorKind::InvalidInput, msg.str());
  }
  {
    std::unordered_set<std::string> seen;
    for (auto const &label : labels)
    {
      if (!seen.insert(label).second)
      {
        fail(ErrorKind::InvalidInput, "duplicate label '" + label + "'");
      }
    }
  }
  if (!covariance.allFinite())
  {
    fail(ErrorKind::InvalidInput, "covariance has non-finite entries");
  }

  double const scale = covariance.cwiseAbs().maxCoeff();
  auto const   dim   = static_cast<Eigen::Index>(n);
  for (Eigen::Index s = 0; s < dim; ++s)
  {
    for (Eigen::Index t = s + 1; t < dim; ++t)
    {
      if (std::abs(covariance(s, t) - covariance(t, s)) > tol.symmetry_rel * scale)
      {
        std::ostringstream msg;
        msg << "covariance not symmetric at (" << labels[s] << ", " << labels[t]
            << "): " << covariance(s, t) << " vs " << covariance(t, s);
        fail(ErrorKind::Asymmetric, msg.str());
      }
    }
  }

  Eigen::MatrixXd const sym = 0.5 * (covariance + covariance.transpose());

  for (Eigen::Index s = 0; s < dim; ++s)
  {
    for (Eigen::Index t = s + 1; t < dim; ++t)
    {
      double const d2 = sym(s, s) + sym(t, t) - 2.0 * sym(s, t);
      if (!(d2 > tol.degenerate_rel * scale))
      {
        std::ostringstream msg;
        msg << "d(" << labels[s] << ", " << labels[t] << ") = 0; points must be distinct in law";
        fail(ErrorKind::DegenerateMetric, msg.str());
      }
    }
  }

  IndexedEnsemble ens;
  ens.labels_     = std::move(labels);
  ens.covariance_ = sym;

  Eigen::LLT<Eigen::MatrixXd> llt(sym);
  if (llt.info() == Eigen::Success)
  {
    ens.factor_   = llt.matrixL();
    ens.cholesky_ = true;
  }
  else
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
    auto const  &values = eig.eigenvalues();
    double const norm   = values.cwiseAbs().maxCoeff();
    if (values.minCoeff() < -tol.psd_rel * norm)
    {
      std::ostringstream msg;
      msg.precision(17);
      msg << "covariance has negative eigenvalue " << values.minCoeff() << " (norm " << norm
          << ")";
      fail(ErrorKind::NotPositiveSemidefinite, msg.str());
    }
    Eigen::VectorXd const root = values.cwiseMax(0.0).cwiseSqrt();
    ens.factor_                = eig.eigenvectors() * root.asDiagonal();
    ens.cholesky_              = false;
  }

  bool iid        = true;
  double const v0 = sym(0, 0);
  for (Eigen::Index s = 0; s < dim && iid; ++s)
  {
    for (Eigen::Index t = 0; t < dim; ++t)
    {
      if ((s == t && sym(s, t) != v0) || (s != t && sym(s, t) != 0.0))
      {
        iid = false;
        break;
      }
    }
  }
  ens.iid_      = iid;
  ens.variance_ = iid ? v0 : 0.0;
  ens.geometry_ = iid ? Geometry::uniform(n, v0) : Geometry::from_covariance(sym);
  ens.set_fingerprint();
  return ens;
}

inline IndexedEnsemble build_from_covariance(std::vector<std::string>                labels,
                                             std::vector<std::vector<double>> const &rows,
                                             EnsembleTolerances const               &tol = {})
{
  auto const      n = rows.size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
  {
    if (rows[i].size() != n)
    {
      fail(ErrorKind::InvalidInput,
           "covariance row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
               " entries, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j)
    {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return build_from_covariance(std::move(labels), m, tol);
}

inline Geometry const &geometry(IndexedEnsemble const &ens) noexcept
{
  return ens.geometry();
}

inline Realization sample(IndexedEnsemble const &ens, SampleStream &stream)
{
  Realization x(ens.size());
  ens.sample_into(stream, x);
  return x;
}

/// Greedy packing in label order: keep a label iff it is at least `radius`
/// away from everything kept so far. The result is maximal.
inline Subset greedy_packing(IndexedEnsemble const &ens, double radius)
{
  if (!(radius > 0.0))
  {
    fail(ErrorKind::InvalidParameter, "packing radius must be positive");
  }
  auto const &geo = ens.geometry();
  Subset      kept;
  for (std::size_t t = 0; t < ens.size(); ++t)
  {
    bool const far = std::all_of(kept.begin(), kept.end(), [&](std::size_t s) {
      return geo.distance(s, t) >= radius;
    });
    if (far)
    {
      kept.push_back(t);
    }
  }
  return kept;
}

/// Closed ball {t : d(center, t) <= radius}.
inline Subset ball(IndexedEnsemble const &ens, std::size_t center, double radius)
{
  if (center >= ens.size())
  {
    fail(ErrorKind::Lookup, "ball center index " + std::to_string(center) + " out of range");
  }
  if (!(radius >= 0.0))
  {
    fail(ErrorKind::InvalidParameter, "ball radius must be nonnegative");
  }
  auto const &geo = ens.geometry();
  Subset      out;
  for (std::size_t t = 0; t < ens.size(); ++t)
  {
    if (geo.distance(center, t) <= radius)
    {
      out.push_back(t);
    }
  }
  return out;
}

inline Subset ball(IndexedEnsemble const &ens, std::string const &center, double radius)
{
  return ball(ens, ens.index_of(center), radius);
}

}  // namespace gibbsmax
