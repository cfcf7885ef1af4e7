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

// Ensemble files and CSV / JSON rendering of estimates, bound reports and
// pressure sweeps. Numbers are printed in shortest round-trip form so the
// same values always give the same bytes.

#include "gibbsmax/bounds.hpp"
#include "gibbsmax/ensemble.hpp"
#include "gibbsmax/error.hpp"
#include "gibbsmax/quench.hpp"
#include "gibbsmax/rem.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

namespace gibbsmax {

inline std::string format_number(double v)
{
  if (std::isnan(v))
  {
    return "nan";
  }
  if (std::isinf(v))
  {
    return v > 0 ? "inf" : "-inf";
  }
  if (v == 0.0)
  {
    return "0";  // no "-0"
  }
  char       buf[64];
  auto const res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Accepts {"labels": [...], "covariance": [[...], ...]} or
/// {"iid": {"n": ..., "variance": ...}}.
inline IndexedEnsemble ensemble_from_json(nlohmann::json const &j,
                                          EnsembleTolerances const &tol = {})
{
  try
  {
    if (j.contains("iid"))
    {
      auto const &iid = j.at("iid");
      auto const  n   = iid.at("n").get<long long>();
      if (n < 0)
      {
        fail(ErrorKind::InvalidSize, "iid.n must be nonnegative");
      }
      return build_iid(static_cast<std::size_t>(n), iid.at("variance").get<double>());
    }
    if (!j.contains("covariance"))
    {
      fail(ErrorKind::InvalidInput, "ensemble needs either \"iid\" or \"covariance\"");
    }
    auto const rows = j.at("covariance").get<std::vector<std::vector<double>>>();
    std::vector<std::string> labels;
    if (j.contains("labels"))
    {
      for (auto const &l : j.at("labels"))
      {
        labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
      }
    }
    else
    {
      labels = default_labels(rows.size());
    }
    if (labels.size() != rows.size())
    {
      fail(ErrorKind::InvalidInput, std::to_string(labels.size()) + " labels but " +
                                      std::to_string(rows.size()) + " covariance rows");
    }
    return build_from_covariance(std::move(labels), rows, tol);
  }
  catch (nlohmann::json::exception const &e)
  {
    fail(ErrorKind::InvalidInput, std::string("malformed ensemble JSON: ") + e.what());
  }
}

inline IndexedEnsemble load_ensemble(std::string const &path, EnsembleTolerances const &tol = {})
{
  std::ifstream in(path);
  if (!in)
  {
    fail(ErrorKind::InvalidInput, "cannot open ensemble file '" + path + "'");
  }
  nlohmann::json j;
  try
  {
    in >> j;
  }
  catch (nlohmann::json::exception const &e)
  {
    fail(ErrorKind::InvalidInput, "ensemble file '" + path + "' is not JSON: " + e.what());
  }
  return ensemble_from_json(j, tol);
}

//------------------------------------------------------------------------------
// CSV
//------------------------------------------------------------------------------

inline constexpr char const *kEstimateCsvHeader = "observable,beta,mean,std_error,n_samples,seed";
inline constexpr char const *kBoundCsvHeader =
  "name,beta,lhs_mean,lhs_se,rhs_mean,rhs_se,slack,z,verdict";
inline constexpr char const *kSweepCsvHeader =
  "beta,p_hat,p_se,q_lower,q_upper_min,q_upper_cap,limit,sandwich_verdict";

inline std::string csv_row(QuenchedEstimate const &e)
{
  std::ostringstream out;
  out << e.observable.name() << ',' << format_number(e.beta) << ',' << format_number(e.mean) << ','
      << format_number(e.std_error) << ',' << e.n_samples << ',' << e.seed;
  return out.str();
}

inline std::string csv_row(BoundReport const &r)
{
  std::ostringstream out;
  out << r.name << ',' << format_number(r.beta) << ',' << format_number(r.lhs.mean) << ','
      << format_number(r.lhs.se) << ',' << format_number(r.rhs.mean) << ','
      << format_number(r.rhs.se) << ',' << format_number(r.slack) << ',' << format_number(r.z)
      << ',' << to_string(r.verdict);
  return out.str();
}

inline std::string csv_row(PressureRow const &r)
{
  std::ostringstream out;
  out << format_number(r.beta) << ',' << format_number(r.p_hat.mean) << ','
      << format_number(r.p_hat.std_error) << ',' << format_number(r.q_lower) << ','
      << format_number(r.q_upper_min) << ',' << format_number(r.q_upper_cap) << ','
      << format_number(r.limit) << ',' << to_string(r.sandwich);
  return out.str();
}

//------------------------------------------------------------------------------
// JSON
//------------------------------------------------------------------------------

inline nlohmann::json to_json(QuenchedEstimate const &e)
{
  return {{"observable", e.observable.name()}, {"beta", e.beta},          {"mean", e.mean},
          {"std_error", e.std_error},          {"n_samples", e.n_samples}, {"seed", e.seed}};
}

inline nlohmann::json to_json(BoundReport const &r)
{
  nlohmann::json j = {{"name", r.name},
                      {"beta", r.beta},
                      {"lhs_mean", r.lhs.mean},
                      {"lhs_se", r.lhs.se},
                      {"rhs_mean", r.rhs.mean},
                      {"rhs_se", r.rhs.se},
                      {"slack", r.slack},
                      {"z", std::isfinite(r.z) ? nlohmann::json(r.z)
                                               : nlohmann::json(format_number(r.z))},
                      {"verdict", std::string(to_string(r.verdict))}};
  if (r.out_of_regime)
  {
    j["out_of_regime"] = true;
  }
  if (!r.note.empty())
  {
    j["note"] = r.note;
  }
  if (r.full_set)
  {
    j["full_set_mean"] = r.full_set->mean;
    j["full_set_se"]   = r.full_set->se;
  }
  return j;
}

inline nlohmann::json to_json(PressureRow const &r)
{
  return {{"beta", r.beta},
          {"p_hat", r.p_hat.mean},
          {"p_se", r.p_hat.std_error},
          {"q_lower", r.q_lower},
          {"q_upper_min", r.q_upper_min},
          {"q_upper_cap", r.q_upper_cap},
          {"limit", r.limit},
          {"sandwich_verdict", std::string(to_string(r.sandwich))}};
}

}  // namespace gibbsmax
