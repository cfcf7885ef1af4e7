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

#include <stdexcept>
#include <string>
#include <string_view>

namespace gibbsmax {

enum class ErrorKind
{
  InvalidSize,
  InvalidParameter,
  InvalidInput,
  Asymmetric,
  NotPositiveSemidefinite,
  DegenerateMetric,
  Lookup,
  Scale,
  Regime,
  UnboundedThreshold,
  OracleScale,
};

inline constexpr std::string_view to_string(ErrorKind kind) noexcept
{
  switch (kind)
  {
  case ErrorKind::InvalidSize:
    return "invalid-size";
  case ErrorKind::InvalidParameter:
    return "invalid-parameter";
  case ErrorKind::InvalidInput:
    return "invalid-input";
  case ErrorKind::Asymmetric:
    return "asymmetric-covariance";
  case ErrorKind::NotPositiveSemidefinite:
    return "not-positive-semidefinite";
  case ErrorKind::DegenerateMetric:
    return "degenerate-metric";
  case ErrorKind::Lookup:
    return "lookup";
  case ErrorKind::Scale:
    return "scale";
  case ErrorKind::Regime:
    return "regime";
  case ErrorKind::UnboundedThreshold:
    return "unbounded-threshold";
  case ErrorKind::OracleScale:
    return "oracle-scale";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI's machine-readable error line) can dispatch on it.
class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, std::string const &message)
    : std::runtime_error(message)
    , kind_(kind)
  {}

  ErrorKind kind() const noexcept
  {
    return kind_;
  }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string const &message)
{
  throw Error(kind, std::string(to_string(kind)) + ": " + message);
}

}  // namespace gibbsmax
