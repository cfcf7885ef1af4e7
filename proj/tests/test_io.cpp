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

#include "fixtures.hpp"
#include "gibbsmax/gibbsmax.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

using namespace gibbsmax;
using nlohmann::json;

namespace {

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
  ADD_FAILURE() << "no gibbsmax::Error thrown";
  return ErrorKind::InvalidInput;
}

std::string message_of(auto &&fn)
{
  try
  {
    fn();
  }
  catch (Error const &e)
  {
    return e.what();
  }
  return {};
}

std::size_t count_lines(std::string const &text)
{
  std::size_t n = 0;
  for (char ch : text)
  {
    n += ch == '\n' ? 1 : 0;
  }
  return n;
}

struct ThreadGuard
{
  ~ThreadGuard() { set_thread_count(0); }
};

}  // namespace

TEST(FormatNumber, RoundTripAndSpecials)
{
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  double const x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(EnsembleJson, IidForm)
{
  auto const ens = ensemble_from_json(json::parse(R"({"iid": {"n": 4, "variance": 2.0}})"));
  EXPECT_EQ(ens.size(), 4u);
  EXPECT_TRUE(ens.is_iid());
}

TEST(EnsembleJson, CovarianceFormWithLabels)
{
  auto const ens = ensemble_from_json(
    json::parse(R"({"labels": ["a", "b"], "covariance": [[1, 0.5], [0.5, 2]]})"));
  EXPECT_EQ(ens.size(), 2u);
  EXPECT_EQ(ens.index_of("b"), 1u);
  EXPECT_FALSE(ens.is_iid());
}

TEST(EnsembleJson, LabelsOptional)
{
  auto const ens = ensemble_from_json(json::parse(R"({"covariance": [[1, 0], [0, 1]]})"));
  EXPECT_EQ(ens.size(), 2u);
}

TEST(EnsembleJson, AsymmetryNamesPair)
{
  auto const j = json::parse(R"({"labels": ["x", "y"], "covariance": [[1, 0.5], [0.2, 1]]})");
  EXPECT_EQ(kind_of([&] { ensemble_from_json(j); }), ErrorKind::Asymmetric);
  std::string const msg = message_of([&] { ensemble_from_json(j); });
  EXPECT_NE(msg.find("x"), std::string::npos) << msg;
  EXPECT_NE(msg.find("y"), std::string::npos) << msg;
}

TEST(EnsembleJson, NegativeEigenvalueReported)
{
  auto const j = json::parse(
    R"({"covariance": [[1, 0.9, 0.9], [0.9, 1, -0.9], [0.9, -0.9, 1]]})");
  EXPECT_EQ(kind_of([&] { ensemble_from_json(j); }), ErrorKind::NotPositiveSemidefinite);
  std::string const msg = message_of([&] { ensemble_from_json(j); });
  EXPECT_NE(msg.find("-0.8"), std::string::npos) << msg;
}

TEST(EnsembleJson, MalformedRejected)
{
  EXPECT_EQ(kind_of([] { ensemble_from_json(json::parse(R"({"foo": 1})")); }),
            ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { ensemble_from_json(json::parse(R"({"covariance": "no"})")); }),
            ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] {
              ensemble_from_json(json::parse(R"({"labels": ["a"], "covariance": [[1,0],[0,1]]})"));
            }),
            ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { load_ensemble("/nonexistent/ensemble.json"); }), ErrorKind::InvalidInput);
}

TEST(Csv, HeadersMatchRowArity)
{
  auto commas = [](std::string const &s) { return std::count(s.begin(), s.end(), ','); };
  auto const  ens = build_iid(2, 1.0);
  auto const  est = mc_estimate(ens, Observable::gibbs_average(), 1.0, 100, 7);
  EXPECT_EQ(commas(csv_row(est)), commas(kEstimateCsvHeader));
  auto const rep = g_upper(ens, 1.0, 100, 7, BoundConfig{});
  EXPECT_EQ(commas(csv_row(rep)), commas(kBoundCsvHeader));
  EXPECT_EQ(csv_row(est).rfind("gibbs_average,1,", 0), 0u);
}

TEST(Json, BoundReportFields)
{
  auto const ens = build_iid(2, 1.0);
  auto const j   = to_json(g_upper(ens, 1.0, 100, 7, BoundConfig{}));
  for (char const *key : {"name", "beta", "lhs_mean", "lhs_se", "rhs_mean", "rhs_se", "slack",
                          "z", "verdict"})
  {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(Svg, RendersSeriesAndLegend)
{
  svg::LineChart chart;
  chart.title  = "t <1>";
  chart.series = {{"one", {0, 1, 2}, {0, 1, 4}}, {"two", {0, 1, 2}, {1, 1, 1}, "#000", true}};
  std::string const out = svg::render(chart);
  EXPECT_EQ(out.rfind("<svg", 0), 0u);
  EXPECT_NE(out.find("</svg>"), std::string::npos);
  EXPECT_NE(out.find("t &lt;1&gt;"), std::string::npos);
  std::size_t polylines = 0;
  for (std::size_t pos = 0; (pos = out.find("<polyline", pos)) != std::string::npos; ++pos)
  {
    ++polylines;
  }
  EXPECT_EQ(polylines, 2u);
  EXPECT_NE(out.find("stroke-dasharray"), std::string::npos);
}

TEST(Svg, EmptyChartStillValid)
{
  std::string const out = svg::render(svg::LineChart{});
  EXPECT_NE(out.find("</svg>"), std::string::npos);
}

TEST(Experiment, BetaGrid)
{
  auto const g = parse_beta_grid("0:4:0.25");
  ASSERT_EQ(g.size(), 17u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 4.0);
  EXPECT_EQ(g[3], 0.75);
  EXPECT_EQ(parse_beta_grid("1:1:1").size(), 1u);
  for (char const *bad : {"1:2", "a:2:1", "0:1:0", "2:1:1", "0:1:-1", "0:1:1x"})
  {
    EXPECT_EQ(kind_of([&] { parse_beta_grid(bad); }), ErrorKind::InvalidParameter) << bad;
  }
}

TEST(Experiment, Observables)
{
  auto const ens = fixtures::correlated3();
  EXPECT_EQ(parse_observable("gibbs_average", ens).name(), "gibbs_average");
  EXPECT_EQ(parse_observable("renyi_to_uniform(0.5)", ens).name(),
            Observable::renyi_to_uniform(0.5).name());
  auto const sm = parse_observable("soft_max{a,c}", ens);
  EXPECT_EQ(sm.name(), Observable::soft_max({0, 2}).name());
  EXPECT_EQ(kind_of([&] { parse_observable("soft_max{a,zz}", ens); }), ErrorKind::Lookup);
  EXPECT_EQ(kind_of([&] { parse_observable("renyi_to_uniform(x)", ens); }),
            ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of([&] { parse_observable("nope", ens); }), ErrorKind::InvalidParameter);
}

TEST(Experiment, ConfigJson)
{
  auto const cfg = config_from_json(json::parse(
    R"({"command": "bounds", "beta_grid": "0:1:0.5", "n_samples": 500, "seed": 9,
        "format": "json", "ensemble": {"iid": {"n": 4, "variance": 1}}})"));
  EXPECT_EQ(cfg.command, Command::Bounds);
  EXPECT_EQ(cfg.beta_grid.size(), 3u);
  EXPECT_EQ(cfg.n_samples, 500u);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.format, Format::Json);
  EXPECT_EQ(kind_of([] { config_from_json(json::parse(R"({"sede": 1})")); }),
            ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { config_from_json(json::parse(R"({"command": "go"})")); }),
            ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of([] { config_from_json(json::parse(R"({"n_samples": 1})")); }),
            ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of([] { config_from_json(json::parse("[1]")); }), ErrorKind::InvalidInput);
}

TEST(Experiment, ResolveRejects)
{
  ExperimentConfig cfg;
  cfg.beta_grid = {1.0, 0.5};
  EXPECT_EQ(kind_of([&] { resolve(cfg); }), ErrorKind::InvalidParameter);
  cfg.beta_grid = {-1.0};
  EXPECT_EQ(kind_of([&] { resolve(cfg); }), ErrorKind::InvalidParameter);
  cfg           = {};
  cfg.plot      = true;
  EXPECT_EQ(kind_of([&] { resolve(cfg); }), ErrorKind::InvalidParameter);
  cfg   = {};
  cfg.c = 1.5;
  EXPECT_EQ(kind_of([&] { resolve(cfg); }), ErrorKind::InvalidParameter);
}

TEST(Experiment, HashIgnoresOutputOnly)
{
  ExperimentConfig a = resolve(ExperimentConfig{});
  ExperimentConfig b = a;
  b.output           = "/tmp/somewhere";
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
  b.seed = 43;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Experiment, EstimateAtZeroIsCentered)
{
  ExperimentConfig cfg;
  cfg.ensemble    = {{"iid", {{"n", 2}, {"variance", 1.0}}}};
  cfg.beta_grid   = {0.0};
  cfg.n_samples   = 10000;
  cfg.observables = {"gibbs_average"};
  cfg             = resolve(cfg);
  auto const out  = run(cfg);
  EXPECT_EQ(out.exit_code, kExitOk);
  std::istringstream in(out.primary);
  std::string        line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# config_hash=", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line, kEstimateCsvHeader);
  std::getline(in, line);
  auto const est = mc_estimate(build_iid(2, 1.0), Observable::gibbs_average(), 0.0, 10000, 42);
  EXPECT_EQ(line, csv_row(est));
  EXPECT_LE(std::abs(est.mean), 3.0 * est.std_error);
}

TEST(Experiment, RunIsIndependentOfThreadCount)
{
  ThreadGuard      guard;
  ExperimentConfig cfg;
  cfg.command   = Command::Bounds;
  cfg.ensemble  = {{"iid", {{"n", 4}, {"variance", 1.0}}}};
  cfg.beta_grid = {0.5, 2.0};
  cfg.n_samples = 3000;
  cfg           = resolve(cfg);
  set_thread_count(1);
  std::string const one = run(cfg).primary;
  set_thread_count(4);
  std::string const four = run(cfg).primary;
  set_thread_count(8);
  std::string const eight = run(cfg).primary;
  EXPECT_EQ(one, four);
  EXPECT_EQ(one, eight);
  EXPECT_GT(count_lines(one), 5u);
}

TEST(Experiment, JsonOutputParses)
{
  ExperimentConfig cfg;
  cfg.command   = Command::OracleCheck;
  cfg.ensemble  = {{"iid", {{"n", 2}, {"variance", 1.0}}}};
  cfg.beta_grid = {1.0};
  cfg.n_samples = 20000;
  cfg.format    = Format::Json;
  cfg           = resolve(cfg);
  auto const out = run(cfg);
  EXPECT_EQ(out.exit_code, kExitOk) << out.primary;
  auto const j = json::parse(out.primary);
  EXPECT_EQ(j.at("command"), "oracle-check");
  EXPECT_EQ(j.at("rows").size(), 6u);
}

TEST(Experiment, RemSweepSvg)
{
  ExperimentConfig cfg;
  cfg.command   = Command::RemSweep;
  cfg.n_spins   = 6;
  cfg.beta_grid = {0.0, 1.0, 2.0};
  cfg.n_samples = 200;
  cfg.output    = "unused";
  cfg.plot      = true;
  cfg           = resolve(cfg);
  auto const out = run(cfg);
  EXPECT_NE(out.svg.find("</svg>"), std::string::npos);
  EXPECT_NE(out.primary.find(kSweepCsvHeader), std::string::npos);
}
