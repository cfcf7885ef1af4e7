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


// gibbsmax: command-line runner for the estimate, bounds, rem-sweep and
// oracle-check suites. Options may come from a JSON config (--config);
// flags given on the command line override it.

#include "gibbsmax/experiment.hpp"
#include "gibbsmax/parallel.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace gibbsmax;

/// One machine-parseable line on stderr.
void report_error(std::string_view kind, std::string message)
{
  for (char &ch : message)
  {
    if (ch == '\n' || ch == '\r')
    {
      ch = ' ';
    }
  }
  std::cerr << "error: kind=" << kind << " message=" << nlohmann::json(message).dump() << '\n';
}

void write_file(std::string const &path, std::string const &bytes)
{
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size())))
  {
    fail(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  }
}

struct Flags
{
  std::string              config;
  std::size_t              n = 0;
  std::uint64_t            seed = 0;
  std::vector<double>      beta;
  std::string              beta_grid;
  double                   c = 0.0;
  std::string              out;
  std::string              format;
  bool                     plot = false;
  unsigned                 threads = 0;
  std::size_t              iid = 0;
  double                   variance = 1.0;
  std::string              ensemble;
  std::vector<std::string> observables;
  std::size_t              n_spins = 0;
  double                   radius  = 0.0;
};

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Monte Carlo and quadrature checks of Gibbs-measure bounds on Gaussian maxima"};
  app.name("gibbsmax");
  app.require_subcommand(0, 1);

  Flags f;
  auto *o_config = app.add_option("--config", f.config, "JSON experiment config");
  auto *o_n      = app.add_option("--n", f.n, "Monte Carlo samples");
  auto *o_seed   = app.add_option("--seed", f.seed, "64-bit seed");
  auto *o_beta =
    app.add_option("--beta", f.beta, "inverse temperature(s), comma separated")->delimiter(',');
  auto *o_grid = app.add_option("--beta-grid", f.beta_grid, "grid as start:stop:step");
  auto *o_c    = app.add_option("--c", f.c, "Sudakov constant in (0, 1)");
  auto *o_out  = app.add_option("--out", f.out, "output path prefix (default: stdout)");
  auto *o_fmt  = app.add_option("--format", f.format, "csv or json")
                  ->check(CLI::IsMember({"csv", "json"}));
  auto *o_plot = app.add_flag("--plot", f.plot, "emit an SVG chart (rem-sweep)");
  app.add_option("--threads", f.threads, "worker threads (0: automatic)");
  auto *o_iid = app.add_option("--iid", f.iid, "i.i.d. ensemble with this many points");
  auto *o_var = app.add_option("--variance", f.variance, "variance for --iid");
  auto *o_ens = app.add_option("--ensemble", f.ensemble, "ensemble JSON file");
  auto *o_obs = app.add_option("--observable", f.observables,
                               "observable (repeatable), e.g. renyi_to_uniform(0.5)");
  auto *o_spins  = app.add_option("--n-spins", f.n_spins, "REM spins N (1..16)");
  auto *o_radius = app.add_option("--radius", f.radius, "ball radius for soft_super_sudakov");
  o_grid->excludes(o_beta);
  o_iid->excludes(o_ens);
  o_var->needs(o_iid);

  std::vector<CLI::App *> subs;
  for (auto const *name : {"estimate", "bounds", "rem-sweep", "oracle-check"})
  {
    auto *sub = app.add_subcommand(name, std::string("run the ") + name + " suite");
    sub->fallthrough();
    subs.push_back(sub);
  }

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::CallForHelp const &e)
  {
    return app.exit(e);
  }
  catch (CLI::CallForAllHelp const &e)
  {
    return app.exit(e);
  }
  catch (CLI::ParseError const &e)
  {
    report_error("usage", e.what());
    return kExitConfigError;
  }

  ExperimentConfig cfg;
  RunResult        result;
  try
  {
    if (*o_config)
    {
      std::ifstream in(f.config);
      if (!in)
      {
        fail(ErrorKind::InvalidInput, "cannot open config '" + f.config + "'");
      }
      nlohmann::json j;
      try
      {
        in >> j;
      }
      catch (nlohmann::json::exception const &e)
      {
        fail(ErrorKind::InvalidInput, "config '" + f.config + "' is not JSON: " + e.what());
      }
      cfg = config_from_json(j);
    }
    else if (app.get_subcommands().empty())
    {
      fail(ErrorKind::InvalidParameter, "give a subcommand or --config");
    }
    for (auto *sub : subs)
    {
      if (sub->parsed())
      {
        cfg.command = parse_command(sub->get_name());
      }
    }
    if (*o_n)
    {
      if (f.n < 2)
      {
        fail(ErrorKind::InvalidParameter, "--n must be >= 2");
      }
      cfg.n_samples = f.n;
    }
    if (*o_seed)
    {
      cfg.seed = f.seed;
    }
    if (*o_beta)
    {
      cfg.beta_grid = f.beta;
    }
    if (*o_grid)
    {
      cfg.beta_grid = parse_beta_grid(f.beta_grid);
    }
    if (*o_c)
    {
      cfg.c = f.c;
    }
    if (*o_out)
    {
      cfg.output = f.out;
    }
    if (*o_fmt)
    {
      cfg.format = f.format == "json" ? Format::Json : Format::Csv;
    }
    if (*o_plot)
    {
      cfg.plot = f.plot;
    }
    if (*o_iid)
    {
      cfg.ensemble = {{"iid", {{"n", f.iid}, {"variance", f.variance}}}};
    }
    if (*o_ens)
    {
      cfg.ensemble = f.ensemble;
    }
    if (*o_obs)
    {
      cfg.observables = f.observables;
    }
    if (*o_spins)
    {
      cfg.n_spins = f.n_spins;
    }
    if (*o_radius)
    {
      cfg.radius = f.radius;
    }
    set_thread_count(f.threads);

    cfg    = resolve(std::move(cfg));
    result = run(cfg);

    std::string const ext = cfg.format == Format::Csv ? ".csv" : ".json";
    if (cfg.output.empty())
    {
      std::cout << result.primary;
    }
    else
    {
      write_file(cfg.output + ext, result.primary);
      if (!result.svg.empty())
      {
        write_file(cfg.output + ".svg", result.svg);
      }
    }
    std::cerr << to_string(cfg.command) << ": " << result.summary << '\n';
  }
  catch (Error const &e)
  {
    std::string       msg    = e.what();
    std::string const prefix = std::string(to_string(e.kind())) + ": ";
    if (msg.rfind(prefix, 0) == 0)
    {
      msg.erase(0, prefix.size());
    }
    report_error(to_string(e.kind()), msg);
    return kExitConfigError;
  }
  catch (std::exception const &e)
  {
    report_error("internal", e.what());
    return kExitConfigError;
  }
  return result.exit_code;
}
