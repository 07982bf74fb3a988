/*
 * Copyright 2026 The hnsf Authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hnsf/errors.hpp"
#include "hnsf/harness/commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

namespace hnsf::harness {

namespace {

void error_line(std::ostream& err, const char* kind, int code, const std::string& field, const std::string& message) {
  err << nlohmann::json{{"error", kind}, {"exit_code", code}, {"field", field}, {"message", message}}.dump() << '\n';
}

struct Options {
  std::string config_path;
  std::string out_dir = "hnsf_out";
  std::optional<std::uint64_t> seed;
  bool override_regularity = false;
  std::vector<int> levels;
  std::vector<double> epsilons;
  std::optional<int> ensemble;
  std::optional<int> trials;
  std::vector<double> alphas;
};

using Command = std::function<CommandResult(const RunConfig&, const std::filesystem::path&)>;

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic hyperviscous Navier-Stokes experiments on the 3D torus", "hnsf"};
  app.require_subcommand(1);
  Options opt;

  const std::map<std::string, std::pair<std::string, Command>> commands = {
      {"simulate", {"integrate one trajectory", cmd_simulate}},
      {"convergence", {"Galerkin and dt self-convergence tables", cmd_convergence}},
      {"uniqueness", {"pathwise-uniqueness probe with Gronwall fit", cmd_uniqueness}},
      {"ou-stats", {"OU variance and path-norm statistics", cmd_ou_stats}},
      {"inequalities", {"random-field estimates of the trilinear constants", cmd_inequalities}},
      {"alpha-sweep", {"regularity suites over a grid of alpha", cmd_alpha_sweep}},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", opt.config_path, "INI configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", opt.seed, "override solver.seed");
    sub->add_flag("--override-regularity", opt.override_regularity,
                  "run even when alpha + 2 gamma > theta + 3/2 fails");
    subs[name] = sub;
  }
  subs["convergence"]->add_option("--levels", opt.levels, "truncation radii")->delimiter(',');
  subs["uniqueness"]->add_option("--epsilon", opt.epsilons, "perturbation sizes")->delimiter(',');
  subs["ou-stats"]->add_option("--ensemble", opt.ensemble, "number of OU paths");
  subs["inequalities"]->add_option("--trials", opt.trials, "random triples per inequality");
  subs["alpha-sweep"]->add_option("--alphas", opt.alphas, "alpha grid within [1, 2]")->delimiter(',');

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    error_line(err, "usage", kConfigError, "", e.what());
    return kConfigError;
  }

  std::string name;
  for (const auto& [n, sub] : subs)
    if (sub->parsed()) name = n;
  const auto started = std::chrono::steady_clock::now();

  try {
    RunConfig cfg = opt.config_path.empty() ? RunConfig{} : load_config(opt.config_path);
    if (opt.seed) cfg.solver.seed = *opt.seed;
    if (opt.override_regularity) cfg.solver.override_regularity = true;
    if (!opt.levels.empty()) cfg.convergence.levels = opt.levels;
    if (!opt.epsilons.empty()) cfg.uniqueness.epsilons = opt.epsilons;
    if (opt.ensemble) cfg.ou.ensemble = *opt.ensemble;
    if (opt.trials) cfg.inequalities.trials = *opt.trials;
    if (!opt.alphas.empty()) cfg.sweep.alphas = opt.alphas;

    const std::filesystem::path dir(opt.out_dir);
    CommandResult result = commands.at(name).second(cfg, dir);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::ofstream(dir / "manifest.json") << make_manifest(name, cfg, dir, wall, result).dump(2) << '\n';
    out << result.summary;
    if (result.exit_code == kBlowUp) error_line(err, "blowup", kBlowUp, "", "trajectory blew up; see diagnostics");
    if (result.exit_code == kInternal) error_line(err, "internal", kInternal, "", "self-check failed; see summary");
    return result.exit_code;
  } catch (const ConfigError& e) {
    error_line(err, "config", kConfigError, e.field(), e.what());
    return kConfigError;
  } catch (const RegularityError& e) {
    error_line(err, "regularity", kConfigError, "gamma", e.what());
    return kConfigError;
  } catch (const BlowUpError& e) {
    error_line(err, "blowup", kBlowUp, "", e.what());
    return kBlowUp;
  } catch (const std::exception& e) {
    error_line(err, "internal", kInternal, "", e.what());
    return kInternal;
  }
}

}  // namespace hnsf::harness
