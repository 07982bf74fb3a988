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

#include "hnsf/harness/commands.hpp"

#include "hnsf/errors.hpp"
#include "hnsf/random.hpp"
#include "hnsf/snapshot.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace hnsf::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json num(double x) { return std::isfinite(x) ? json(x) : json(); }

class NdjsonWriter {
 public:
  explicit NdjsonWriter(const fs::path& path) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
  }
  void write(const json& j) { out_ << j.dump() << '\n'; }

 private:
  std::ofstream out_;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

fs::path prepare(const fs::path& out_dir, const RunConfig& cfg) {
  fs::create_directories(out_dir);
  write_text(out_dir / "config.ini", serialize_config(cfg));
  return out_dir;
}

void finish(const fs::path& out_dir, CommandResult& result) {
  if (!result.flags.empty()) {
    result.summary += "flags:\n";
    for (const auto& f : result.flags) result.summary += "  " + f + "\n";
  }
  write_text(out_dir / "summary.txt", result.summary);
}

SolverConfig at_level(const SolverConfig& base, int trunc_n) {
  SolverConfig c = base;
  c.torus = make_torus(base.torus.period, trunc_n);
  return c;
}

void check_mode_cap(const std::vector<int>& levels, long cap, const std::string& field) {
  for (int n : levels) {
    if (n < 1) throw ConfigError(field, "truncation levels must be >= 1");
    const long count = mode_count(n);
    if (count > cap)
      throw ConfigError("convergence.max_modes",
                        fmt::format("trunc_n = {} has {} modes, above the cap of {}", n, count, cap));
  }
}

std::uint64_t snapshot_stride(std::uint64_t steps) { return std::max<std::uint64_t>(1, steps / 50); }

std::string proven_label(int s, double alpha, double gamma) {
  switch (s) {
    case 0:
      return alpha > 1.5 && gamma > 0.75 ? "proven: s=0 yes (alpha > 3/2)" : "proven: s=0 no (H0 needs alpha > 3/2)";
    case 1:
      return alpha >= 1.25 && gamma > 0.75 ? "proven: s=1 yes (alpha >= 5/4)"
                                           : "proven: s=1 no (outside proven H1 regime)";
    default:
      return alpha >= 1.25 && check_regularity_condition(alpha, gamma, s)
                 ? fmt::format("proven: s={} yes (alpha >= 5/4, alpha + 2 gamma > s + 3/2)", s)
                 : fmt::format("proven: s={} no", s);
  }
}

}  // namespace

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("sha256 init failed");
  }
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

json make_manifest(const std::string& command, const RunConfig& cfg, const fs::path& out_dir, double wall_seconds,
                   const CommandResult& result) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(out_dir)) {
    if (entry.is_regular_file() && entry.path().filename() != "manifest.json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  json artifacts = json::array();
  for (const auto& f : files) {
    artifacts.push_back({{"file", f.filename().string()}, {"bytes", fs::file_size(f)}, {"sha256", sha256_file(f)}});
  }
  return {{"command", command},
          {"code_version", HNSF_VERSION},
          {"output_dir", out_dir.string()},
          {"seed", cfg.solver.seed},
          {"config", serialize_config(cfg)},
          {"wall_time_s", wall_seconds},
          {"exit_code", result.exit_code},
          {"flags", result.flags},
          {"artifacts", artifacts}};
}

CommandResult cmd_simulate(const RunConfig& cfg, const fs::path& out_dir) {
  const SolverConfig& sc = cfg.solver;
  validate(sc);
  const LatticePtr lattice = Lattice::get(sc.torus);
  const SpectralField u0 = make_initial(cfg.initial, lattice);
  prepare(out_dir, cfg);

  const Trajectory traj = simulate(sc, u0);
  {
    NdjsonWriter diag(out_dir / "diagnostics.ndjson");
    for (const auto& r : traj.records) diag.write(to_json(r));
    if (traj.blowup)
      diag.write({{"blowup", {{"t", traj.blowup->t}, {"h1_norm", num(traj.blowup->h1_norm)}, {"reason", traj.blowup->reason}}}});
  }
  if (!traj.snapshots.empty()) {
    std::ofstream snap(out_dir / "snapshots.bin", std::ios::binary);
    NdjsonWriter index(out_dir / "snapshots_index.ndjson");
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
      write_snapshot(snap, traj.snapshots[i].second);
      index.write({{"index", i}, {"t", traj.snapshots[i].first}});
    }
  }
  if (traj.final_state) write_snapshot(out_dir / "final.bin", *traj.final_state);
  if (cfg.noise_dump && sc.mode != SolverMode::deterministic) {
    std::ofstream noise(out_dir / "noise.bin", std::ios::binary);
    const NoiseConfig nc = noise_config(sc);
    const std::uint64_t done = traj.records.size() - 1;
    for (std::uint64_t n = 0; n < done; ++n)
      write_snapshot(noise, ou_increment(lattice, nc, sc.dt, n, noise_substeps(sc)));
  }

  CommandResult res;
  std::string& s = res.summary;
  s += fmt::format("simulate  mode={} trunc_n={} grid_n={} nu={} alpha={} gamma={} dt={} T={} seed={}\n",
                   to_string(sc.mode), sc.torus.trunc_n, sc.torus.grid_n, sc.nu, sc.alpha, sc.gamma, sc.dt, sc.T,
                   sc.seed);
  s += fmt::format("{:>10} {:>14} {:>14} {:>14} {:>14} {:>10}\n", "t", "|u|_0", "|u|_1", "|u|_alpha", "energy_res",
                   "div_res");
  const std::size_t stride = std::max<std::size_t>(1, traj.records.size() / 10);
  for (std::size_t i = 0; i < traj.records.size(); ++i) {
    if (i % stride != 0 && i + 1 != traj.records.size()) continue;
    const auto& r = traj.records[i];
    s += fmt::format("{:>10.4f} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e} {:>10.2e}\n", r.t, r.norms.at("0"),
                     r.norms.at("1"), r.norms.at("alpha"), r.energy_residual, r.divergence_residual);
  }
  if (sc.mode == SolverMode::deterministic) s += fmt::format("energy defect {:.6e}\n", energy_defect(traj));
  if (traj.blowup) {
    s += fmt::format("BLOW-UP at t={} ({})\n", traj.blowup->t, traj.blowup->reason);
    res.exit_code = kBlowUp;
  }
  if (sc.override_regularity && !check_regularity_condition(sc.alpha, sc.gamma, sc.alpha) &&
      sc.mode != SolverMode::deterministic)
    res.flags.push_back("regularity guard overridden: alpha + 2 gamma > alpha + 3/2 fails");
  finish(out_dir, res);
  return res;
}

CommandResult cmd_convergence(const RunConfig& cfg, const fs::path& out_dir) {
  const SolverConfig& sc = cfg.solver;
  const auto& levels = cfg.convergence.levels;
  if (levels.size() < 2) throw ConfigError("convergence.levels", "at least two levels are required");
  if (cfg.convergence.dt_halvings < 0) throw ConfigError("convergence.dt_halvings", "must be >= 0");
  check_mode_cap(levels, cfg.convergence.max_modes, "convergence.levels");
  validate(sc);
  for (int n : levels) validate(at_level(sc, n));
  prepare(out_dir, cfg);

  CommandResult res;
  std::string& s = res.summary;
  const std::uint64_t steps = step_count(sc);

  // Galerkin self-differences.
  std::vector<Trajectory> runs;
  for (int n : levels) {
    SolverConfig c = at_level(sc, n);
    c.snapshot_every = static_cast<int>(snapshot_stride(steps));
    runs.push_back(simulate(c, make_initial(cfg.initial, Lattice::get(c.torus))));
    if (runs.back().blowup) res.exit_code = kBlowUp;
  }
  NdjsonWriter galerkin(out_dir / "convergence_galerkin.ndjson");
  s += fmt::format("convergence  mode={} dt={} T={} seed={}\n", to_string(sc.mode), sc.dt, sc.T, sc.seed);
  s += fmt::format("{:>8} {:>8} {:>16}\n", "n", "2n", "sup_t |u_n-u_2n|_1");
  bool monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
    const double d = sup_h1_difference(runs[i], runs[i + 1]);
    galerkin.write({{"n", levels[i]}, {"next", levels[i + 1]}, {"sup_h1_diff", num(d)},
                    {"blowup", runs[i].blowup.has_value() || runs[i + 1].blowup.has_value()}});
    s += fmt::format("{:>8} {:>8} {:>16.6e}\n", levels[i], levels[i + 1], d);
    if (!(d < prev)) monotone = false;
    prev = d;
  }
  if (!monotone) res.flags.push_back("non-monotone Galerkin self-convergence");

  // dt refinement on the first level, sharing one Brownian path.
  const int h = cfg.convergence.dt_halvings;
  if (h > 0) {
    SolverConfig base = at_level(sc, levels.front());
    const double finest = sc.dt / std::ldexp(1.0, h);
    if (base.noise_dt == 0.0) base.noise_dt = finest;
    const LatticePtr lat = Lattice::get(base.torus);
    const SpectralField u0 = make_initial(cfg.initial, lat);
    std::vector<Trajectory> dts;
    for (int k = 0; k <= h; ++k) {
      SolverConfig c = base;
      c.dt = sc.dt / std::ldexp(1.0, k);
      c.snapshot_every = static_cast<int>(snapshot_stride(steps)) << k;
      validate(c);
      dts.push_back(simulate(c, u0));
      if (dts.back().blowup) res.exit_code = kBlowUp;
    }
    // Exact reference for a lone shear mode without noise: pure decay.
    const bool analytic = cfg.initial.kind == InitialKind::single_mode && sc.mode == SolverMode::deterministic;
    s += fmt::format("{:>10} {:>16} {:>10} {:>16}\n", "dt", "|u_dt-u_dt/2|", "ratio", analytic ? "analytic_err" : "");
    NdjsonWriter refine(out_dir / "convergence_dt.ndjson");
    double last = std::numeric_limits<double>::quiet_NaN();
    for (int k = 0; k <= h; ++k) {
      const auto& tr = dts[static_cast<std::size_t>(k)];
      const double d = k < h ? sup_h1_difference(tr, dts[static_cast<std::size_t>(k) + 1])
                             : std::numeric_limits<double>::quiet_NaN();
      const double ratio = last / d;
      json row{{"dt", tr.config.dt}, {"sup_h1_diff_to_half", num(d)}, {"ratio", num(ratio)}};
      double err = std::numeric_limits<double>::quiet_NaN();
      if (analytic && tr.final_state) {
        SpectralField exact = u0;
        const Eigen::ArrayXd decay = ou_decay(*lat, sc.nu, sc.alpha, sc.T);
        exact.coeffs().array().rowwise() *= decay.transpose().cast<Complex>();
        err = sobolev_norm(*tr.final_state - exact, 1.0);
        row["analytic_h1_error"] = err;
      }
      refine.write(row);
      s += fmt::format("{:>10.6f} {:>16.6e} {:>10.4f} {:>16}\n", tr.config.dt, d, ratio,
                       analytic ? fmt::format("{:.3e}", err) : "");
      last = d;
    }
  }
  finish(out_dir, res);
  return res;
}

CommandResult cmd_uniqueness(const RunConfig& cfg, const fs::path& out_dir) {
  const SolverConfig& sc = cfg.solver;
  validate(sc);
  if (cfg.uniqueness.epsilons.empty()) throw ConfigError("uniqueness.epsilons", "empty list");
  for (double e : cfg.uniqueness.epsilons)
    if (!(e >= 0.0) || !std::isfinite(e)) throw ConfigError("uniqueness.epsilons", "must be finite and >= 0");
  const LatticePtr lat = Lattice::get(sc.torus);
  const SpectralField u0 = make_initial(cfg.initial, lat);
  const SpectralField pert =
      smooth_random_field(lat, cfg.uniqueness.perturbation_seed, std::min(cfg.initial.radius, lat->trunc_n()), 1.0);
  prepare(out_dir, cfg);

  CommandResult res;
  std::vector<std::pair<double, UniquenessReport>> reports;
  for (double eps : cfg.uniqueness.epsilons) reports.emplace_back(eps, uniqueness_probe(sc, u0, u0 + eps * pert));

  // Reference constant: the envelope of the smallest positive epsilon.
  double c_ref = std::numeric_limits<double>::quiet_NaN();
  double eps_ref = std::numeric_limits<double>::infinity();
  for (const auto& [eps, rep] : reports)
    if (eps > 0.0 && eps < eps_ref && std::isfinite(rep.c_envelope)) {
      eps_ref = eps;
      c_ref = rep.c_envelope;
    }

  NdjsonWriter rows(out_dir / "uniqueness.ndjson");
  NdjsonWriter samples(out_dir / "uniqueness_samples.ndjson");
  std::string& s = res.summary;
  s += fmt::format("uniqueness  mode={} trunc_n={} alpha={} gamma={} dt={} T={} seed={}\n", to_string(sc.mode),
                   sc.torus.trunc_n, sc.alpha, sc.gamma, sc.dt, sc.T, sc.seed);
  s += fmt::format("{:>10} {:>10} {:>14} {:>14} {:>14} {:>12}\n", "epsilon", "identical", "c_envelope", "c_lsq",
                   "|U(T)|_1", "ref_bound");
  for (const auto& [eps, rep] : reports) {
    json j = to_json(rep);
    j.erase("samples");
    j["epsilon"] = eps;
    const bool holds = std::isfinite(c_ref) ? gronwall_bound_holds(rep, c_ref) : true;
    j["bound_with_reference_c"] = holds;
    rows.write(j);
    for (const auto& smp : rep.samples)
      samples.write({{"epsilon", eps}, {"t", smp.t}, {"diff_h1", smp.diff_h1}, {"integral", smp.integral},
                     {"exponent", num(smp.exponent)}});
    s += fmt::format("{:>10.3e} {:>10} {:>14.6f} {:>14.6f} {:>14.6e} {:>12}\n", eps, rep.identical ? "yes" : "no",
                     rep.c_envelope, rep.c_least_squares, rep.samples.back().diff_h1, holds ? "holds" : "VIOLATED");
    if (rep.blowup) res.exit_code = kBlowUp;
    if (eps == 0.0 && !rep.identical) {
      res.flags.push_back("epsilon = 0 trajectories are not bitwise identical");
      res.exit_code = kInternal;
    }
    if (!holds)
      res.flags.push_back(fmt::format("epsilon = {} exceeds the envelope with c = {} from epsilon = {}", eps, c_ref, eps_ref));
  }
  finish(out_dir, res);
  return res;
}

CommandResult cmd_ou_stats(const RunConfig& cfg, const fs::path& out_dir) {
  const SolverConfig& sc = cfg.solver;
  const NoiseConfig nc = noise_config(sc);
  validate(nc);
  validate(sc.torus);
  if (cfg.ou.ensemble < 2) throw ConfigError("ou.ensemble", "at least two members are required");
  if (!(sc.T >= 0.0) || !std::isfinite(sc.T)) throw ConfigError("T", "must be >= 0");
  if (!(sc.dt > 0.0)) throw ConfigError("dt", "must be > 0");
  std::uint64_t steps = 0;
  if (sc.T > 0.0) steps = step_count(sc);
  const LatticePtr lat = Lattice::get(sc.torus);
  prepare(out_dir, cfg);

  CommandResult res;
  const bool admissible = check_regularity_condition(sc.alpha, sc.gamma, cfg.ou.theta);
  if (!admissible)
    res.flags.push_back(fmt::format("theta = {} violates alpha + 2 gamma > theta + 3/2 ({} + 2*{})", cfg.ou.theta,
                                    sc.alpha, sc.gamma));

  const std::vector<Eigen::Index>& half = lat->half();
  Eigen::ArrayXd sum = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(half.size()));
  Eigen::ArrayXd sum2 = sum;
  std::vector<double> sup_norms;
  NdjsonWriter paths(out_dir / "ou_paths.ndjson");
  const int members = cfg.ou.ensemble;
  for (int e = 0; e < members; ++e) {
    NoiseConfig c = nc;
    c.seed = derive_seed(nc.seed, static_cast<std::uint64_t>(e));
    SpectralField z(lat);
    double sup = 0.0;
    for (std::uint64_t n = 0; n < steps; ++n) {
      z = ou_exact_step(z, c, sc.dt, n, noise_substeps(sc));
      sup = std::max(sup, sobolev_norm(z, cfg.ou.theta));
    }
    for (std::size_t i = 0; i < half.size(); ++i) {
      const double x = z.coeffs().col(half[i]).squaredNorm() / 4.0;
      sum(static_cast<Eigen::Index>(i)) += x;
      sum2(static_cast<Eigen::Index>(i)) += x * x;
    }
    sup_norms.push_back(sup);
    paths.write({{"member", e}, {"seed", c.seed}, {"sup_norm_theta", sup}});
  }

  const Eigen::ArrayXd analytic = sc.T > 0.0 ? ou_step_variance(*lat, nc, sc.T) : Eigen::ArrayXd::Zero(lat->size());
  NdjsonWriter modes(out_dir / "ou_modes.ndjson");
  int within = 0;
  double worst_z = 0.0;
  for (std::size_t i = 0; i < half.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const double mean = sum(ii) / members;
    const double var = std::max(0.0, (sum2(ii) - sum(ii) * sum(ii) / members) / (members - 1));
    const double se = std::sqrt(var / members);
    const double expected = analytic(half[i]);
    const double z = se > 0.0 ? (mean - expected) / se : (mean == expected ? 0.0 : INFINITY);
    if (std::abs(z) <= 3.0) ++within;
    worst_z = std::max(worst_z, std::abs(z));
    const Eigen::Vector3i k = lat->wavenumbers().col(half[i]);
    modes.write({{"k", {k(0), k(1), k(2)}}, {"lambda", lat->eigenvalues()(half[i])}, {"empirical_variance", mean},
                 {"analytic_variance", expected}, {"std_error", se}, {"z_score", num(z)}});
  }

  std::string& s = res.summary;
  if (!admissible) s += "WARNING: " + res.flags.front() + "\n";
  s += fmt::format("ou-stats  trunc_n={} nu={} alpha={} gamma={} theta={} dt={} T={} ensemble={} seed={}\n",
                   sc.torus.trunc_n, sc.nu, sc.alpha, sc.gamma, cfg.ou.theta, sc.dt, sc.T, members, sc.seed);
  s += fmt::format("per-real-coordinate variance at T: {}/{} modes within 3 standard errors (max |z| = {:.3f})\n",
                   within, half.size(), worst_z);
  const auto [mn, mx] = std::minmax_element(sup_norms.begin(), sup_norms.end());
  double mean_sup = 0.0;
  for (double x : sup_norms) mean_sup += x / members;
  s += fmt::format("sup_t |z|_theta over members: min {:.6e} mean {:.6e} max {:.6e}\n", *mn, mean_sup, *mx);
  finish(out_dir, res);
  return res;
}

CommandResult cmd_inequalities(const RunConfig& cfg, const fs::path& out_dir) {
  const SolverConfig& sc = cfg.solver;
  validate(sc.torus);
  if (cfg.inequalities.trials < 1) throw ConfigError("inequalities.trials", "must be >= 1");
  if (cfg.inequalities.ids.empty()) throw ConfigError("inequalities.ids", "empty list");
  for (InequalityId id : cfg.inequalities.ids) {
    if (id != InequalityId::B1_m1 && id != InequalityId::B1_m2 && !(sc.alpha >= 1.25))
      throw ConfigError("alpha", fmt::format("{} requires alpha >= 5/4", to_string(id)));
  }
  prepare(out_dir, cfg);

  CommandResult res;
  NdjsonWriter rows(out_dir / "inequalities.ndjson");
  std::string& s = res.summary;
  s += fmt::format("inequalities  trunc_n={} alpha={} trials={} seed={}\n", sc.torus.trunc_n, sc.alpha,
                   cfg.inequalities.trials, sc.seed);
  s += fmt::format("{:>8} {:>14} {:>10} {:>8} {:>8}\n", "id", "max_ratio", "witness", "beta", "skipped");
  for (const InequalityReport& rep :
       estimate_inequality_constants(cfg.inequalities.ids, sc.alpha, cfg.inequalities.trials, sc.seed, sc.torus)) {
    rows.write(to_json(rep));
    s += fmt::format("{:>8} {:>14.6e} {:>10} {:>8} {:>8}\n", to_string(rep.id), rep.max_ratio, rep.witness_trial,
                     rep.witness_beta, rep.skipped_trials);
  }
  finish(out_dir, res);
  return res;
}

CommandResult cmd_alpha_sweep(const RunConfig& cfg, const fs::path& out_dir) {
  const SolverConfig& sc = cfg.solver;
  const SweepConfig& sw = cfg.sweep;
  if (sw.alphas.empty()) throw ConfigError("sweep.alphas", "empty list");
  for (double a : sw.alphas)
    if (!(a >= 1.0 && a <= 2.0)) throw ConfigError("sweep.alphas", "grid must lie within [1, 2]");
  for (int s : sw.s_levels)
    if (s < 0 || s > 2) throw ConfigError("sweep.s_levels", "only 0, 1, 2 are supported");
  if (sw.levels.empty()) throw ConfigError("sweep.levels", "empty list");
  if (sw.ensemble < 1) throw ConfigError("sweep.ensemble", "must be >= 1");
  check_mode_cap(sw.levels, cfg.convergence.max_modes, "sweep.levels");
  {
    SolverConfig probe = sc;
    probe.override_regularity = true;
    validate(probe);
  }
  prepare(out_dir, cfg);

  CommandResult res;
  NdjsonWriter rows(out_dir / "alpha_sweep.ndjson");
  std::string& s = res.summary;
  s += fmt::format("alpha-sweep  gamma={} nu={} dt={} T={} levels={} ensemble={} seed={}\n", sc.gamma, sc.nu, sc.dt,
                   sc.T, fmt::join(sw.levels, ","), sw.ensemble, sc.seed);
  s += "reference lines: alpha = 5/4 (H1 theory), alpha = 3/2 (H0 uniqueness)\n";
  s += fmt::format("{:>6} {:>3} {:>8} {:>8} {:>8} {:>10} {:>10} {:>10}  {}\n", "alpha", "s", "finite", "stable",
                   "blowups", "chg_sup", "chg_diss", "chg_intp", "regime");
  const InitialData init = [&](const LatticePtr& l) { return make_initial(cfg.initial, l); };
  double last_alpha = -1.0;
  for (double a : sw.alphas) {
    for (const double line : {1.25, 1.5}) {
      if (last_alpha < line && a >= line) s += fmt::format("------ alpha = {} ------\n", line);
    }
    last_alpha = a;
    for (int lvl : sw.s_levels) {
      SolverConfig c = sc;
      c.alpha = a;
      const RegularityReport rep = regularity_suite(c, lvl, sw.levels, sw.ensemble, init, true);
      int blowups = 0;
      for (const auto& l : rep.levels) blowups += l.blowups;
      const std::string label = proven_label(lvl, a, sc.gamma);
      json j = to_json(rep);
      j["proven"] = label;
      rows.write(j);
      s += fmt::format("{:>6.3f} {:>3} {:>8} {:>8} {:>8} {:>10.4f} {:>10.4f} {:>10.4f}  {}\n", a, lvl,
                       rep.finite ? "yes" : "no", rep.stable ? "yes" : "no", blowups, rep.change_sup,
                       rep.change_dissipation, rep.change_interpolation, label);
    }
  }
  finish(out_dir, res);
  return res;
}

}  // namespace hnsf::harness
