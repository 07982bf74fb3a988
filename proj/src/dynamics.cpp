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

#include "hnsf/dynamics.hpp"

#include "hnsf/errors.hpp"
#include "hnsf/nonlinearity.hpp"
#include "hnsf/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace hnsf {

std::string_view to_string(SolverMode mode) {
  switch (mode) {
    case SolverMode::direct: return "direct";
    case SolverMode::splitting: return "splitting";
    case SolverMode::deterministic: return "deterministic";
  }
  return "?";
}

SolverMode solver_mode_from_string(std::string_view name) {
  if (name == "direct") return SolverMode::direct;
  if (name == "splitting") return SolverMode::splitting;
  if (name == "deterministic") return SolverMode::deterministic;
  throw ConfigError("mode", "expected direct, splitting or deterministic (got '" + std::string(name) + "')");
}

void validate(const SolverConfig& cfg) {
  validate(cfg.torus);
  if (cfg.torus.grid_n == 0) throw ConfigError("grid_n", "unresolved grid size");
  if (!(cfg.nu > 0.0) || !std::isfinite(cfg.nu)) throw ConfigError("nu", "must be positive");
  if (!(cfg.alpha >= 1.0) || !std::isfinite(cfg.alpha)) throw ConfigError("alpha", "must be >= 1");
  if (!std::isfinite(cfg.gamma) || cfg.gamma < 0.0) throw ConfigError("gamma", "must be finite and >= 0");
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ConfigError("dt", "must be > 0");
  if (!(cfg.T > 0.0) || !std::isfinite(cfg.T)) throw ConfigError("T", "must be > 0");
  if (!(cfg.dt < cfg.T)) throw ConfigError("dt", "must be smaller than T");
  if (!(cfg.blowup_factor > 1.0)) throw ConfigError("blowup_factor", "must be > 1");
  if (cfg.snapshot_every < 0) throw ConfigError("snapshot_every", "must be >= 0");
  step_count(cfg);
  noise_substeps(cfg);
  if (cfg.mode != SolverMode::deterministic && !cfg.override_regularity &&
      !check_regularity_condition(cfg.alpha, cfg.gamma, cfg.alpha)) {
    throw RegularityError(
        "noise too rough: alpha + 2 gamma > alpha + 3/2 (gamma > 3/4) fails; pass --override-regularity to run anyway");
  }
}

NoiseConfig noise_config(const SolverConfig& cfg) { return NoiseConfig{cfg.gamma, cfg.seed, cfg.nu, cfg.alpha}; }

std::uint64_t noise_substeps(const SolverConfig& cfg) {
  if (cfg.noise_dt == 0.0) return 1;
  if (!(cfg.noise_dt > 0.0) || !std::isfinite(cfg.noise_dt)) throw ConfigError("noise_dt", "must be >= 0");
  const double ratio = cfg.dt / cfg.noise_dt;
  const double r = std::round(ratio);
  if (r < 1.0 || std::abs(r - ratio) > 1e-9 * std::max(1.0, ratio))
    throw ConfigError("noise_dt", "dt must be an integer multiple of noise_dt");
  return static_cast<std::uint64_t>(r);
}

std::uint64_t step_count(const SolverConfig& cfg) {
  const double ratio = cfg.T / cfg.dt;
  const double steps = std::round(ratio);
  if (steps < 1.0 || std::abs(steps - ratio) > 1e-9 * std::max(1.0, ratio))
    throw ConfigError("dt", "T must be an integer multiple of dt");
  return static_cast<std::uint64_t>(steps);
}

std::string norm_key(double s, double alpha) {
  if (s == alpha) return "alpha";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), s);
  return std::string(buf, res.ptr);
}

nlohmann::json to_json(const DiagnosticsRecord& r) {
  nlohmann::json j{{"t", r.t},
                   {"norms", r.norms},
                   {"energy_residual", r.energy_residual},
                   {"noise_input", r.noise_input},
                   {"div_residual", r.divergence_residual},
                   {"dissipation_integral", r.dissipation_integral}};
  if (!r.v_norms.empty()) j["v_norms"] = r.v_norms;
  return j;
}

namespace {

void require_finite(const SpectralField& u, double t) {
  if (!u.coeffs().allFinite()) throw BlowUpError(t, std::numeric_limits<double>::quiet_NaN(), "non-finite state");
}

/// exp(-nu A^alpha dt) applied to w in place.
void apply_decay(SpectralField& w, const SolverConfig& cfg) {
  const Eigen::ArrayXd decay = ou_decay(w.lattice(), cfg.nu, cfg.alpha, cfg.dt);
  w.coeffs().array().rowwise() *= decay.transpose().cast<Complex>();
}

/// Sobolev weights cached per index so each record costs one pass per norm.
class NormTable {
 public:
  NormTable(const Lattice& lattice, const std::vector<double>& indices, double alpha) {
    for (double s : indices) {
      const std::string key = norm_key(s, alpha);
      if (std::find(keys_.begin(), keys_.end(), key) != keys_.end()) continue;
      keys_.push_back(key);
      weights_.push_back(lattice.eigenvalue_powers(s));
    }
  }

  std::map<std::string, double> evaluate(const SpectralField& u) const {
    const Eigen::ArrayXd mag2 = u.coeffs().colwise().squaredNorm().transpose().array();
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < keys_.size(); ++i) out[keys_[i]] = std::sqrt((weights_[i] * mag2).sum());
    return out;
  }

 private:
  std::vector<std::string> keys_;
  std::vector<Eigen::ArrayXd> weights_;
};

}  // namespace

SpectralField step_direct(const SpectralField& u, const SolverConfig& cfg, std::uint64_t step_index) {
  SpectralField w = u;
  w.coeffs() -= cfg.dt * bilinear_B(u, u).coeffs();
  apply_decay(w, cfg);
  if (cfg.mode != SolverMode::deterministic) {
    w += ou_increment(u.lattice_ptr(), noise_config(cfg), cfg.dt, step_index, noise_substeps(cfg));
  }
  require_finite(w, static_cast<double>(step_index + 1) * cfg.dt);
  return w;
}

SpectralField step_v(const SpectralField& v, const SpectralField& z, const SolverConfig& cfg) {
  // B(v,v) + B(z,v) + B(v,z) + B(z,z) = B(v + z, v + z) by bilinearity.
  const SpectralField w = v + z;
  SpectralField out = v;
  out.coeffs() -= cfg.dt * bilinear_B(w, w).coeffs();
  apply_decay(out, cfg);
  require_finite(out, std::numeric_limits<double>::quiet_NaN());
  return out;
}

Integrator::Integrator(const SolverConfig& cfg, SpectralField u0)
    : cfg_(cfg), u_(std::move(u0)), v_(u_), z_(u_.lattice_ptr()) {
  if (!(u_.lattice().torus() == cfg_.torus))
    throw std::invalid_argument("initial field does not live on the configured torus");
}

void Integrator::advance() {
  if (cfg_.mode == SolverMode::splitting) {
    z_ = ou_exact_step(z_, noise_config(cfg_), cfg_.dt, step_, noise_substeps(cfg_));
    try {
      v_ = step_v(v_, z_, cfg_);
    } catch (const BlowUpError& e) {
      throw BlowUpError(static_cast<double>(step_ + 1) * cfg_.dt, e.h1_norm(), e.what());
    }
    u_ = v_ + z_;
  } else {
    u_ = step_direct(u_, cfg_, step_);
  }
  ++step_;
}

Trajectory simulate(const SolverConfig& cfg, const SpectralField& u0, const StepObserver& observer) {
  validate(cfg);
  const std::uint64_t steps = step_count(cfg);
  const Lattice& lat = u0.lattice();

  std::vector<double> indices = {0.0, 1.0, cfg.alpha};
  indices.insert(indices.end(), cfg.theta_track.begin(), cfg.theta_track.end());
  const NormTable u_table(lat, indices, cfg.alpha);
  std::vector<double> v_indices = indices;
  for (double s : cfg.theta_track) v_indices.push_back(s + cfg.alpha);
  const NormTable v_table(lat, v_indices, cfg.alpha);

  double noise_input = 0.0;
  if (cfg.mode != SolverMode::deterministic) {
    noise_input = 4.0 * ou_step_variance(lat, noise_config(cfg), cfg.dt).sum() / (2.0 * cfg.dt);
  }

  Trajectory traj;
  traj.config = cfg;
  Integrator integ(cfg, u0);

  auto make_record = [&](const Integrator& it) {
    DiagnosticsRecord r;
    r.t = it.time();
    r.norms = u_table.evaluate(it.u());
    if (cfg.mode == SolverMode::splitting) r.v_norms = v_table.evaluate(it.v());
    r.divergence_residual = divergence_residual(it.u());
    return r;
  };

  traj.records.push_back(make_record(integ));
  const double h1_limit = cfg.blowup_factor * std::max(traj.records.front().norms.at("1"), 1.0);
  if (cfg.snapshot_every > 0) traj.snapshots.emplace_back(0.0, integ.u());
  if (observer) observer(integ);

  for (std::uint64_t n = 0; n < steps; ++n) {
    const DiagnosticsRecord& prev = traj.records.back();
    try {
      integ.advance();
    } catch (const BlowUpError& e) {
      traj.blowup = BlowUpInfo{e.time(), prev.norms.at("1"), e.what()};
      break;
    }
    DiagnosticsRecord r = make_record(integ);
    const double e0 = prev.norms.at("0");
    const double e1 = r.norms.at("0");
    const double diss = prev.norms.at("alpha");
    r.energy_residual = (e1 * e1 - e0 * e0) / (2.0 * cfg.dt) + cfg.nu * diss * diss;
    r.noise_input = noise_input;
    r.dissipation_integral = prev.dissipation_integral + cfg.dt * diss * diss;
    const double h1 = r.norms.at("1");
    if (!std::isfinite(h1) || h1 > h1_limit) {
      traj.blowup = BlowUpInfo{r.t, h1, "|u|_1 exceeded blow-up threshold"};
      break;
    }
    traj.records.push_back(std::move(r));
    if (cfg.snapshot_every > 0 && integ.step() % static_cast<std::uint64_t>(cfg.snapshot_every) == 0)
      traj.snapshots.emplace_back(integ.time(), integ.u());
    if (observer) observer(integ);
  }
  traj.final_state = integ.u();
  if (traj.blowup && !integ.u().coeffs().allFinite()) traj.final_state.reset();
  return traj;
}

double energy_balance_check(const Trajectory& traj) {
  double worst = 0.0;
  for (std::size_t i = 1; i < traj.records.size(); ++i)
    worst = std::max(worst, std::abs(traj.records[i].energy_residual));
  return worst;
}

double energy_defect(const Trajectory& traj) {
  if (traj.records.empty()) return 0.0;
  const auto& first = traj.records.front();
  const auto& last = traj.records.back();
  const double e0 = first.norms.at("0");
  const double e1 = last.norms.at("0");
  return e1 * e1 + 2.0 * traj.config.nu * last.dissipation_integral - e0 * e0;
}

double sup_h1_difference(const Trajectory& a, const Trajectory& b) {
  double sup = 0.0;
  bool any = false;
  std::size_t j = 0;
  for (const auto& [ta, ua] : a.snapshots) {
    while (j < b.snapshots.size() && b.snapshots[j].first < ta - 1e-9 * std::max(1.0, ta)) ++j;
    if (j == b.snapshots.size()) break;
    const auto& [tb, ub] = b.snapshots[j];
    if (std::abs(tb - ta) > 1e-9 * std::max(1.0, ta)) continue;
    const bool a_coarse = ua.lattice().trunc_n() <= ub.lattice().trunc_n();
    const LatticePtr& target = a_coarse ? ua.lattice_ptr() : ub.lattice_ptr();
    const SpectralField diff = resample(ua, target) - resample(ub, target);
    sup = std::max(sup, sobolev_norm(diff, 1.0));
    any = true;
  }
  if (!any) throw std::invalid_argument("sup_h1_difference: trajectories share no snapshot times");
  return sup;
}

UniquenessReport uniqueness_probe(const SolverConfig& cfg_a, const SpectralField& u0a, const SolverConfig& cfg_b,
                                  const SpectralField& u0b) {
  if (cfg_a.seed != cfg_b.seed) throw std::invalid_argument("uniqueness_probe: seed mismatch between runs");
  if (!(cfg_a == cfg_b)) throw std::invalid_argument("uniqueness_probe: configurations differ");
  validate(cfg_a);
  const std::uint64_t steps = step_count(cfg_a);

  UniquenessReport rep;
  rep.zero_initial_difference = bitwise_equal(u0a, u0b);
  rep.identical = rep.zero_initial_difference;

  Integrator a(cfg_a, u0a);
  Integrator b(cfg_b, u0b);
  const double u0_diff = sobolev_norm(u0a - u0b, 1.0);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rep.samples.push_back({0.0, u0_diff, 0.0, nan});

  double integral = 0.0;
  for (std::uint64_t n = 0; n < steps; ++n) {
    const double ua = sobolev_norm(a.u(), cfg_a.alpha);
    const double ub = sobolev_norm(b.u(), cfg_a.alpha);
    try {
      a.advance();
      b.advance();
    } catch (const BlowUpError& e) {
      rep.blowup = BlowUpInfo{e.time(), e.h1_norm(), e.what()};
      break;
    }
    integral += cfg_a.dt * (ua * ua + ub * ub);
    rep.identical = rep.identical && bitwise_equal(a.u(), b.u());
    const double d = sobolev_norm(a.u() - b.u(), 1.0);
    double exponent = nan;
    if (u0_diff > 0.0 && d > 0.0 && integral > 0.0) exponent = std::log((d * d) / (u0_diff * u0_diff)) / integral;
    rep.samples.push_back({a.time(), d, integral, exponent});
  }

  if (u0_diff > 0.0) {
    double envelope = -std::numeric_limits<double>::infinity();
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& s : rep.samples) {
      if (std::isnan(s.exponent)) continue;
      envelope = std::max(envelope, s.exponent);
      const double y = s.exponent * s.integral;
      sxy += y * s.integral;
      sxx += s.integral * s.integral;
    }
    rep.c_envelope = envelope;
    rep.c_least_squares = sxx > 0.0 ? sxy / sxx : nan;
    double ss = 0.0;
    int count = 0;
    for (const auto& s : rep.samples) {
      if (std::isnan(s.exponent)) continue;
      const double r = s.exponent * s.integral - rep.c_least_squares * s.integral;
      ss += r * r;
      ++count;
    }
    rep.least_squares_residual = count > 0 ? std::sqrt(ss / count) : nan;
  } else {
    rep.c_envelope = nan;
    rep.c_least_squares = nan;
    rep.least_squares_residual = nan;
  }
  return rep;
}

UniquenessReport uniqueness_probe(const SolverConfig& cfg, const SpectralField& u0a, const SpectralField& u0b) {
  return uniqueness_probe(cfg, u0a, cfg, u0b);
}

bool gronwall_bound_holds(const UniquenessReport& report, double c, double rel_slack) {
  if (report.samples.empty()) return true;
  const double u0 = report.samples.front().diff_h1;
  for (const auto& s : report.samples) {
    const double bound = u0 * u0 * std::exp(c * s.integral);
    if (s.diff_h1 * s.diff_h1 > bound * (1.0 + rel_slack)) return false;
  }
  return true;
}

std::vector<std::string> regularity_hypothesis_violations(int s, double alpha, double gamma) {
  std::vector<std::string> out;
  if (s < 0 || s > 2) {
    out.push_back("only s in {0, 1, 2} is supported");
    return out;
  }
  if (!(alpha >= 1.25)) out.push_back("alpha >= 5/4 fails");
  if (s <= 1) {
    if (!(gamma > 0.75)) out.push_back("gamma > 3/4 fails");
  } else if (!check_regularity_condition(alpha, gamma, static_cast<double>(s))) {
    out.push_back("alpha + 2 gamma > s + 3/2 fails");
  }
  return out;
}

RegularityReport regularity_suite(const SolverConfig& cfg, int s, const std::vector<int>& levels, int ensemble,
                                  const InitialData& initial, bool override_regularity) {
  if (s < 0 || s > 2) throw std::invalid_argument("regularity_suite: s must be 0, 1 or 2");
  if (levels.empty()) throw std::invalid_argument("regularity_suite: no truncation levels");
  if (ensemble < 1) throw std::invalid_argument("regularity_suite: ensemble must be >= 1");

  RegularityReport rep;
  rep.s = s;
  rep.alpha = cfg.alpha;
  rep.gamma = cfg.gamma;
  const auto violations = regularity_hypothesis_violations(s, cfg.alpha, cfg.gamma);
  rep.hypothesis_ok = violations.empty();
  if (!rep.hypothesis_ok) {
    std::string joined;
    for (const auto& v : violations) joined += (joined.empty() ? "" : "; ") + v;
    if (!override_regularity) throw RegularityError("regularity suite s = " + std::to_string(s) + ": " + joined);
    for (const auto& v : violations) rep.flags.push_back("outside proven regime: " + v);
  }
  if (s == 0 && !(cfg.alpha > 1.5)) rep.flags.push_back("H0 uniqueness outside proven regime (alpha <= 3/2)");

  const double p = cfg.alpha > 1.0 ? 2.0 * cfg.alpha / (cfg.alpha - 1.0) : std::numeric_limits<double>::infinity();
  if (!std::isfinite(p)) rep.flags.push_back("interpolation exponent 2 alpha/(alpha - 1) is infinite at alpha = 1; integral not computed");
  const std::string key_s = norm_key(static_cast<double>(s), cfg.alpha);
  const std::string key_v = norm_key(static_cast<double>(s) + cfg.alpha, cfg.alpha);

  rep.finite = true;
  for (int n : levels) {
    SolverConfig c = cfg;
    c.mode = SolverMode::splitting;
    c.torus = make_torus(cfg.torus.period, n);
    c.override_regularity = cfg.override_regularity || override_regularity;
    c.snapshot_every = 0;
    if (std::find(c.theta_track.begin(), c.theta_track.end(), static_cast<double>(s)) == c.theta_track.end())
      c.theta_track.push_back(static_cast<double>(s));
    const LatticePtr lattice = Lattice::get(c.torus);
    const SpectralField u0 = initial(lattice);

    RegularityLevel level;
    level.trunc_n = n;
    level.members = ensemble;
    for (int e = 0; e < ensemble; ++e) {
      c.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(e));
      const Trajectory traj = simulate(c, u0);
      if (traj.blowup) {
        ++level.blowups;
        continue;
      }
      double sup = 0.0;
      double diss = 0.0;
      double interp = 0.0;
      for (std::size_t i = 0; i < traj.records.size(); ++i) {
        const auto& r = traj.records[i];
        sup = std::max(sup, r.norms.at(key_s));
        if (i + 1 < traj.records.size()) {
          const double v = r.v_norms.at(key_v);
          diss += c.dt * v * v;
          if (std::isfinite(p)) interp += c.dt * std::pow(r.norms.at("alpha"), p);
        }
      }
      level.sup_norm_s += sup;
      level.v_dissipation += diss;
      level.interpolation_integral += interp;
    }
    const int ok = ensemble - level.blowups;
    if (ok > 0) {
      level.sup_norm_s /= ok;
      level.v_dissipation /= ok;
      level.interpolation_integral /= ok;
    }
    level.finite = level.blowups == 0 && std::isfinite(level.sup_norm_s) && std::isfinite(level.v_dissipation) &&
                   std::isfinite(level.interpolation_integral);
    rep.finite = rep.finite && level.finite;
    rep.levels.push_back(level);
  }

  auto change = [](double a, double b) {
    if (a == b) return 1.0;
    if (!(a > 0.0) || !(b > 0.0)) return std::numeric_limits<double>::infinity();
    return std::max(a / b, b / a);
  };
  for (std::size_t i = 1; i < rep.levels.size(); ++i) {
    const auto& lo = rep.levels[i - 1];
    const auto& hi = rep.levels[i];
    rep.change_sup = std::max(rep.change_sup, change(lo.sup_norm_s, hi.sup_norm_s));
    rep.change_dissipation = std::max(rep.change_dissipation, change(lo.v_dissipation, hi.v_dissipation));
    rep.change_interpolation = std::max(rep.change_interpolation, change(lo.interpolation_integral, hi.interpolation_integral));
  }
  rep.stable = rep.finite && rep.change_sup < 2.0 && rep.change_dissipation < 2.0 && rep.change_interpolation < 2.0;
  return rep;
}

nlohmann::json to_json(const RegularityReport& r) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : r.levels) {
    levels.push_back({{"trunc_n", l.trunc_n},
                      {"members", l.members},
                      {"blowups", l.blowups},
                      {"sup_norm_s", l.sup_norm_s},
                      {"v_dissipation", l.v_dissipation},
                      {"interpolation_integral", l.interpolation_integral},
                      {"finite", l.finite}});
  }
  return {{"s", r.s},
          {"alpha", r.alpha},
          {"gamma", r.gamma},
          {"hypothesis_ok", r.hypothesis_ok},
          {"flags", r.flags},
          {"levels", levels},
          {"change_sup", r.change_sup},
          {"change_dissipation", r.change_dissipation},
          {"change_interpolation", r.change_interpolation},
          {"finite", r.finite},
          {"stable", r.stable}};
}

nlohmann::json to_json(const UniquenessReport& r) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : r.samples) {
    samples.push_back({{"t", s.t}, {"diff_h1", s.diff_h1}, {"integral", s.integral},
                       {"exponent", std::isnan(s.exponent) ? nlohmann::json() : nlohmann::json(s.exponent)}});
  }
  auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); };
  nlohmann::json j{{"zero_initial_difference", r.zero_initial_difference},
                   {"identical", r.identical},
                   {"c_envelope", num(r.c_envelope)},
                   {"c_least_squares", num(r.c_least_squares)},
                   {"least_squares_residual", num(r.least_squares_residual)},
                   {"samples", samples}};
  if (r.blowup) j["blowup"] = {{"t", r.blowup->t}, {"reason", r.blowup->reason}};
  return j;
}

}  // namespace hnsf
