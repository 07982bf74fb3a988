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

#ifndef HNSF_DYNAMICS_HPP_
#define HNSF_DYNAMICS_HPP_

#include "hnsf/spectral_field.hpp"
#include "hnsf/stochastic.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hnsf {

enum class SolverMode { direct, splitting, deterministic };

std::string_view to_string(SolverMode mode);
SolverMode solver_mode_from_string(std::string_view name);

struct SolverConfig {
  double nu = 1.0;
  double alpha = 1.25;
  double gamma = 0.76;
  double dt = 0.01;
  double T = 0.5;
  std::uint64_t seed = 0;
  SolverMode mode = SolverMode::direct;
  TorusConfig torus = make_torus(2.0 * std::numbers::pi, 4);
  /// Extra Sobolev indices to record; 0, 1 and alpha are always recorded.
  std::vector<double> theta_track = {2.0};
  /// Lifts the alpha + 2 gamma > alpha + 3/2 guard on stochastic runs.
  bool override_regularity = false;
  /// Abort once |u|_1 exceeds this multiple of max(|u0|_1, 1).
  double blowup_factor = 1e12;
  /// Store a snapshot every this many steps (0: none).
  int snapshot_every = 0;
  /// Resolution of the underlying Brownian path (0: same as dt). Runs that
  /// share seed and noise_dt see one path whatever their dt.
  double noise_dt = 0.0;

  bool operator==(const SolverConfig&) const = default;
};

/// Throws ConfigError naming the offending field. Stochastic modes also
/// require the regularity condition with theta = alpha unless overridden
/// (RegularityError).
void validate(const SolverConfig& cfg);

NoiseConfig noise_config(const SolverConfig& cfg);

/// dt / noise_dt (1 when noise_dt is 0); throws ConfigError("noise_dt")
/// unless dt is an integer multiple of noise_dt to 1e-9 relative.
std::uint64_t noise_substeps(const SolverConfig& cfg);

/// Number of steps T / dt; throws ConfigError("dt") unless T is a multiple
/// of dt to 1e-9 relative.
std::uint64_t step_count(const SolverConfig& cfg);

/// Key under which |u|_s is stored: "alpha" for s == alpha, otherwise the
/// shortest decimal form of s ("0", "1", "2", "1.5", ...).
std::string norm_key(double s, double alpha);

struct DiagnosticsRecord {
  double t = 0.0;
  std::map<std::string, double> norms;
  /// Norms of the v-part in splitting mode (same keys plus "s+alpha" entries).
  std::map<std::string, double> v_norms;
  /// (|u(t)|^2 - |u(t - dt)|^2) / (2 dt) + nu |u(t - dt)|_alpha^2; 0 at t = 0.
  double energy_residual = 0.0;
  /// Expected noise energy input (1/2) E|eta|^2 / dt of the step; 0 without noise.
  double noise_input = 0.0;
  double divergence_residual = 0.0;
  /// Left Riemann sum of |u|_alpha^2 over [0, t].
  double dissipation_integral = 0.0;
};

nlohmann::json to_json(const DiagnosticsRecord& r);

struct BlowUpInfo {
  double t = 0.0;
  double h1_norm = 0.0;
  std::string reason;
};

struct Trajectory {
  SolverConfig config;
  std::vector<DiagnosticsRecord> records;
  std::vector<std::pair<double, SpectralField>> snapshots;
  std::optional<SpectralField> final_state;
  std::optional<BlowUpInfo> blowup;
};

/// u <- exp(-nu A^alpha dt) (u - dt B(u, u)) + eta, eta the exact one-step
/// stochastic convolution (dropped in deterministic mode). Throws BlowUpError
/// on non-finite output.
SpectralField step_direct(const SpectralField& u, const SolverConfig& cfg, std::uint64_t step_index);

/// v <- exp(-nu A^alpha dt) (v - dt [B(v,v) + B(z,v) + B(v,z) + B(z,z)]).
/// Deterministic given z. Throws BlowUpError on non-finite output.
SpectralField step_v(const SpectralField& v, const SpectralField& z, const SolverConfig& cfg);

/// Stateful stepper over either representation. In splitting mode z is
/// advanced exactly first and the v-step sees z at the new time level.
class Integrator {
 public:
  Integrator(const SolverConfig& cfg, SpectralField u0);

  void advance();

  std::uint64_t step() const { return step_; }
  double time() const { return static_cast<double>(step_) * cfg_.dt; }
  const SpectralField& u() const { return u_; }
  /// v and z parts; only meaningful in splitting mode.
  const SpectralField& v() const { return v_; }
  const SpectralField& z() const { return z_; }
  const SolverConfig& config() const { return cfg_; }

 private:
  SolverConfig cfg_;
  std::uint64_t step_ = 0;
  SpectralField u_;
  SpectralField v_;
  SpectralField z_;
};

using StepObserver = std::function<void(const Integrator&)>;

/// Runs from u0 to T recording diagnostics at every step. A blow-up stops
/// the run; the partial trajectory is returned with `blowup` set.
Trajectory simulate(const SolverConfig& cfg, const SpectralField& u0, const StepObserver& observer = {});

/// max |energy_residual| over the trajectory.
double energy_balance_check(const Trajectory& traj);

/// |u(T)|^2 + 2 nu int_0^T |u|_alpha^2 dt - |u(0)|^2 (left Riemann sum).
double energy_defect(const Trajectory& traj);

/// sup over common snapshot times of |a - b|_1 on the modes both lattices share.
double sup_h1_difference(const Trajectory& a, const Trajectory& b);

struct UniquenessSample {
  double t = 0.0;
  double diff_h1 = 0.0;
  /// int_0^t (|u1|_alpha^2 + |u2|_alpha^2) ds.
  double integral = 0.0;
  /// log(|U(t)|_1^2 / |U(0)|_1^2) / integral; NaN at t = 0 or for U(0) = 0.
  double exponent = 0.0;
};

struct UniquenessReport {
  std::vector<UniquenessSample> samples;
  bool zero_initial_difference = false;
  /// Every step produced bitwise identical states.
  bool identical = false;
  /// Smallest c with |U(t)|_1^2 <= |U(0)|_1^2 exp(c integral(t)) at every step.
  double c_envelope = 0.0;
  /// Least-squares slope of log(|U|^2/|U0|^2) against the integral, through 0.
  double c_least_squares = 0.0;
  double least_squares_residual = 0.0;
  std::optional<BlowUpInfo> blowup;
};

/// Runs both trajectories on one noise realization. Throws
/// std::invalid_argument when the configurations differ (in particular the
/// seed).
UniquenessReport uniqueness_probe(const SolverConfig& cfg_a, const SpectralField& u0a, const SolverConfig& cfg_b,
                                  const SpectralField& u0b);
UniquenessReport uniqueness_probe(const SolverConfig& cfg, const SpectralField& u0a, const SpectralField& u0b);

/// Checks the Gronwall envelope with a given constant at every sample.
bool gronwall_bound_holds(const UniquenessReport& report, double c, double rel_slack = 1e-9);

/// Regularity level being tested.
struct RegularityLevel {
  int trunc_n = 0;
  int members = 0;
  int blowups = 0;
  /// Ensemble means over members without blow-up.
  double sup_norm_s = 0.0;
  double v_dissipation = 0.0;  ///< int_0^T |v|_{s+alpha}^2 dt
  double interpolation_integral = 0.0;  ///< int_0^T |u|_alpha^{2alpha/(alpha-1)} dt
  bool finite = false;
};

struct RegularityReport {
  int s = 1;
  double alpha = 0.0;
  double gamma = 0.0;
  bool hypothesis_ok = false;
  std::vector<std::string> flags;
  std::vector<RegularityLevel> levels;
  /// Largest ratio max(a/b, b/a) between consecutive levels, per quantity.
  double change_sup = 1.0;
  double change_dissipation = 1.0;
  double change_interpolation = 1.0;
  bool finite = false;
  bool stable = false;
};

using InitialData = std::function<SpectralField(const LatticePtr&)>;

/// Hypothesis check used by regularity_suite: alpha >= 5/4 and gamma > 3/4
/// for s in {0, 1}; alpha >= 5/4 and alpha + 2 gamma > s + 3/2 for s = 2.
/// Returns the list of violated hypotheses (empty when admissible).
std::vector<std::string> regularity_hypothesis_violations(int s, double alpha, double gamma);

/// Ensemble study of the norm bounds at level s in splitting mode over the
/// truncation radii `levels` (each member seeded by derive_seed(cfg.seed, e)).
/// Throws RegularityError on a hypothesis violation unless `override_regularity`.
RegularityReport regularity_suite(const SolverConfig& cfg, int s, const std::vector<int>& levels, int ensemble,
                                  const InitialData& initial, bool override_regularity = false);

nlohmann::json to_json(const RegularityReport& r);
nlohmann::json to_json(const UniquenessReport& r);

}  // namespace hnsf

#endif  // HNSF_DYNAMICS_HPP_
