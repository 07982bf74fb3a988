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

#ifndef HNSF_STOCHASTIC_HPP_
#define HNSF_STOCHASTIC_HPP_

#include "hnsf/spectral_field.hpp"

#include <cstdint>

namespace hnsf {

/// Parameters of dz + nu A^alpha z dt = A^-gamma dw.
struct NoiseConfig {
  double gamma = 1.0;
  std::uint64_t seed = 0;
  double nu = 1.0;
  double alpha = 1.25;
};

/// Throws ConfigError on nu <= 0, non-finite or negative gamma.
void validate(const NoiseConfig& cfg);

/// alpha + 2 gamma > theta + 3/2, strictly. Differences within a few ulps of
/// zero count as equality, so decimal boundary cases such as
/// (1.25, 0.75, 1.25) are rejected.
bool check_regularity_condition(double alpha, double gamma, double theta);

/// Stream key shared by every stochastic draw of one time step.
std::uint64_t step_stream(std::uint64_t seed, std::uint64_t step_index);

/// A^-gamma (w(t + dt) - w(t)) on the retained modes: each of the four real
/// coordinates of the divergence-free subspace at k has variance
/// dt lambda^-2gamma, so E|increment_k|^2 = 4 dt lambda^-2gamma.
struct NoiseIncrement {
  SpectralField field;
  double dt;
};
NoiseIncrement sample_increment(const LatticePtr& lattice, const NoiseConfig& cfg, double dt,
                                std::uint64_t step_index);

/// Per-mode decay factor exp(-nu lambda^alpha dt).
Eigen::ArrayXd ou_decay(const Lattice& lattice, double nu, double alpha, double dt);

/// Per-real-coordinate variance of the exact one-step stochastic convolution,
/// lambda^-2gamma (1 - exp(-2 nu lambda^alpha dt)) / (2 nu lambda^alpha).
Eigen::ArrayXd ou_step_variance(const Lattice& lattice, const NoiseConfig& cfg, double dt);

/// Exact stochastic convolution over one step started from zero; the same
/// Gaussian draw as sample_increment for (seed, step_index).
///
/// With substeps = r > 1 the step is split into r sub-intervals of length
/// dt / r, each drawn exactly under the fine index step_index * r + j, and
/// recombined as sum_j exp(-nu A^alpha (r - 1 - j) dt / r) eta_j. The result
/// is still the exact transition, and a run at step dt with r substeps
/// sees the same Brownian path as a run at dt / r.
SpectralField ou_increment(const LatticePtr& lattice, const NoiseConfig& cfg, double dt, std::uint64_t step_index,
                           std::uint64_t substeps = 1);

/// z <- exp(-nu A^alpha dt) z + eta with eta the exact Gaussian transition
/// of each OU mode. Throws std::invalid_argument for dt <= 0 or substeps = 0.
SpectralField ou_exact_step(const SpectralField& z, const NoiseConfig& cfg, double dt, std::uint64_t step_index,
                            std::uint64_t substeps = 1);

/// sup over the grid times of |z(t)|_theta for the exact OU path from
/// z(0) = 0 up to T. Throws RegularityError when the regularity condition
/// fails and allow_violation is false.
double ou_path_norm(const LatticePtr& lattice, const NoiseConfig& cfg, double T, double dt, double theta,
                    bool allow_violation = false);

}  // namespace hnsf

#endif  // HNSF_STOCHASTIC_HPP_
