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

#include "hnsf/stochastic.hpp"

#include "hnsf/errors.hpp"
#include "hnsf/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hnsf {

void validate(const NoiseConfig& cfg) {
  if (!(cfg.nu > 0.0) || !std::isfinite(cfg.nu)) throw ConfigError("nu", "must be positive");
  if (!std::isfinite(cfg.alpha)) throw ConfigError("alpha", "must be finite");
  if (!(cfg.gamma >= 0.0) || !std::isfinite(cfg.gamma)) throw ConfigError("gamma", "must be finite and >= 0");
}

bool check_regularity_condition(double alpha, double gamma, double theta) {
  const double lhs = alpha + 2.0 * gamma;
  const double rhs = theta + 1.5;
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::max({std::abs(lhs), std::abs(rhs), 1.0});
  return lhs - rhs > slack;
}

std::uint64_t step_stream(std::uint64_t seed, std::uint64_t step_index) {
  return derive_seed(derive_seed(seed, 0x6E6F697365ull), step_index);
}

NoiseIncrement sample_increment(const LatticePtr& lattice, const NoiseConfig& cfg, double dt,
                                std::uint64_t step_index) {
  if (!(dt > 0.0)) throw std::invalid_argument("sample_increment: dt must be > 0");
  SpectralField xi = projected_gaussian(lattice, step_stream(cfg.seed, step_index));
  const Eigen::ArrayXd scale = std::sqrt(dt) * lattice->eigenvalue_powers(-cfg.gamma);
  xi.coeffs().array().rowwise() *= scale.transpose().cast<Complex>();
  return NoiseIncrement{std::move(xi), dt};
}

Eigen::ArrayXd ou_decay(const Lattice& lattice, double nu, double alpha, double dt) {
  return (-nu * dt * lattice.eigenvalue_powers(alpha)).exp();
}

Eigen::ArrayXd ou_step_variance(const Lattice& lattice, const NoiseConfig& cfg, double dt) {
  const Eigen::ArrayXd rate = cfg.nu * lattice.eigenvalue_powers(cfg.alpha);
  // 1 - exp(-2 rate dt) via expm1 keeps small-rate modes accurate.
  const Eigen::ArrayXd growth = (-2.0 * rate * dt).unaryExpr([](double x) { return -std::expm1(x); });
  return lattice.eigenvalue_powers(-2.0 * cfg.gamma) * growth / (2.0 * rate);
}

SpectralField ou_increment(const LatticePtr& lattice, const NoiseConfig& cfg, double dt, std::uint64_t step_index,
                           std::uint64_t substeps) {
  if (!(dt > 0.0)) throw std::invalid_argument("ou_increment: dt must be > 0");
  if (substeps == 0) throw std::invalid_argument("ou_increment: substeps must be >= 1");
  const double h = dt / static_cast<double>(substeps);
  const auto sd = ou_step_variance(*lattice, cfg, h).sqrt().transpose().cast<Complex>().eval();
  const auto decay = ou_decay(*lattice, cfg.nu, cfg.alpha, h).transpose().cast<Complex>().eval();
  SpectralField acc(lattice);
  for (std::uint64_t j = 0; j < substeps; ++j) {
    SpectralField xi = projected_gaussian(lattice, step_stream(cfg.seed, step_index * substeps + j));
    acc.coeffs().array().rowwise() *= decay;
    acc.coeffs().array() += xi.coeffs().array().rowwise() * sd;
  }
  return acc;
}

SpectralField ou_exact_step(const SpectralField& z, const NoiseConfig& cfg, double dt, std::uint64_t step_index,
                            std::uint64_t substeps) {
  if (!(dt > 0.0)) throw std::invalid_argument("ou_exact_step: dt must be > 0");
  const Eigen::ArrayXd decay = ou_decay(z.lattice(), cfg.nu, cfg.alpha, dt);
  SpectralField out = ou_increment(z.lattice_ptr(), cfg, dt, step_index, substeps);
  out.coeffs().array() += z.coeffs().array().rowwise() * decay.transpose().cast<Complex>();
  return out;
}

double ou_path_norm(const LatticePtr& lattice, const NoiseConfig& cfg, double T, double dt, double theta,
                    bool allow_violation) {
  validate(cfg);
  if (!check_regularity_condition(cfg.alpha, cfg.gamma, theta) && !allow_violation)
    throw RegularityError("alpha + 2 gamma > theta + 3/2 fails for theta = " + std::to_string(theta));
  if (!(T >= 0.0)) throw std::invalid_argument("ou_path_norm: T must be >= 0");
  if (T == 0.0) return 0.0;
  if (!(dt > 0.0)) throw std::invalid_argument("ou_path_norm: dt must be > 0");

  const auto steps = static_cast<std::uint64_t>(std::ceil(T / dt - 1e-9));
  SpectralField z(lattice);
  double sup = 0.0;
  double t = 0.0;
  for (std::uint64_t n = 0; n < steps; ++n) {
    const double h = std::min(dt, T - t);
    z = ou_exact_step(z, cfg, h, n);
    t += h;
    sup = std::max(sup, sobolev_norm(z, theta));
  }
  return sup;
}

}  // namespace hnsf
