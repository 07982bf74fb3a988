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

#ifndef HNSF_HARNESS_CONFIG_HPP_
#define HNSF_HARNESS_CONFIG_HPP_

#include "hnsf/dynamics.hpp"
#include "hnsf/nonlinearity.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace hnsf::harness {

enum class InitialKind { smooth, single_mode, zero, file };

struct InitialConfig {
  InitialKind kind = InitialKind::smooth;
  std::uint64_t seed = 1;
  int radius = 3;
  double amplitude = 1.0;
  Eigen::Vector3i wavevector = Eigen::Vector3i(1, 0, 0);
  Eigen::Vector3d direction = Eigen::Vector3d(0, 1, 0);
  std::string path;

  bool operator==(const InitialConfig&) const = default;
};

struct ConvergenceConfig {
  std::vector<int> levels = {4, 8, 16};
  /// Number of dt halvings studied at the first level (0: none).
  int dt_halvings = 2;
  /// Refuse lattices with more retained modes than this.
  long max_modes = 200000;

  bool operator==(const ConvergenceConfig&) const = default;
};

struct UniquenessConfig {
  std::vector<double> epsilons = {0.0, 1e-8};
  std::uint64_t perturbation_seed = 2;

  bool operator==(const UniquenessConfig&) const = default;
};

struct OuConfig {
  int ensemble = 200;
  double theta = 1.25;

  bool operator==(const OuConfig&) const = default;
};

struct InequalityConfig {
  std::vector<InequalityId> ids = {InequalityId::Bcon4, InequalityId::BconA, InequalityId::BconA2,
                                   InequalityId::B1_m1, InequalityId::B1_m2};
  int trials = 1000;

  bool operator==(const InequalityConfig&) const = default;
};

struct SweepConfig {
  std::vector<double> alphas = {1.1, 1.25, 1.5, 2.0};
  std::vector<int> s_levels = {0, 1};
  std::vector<int> levels = {4, 8};
  int ensemble = 2;

  bool operator==(const SweepConfig&) const = default;
};

struct RunConfig {
  SolverConfig solver;
  InitialConfig initial;
  ConvergenceConfig convergence;
  UniquenessConfig uniqueness;
  OuConfig ou;
  InequalityConfig inequalities;
  SweepConfig sweep;
  bool noise_dump = false;

  bool operator==(const RunConfig&) const = default;
};

/// INI text with sections [solver], [torus], [initial], [convergence],
/// [uniqueness], [ou], [inequalities], [sweep], [output]. Missing keys keep
/// their defaults; unknown sections or keys, and malformed values, throw
/// ConfigError naming "section.key".
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Complete INI text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg);

/// Initial field on `lattice` as described by cfg. Throws ConfigError for
/// an unusable description (e.g. a wavevector outside the lattice).
SpectralField make_initial(const InitialConfig& cfg, const LatticePtr& lattice);

/// Number of retained modes 0 < |k| <= n.
long mode_count(int trunc_n);

}  // namespace hnsf::harness

#endif  // HNSF_HARNESS_CONFIG_HPP_
