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

#ifndef HNSF_LATTICE_HPP_
#define HNSF_LATTICE_HPP_

#include <Eigen/Core>

#include <memory>
#include <numbers>
#include <vector>

namespace hnsf {

/// Periodic box [0, L]^3 together with the Galerkin radius and the
/// physical grid used for pseudo-spectral products.
struct TorusConfig {
  double period = 2.0 * std::numbers::pi;
  int trunc_n = 4;
  int grid_n = 0;  ///< 0 selects dealiased_grid_size(trunc_n)

  bool operator==(const TorusConfig&) const = default;
};

/// Smallest 2,3,5-smooth size that keeps every quadratic product of
/// retained modes free of aliasing onto retained modes (N >= 3n + 1).
int dealiased_grid_size(int trunc_n);

/// Fills in the default grid and validates. Throws ConfigError.
TorusConfig make_torus(double period, int trunc_n, int grid_n = 0);
void validate(const TorusConfig& torus);

/// The retained wavevector set {k in Z^3 : 0 < |k| <= n}, sorted
/// lexicographically, with the per-mode data every spectral operation needs.
/// Instances are shared and immutable; obtain them through Lattice::get.
class Lattice {
 public:
  static std::shared_ptr<const Lattice> get(const TorusConfig& torus);

  const TorusConfig& torus() const { return torus_; }
  int trunc_n() const { return torus_.trunc_n; }
  int grid_n() const { return torus_.grid_n; }
  double period() const { return torus_.period; }

  Eigen::Index size() const { return k_.cols(); }

  /// Integer wavevectors, one column per mode.
  const Eigen::Matrix3Xi& wavenumbers() const { return k_; }
  /// Physical wavenumbers (2 pi / L) k.
  const Eigen::Matrix3Xd& kappa() const { return kappa_; }
  /// Stokes eigenvalues |kappa|^2.
  const Eigen::ArrayXd& eigenvalues() const { return lambda_; }
  /// Integer |k|^2.
  const Eigen::ArrayXi& index_norm2() const { return k2_; }

  /// Column of -k.
  Eigen::Index conjugate(Eigen::Index m) const { return conj_[static_cast<std::size_t>(m)]; }
  /// Modes whose first nonzero component is positive.
  const std::vector<Eigen::Index>& half() const { return half_; }

  /// Column of k, or -1 if k is not retained.
  Eigen::Index find(const Eigen::Vector3i& k) const;

  /// Offset into the N x N x (N/2+1) half-complex FFT array for modes
  /// with k_z >= 0, -1 otherwise.
  const std::vector<Eigen::Index>& grid_slots() const { return slots_; }

  Eigen::ArrayXd eigenvalue_powers(double exponent) const;

  explicit Lattice(const TorusConfig& torus);

 private:
  TorusConfig torus_;
  Eigen::Matrix3Xi k_;
  Eigen::Matrix3Xd kappa_;
  Eigen::ArrayXd lambda_;
  Eigen::ArrayXi k2_;
  std::vector<Eigen::Index> conj_;
  std::vector<Eigen::Index> half_;
  std::vector<Eigen::Index> slots_;
  std::vector<Eigen::Index> lookup_;  // (2n+1)^3 cube -> column
};

using LatticePtr = std::shared_ptr<const Lattice>;

}  // namespace hnsf

#endif  // HNSF_LATTICE_HPP_
