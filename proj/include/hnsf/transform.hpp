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

#ifndef HNSF_TRANSFORM_HPP_
#define HNSF_TRANSFORM_HPP_

#include "hnsf/spectral_field.hpp"

#include <Eigen/Core>

namespace hnsf {

/// Real vector field sampled at x = (i, j, l) L / N. Row (i*N + j)*N + l,
/// one column per Cartesian component.
struct PhysicalField {
  int grid_n = 0;
  double period = 0.0;
  Eigen::Matrix<double, Eigen::Dynamic, 3> values;

  Eigen::Index index(int i, int j, int l) const {
    return (static_cast<Eigen::Index>(i) * grid_n + j) * grid_n + l;
  }
};

/// Evaluates u(x) = sum_k coeff(k) exp(i kappa . x) on the lattice's grid.
/// The field is assumed Hermitian; only k_z >= 0 coefficients are read.
PhysicalField to_physical(const SpectralField& u);

/// Inverse of to_physical for fields band-limited to the lattice. Content
/// outside the retained modes is discarded. Throws std::invalid_argument if
/// the grid does not match the lattice or the field has nonzero mean.
SpectralField from_physical(const PhysicalField& g, LatticePtr lattice);

namespace detail {

/// Per-thread FFTW plans and scratch for one grid size. Plans are created
/// with FFTW_ESTIMATE so results are bitwise reproducible across runs.
class GridTransform {
 public:
  static GridTransform& local(int grid_n);

  int grid_n() const { return n_; }
  Eigen::Index grid_points() const { return static_cast<Eigen::Index>(n_) * n_ * n_; }

  /// out[x] = sum_k c[m] exp(i kappa . x) for a Hermitian modal vector c.
  void modes_to_grid(const Lattice& lattice, const Eigen::Ref<const Eigen::ArrayXcd>& c, double* out);
  /// c[m] = N^-3 sum_x in[x] exp(-i kappa . x) on the retained modes.
  void grid_to_modes(const double* in, const Lattice& lattice, Eigen::Ref<Eigen::ArrayXcd> c);
  /// Mean of a grid (the k = 0 coefficient).
  double last_mean() const { return last_mean_; }

  GridTransform(const GridTransform&) = delete;
  GridTransform& operator=(const GridTransform&) = delete;
  ~GridTransform();

 private:
  explicit GridTransform(int grid_n);

  int n_;
  Eigen::Index half_size_;
  double* real_;
  void* spec_;
  void* plan_c2r_;
  void* plan_r2c_;
  double last_mean_ = 0.0;
};

}  // namespace detail

}  // namespace hnsf

#endif  // HNSF_TRANSFORM_HPP_
