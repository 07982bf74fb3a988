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

#include "hnsf/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace hnsf {

namespace detail {

namespace {

// The FFTW planner is not thread safe; execution with new-array functions is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

GridTransform::GridTransform(int grid_n) : n_(grid_n) {
  half_size_ = static_cast<Eigen::Index>(n_) * n_ * (n_ / 2 + 1);
  std::lock_guard lock(planner_mutex());
  real_ = fftw_alloc_real(static_cast<std::size_t>(n_) * n_ * n_);
  auto* spec = fftw_alloc_complex(static_cast<std::size_t>(half_size_));
  spec_ = spec;
  plan_c2r_ = fftw_plan_dft_c2r_3d(n_, n_, n_, spec, real_, FFTW_ESTIMATE);
  plan_r2c_ = fftw_plan_dft_r2c_3d(n_, n_, n_, real_, spec, FFTW_ESTIMATE);
  if (!plan_c2r_ || !plan_r2c_) throw std::runtime_error("FFTW planning failed");
}

GridTransform::~GridTransform() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_c2r_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_r2c_));
  fftw_free(real_);
  fftw_free(spec_);
}

GridTransform& GridTransform::local(int grid_n) {
  thread_local std::map<int, std::unique_ptr<GridTransform>> cache;
  auto& slot = cache[grid_n];
  if (!slot) slot.reset(new GridTransform(grid_n));
  return *slot;
}

void GridTransform::modes_to_grid(const Lattice& lattice, const Eigen::Ref<const Eigen::ArrayXcd>& c,
                                  double* out) {
  auto* spec = reinterpret_cast<std::complex<double>*>(spec_);
  std::memset(spec_, 0, static_cast<std::size_t>(half_size_) * sizeof(fftw_complex));
  const auto& slots = lattice.grid_slots();
  for (Eigen::Index m = 0; m < c.size(); ++m) {
    const Eigen::Index s = slots[static_cast<std::size_t>(m)];
    if (s >= 0) spec[s] = c(m);
  }
  fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_c2r_), static_cast<fftw_complex*>(spec_), real_);
  std::memcpy(out, real_, static_cast<std::size_t>(grid_points()) * sizeof(double));
}

void GridTransform::grid_to_modes(const double* in, const Lattice& lattice, Eigen::Ref<Eigen::ArrayXcd> c) {
  std::memcpy(real_, in, static_cast<std::size_t>(grid_points()) * sizeof(double));
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_r2c_), real_, static_cast<fftw_complex*>(spec_));
  const auto* spec = reinterpret_cast<const std::complex<double>*>(spec_);
  const double scale = 1.0 / static_cast<double>(grid_points());
  last_mean_ = spec[0].real() * scale;
  const auto& slots = lattice.grid_slots();
  for (Eigen::Index m = 0; m < c.size(); ++m) {
    const Eigen::Index s = slots[static_cast<std::size_t>(m)];
    if (s >= 0) c(m) = spec[s] * scale;
  }
  for (Eigen::Index m = 0; m < c.size(); ++m) {
    if (slots[static_cast<std::size_t>(m)] < 0) c(m) = std::conj(c(lattice.conjugate(m)));
  }
}

}  // namespace detail

PhysicalField to_physical(const SpectralField& u) {
  const Lattice& lat = u.lattice();
  auto& fft = detail::GridTransform::local(lat.grid_n());
  PhysicalField g;
  g.grid_n = lat.grid_n();
  g.period = lat.period();
  g.values.resize(fft.grid_points(), 3);
  for (int d = 0; d < 3; ++d) {
    fft.modes_to_grid(lat, u.coeffs().row(d).transpose().array(), g.values.col(d).data());
  }
  return g;
}

SpectralField from_physical(const PhysicalField& g, LatticePtr lattice) {
  if (g.grid_n != lattice->grid_n() || g.period != lattice->period())
    throw std::invalid_argument("from_physical: grid does not match the lattice");
  auto& fft = detail::GridTransform::local(lattice->grid_n());
  if (g.values.rows() != fft.grid_points()) throw std::invalid_argument("from_physical: wrong grid size");
  SpectralField out(lattice);
  Eigen::ArrayXcd c(lattice->size());
  const double scale = g.values.cwiseAbs().maxCoeff();
  for (int d = 0; d < 3; ++d) {
    fft.grid_to_modes(g.values.col(d).data(), *lattice, c);
    if (std::abs(fft.last_mean()) > 1e-12 * std::max(scale, 1e-300))
      throw std::invalid_argument("from_physical: field has nonzero mean");
    out.coeffs().row(d) = c.transpose().matrix();
  }
  return out;
}

}  // namespace hnsf
