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

#ifndef HNSF_SPECTRAL_FIELD_HPP_
#define HNSF_SPECTRAL_FIELD_HPP_

#include "hnsf/lattice.hpp"

#include <Eigen/Core>

#include <complex>
#include <span>

namespace hnsf {

using Complex = std::complex<double>;
using Vector3c = Eigen::Matrix<Complex, 3, 1>;
using ModeCoeffs = Eigen::Matrix<Complex, 3, Eigen::Dynamic>;

/// A real vector field on the torus stored by its Fourier coefficients,
///
///   u(x) = sum_k coeff(k) exp(i kappa(k) . x),
///
/// on every retained mode of a Lattice (both k and -k are stored). A field is
/// physical when coeff(-k) = conj(coeff(k)) and kappa . coeff(k) = 0; the
/// operations in this library keep both properties, but the type itself does
/// not enforce them so that raw (unprojected) data can be represented.
class SpectralField {
 public:
  explicit SpectralField(LatticePtr lattice);
  SpectralField(LatticePtr lattice, ModeCoeffs coeffs);

  const Lattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }

  const ModeCoeffs& coeffs() const { return coeffs_; }
  ModeCoeffs& coeffs() { return coeffs_; }

  Eigen::Index size() const { return coeffs_.cols(); }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double a);

 private:
  LatticePtr lattice_;
  ModeCoeffs coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField f);

/// Throws std::invalid_argument unless both fields live on the same torus.
void require_same_lattice(const SpectralField& a, const SpectralField& b);

/// Raw input coefficient: one wavevector and its complex amplitude.
struct ModeValue {
  Eigen::Vector3i k;
  Vector3c value;
};

/// Builds a field from explicit coefficients. Rejects k = 0 (nonzero mean)
/// and wavevectors outside the lattice. No symmetrization is applied.
SpectralField from_modes(LatticePtr lattice, std::span<const ModeValue> modes);

/// coeff(k) = amplitude, coeff(-k) = conj(amplitude); everything else zero.
SpectralField single_mode(LatticePtr lattice, const Eigen::Vector3i& k, const Vector3c& amplitude);

/// Per-mode projector I - kappa kappa^T / |kappa|^2.
SpectralField leray_project(const SpectralField& v);

/// coeff(k) *= lambda(k)^alpha.
SpectralField apply_fractional_stokes(const SpectralField& u, double alpha);

/// sqrt(sum_k lambda(k)^s |coeff(k)|^2) over the full lattice. The box
/// volume factor L^3 is dropped everywhere.
double sobolev_norm(const SpectralField& u, double s);

/// Zeroes every mode with |k| > m.
SpectralField galerkin_truncate(const SpectralField& u, int m);

/// coeff(k) <- (coeff(k) + conj(coeff(-k))) / 2.
SpectralField hermitian_symmetrize(const SpectralField& u);

/// max_k |kappa . coeff(k)| / |u|_0, 0 for the zero field.
double divergence_residual(const SpectralField& u);
/// max_k |coeff(-k) - conj(coeff(k))| / |u|_0, 0 for the zero field.
double hermitian_residual(const SpectralField& u);

/// Copies coefficients on the modes common to both lattices; the others are
/// zero. Periods must agree.
SpectralField resample(const SpectralField& u, LatticePtr target);

/// True when the two fields hold bitwise identical coefficients.
bool bitwise_equal(const SpectralField& a, const SpectralField& b);

}  // namespace hnsf

#endif  // HNSF_SPECTRAL_FIELD_HPP_
