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

#include "hnsf/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace hnsf {

SpectralField::SpectralField(LatticePtr lattice)
    : lattice_(std::move(lattice)), coeffs_(ModeCoeffs::Zero(3, lattice_->size())) {}

SpectralField::SpectralField(LatticePtr lattice, ModeCoeffs coeffs)
    : lattice_(std::move(lattice)), coeffs_(std::move(coeffs)) {
  if (coeffs_.cols() != lattice_->size())
    throw std::invalid_argument("coefficient count does not match the lattice");
}

void require_same_lattice(const SpectralField& a, const SpectralField& b) {
  if (a.lattice_ptr() != b.lattice_ptr() && !(a.lattice().torus() == b.lattice().torus()))
    throw std::invalid_argument("fields live on different tori");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_lattice(*this, other);
  coeffs_ += other.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_lattice(*this, other);
  coeffs_ -= other.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  coeffs_ *= a;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double a, SpectralField f) { return f *= a; }

SpectralField from_modes(LatticePtr lattice, std::span<const ModeValue> modes) {
  SpectralField f(lattice);
  for (const auto& mv : modes) {
    if (mv.k.isZero()) throw std::invalid_argument("k = 0 coefficient: field has nonzero mean");
    const Eigen::Index m = lattice->find(mv.k);
    if (m < 0) throw std::invalid_argument("wavevector outside the retained lattice");
    f.coeffs().col(m) = mv.value;
  }
  return f;
}

SpectralField single_mode(LatticePtr lattice, const Eigen::Vector3i& k, const Vector3c& amplitude) {
  const ModeValue modes[] = {{k, amplitude}, {-k, amplitude.conjugate()}};
  return from_modes(std::move(lattice), modes);
}

SpectralField leray_project(const SpectralField& v) {
  const Lattice& lat = v.lattice();
  ModeCoeffs out = v.coeffs();
  const Eigen::Matrix3Xd& kappa = lat.kappa();
  const Eigen::ArrayXd& lambda = lat.eigenvalues();
  for (Eigen::Index m = 0; m < out.cols(); ++m) {
    const Complex dot = kappa.col(m).cast<Complex>().dot(out.col(m));
    out.col(m) -= (dot / lambda(m)) * kappa.col(m).cast<Complex>();
  }
  return SpectralField(v.lattice_ptr(), std::move(out));
}

SpectralField apply_fractional_stokes(const SpectralField& u, double alpha) {
  const Eigen::ArrayXd mult = u.lattice().eigenvalue_powers(alpha);
  ModeCoeffs out = u.coeffs().array().rowwise() * mult.transpose().cast<Complex>();
  return SpectralField(u.lattice_ptr(), std::move(out));
}

double sobolev_norm(const SpectralField& u, double s) {
  const Eigen::ArrayXd weight = u.lattice().eigenvalue_powers(s);
  const Eigen::ArrayXd mag2 = u.coeffs().colwise().squaredNorm().transpose().array();
  return std::sqrt((weight * mag2).sum());
}

SpectralField galerkin_truncate(const SpectralField& u, int m) {
  if (m < 1) throw std::invalid_argument("galerkin_truncate: m must be >= 1");
  ModeCoeffs out = u.coeffs();
  const Eigen::ArrayXi& k2 = u.lattice().index_norm2();
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    if (k2(j) > m * m) out.col(j).setZero();
  }
  return SpectralField(u.lattice_ptr(), std::move(out));
}

SpectralField hermitian_symmetrize(const SpectralField& u) {
  const Lattice& lat = u.lattice();
  ModeCoeffs out(3, u.size());
  for (Eigen::Index m = 0; m < out.cols(); ++m) {
    out.col(m) = 0.5 * (u.coeffs().col(m) + u.coeffs().col(lat.conjugate(m)).conjugate());
  }
  return SpectralField(u.lattice_ptr(), std::move(out));
}

double divergence_residual(const SpectralField& u) {
  const double norm = sobolev_norm(u, 0.0);
  if (norm == 0.0) return 0.0;
  const Eigen::Matrix3Xd& kappa = u.lattice().kappa();
  double worst = 0.0;
  for (Eigen::Index m = 0; m < u.size(); ++m) {
    worst = std::max(worst, std::abs(kappa.col(m).cast<Complex>().dot(u.coeffs().col(m))));
  }
  return worst / norm;
}

double hermitian_residual(const SpectralField& u) {
  const double norm = sobolev_norm(u, 0.0);
  if (norm == 0.0) return 0.0;
  double worst = 0.0;
  for (Eigen::Index m = 0; m < u.size(); ++m) {
    const Eigen::Index c = u.lattice().conjugate(m);
    worst = std::max(worst, (u.coeffs().col(c) - u.coeffs().col(m).conjugate()).norm());
  }
  return worst / norm;
}

SpectralField resample(const SpectralField& u, LatticePtr target) {
  if (u.lattice().period() != target->period()) throw std::invalid_argument("resample: period mismatch");
  SpectralField out(target);
  const Eigen::Matrix3Xi& k = target->wavenumbers();
  for (Eigen::Index m = 0; m < target->size(); ++m) {
    const Eigen::Index src = u.lattice().find(k.col(m));
    if (src >= 0) out.coeffs().col(m) = u.coeffs().col(src);
  }
  return out;
}

bool bitwise_equal(const SpectralField& a, const SpectralField& b) {
  if (a.size() != b.size()) return false;
  return std::memcmp(a.coeffs().data(), b.coeffs().data(),
                     static_cast<std::size_t>(a.coeffs().size()) * sizeof(Complex)) == 0;
}

}  // namespace hnsf
