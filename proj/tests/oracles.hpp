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

// Test-only reference implementations. Nothing here shares code with the
// FFT path it is used to check.
#ifndef HNSF_TESTS_ORACLES_HPP_
#define HNSF_TESTS_ORACLES_HPP_

#include "hnsf/spectral_field.hpp"

#include <cmath>

namespace hnsf::oracle {

/// Direct convolution: B(u,v)(k) = P_k sum_{p+q=k} (u(p) . i kappa(q)) v(q),
/// restricted to the retained ball.
inline SpectralField convolution_B(const SpectralField& u, const SpectralField& v) {
  const Lattice& lat = u.lattice();
  SpectralField out(u.lattice_ptr());
  const Eigen::Matrix3Xi& k = lat.wavenumbers();
  const Eigen::Matrix3Xd& kappa = lat.kappa();
  for (Eigen::Index p = 0; p < lat.size(); ++p) {
    if (u.coeffs().col(p).isZero(0.0)) continue;
    for (Eigen::Index q = 0; q < lat.size(); ++q) {
      const Eigen::Vector3i sum = k.col(p) + k.col(q);
      const Eigen::Index target = lat.find(sum);
      if (target < 0) continue;
      Complex adv(0.0, 0.0);
      for (int i = 0; i < 3; ++i) adv += u.coeffs()(i, p) * Complex(0.0, kappa(i, q));
      out.coeffs().col(target) += adv * v.coeffs().col(q);
    }
  }
  for (Eigen::Index m = 0; m < lat.size(); ++m) {
    const Eigen::Vector3d kk = kappa.col(m);
    Vector3c c = out.coeffs().col(m);
    Complex dot(0.0, 0.0);
    for (int i = 0; i < 3; ++i) dot += kk(i) * c(i);
    for (int i = 0; i < 3; ++i) c(i) -= dot * kk(i) / kk.squaredNorm();
    out.coeffs().col(m) = c;
  }
  return out;
}

/// Relative max-coefficient difference.
inline double rel_diff(const SpectralField& a, const SpectralField& b) {
  const double scale = std::max(a.coeffs().cwiseAbs().maxCoeff(), b.coeffs().cwiseAbs().maxCoeff());
  if (scale == 0.0) return 0.0;
  return (a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace hnsf::oracle

#endif  // HNSF_TESTS_ORACLES_HPP_
