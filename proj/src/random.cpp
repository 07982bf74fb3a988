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

#include "hnsf/random.hpp"

#include <random>

namespace hnsf {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) {
  SplitMix64 a(seed);
  const std::uint64_t h = a();
  SplitMix64 b(h ^ (key * 0xD1B54A32D192ED03ull + 0x632BE59BD9B4E019ull));
  return b();
}

std::uint64_t mode_key(const Eigen::Vector3i& k) {
  constexpr std::uint64_t mask = (1ull << 21) - 1;
  const auto enc = [](int v) { return static_cast<std::uint64_t>(static_cast<std::int64_t>(v) + (1 << 20)) & mask; };
  return (enc(k.x()) << 42) | (enc(k.y()) << 21) | enc(k.z());
}

SpectralField projected_gaussian(const LatticePtr& lattice, std::uint64_t stream) {
  SpectralField out(lattice);
  const Eigen::Matrix3Xi& k = lattice->wavenumbers();
  const Eigen::Matrix3Xd& kappa = lattice->kappa();
  const Eigen::ArrayXd& lambda = lattice->eigenvalues();
  for (Eigen::Index m : lattice->half()) {
    SplitMix64 gen(derive_seed(stream, mode_key(k.col(m))));
    std::normal_distribution<double> normal;
    Vector3c xi;
    for (int d = 0; d < 3; ++d) {
      const double re = normal(gen);
      const double im = normal(gen);
      xi(d) = Complex(re, im);
    }
    const Eigen::Vector3cd kc = kappa.col(m).cast<Complex>();
    xi -= (kc.dot(xi) / lambda(m)) * kc;
    out.coeffs().col(m) = xi;
    out.coeffs().col(lattice->conjugate(m)) = xi.conjugate();
  }
  return out;
}

SpectralField random_field(const LatticePtr& lattice, std::uint64_t seed, double beta) {
  SpectralField f = projected_gaussian(lattice, seed);
  if (beta != 0.0) {
    f.coeffs().array().rowwise() *= lattice->eigenvalue_powers(-beta).transpose().cast<Complex>();
  }
  return f;
}

SpectralField smooth_random_field(const LatticePtr& lattice, std::uint64_t seed, int radius, double amplitude) {
  SpectralField f = galerkin_truncate(random_field(lattice, seed, 1.0), radius);
  const double norm = sobolev_norm(f, 0.0);
  if (norm > 0.0) f *= amplitude / norm;
  return f;
}

}  // namespace hnsf
