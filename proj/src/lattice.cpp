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

#include "hnsf/lattice.hpp"

#include "hnsf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace hnsf {

namespace {

bool is_smooth(int n) {
  for (int p : {2, 3, 5}) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

bool lex_positive(const Eigen::Vector3i& k) {
  if (k.x() != 0) return k.x() > 0;
  if (k.y() != 0) return k.y() > 0;
  return k.z() > 0;
}

}  // namespace

int dealiased_grid_size(int trunc_n) {
  int n = 3 * trunc_n + 1;
  while (!is_smooth(n)) ++n;
  return n;
}

void validate(const TorusConfig& torus) {
  if (!(torus.period > 0.0) || !std::isfinite(torus.period))
    throw ConfigError("period", "must be a positive finite length");
  if (torus.trunc_n < 1) throw ConfigError("trunc_n", "must be >= 1");
  if (torus.trunc_n > 1000) throw ConfigError("trunc_n", "unreasonably large");
  if (torus.grid_n < 3 * torus.trunc_n + 1)
    throw ConfigError("grid_n", "must be >= 3*trunc_n + 1 for alias-free quadratic products (got " +
                                    std::to_string(torus.grid_n) + ")");
}

TorusConfig make_torus(double period, int trunc_n, int grid_n) {
  TorusConfig t{period, trunc_n, grid_n};
  if (t.grid_n == 0 && trunc_n >= 1) t.grid_n = dealiased_grid_size(trunc_n);
  validate(t);
  return t;
}

Lattice::Lattice(const TorusConfig& torus) : torus_(torus) {
  validate(torus_);
  const int n = torus_.trunc_n;
  const int N = torus_.grid_n;
  const int side = 2 * n + 1;

  std::vector<Eigen::Vector3i> ks;
  for (int kx = -n; kx <= n; ++kx)
    for (int ky = -n; ky <= n; ++ky)
      for (int kz = -n; kz <= n; ++kz) {
        const int k2 = kx * kx + ky * ky + kz * kz;
        if (k2 == 0 || k2 > n * n) continue;
        ks.emplace_back(kx, ky, kz);
      }

  const auto M = static_cast<Eigen::Index>(ks.size());
  k_.resize(3, M);
  kappa_.resize(3, M);
  lambda_.resize(M);
  k2_.resize(M);
  lookup_.assign(static_cast<std::size_t>(side) * side * side, -1);
  slots_.assign(static_cast<std::size_t>(M), -1);

  const double scale = 2.0 * std::numbers::pi / torus_.period;
  const int nz_half = N / 2 + 1;
  auto cube = [&](const Eigen::Vector3i& k) {
    return (static_cast<std::size_t>(k.x() + n) * side + static_cast<std::size_t>(k.y() + n)) * side +
           static_cast<std::size_t>(k.z() + n);
  };

  for (Eigen::Index m = 0; m < M; ++m) {
    const Eigen::Vector3i& k = ks[static_cast<std::size_t>(m)];
    k_.col(m) = k;
    kappa_.col(m) = scale * k.cast<double>();
    lambda_(m) = kappa_.col(m).squaredNorm();
    k2_(m) = k.squaredNorm();
    lookup_[cube(k)] = m;
    if (lex_positive(k)) half_.push_back(m);
    if (k.z() >= 0) {
      const int ix = (k.x() + N) % N;
      const int iy = (k.y() + N) % N;
      slots_[static_cast<std::size_t>(m)] = (static_cast<Eigen::Index>(ix) * N + iy) * nz_half + k.z();
    }
  }

  conj_.resize(static_cast<std::size_t>(M));
  for (Eigen::Index m = 0; m < M; ++m) {
    conj_[static_cast<std::size_t>(m)] = lookup_[cube(-ks[static_cast<std::size_t>(m)])];
  }
}

Eigen::Index Lattice::find(const Eigen::Vector3i& k) const {
  const int n = torus_.trunc_n;
  if ((k.array().abs() > n).any()) return -1;
  const int side = 2 * n + 1;
  return lookup_[(static_cast<std::size_t>(k.x() + n) * side + static_cast<std::size_t>(k.y() + n)) * side +
                 static_cast<std::size_t>(k.z() + n)];
}

Eigen::ArrayXd Lattice::eigenvalue_powers(double exponent) const {
  if (exponent == 0.0) return Eigen::ArrayXd::Ones(size());
  if (exponent == 1.0) return lambda_;
  return lambda_.pow(exponent);
}

std::shared_ptr<const Lattice> Lattice::get(const TorusConfig& torus) {
  TorusConfig t = torus;
  if (t.grid_n == 0 && t.trunc_n >= 1) t.grid_n = dealiased_grid_size(t.trunc_n);
  validate(t);

  static std::mutex mutex;
  static std::map<std::tuple<double, int, int>, std::shared_ptr<const Lattice>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{t.period, t.trunc_n, t.grid_n}];
  if (!slot) slot = std::make_shared<const Lattice>(t);
  return slot;
}

}  // namespace hnsf
