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

#ifndef HNSF_RANDOM_HPP_
#define HNSF_RANDOM_HPP_

#include "hnsf/spectral_field.hpp"

#include <cstdint>
#include <limits>

namespace hnsf {

/// Counter-style 64-bit generator (splitmix64). Cheap to construct, so a
/// fresh stream can be keyed on (seed, step, k) for every mode.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Order-sensitive combination of two keys into a new seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key);

/// Key for one integer wavevector, independent of the truncation radius.
std::uint64_t mode_key(const Eigen::Vector3i& k);

/// P_k (g1 + i g2) on every lexicographically positive mode k with
/// g1, g2 ~ N(0, I_3), mirrored by conjugation onto -k. The draw at mode k
/// depends only on (stream, k), so two lattices share values on common modes.
/// Each of the four real coordinates of the projected subspace has unit
/// variance; E|xi_k|^2 = 4.
SpectralField projected_gaussian(const LatticePtr& lattice, std::uint64_t stream);

/// Same as projected_gaussian followed by coeff(k) *= lambda(k)^-beta. Used
/// as the random test-field ensemble.
SpectralField random_field(const LatticePtr& lattice, std::uint64_t seed, double beta);

/// random_field(lattice, seed, 1) restricted to |k| <= radius and scaled to
/// |u|_0 = amplitude. Identical on every lattice containing the radius.
SpectralField smooth_random_field(const LatticePtr& lattice, std::uint64_t seed, int radius, double amplitude);

}  // namespace hnsf

#endif  // HNSF_RANDOM_HPP_
