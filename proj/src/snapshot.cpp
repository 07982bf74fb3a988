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

#include "hnsf/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace hnsf {

namespace {

template <typename T>
void put(std::ostream& os, T value) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  os.write(bytes.data(), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  std::array<char, sizeof(T)> bytes;
  if (!is.read(bytes.data(), sizeof(T))) throw std::runtime_error("snapshot: truncated record");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

constexpr char kMagic[4] = {'H', 'N', 'S', 'F'};

}  // namespace

void write_snapshot(std::ostream& os, const SpectralField& u) {
  const Lattice& lat = u.lattice();
  os.write(kMagic, 4);
  put<std::uint32_t>(os, kSnapshotVersion);
  put<double>(os, lat.period());
  put<std::uint32_t>(os, static_cast<std::uint32_t>(lat.trunc_n()));
  put<std::uint64_t>(os, static_cast<std::uint64_t>(lat.size()));
  const Eigen::Matrix3Xi& k = lat.wavenumbers();
  for (Eigen::Index m = 0; m < lat.size(); ++m) {
    for (int d = 0; d < 3; ++d) put<std::int32_t>(os, k(d, m));
    for (int d = 0; d < 3; ++d) {
      put<double>(os, u.coeffs()(d, m).real());
      put<double>(os, u.coeffs()(d, m).imag());
    }
  }
  if (!os) throw std::runtime_error("snapshot: write failed");
}

void write_snapshot(const std::filesystem::path& path, const SpectralField& u) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("snapshot: cannot open " + path.string());
  write_snapshot(os, u);
}

std::optional<SpectralField> read_snapshot(std::istream& is, int grid_n) {
  char magic[4];
  is.read(magic, 4);
  if (is.gcount() == 0 && is.eof()) return std::nullopt;
  if (is.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0) throw std::runtime_error("snapshot: bad magic");
  const auto version = get<std::uint32_t>(is);
  if (version != kSnapshotVersion) throw std::runtime_error("snapshot: unsupported version");
  const auto period = get<double>(is);
  const auto trunc_n = get<std::uint32_t>(is);
  const auto count = get<std::uint64_t>(is);

  auto lattice = Lattice::get(TorusConfig{period, static_cast<int>(trunc_n), grid_n});
  if (count != static_cast<std::uint64_t>(lattice->size()))
    throw std::runtime_error("snapshot: mode count does not match trunc_n");
  SpectralField u(lattice);
  for (Eigen::Index m = 0; m < lattice->size(); ++m) {
    Eigen::Vector3i k;
    for (int d = 0; d < 3; ++d) k(d) = get<std::int32_t>(is);
    if (k != lattice->wavenumbers().col(m)) throw std::runtime_error("snapshot: modes not in lattice order");
    for (int d = 0; d < 3; ++d) {
      const double re = get<double>(is);
      const double im = get<double>(is);
      u.coeffs()(d, m) = Complex(re, im);
    }
  }
  return u;
}

SpectralField read_snapshot(const std::filesystem::path& path, int grid_n) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open " + path.string());
  auto u = read_snapshot(is, grid_n);
  if (!u) throw std::runtime_error("snapshot: empty file " + path.string());
  return std::move(*u);
}

std::vector<SpectralField> read_snapshot_series(const std::filesystem::path& path, int grid_n) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open " + path.string());
  std::vector<SpectralField> out;
  while (auto u = read_snapshot(is, grid_n)) out.push_back(std::move(*u));
  return out;
}

}  // namespace hnsf
