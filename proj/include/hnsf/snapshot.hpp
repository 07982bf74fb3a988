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

#ifndef HNSF_SNAPSHOT_HPP_
#define HNSF_SNAPSHOT_HPP_

#include "hnsf/spectral_field.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace hnsf {

// Binary container, little-endian:
//   "HNSF" | version u32 | L f64 | trunc_n u32 | mode count u64
//   then per mode in lexicographic k order: k as 3 x i32, coeff as 6 x f64
//   (re, im of x, y, z).
// A noise dump is the concatenation of one record per step.

inline constexpr std::uint32_t kSnapshotVersion = 1;

void write_snapshot(std::ostream& os, const SpectralField& u);
void write_snapshot(const std::filesystem::path& path, const SpectralField& u);

/// Reads one record. The grid size is not stored; `grid_n` = 0 selects the
/// default dealiased grid. Returns nullopt on clean end of stream; throws
/// std::runtime_error on malformed input.
std::optional<SpectralField> read_snapshot(std::istream& is, int grid_n = 0);
SpectralField read_snapshot(const std::filesystem::path& path, int grid_n = 0);
std::vector<SpectralField> read_snapshot_series(const std::filesystem::path& path, int grid_n = 0);

}  // namespace hnsf

#endif  // HNSF_SNAPSHOT_HPP_
