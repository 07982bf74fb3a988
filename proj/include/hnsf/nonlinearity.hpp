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

#ifndef HNSF_NONLINEARITY_HPP_
#define HNSF_NONLINEARITY_HPP_

#include "hnsf/spectral_field.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>
#include <string_view>

namespace hnsf {

/// B(u, v) = Pi_n Pi (u . grad) v.
///
/// The derivative of v is taken spectrally, u and grad v are brought to the
/// lattice grid, multiplied pointwise, transformed back and truncated to the
/// retained ball before the Leray projection. The grid satisfies N >= 3n + 1,
/// so the retained coefficients of the product are exact.
SpectralField bilinear_B(const SpectralField& u, const SpectralField& v);

/// <w, f> = Re sum_k w(k) . conj(f(k)) (H^0 inner product without the L^3
/// volume factor). Throws std::invalid_argument on a lattice mismatch.
double pairing(const SpectralField& w, const SpectralField& f);

enum class InequalityId { Bcon4, BconA, BconA2, B1_m1, B1_m2 };

std::string_view to_string(InequalityId id);
/// Throws std::invalid_argument for unknown names.
InequalityId inequality_from_string(std::string_view name);

struct InequalityReport {
  InequalityId id = InequalityId::Bcon4;
  double alpha = 0.0;
  int trunc_n = 0;
  int num_trials = 0;
  int skipped_trials = 0;
  std::uint64_t seed = 0;
  double max_ratio = 0.0;
  int witness_trial = -1;
  std::uint64_t witness_seed = 0;
  double witness_beta = 0.0;
  std::string witness;
};

/// LHS / RHS of the selected estimate on one triple (u3 ignored by B1_m*).
/// Returns nullopt when any RHS factor is below 1e-14.
///   Bcon4  |<B(u1,u2),u3>|   / (|u1| |u2|_a |u3|_a)
///   BconA  |<B(u1,u2),A u3>| / (|u1|_a |u2|_1 |u3|_{a+1})
///   BconA2 |<B(u1,u2),A u3>| / (|u1|_1 |u2|_a |u3|_{a+1})
///   B1_m   |B(u1,u2)|_m      / (|u1|_{m+1} |u2|_{m+1}),  m = 1, 2
std::optional<double> inequality_ratio(InequalityId id, double alpha, const SpectralField& u1,
                                       const SpectralField& u2, const SpectralField& u3);

/// The three fields of one estimator trial, reproducible from the trial seed.
struct TrialFields {
  double beta;
  SpectralField u1, u2, u3;
};
TrialFields trial_fields(const LatticePtr& lattice, std::uint64_t trial_seed);
std::uint64_t trial_seed(std::uint64_t seed, int trial);

/// Maximum of inequality_ratio over `trials` seeded random triples. Trials
/// are independent and keyed by (seed, trial index), so the result does not
/// depend on evaluation order. Requires alpha >= 5/4 for Bcon4, BconA and
/// BconA2 (std::invalid_argument otherwise) and trials >= 1.
InequalityReport estimate_inequality_constant(InequalityId id, double alpha, int trials, std::uint64_t seed,
                                              const TorusConfig& torus);

/// Same as above for several ids over one set of trials; B(u1, u2) is
/// evaluated once per trial. Each report equals the single-id result.
std::vector<InequalityReport> estimate_inequality_constants(const std::vector<InequalityId>& ids, double alpha,
                                                            int trials, std::uint64_t seed, const TorusConfig& torus);

nlohmann::json to_json(const InequalityReport& r);

}  // namespace hnsf

#endif  // HNSF_NONLINEARITY_HPP_
