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

#include "hnsf/nonlinearity.hpp"

#include "hnsf/random.hpp"
#include "hnsf/transform.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hnsf {

SpectralField bilinear_B(const SpectralField& u, const SpectralField& v) {
  require_same_lattice(u, v);
  const Lattice& lat = u.lattice();
  if (u.coeffs().isZero(0.0) || v.coeffs().isZero(0.0)) return SpectralField(u.lattice_ptr());

  auto& fft = detail::GridTransform::local(lat.grid_n());
  const Eigen::Index points = fft.grid_points();
  const Eigen::Index modes = lat.size();

  thread_local Eigen::ArrayXXd velocity;
  thread_local Eigen::ArrayXd gradient;
  thread_local Eigen::ArrayXd product;
  velocity.resize(points, 3);
  gradient.resize(points);
  product.resize(points);

  for (int i = 0; i < 3; ++i) {
    fft.modes_to_grid(lat, u.coeffs().row(i).transpose().array(), velocity.col(i).data());
  }

  const Eigen::Matrix3Xd& kappa = lat.kappa();
  const Complex I(0.0, 1.0);
  Eigen::ArrayXcd dv(modes);
  Eigen::ArrayXcd row(modes);
  ModeCoeffs out(3, modes);
  for (int j = 0; j < 3; ++j) {
    product.setZero();
    for (int i = 0; i < 3; ++i) {
      dv = I * kappa.row(i).transpose().array().cast<Complex>() * v.coeffs().row(j).transpose().array();
      fft.modes_to_grid(lat, dv, gradient.data());
      product += velocity.col(i) * gradient;
    }
    fft.grid_to_modes(product.data(), lat, row);
    out.row(j) = row.transpose().matrix();
  }
  return leray_project(SpectralField(u.lattice_ptr(), std::move(out)));
}

double pairing(const SpectralField& w, const SpectralField& f) {
  require_same_lattice(w, f);
  return (w.coeffs().array() * f.coeffs().array().conjugate()).sum().real();
}

std::string_view to_string(InequalityId id) {
  switch (id) {
    case InequalityId::Bcon4: return "Bcon4";
    case InequalityId::BconA: return "BconA";
    case InequalityId::BconA2: return "BconA2";
    case InequalityId::B1_m1: return "B1_m1";
    case InequalityId::B1_m2: return "B1_m2";
  }
  return "?";
}

InequalityId inequality_from_string(std::string_view name) {
  for (auto id : {InequalityId::Bcon4, InequalityId::BconA, InequalityId::BconA2, InequalityId::B1_m1,
                  InequalityId::B1_m2}) {
    if (to_string(id) == name) return id;
  }
  throw std::invalid_argument("unknown inequality id '" + std::string(name) + "'");
}

namespace {

bool needs_alpha(InequalityId id) {
  return id == InequalityId::Bcon4 || id == InequalityId::BconA || id == InequalityId::BconA2;
}

/// Right-hand side of the inequality, or nullopt when a factor is below the
/// zero-denominator guard (the trial is skipped).
std::optional<double> denominator(InequalityId id, double alpha, const SpectralField& u1, const SpectralField& u2,
                                  const SpectralField& u3) {
  constexpr double guard = 1e-14;
  auto rhs = [](std::initializer_list<double> factors) -> std::optional<double> {
    double p = 1.0;
    for (double f : factors) {
      if (!(f >= guard)) return std::nullopt;
      p *= f;
    }
    return p;
  };
  switch (id) {
    case InequalityId::Bcon4:
      return rhs({sobolev_norm(u1, 0.0), sobolev_norm(u2, alpha), sobolev_norm(u3, alpha)});
    case InequalityId::BconA:
      return rhs({sobolev_norm(u1, alpha), sobolev_norm(u2, 1.0), sobolev_norm(u3, alpha + 1.0)});
    case InequalityId::BconA2:
      return rhs({sobolev_norm(u1, 1.0), sobolev_norm(u2, alpha), sobolev_norm(u3, alpha + 1.0)});
    case InequalityId::B1_m1:
      return rhs({sobolev_norm(u1, 2.0), sobolev_norm(u2, 2.0)});
    case InequalityId::B1_m2:
      return rhs({sobolev_norm(u1, 3.0), sobolev_norm(u2, 3.0)});
  }
  return std::nullopt;
}

/// Left-hand side given b = B(u1, u2).
double numerator(InequalityId id, const SpectralField& b, const SpectralField& u3) {
  switch (id) {
    case InequalityId::Bcon4: return std::abs(pairing(b, u3));
    case InequalityId::BconA:
    case InequalityId::BconA2: return std::abs(pairing(b, apply_fractional_stokes(u3, 1.0)));
    case InequalityId::B1_m1: return sobolev_norm(b, 1.0);
    case InequalityId::B1_m2: return sobolev_norm(b, 2.0);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::optional<double> inequality_ratio(InequalityId id, double alpha, const SpectralField& u1,
                                       const SpectralField& u2, const SpectralField& u3) {
  const auto den = denominator(id, alpha, u1, u2, u3);
  if (!den) return std::nullopt;
  return numerator(id, bilinear_B(u1, u2), u3) / *den;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return derive_seed(seed, static_cast<std::uint64_t>(trial));
}

TrialFields trial_fields(const LatticePtr& lattice, std::uint64_t seed) {
  constexpr std::array<double, 3> betas = {0.0, 1.0, 2.0};
  SplitMix64 gen(seed);
  const double beta = betas[gen() % betas.size()];
  return TrialFields{beta, random_field(lattice, derive_seed(seed, 1), beta),
                     random_field(lattice, derive_seed(seed, 2), beta),
                     random_field(lattice, derive_seed(seed, 3), beta)};
}

std::vector<InequalityReport> estimate_inequality_constants(const std::vector<InequalityId>& ids, double alpha,
                                                            int trials, std::uint64_t seed, const TorusConfig& torus) {
  for (InequalityId id : ids) {
    if (needs_alpha(id) && !(alpha >= 1.25))
      throw std::invalid_argument(std::string(to_string(id)) + " requires alpha >= 5/4");
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");

  const LatticePtr lattice = Lattice::get(torus);
  const auto count = static_cast<std::size_t>(trials);
  std::vector<std::vector<double>> ratios(ids.size(),
                                          std::vector<double>(count, std::numeric_limits<double>::quiet_NaN()));

#pragma omp parallel for schedule(dynamic, 16)
  for (int t = 0; t < trials; ++t) {
    const TrialFields f = trial_fields(lattice, trial_seed(seed, t));
    std::optional<SpectralField> b;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto den = denominator(ids[i], alpha, f.u1, f.u2, f.u3);
      if (!den) continue;
      if (!b) b = bilinear_B(f.u1, f.u2);
      ratios[i][static_cast<std::size_t>(t)] = numerator(ids[i], *b, f.u3) / *den;
    }
  }

  std::vector<InequalityReport> reports;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    InequalityReport report;
    report.id = ids[i];
    report.alpha = alpha;
    report.trunc_n = lattice->trunc_n();
    report.num_trials = trials;
    report.seed = seed;
    for (int t = 0; t < trials; ++t) {
      const double r = ratios[i][static_cast<std::size_t>(t)];
      if (std::isnan(r)) {
        ++report.skipped_trials;
        continue;
      }
      if (report.witness_trial < 0 || r > report.max_ratio) {
        report.max_ratio = r;
        report.witness_trial = t;
      }
    }
    if (report.witness_trial >= 0) {
      report.witness_seed = trial_seed(seed, report.witness_trial);
      SplitMix64 gen(report.witness_seed);
      report.witness_beta = static_cast<double>(gen() % 3);
      report.witness = "trial " + std::to_string(report.witness_trial) + ", spectral profile lambda^-" +
                       std::to_string(static_cast<int>(report.witness_beta));
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

InequalityReport estimate_inequality_constant(InequalityId id, double alpha, int trials, std::uint64_t seed,
                                              const TorusConfig& torus) {
  return estimate_inequality_constants({id}, alpha, trials, seed, torus).front();
}

nlohmann::json to_json(const InequalityReport& r) {
  return nlohmann::json{{"id", std::string(to_string(r.id))},
                        {"alpha", r.alpha},
                        {"trunc_n", r.trunc_n},
                        {"trials", r.num_trials},
                        {"skipped", r.skipped_trials},
                        {"seed", r.seed},
                        {"max_ratio", r.max_ratio},
                        {"witness_trial", r.witness_trial},
                        {"witness_seed", r.witness_seed},
                        {"witness", r.witness}};
}

}  // namespace hnsf
