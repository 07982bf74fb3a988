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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include "hnsf/dynamics.hpp"
#include "hnsf/errors.hpp"
#include "hnsf/nonlinearity.hpp"
#include "hnsf/random.hpp"

#include <cmath>
#include <numbers>

using namespace hnsf;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SolverConfig config(int n, SolverMode mode, double dt = 0.01, double T = 0.1) {
  SolverConfig c;
  c.torus = make_torus(kTwoPi, n);
  c.mode = mode;
  c.dt = dt;
  c.T = T;
  c.seed = 5;
  return c;
}

LatticePtr lattice_of(const SolverConfig& c) { return Lattice::get(c.torus); }

// u = 2 cos x e_y + 2 cos y e_x: B(u,u) is nonzero and has a closed form.
SpectralField crossed_pair(const LatticePtr& lat) {
  return single_mode(lat, {1, 0, 0}, Vector3c(0, 1, 0)) + single_mode(lat, {0, 1, 0}, Vector3c(1, 0, 0));
}

}  // namespace

TEST_CASE("rest state is a fixed point without noise") {
  SolverConfig c = config(4, SolverMode::deterministic);
  const SpectralField zero(lattice_of(c));
  CHECK(sobolev_norm(step_direct(zero, c, 0), 0.0) == 0.0);
  c.mode = SolverMode::direct;
  CHECK(sobolev_norm(step_direct(zero, c, 0), 0.0) > 0.0);
}

TEST_CASE("one deterministic step matches the oracle step") {
  SolverConfig c = config(3, SolverMode::deterministic, 0.013, 0.13);
  c.nu = 0.7;
  c.alpha = 1.4;
  const auto lat = lattice_of(c);
  const SpectralField u = crossed_pair(lat) + 0.3 * single_mode(lat, {1, 1, 1}, Vector3c(1, -1, 0));
  const SpectralField b = oracle::convolution_B(u, u);
  SpectralField expected(lat);
  for (Eigen::Index m = 0; m < lat->size(); ++m) {
    const double lambda = lat->index_norm2()(m);  // L = 2 pi
    const double e = std::exp(-c.nu * std::pow(lambda, c.alpha) * c.dt);
    expected.coeffs().col(m) = e * (u.coeffs().col(m) - c.dt * b.coeffs().col(m));
  }
  CHECK(oracle::rel_diff(step_direct(u, c, 0), expected) <= 1e-13);
}

TEST_CASE("noisy steps are reproducible") {
  const SolverConfig c = config(4, SolverMode::direct);
  const SpectralField u = smooth_random_field(lattice_of(c), 1, 2, 1.0);
  CHECK(bitwise_equal(step_direct(u, c, 3), step_direct(u, c, 3)));
  CHECK_FALSE(bitwise_equal(step_direct(u, c, 3), step_direct(u, c, 4)));

  const Trajectory a = simulate(c, u);
  const Trajectory b = simulate(c, u);
  REQUIRE(a.final_state);
  CHECK(bitwise_equal(*a.final_state, *b.final_state));
}

TEST_CASE("step_v special cases") {
  const SolverConfig c = config(4, SolverMode::splitting);
  const auto lat = lattice_of(c);
  const SpectralField v = smooth_random_field(lat, 2, 3, 1.0);
  const SpectralField z = random_field(lat, 3, 1.0);
  const SpectralField zero(lat);
  const Eigen::ArrayXd decay = ou_decay(*lat, c.nu, c.alpha, c.dt);

  SolverConfig det = c;
  det.mode = SolverMode::deterministic;
  CHECK(bitwise_equal(step_v(v, zero, c), step_direct(v, det, 0)));

  // v = 0: exp(-nu A^alpha dt)(-dt B(z, z)).
  SpectralField ref = -c.dt * oracle::convolution_B(z, z);
  ref.coeffs().array().rowwise() *= decay.transpose().cast<Complex>();
  CHECK(oracle::rel_diff(step_v(zero, z, c), ref) <= 1e-12);

  // v = -z: the nonlinearity vanishes and only the decay is left.
  SpectralField decayed = -1.0 * z;
  decayed.coeffs().array().rowwise() *= decay.transpose().cast<Complex>();
  CHECK(bitwise_equal(step_v(-1.0 * z, z, c), decayed));
}

TEST_CASE("a shear mode decays exactly") {
  // (u . grad) u = 0 for u = 2 cos x e_y.
  SolverConfig c = config(3, SolverMode::deterministic, 0.01, 0.5);
  c.nu = 0.9;
  const auto lat = lattice_of(c);
  const SpectralField u0 = single_mode(lat, {1, 0, 0}, Vector3c(0, 1.5, 0));
  const Trajectory tr = simulate(c, u0);
  REQUIRE(tr.final_state);
  const SpectralField expected = std::exp(-c.nu * c.T) * u0;  // lambda = 1
  CHECK(oracle::rel_diff(*tr.final_state, expected) <= 1e-13);
  CHECK(std::abs(energy_defect(tr)) < 0.02 * std::pow(sobolev_norm(u0, 0.0), 2));
}

TEST_CASE("trajectory records") {
  SolverConfig c = config(4, SolverMode::splitting, 0.01, 0.1);
  c.snapshot_every = 5;
  c.theta_track = {2.0, 0.5};
  const SpectralField u0 = smooth_random_field(lattice_of(c), 4, 3, 2.0);
  const Trajectory tr = simulate(c, u0);
  REQUIRE(tr.records.size() == 11);
  CHECK_FALSE(tr.blowup);
  CHECK(tr.records.front().t == 0.0);
  CHECK(tr.records.front().norms.at("1") == sobolev_norm(u0, 1.0));
  CHECK(tr.records.front().norms.at("alpha") == doctest::Approx(sobolev_norm(u0, 1.25)).epsilon(1e-14));
  CHECK(tr.records.front().norms.count("0.5") == 1);
  CHECK(tr.records.back().v_norms.count("3.25") == 1);
  for (std::size_t i = 1; i < tr.records.size(); ++i) {
    CHECK(tr.records[i].t > tr.records[i - 1].t);
    CHECK(tr.records[i].divergence_residual <= 1e-12);
    CHECK(tr.records[i].noise_input > 0.0);
  }
  REQUIRE(tr.snapshots.size() == 3);
  CHECK(tr.snapshots[2].first == doctest::Approx(0.1));

  const auto j = to_json(tr.records.back());
  CHECK(j.contains("energy_residual"));
  CHECK(j.contains("div_residual"));
  CHECK(j.at("norms").contains("alpha"));
}

TEST_CASE("splitting keeps u = v + z") {
  const SolverConfig c = config(4, SolverMode::splitting);
  Integrator it(c, smooth_random_field(lattice_of(c), 4, 3, 1.0));
  for (int i = 0; i < 5; ++i) it.advance();
  CHECK(bitwise_equal(it.u(), it.v() + it.z()));
  CHECK(it.time() == doctest::Approx(0.05));
}

TEST_CASE("noise_dt shares one Brownian path across dt") {
  SolverConfig coarse = config(3, SolverMode::splitting, 0.02, 0.2);
  coarse.noise_dt = 0.005;
  SolverConfig fine = coarse;
  fine.dt = 0.005;
  Integrator a(coarse, SpectralField(lattice_of(coarse)));
  Integrator b(fine, SpectralField(lattice_of(fine)));
  for (int i = 0; i < 10; ++i) {
    a.advance();
    for (int j = 0; j < 4; ++j) b.advance();
    CHECK(oracle::rel_diff(a.z(), b.z()) <= 1e-13);
  }
  coarse.noise_dt = 0.003;
  CHECK_THROWS_AS(validate(coarse), ConfigError);
}

TEST_CASE("deterministic energy defect is first order in dt") {
  double prev = 0.0;
  for (double dt : {0.02, 0.01, 0.005}) {
    SolverConfig c = config(4, SolverMode::deterministic, dt, 0.2);
    const Trajectory tr = simulate(c, smooth_random_field(lattice_of(c), 1, 3, 2.0));
    const double d = std::abs(energy_defect(tr));
    if (prev > 0.0) {
      CHECK(prev / d > 1.7);
      CHECK(prev / d < 2.3);
    }
    prev = d;
  }
}

TEST_CASE("configuration validation names the field") {
  auto field_of = [](const SolverConfig& c) -> std::string {
    try {
      validate(c);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return "";
  };
  SolverConfig c = config(4, SolverMode::direct);
  CHECK(field_of(c).empty());
  SolverConfig bad = c;
  bad.dt = -0.1;
  CHECK(field_of(bad) == "dt");
  bad = c;
  bad.dt = 0.03;  // T = 0.1 is not a multiple
  CHECK(field_of(bad) == "dt");
  bad = c;
  bad.dt = c.T;
  CHECK(field_of(bad) == "dt");
  bad = c;
  bad.nu = 0.0;
  CHECK(field_of(bad) == "nu");
  bad = c;
  bad.alpha = 0.9;
  CHECK(field_of(bad) == "alpha");
  bad = c;
  bad.torus.grid_n = 12;
  CHECK(field_of(bad) == "grid_n");
  CHECK_THROWS_AS(solver_mode_from_string("euler"), ConfigError);
  CHECK(solver_mode_from_string("splitting") == SolverMode::splitting);

  bad = c;
  bad.gamma = 0.75;
  CHECK_THROWS_AS(validate(bad), RegularityError);
  bad.override_regularity = true;
  CHECK_NOTHROW(validate(bad));
  bad.override_regularity = false;
  bad.mode = SolverMode::deterministic;
  CHECK_NOTHROW(validate(bad));
  CHECK(norm_key(1.25, 1.25) == "alpha");
  CHECK(norm_key(2.0, 1.25) == "2");
  CHECK(norm_key(0.5, 1.25) == "0.5");
}

TEST_CASE("blow-up stops the run and keeps the partial trajectory") {
  SolverConfig c = config(4, SolverMode::direct, 0.1, 2.0);
  c.nu = 0.01;
  c.blowup_factor = 1.5;
  const Trajectory tr = simulate(c, SpectralField(lattice_of(c)));
  REQUIRE(tr.blowup);
  CHECK(tr.blowup->h1_norm > 1.5);
  CHECK(tr.records.back().t < tr.blowup->t + 1e-12);
  CHECK(tr.records.size() < 21);
}

TEST_CASE("uniqueness probe") {
  const SolverConfig c = config(4, SolverMode::direct, 0.01, 0.2);
  const auto lat = lattice_of(c);
  const SpectralField u0 = smooth_random_field(lat, 1, 3, 1.0);

  const UniquenessReport same = uniqueness_probe(c, u0, u0);
  CHECK(same.zero_initial_difference);
  CHECK(same.identical);
  CHECK(std::isnan(same.c_envelope));

  const SpectralField u1 = u0 + 1e-8 * smooth_random_field(lat, 2, 3, 1.0);
  const UniquenessReport rep = uniqueness_probe(c, u0, u1);
  CHECK_FALSE(rep.identical);
  CHECK(rep.samples.size() == 21);
  CHECK(std::isfinite(rep.c_envelope));
  CHECK(rep.c_least_squares <= rep.c_envelope + 1e-12);
  CHECK(gronwall_bound_holds(rep, rep.c_envelope));
  CHECK_FALSE(gronwall_bound_holds(rep, rep.c_envelope - 0.5));

  SolverConfig other = c;
  other.seed = 6;
  CHECK_THROWS_AS(uniqueness_probe(c, u0, other, u1), std::invalid_argument);
  other = c;
  other.dt = 0.02;
  CHECK_THROWS_AS(uniqueness_probe(c, u0, other, u1), std::invalid_argument);
  CHECK(to_json(rep).at("samples").size() == 21);
}

TEST_CASE("regularity suite gate") {
  SolverConfig c = config(2, SolverMode::splitting, 0.01, 0.05);
  const InitialData init = [](const LatticePtr& l) { return smooth_random_field(l, 1, 2, 1.0); };

  const RegularityReport ok = regularity_suite(c, 1, {2, 4}, 2, init);
  CHECK(ok.hypothesis_ok);
  CHECK(ok.finite);
  CHECK(ok.levels.size() == 2);
  CHECK(ok.flags.empty());
  CHECK(ok.levels[0].sup_norm_s > 0.0);
  CHECK(ok.levels[1].interpolation_integral > 0.0);

  CHECK_THROWS_AS(regularity_suite(c, 2, {2, 4}, 2, init), RegularityError);
  const RegularityReport forced = regularity_suite(c, 2, {2, 4}, 2, init, true);
  CHECK_FALSE(forced.hypothesis_ok);
  CHECK_FALSE(forced.flags.empty());

  c.gamma = 1.2;
  CHECK(regularity_suite(c, 2, {2, 4}, 2, init).hypothesis_ok);
  const RegularityReport h0 = regularity_suite(c, 0, {2}, 1, init);
  REQUIRE(h0.flags.size() == 1);
  CHECK(h0.flags[0].find("H0 uniqueness") != std::string::npos);

  CHECK(regularity_hypothesis_violations(1, 1.2, 0.8).size() == 1);
  CHECK(regularity_hypothesis_violations(2, 1.25, 0.76).size() == 1);
  CHECK(regularity_hypothesis_violations(2, 1.25, 1.2).empty());
  CHECK(to_json(ok).at("levels").size() == 2);
}
