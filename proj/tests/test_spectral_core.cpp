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

#include "hnsf/errors.hpp"
#include "hnsf/random.hpp"
#include "hnsf/snapshot.hpp"
#include "hnsf/spectral_field.hpp"
#include "hnsf/transform.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

using namespace hnsf;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

LatticePtr lattice(int n, double L = kTwoPi) { return Lattice::get(make_torus(L, n)); }

double max_abs(const ModeCoeffs& c) { return c.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("lattice: retained ball, conjugate pairs and half lattice") {
  const auto lat = lattice(3);
  int expected = 0;
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y)
      for (int z = -3; z <= 3; ++z)
        if (x * x + y * y + z * z > 0 && x * x + y * y + z * z <= 9) ++expected;
  CHECK(lat->size() == expected);
  CHECK(static_cast<Eigen::Index>(lat->half().size()) * 2 == lat->size());
  CHECK((lat->eigenvalues() > 0.0).all());
  for (Eigen::Index m = 0; m < lat->size(); ++m) {
    const Eigen::Index c = lat->conjugate(m);
    REQUIRE(c >= 0);
    CHECK(lat->wavenumbers().col(c) == -lat->wavenumbers().col(m));
  }
  for (Eigen::Index m = 1; m < lat->size(); ++m) {
    const Eigen::Vector3i a = lat->wavenumbers().col(m - 1);
    const Eigen::Vector3i b = lat->wavenumbers().col(m);
    CHECK(std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3));
  }
  CHECK(lat->find(Eigen::Vector3i(0, 0, 0)) == -1);
  CHECK(lat->find(Eigen::Vector3i(3, 1, 0)) == -1);
}

TEST_CASE("torus validation") {
  CHECK(dealiased_grid_size(4) == 15);
  CHECK(dealiased_grid_size(8) == 25);
  CHECK(dealiased_grid_size(16) == 50);
  CHECK_THROWS_AS(make_torus(kTwoPi, 8, 20), ConfigError);
  CHECK_THROWS_AS(make_torus(-1.0, 4), ConfigError);
  CHECK_THROWS_AS(make_torus(kTwoPi, 0), ConfigError);
  try {
    make_torus(kTwoPi, 8, 24);
  } catch (const ConfigError& e) {
    CHECK(e.field() == "grid_n");
  }
}

TEST_CASE("leray_project examples") {
  const auto lat = lattice(2);

  SUBCASE("gradient mode is annihilated") {
    const Eigen::Vector3i k(1, -1, 1);
    const Eigen::Vector3d kappa = k.cast<double>();
    const Complex phi(0.3, -0.7);
    const Vector3c grad = Complex(0, 1) * phi * kappa.cast<Complex>();
    const SpectralField g = single_mode(lat, k, grad);
    CHECK(max_abs(leray_project(g).coeffs()) < 1e-15);
  }
  SUBCASE("transverse mode unchanged") {
    const SpectralField u = single_mode(lat, {1, 0, 0}, Vector3c(0, 1, 0));
    CHECK(bitwise_equal(leray_project(u), u));
  }
  SUBCASE("k = (1,1,0), coeff = (1,0,0) -> (1/2, -1/2, 0)") {
    const SpectralField u = single_mode(lat, {1, 1, 0}, Vector3c(1, 0, 0));
    const SpectralField p = leray_project(u);
    const Eigen::Index m = lat->find({1, 1, 0});
    CHECK(std::abs(p.coeffs()(0, m) - Complex(0.5, 0)) < 1e-15);
    CHECK(std::abs(p.coeffs()(1, m) - Complex(-0.5, 0)) < 1e-15);
    CHECK(std::abs(p.coeffs()(2, m)) < 1e-15);
    CHECK(divergence_residual(p) < 1e-15);
  }
  SUBCASE("k = 0 input rejected") {
    const ModeValue bad[] = {{Eigen::Vector3i::Zero(), Vector3c(1, 0, 0)}};
    CHECK_THROWS_AS(from_modes(lat, bad), std::invalid_argument);
  }
}

TEST_CASE("leray_project is idempotent and divergence free on random raw fields") {
  const auto lat = lattice(5);
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    // Raw, unprojected Hermitian data: a random field plus a gradient part.
    SpectralField raw = random_field(lat, trial, 0.5);
    SpectralField grad = random_field(lat, trial + 1000, 0.5);
    for (Eigen::Index m = 0; m < lat->size(); ++m) {
      const Complex phi = grad.coeffs()(0, m);
      raw.coeffs().col(m) += Complex(0, 1) * phi * lat->kappa().col(m).cast<Complex>();
    }
    raw = hermitian_symmetrize(raw);
    const SpectralField p = leray_project(raw);
    const SpectralField pp = leray_project(p);
    const double norm = sobolev_norm(raw, 0.0);
    CHECK(sobolev_norm(pp - p, 0.0) <= 1e-13 * norm);
    CHECK(divergence_residual(p) <= 1e-13);
    CHECK(hermitian_residual(p) <= 1e-15);
  }
}

TEST_CASE("apply_fractional_stokes") {
  const auto lat = lattice(3);
  const SpectralField u = random_field(lat, 7, 1.0);
  CHECK(bitwise_equal(apply_fractional_stokes(u, 0.0), u));

  const SpectralField e1 = single_mode(lat, {1, 0, 0}, Vector3c(0, 1, 0));
  CHECK(sobolev_norm(apply_fractional_stokes(e1, 1.0) - e1, 0.0) == 0.0);

  const SpectralField e111 = single_mode(lat, {1, 1, 1}, Vector3c(1, -1, 0));
  const SpectralField a = apply_fractional_stokes(e111, 1.25);
  const Eigen::Index m = lat->find({1, 1, 1});
  CHECK(a.coeffs()(0, m).real() == doctest::Approx(3.9482220388574776).epsilon(1e-14));

  SUBCASE("group law and invariants") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const SpectralField f = random_field(lat, seed, 0.0);
      const double a1 = -1.3 + 0.2 * static_cast<double>(seed);
      const double b1 = 0.7 - 0.05 * static_cast<double>(seed);
      const SpectralField lhs = apply_fractional_stokes(apply_fractional_stokes(f, a1), b1);
      const SpectralField rhs = apply_fractional_stokes(f, a1 + b1);
      CHECK(sobolev_norm(lhs - rhs, 0.0) <= 1e-12 * sobolev_norm(rhs, 0.0));
      CHECK(divergence_residual(rhs) <= 1e-13);
      CHECK(hermitian_residual(rhs) == 0.0);
    }
  }
}

TEST_CASE("sobolev_norm examples") {
  const auto lat = lattice(2);
  CHECK(sobolev_norm(SpectralField(lat), 1.5) == 0.0);
  const Complex a(0.6, -0.8);
  const SpectralField u = single_mode(lat, {1, 0, 0}, Vector3c(0, a, 0));
  CHECK(sobolev_norm(u, 0.0) == doctest::Approx(std::sqrt(2.0) * std::abs(a)).epsilon(1e-15));
  CHECK(sobolev_norm(u, 2.0) == doctest::Approx(std::sqrt(2.0) * std::abs(a)).epsilon(1e-15));
  // |k|^2 = 2 at L = 2 pi: lambda^s scales the pair by 2^s.
  const SpectralField w = single_mode(lat, {1, 1, 0}, Vector3c(0, 0, 1));
  CHECK(sobolev_norm(w, 3.0) == doctest::Approx(std::sqrt(2.0 * 8.0)).epsilon(1e-15));
}

TEST_CASE("galerkin_truncate") {
  const auto lat = lattice(4);
  const SpectralField u = random_field(lat, 11, 0.5);
  CHECK(bitwise_equal(galerkin_truncate(u, 4), u));
  CHECK(bitwise_equal(galerkin_truncate(u, 9), u));

  const SpectralField three = single_mode(lat, {3, 0, 0}, Vector3c(0, 1, 1));
  CHECK(sobolev_norm(galerkin_truncate(three, 2), 0.0) == 0.0);

  for (int m = 1; m <= 4; ++m) {
    const SpectralField t = galerkin_truncate(u, m);
    CHECK(bitwise_equal(galerkin_truncate(t, m), t));
    CHECK(bitwise_equal(galerkin_truncate(apply_fractional_stokes(u, 0.8), m), apply_fractional_stokes(t, 0.8)));
    // Brute-force Parseval sum of the retained modes.
    double brute = 0.0;
    for (Eigen::Index j = 0; j < lat->size(); ++j) {
      if (lat->index_norm2()(j) <= m * m) brute += u.coeffs().col(j).squaredNorm();
    }
    CHECK(sobolev_norm(t, 0.0) == doctest::Approx(std::sqrt(brute)).epsilon(1e-14));
    CHECK(sobolev_norm(t, 0.0) <= sobolev_norm(u, 0.0));
  }
  CHECK_THROWS_AS(galerkin_truncate(u, 0), std::invalid_argument);
}

TEST_CASE("to_physical: single mode evaluates to 2 cos(2 pi x / L) e_y") {
  for (double L : {kTwoPi, 3.0}) {
    const auto lat = lattice(2, L);
    const SpectralField u = single_mode(lat, {1, 0, 0}, Vector3c(0, 1, 0));
    const PhysicalField g = to_physical(u);
    const int N = g.grid_n;
    double worst = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int l = 0; l < N; ++l) {
          const double x = L * i / N;
          const Eigen::Index r = g.index(i, j, l);
          worst = std::max(worst, std::abs(g.values(r, 0)));
          worst = std::max(worst, std::abs(g.values(r, 1) - 2.0 * std::cos(kTwoPi * x / L)));
          worst = std::max(worst, std::abs(g.values(r, 2)));
        }
    CHECK(worst < 1e-14);
    CHECK(g.values(g.index(0, 0, 0), 1) == doctest::Approx(2.0));
  }
  CHECK(to_physical(SpectralField(lattice(3))).values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("physical round trip and Parseval on band-limited fields") {
  const auto lat = lattice(6, 2.5);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SpectralField u = random_field(lat, seed, 0.5 * static_cast<double>(seed % 3));
    const PhysicalField g = to_physical(u);
    const SpectralField back = from_physical(g, lat);
    CHECK(max_abs((back - u).coeffs()) <= 1e-12 * max_abs(u.coeffs()));

    // Grid quadrature: (1/N^3) sum_x |u(x)|^2 = sum_k |coeff(k)|^2.
    const double quad = g.values.squaredNorm() / static_cast<double>(g.values.rows());
    const double spec = std::pow(sobolev_norm(u, 0.0), 2);
    CHECK(quad == doctest::Approx(spec).epsilon(1e-10));
  }
}

TEST_CASE("from_physical errors") {
  const auto lat = lattice(3);
  PhysicalField g = to_physical(random_field(lat, 3, 0.0));
  g.values.col(0).array() += 1.0;
  CHECK_THROWS_AS(from_physical(g, lat), std::invalid_argument);
  PhysicalField small = to_physical(random_field(lattice(2), 3, 0.0));
  CHECK_THROWS_AS(from_physical(small, lat), std::invalid_argument);
}

TEST_CASE("snapshot container") {
  const auto lat = lattice(3, 1.75);
  const SpectralField u = random_field(lat, 5, 1.0);
  std::stringstream ss;
  write_snapshot(ss, u);
  const std::string bytes = ss.str();
  REQUIRE(bytes.size() == 4 + 4 + 8 + 4 + 8 + static_cast<std::size_t>(lat->size()) * (12 + 48));
  CHECK(bytes.substr(0, 4) == "HNSF");
  CHECK(static_cast<unsigned char>(bytes[4]) == 1);  // version u32 little-endian
  CHECK(static_cast<unsigned char>(bytes[16]) == 3);  // trunc_n
  // First mode is the lexicographically smallest k = (-3, 0, 0).
  std::int32_t kx;
  std::memcpy(&kx, bytes.data() + 28, 4);
  CHECK(kx == -3);

  const auto back = read_snapshot(ss);
  REQUIRE(back.has_value());
  CHECK(bitwise_equal(*back, u));
  CHECK(back->lattice().period() == 1.75);
  CHECK_FALSE(read_snapshot(ss).has_value());

  std::stringstream bad("HNSX garbage");
  CHECK_THROWS_AS(read_snapshot(bad), std::runtime_error);
}
