// Copyright 2026 The OQRW Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "oqrw/catalog.hpp"
#include "oqrw/dual.hpp"
#include "oqrw/errors.hpp"
#include "oqrw/lattice.hpp"
#include "support/oracles.hpp"

using namespace oqrw;

namespace {

const Complex kI{0.0, 1.0};

double binom(int n, int l) {
  double v = 1.0;
  for (int i = 0; i < l; ++i) v = v * (n - i) / (i + 1);
  return v;
}

}  // namespace

TEST_CASE("symbol at k = 0 fixes the identity") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const KrausPair kp = testing::random_kraus_pair(rng);
    CHECK(max_abs(Mat2(oqrw::apply(dual_symbol(kp, 0.0).op, Mat2::Identity()) - Mat2::Identity())) < 1e-14);
  }
}

TEST_CASE("symbol is the Hilbert-Schmidt adjoint of the phased channel") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const KrausPair kp = testing::random_kraus_pair(rng);
    const double k = 0.37 * i - 3.0;
    const Mat2& b = kp.left();
    const Mat2& c = kp.right();
    const Superoperator phased = std::exp(-kI * k) * left_mult(b) * right_mult(b.adjoint()) +
                                 std::exp(kI * k) * left_mult(c) * right_mult(c.adjoint());
    CHECK(max_abs(Superoperator(dual_symbol(kp, k).op - phased.adjoint())) < 1e-14);
  }
  const KrausPair ex5 = build(Ex5{});
  CHECK(max_abs(Superoperator(dual_symbol(ex5, 0.0).op - adjoint_channel_superoperator(ex5))) < 1e-15);
}

TEST_CASE("ex1 dual process in closed form") {
  const double p = 0.3;
  const double q = 0.7;
  const KrausPair kp = build(Ex1{p});
  for (int n : {0, 1, 4, 9}) {
    for (double k : {-2.5, 0.4, 1.9}) {
      Complex a2 = 0.0;
      for (int l = 0; l <= n; ++l) {
        a2 += binom(n, l) * std::exp(-kI * k * static_cast<double>(n - 2 * l)) * std::pow(p, l) * std::pow(q, n - l);
      }
      const Mat2 got = dual_power(kp, k, static_cast<std::size_t>(n));
      CHECK(std::abs(got(0, 0) - std::exp(kI * k * static_cast<double>(n))) < 1e-13);
      CHECK(std::abs(got(1, 1) - a2) < 1e-13);
      CHECK(std::abs(got(0, 1)) < 1e-15);
      CHECK(std::abs(got(1, 0)) < 1e-15);
    }
  }
}

TEST_CASE("ex2 dual coefficients follow the two-level recurrence") {
  for (double p : {0.3, 0.5, 0.8}) {
    const KrausPair kp = build(Ex2{p, 0.4, 1.2, -0.7});
    for (double k : {-1.3, 0.2, 2.9}) {
      Eigen::Matrix2cd t;
      t << std::exp(kI * k) * p, std::exp(kI * k) * (1 - p), std::exp(-kI * k) * (1 - p), std::exp(-kI * k) * p;
      Eigen::Vector2cd coeff(1.0, 1.0);
      for (std::size_t n = 0; n <= 15; ++n) {
        const Mat2 y = dual_power(kp, k, n);
        CHECK(std::abs(y(0, 0) - coeff(0)) < 1e-12);
        CHECK(std::abs(y(1, 1) - coeff(1)) < 1e-12);
        CHECK(std::abs(y(0, 1)) < 1e-12);
        coeff = t * coeff;
      }
    }
  }
}

TEST_CASE("ex3 dual coefficients in closed form") {
  const double p = 0.6;
  const double gamma = 0.5;
  const double pt = p - gamma * gamma / 2;
  const double qt = 1 - p - gamma * gamma / 2;
  const KrausPair kp = build(Ex3{p, gamma});
  for (std::size_t n : {0u, 1u, 5u, 12u}) {
    for (double k : {-0.8, 1.1, 3.0}) {
      const Complex w = std::exp(kI * k) * pt + std::exp(-kI * k) * qt;
      Complex a2 = std::pow(w, static_cast<double>(n));
      for (std::size_t l = 0; l < n; ++l) {
        a2 += std::exp(-kI * k) * gamma * gamma * std::exp(kI * k * static_cast<double>(n - 1 - l)) *
              std::pow(w, static_cast<double>(l));
      }
      const Mat2 y = dual_power(kp, k, n);
      CHECK(std::abs(y(0, 0) - std::exp(kI * k * static_cast<double>(n))) < 1e-13);
      CHECK(std::abs(y(1, 1) - a2) < 1e-13);
    }
  }
}

TEST_CASE("dual power: n = 0 and binary powering") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const KrausPair kp = testing::random_kraus_pair(rng);
    const double k = -3.0 + 0.6 * i;
    CHECK(dual_power(kp, k, 0) == Mat2::Identity());
    for (std::size_t n : {1u, 7u, 64u, 301u}) {
      CHECK(max_abs(Mat2(dual_power(kp, k, n) - dual_power_binary(kp, k, n))) < 1e-12);
    }
  }
}

TEST_CASE("distribution via the dual: small cases") {
  std::mt19937_64 rng(4);
  const KrausPair kp = testing::random_kraus_pair(rng);
  CHECK(compare(distribution_via_dual(kp, testing::random_density(rng), 0), Distribution::delta(0)).max_abs < 1e-15);

  const Distribution d = distribution_via_dual(build(Ex5{}), DensityMat::diagonal(0.5, 0.5), 4);
  const double expected[] = {1.0 / 9, 2.0 / 9, 3.0 / 9, 2.0 / 9, 1.0 / 9};
  for (int i = 0; i < 5; ++i) CHECK(std::abs(d.at(-4 + 2 * i) - expected[i]) < 1e-12);
  for (int x = -3; x <= 3; x += 2) CHECK(d.at(x) < 1e-15);

  const KrausPair left = validate_kraus_pair(Mat2::Identity(), Mat2::Zero());
  CHECK(std::abs(distribution_via_dual(left, DensityMat::maximally_mixed(), 9).at(-9) - 1.0) < 1e-13);
}

TEST_CASE("too few quadrature nodes are rejected") {
  CHECK_THROWS_AS(distribution_via_dual(build(Ex5{}), DensityMat::maximally_mixed(), 10, DualOptions{20}),
                  ParameterError);
  CHECK_NOTHROW(distribution_via_dual(build(Ex5{}), DensityMat::maximally_mixed(), 10, DualOptions{21}));
}

TEST_CASE("dual agrees with the lattice engine") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const KrausPair kp = testing::random_kraus_pair(rng);
    const DensityMat rho = testing::random_density(rng);
    for (std::size_t n : {1u, 5u, 12u, 30u}) {
      const Distribution a = distribution(evolve(kp, initial_state(rho), n));
      CHECK(compare(a, distribution_via_dual(kp, rho, n)).max_abs <= 1e-10);
    }
  }
}

TEST_CASE("doubling the grid changes nothing") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const KrausPair kp = testing::random_kraus_pair(rng);
    const DensityMat rho = testing::random_density(rng);
    const std::size_t n = 25;
    const Distribution base = distribution_via_dual(kp, rho, n);
    const Distribution doubled = distribution_via_dual(kp, rho, n, DualOptions{2 * default_node_count(n)});
    CHECK(compare(base, doubled).max_abs <= 1e-12);
  }
}

TEST_CASE("real catalog pairs: Y_n(-k) = Y_n(k)*") {
  for (const ExampleSpec& spec : {ExampleSpec{Ex1{0.3}}, ExampleSpec{Ex2{0.6}}, ExampleSpec{Ex3{}}, ExampleSpec{Ex5{}}}) {
    const KrausPair kp = build(spec);
    for (double k : {0.3, 1.7, 2.8}) {
      for (std::size_t n : {3u, 11u}) {
        CHECK(max_abs(Mat2(dual_power(kp, -k, n) - dual_power(kp, k, n).adjoint())) < 1e-13);
      }
    }
  }
}

TEST_CASE("result does not depend on the thread count") {
  std::mt19937_64 rng(7);
  const KrausPair kp = testing::random_kraus_pair(rng);
  const DensityMat rho = testing::random_density(rng);
  setenv("OQRW_THREADS", "1", 1);
  const Distribution one = distribution_via_dual(kp, rho, 700);
  setenv("OQRW_THREADS", "5", 1);
  const Distribution five = distribution_via_dual(kp, rho, 700);
  unsetenv("OQRW_THREADS");
  CHECK(one == five);
}

TEST_CASE("characteristic function") {
  const KrausPair ex5 = build(Ex5{});
  const DensityMat half = DensityMat::maximally_mixed();
  CHECK(std::abs(characteristic_function(ex5, half, 30, 0.0, 1.0) - 1.0) < 1e-13);
  CHECK_THROWS_AS(characteristic_function(ex5, half, 3, 1.0, 0.0), ParameterError);

  // ex3 with scale n: the drift -1 dominates, phi -> e^{-it}
  const KrausPair ex3 = build(Ex3{});
  double previous = 1e9;
  for (std::size_t n : {25u, 100u, 400u}) {
    const double err = std::abs(characteristic_function(ex3, half, n, 1.5, static_cast<double>(n)) - std::exp(-kI * 1.5));
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 0.02);

  // ex5 with scale sqrt(n): Gaussian with variance 8/9
  const std::size_t n = 2000;
  for (double t : {0.5, 1.0, 2.0}) {
    const Complex phi = characteristic_function(ex5, half, n, t, std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(phi - std::exp(-(4.0 / 9.0) * t * t)) < 0.01);
  }
}
