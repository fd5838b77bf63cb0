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

#include "oqrw/catalog.hpp"
#include "oqrw/errors.hpp"
#include "oqrw/lattice.hpp"
#include "support/oracles.hpp"

using namespace oqrw;

TEST_CASE("initial state is a single block") {
  const LatticeState s = initial_state(DensityMat::maximally_mixed());
  REQUIRE(s.blocks().size() == 1);
  CHECK(s.blocks().front().first == 0);
  CHECK(s.step_count() == 0);
  CHECK(initial_state(DensityMat::diagonal(1.0, 0.0), 5).find(5) != nullptr);
  CHECK(initial_state(DensityMat::diagonal(1.0, 0.0), 5).find(0) == nullptr);
  CHECK_THROWS_AS(DensityMat::diagonal(1.2, -0.2), InvalidStateError);
}

TEST_CASE("one step splits into B rho B* and C rho C*") {
  std::mt19937_64 rng(1);
  const KrausPair kp = testing::random_kraus_pair(rng);
  const DensityMat rho = testing::random_density(rng);
  const LatticeState s = step(kp, initial_state(rho));
  CHECK(s.step_count() == 1);
  REQUIRE(s.find(-1) != nullptr);
  REQUIRE(s.find(1) != nullptr);
  CHECK(s.find(0) == nullptr);
  const Mat2& b = kp.left();
  const Mat2& c = kp.right();
  CHECK(max_abs(Mat2(*s.find(-1) - b * rho.matrix() * b.adjoint())) < 1e-15);
  CHECK(max_abs(Mat2(*s.find(1) - c * rho.matrix() * c.adjoint())) < 1e-15);
}

TEST_CASE("pure left shift") {
  const KrausPair kp = build(Ex1{1.0});
  const LatticeState s = evolve(kp, initial_state(DensityMat::maximally_mixed()), 17);
  REQUIRE(s.blocks().size() == 1);
  CHECK(s.blocks().front().first == -17);
}

TEST_CASE("ex5 four-step law") {
  const Distribution d = distribution(evolve(build(Ex5{}), initial_state(DensityMat::diagonal(0.5, 0.5)), 4));
  const double expected[] = {1.0 / 9, 2.0 / 9, 3.0 / 9, 2.0 / 9, 1.0 / 9};
  for (int i = 0; i < 5; ++i) CHECK(std::abs(d.at(-4 + 2 * i) - expected[i]) < 1e-12);
  CHECK(d.probs().size() == 5);
}

TEST_CASE("evolve: identity at n = 0 and semigroup") {
  std::mt19937_64 rng(2);
  const KrausPair kp = testing::random_kraus_pair(rng);
  const LatticeState s0 = initial_state(testing::random_density(rng));
  const LatticeState same = evolve(kp, s0, 0);
  CHECK(same.blocks() == s0.blocks());
  const LatticeState direct = evolve(kp, s0, 13);
  const LatticeState split = evolve(kp, evolve(kp, s0, 5), 8);
  CHECK(split.step_count() == 13);
  REQUIRE(direct.blocks().size() == split.blocks().size());
  for (std::size_t i = 0; i < direct.blocks().size(); ++i) {
    CHECK(direct.blocks()[i].first == split.blocks()[i].first);
    CHECK(max_abs(Mat2(direct.blocks()[i].second - split.blocks()[i].second)) < 1e-15);
  }
}

TEST_CASE("ex1 from the lower level is a symmetric binomial") {
  const Distribution d = distribution(evolve(build(Ex1{0.5}), initial_state(DensityMat::diagonal(0.0, 1.0)), 10));
  double choose = 1.0;
  for (int l = 0; l <= 10; ++l) {
    CHECK(std::abs(d.at(10 - 2 * l) - choose / 1024.0) < 1e-14);
    choose = choose * (10 - l) / (l + 1);
  }
  CHECK(std::abs(mean(d)) < 1e-13);
  CHECK(std::abs(variance(d) - 10.0) < 1e-12);
}

TEST_CASE("resource guard") {
  CHECK_THROWS_AS(evolve(build(Ex5{}), initial_state(DensityMat::maximally_mixed()), 100, EvolveLimits{50}),
                  ResourceLimitError);
  CHECK_NOTHROW(evolve(build(Ex5{}), initial_state(DensityMat::maximally_mixed()), 20, EvolveLimits{50}));
}

TEST_CASE("distribution of the initial state is a delta") {
  const Distribution d = distribution(initial_state(DensityMat::maximally_mixed(), -3));
  CHECK(d == Distribution::delta(-3));
}

TEST_CASE("moments") {
  CHECK(moment(Distribution::delta(0), 1) == 0.0);
  CHECK(moment(Distribution::delta(0), 2) == 0.0);
  const KrausPair ex5 = build(Ex5{});
  LatticeState s = initial_state(DensityMat::maximally_mixed());
  for (int n = 1; n <= 30; ++n) {
    s = step(ex5, s);
    CHECK(std::abs(mean(distribution(s))) < 1e-13);
  }
}

TEST_CASE("trace conservation and positivity over long runs") {
  std::mt19937_64 rng(3);
  const KrausPair random = testing::random_kraus_pair(rng);
  for (const KrausPair& kp : {build(Ex5{}), random}) {
    LatticeState s = initial_state(DensityMat::maximally_mixed());
    for (std::size_t n = 1; n <= 10000; ++n) {
      s = step(kp, s);
      if (n % 500 == 0 || n <= 50) {
        CHECK(std::abs(s.total_trace() - 1.0) <= static_cast<double>(n) * 1e-14);
        CHECK(s.min_block_eigenvalue() >= -1e-10);
      }
    }
  }
}

TEST_CASE("support and parity are exact") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const KrausPair kp = testing::random_kraus_pair(rng);
    const DensityMat rho = testing::random_density(rng);
    for (std::size_t n : {1u, 6u, 25u}) {
      const LatticeState s = evolve(kp, initial_state(rho), n);
      for (const auto& [x, block] : s.blocks()) {
        CHECK(std::abs(x) <= static_cast<Site>(n));
        CHECK((x + static_cast<Site>(n)) % 2 == 0);
      }
    }
  }
}

TEST_CASE("agrees with brute-force word enumeration") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const KrausPair kp = testing::random_kraus_pair(rng);
    const DensityMat rho = testing::random_density(rng);
    for (std::size_t n = 0; n <= 12; ++n) {
      const Distribution lattice = distribution(evolve(kp, initial_state(rho), n));
      CHECK(compare(lattice, testing::brute_force_distribution(kp, rho, n)).max_abs <= 1e-11);
    }
  }
}

TEST_CASE("ex1 and ex2 against classical oracles") {
  for (double p : {0.2, 0.5, 0.9}) {
    for (double a : {0.0, 0.4, 1.0}) {
      const Distribution d = distribution(evolve(build(Ex1{p}), initial_state(DensityMat::diagonal(a, 1 - a)), 25));
      CHECK(compare(d, testing::diagonal_walk(p, a, 1 - a, 25)).max_abs < 1e-13);
      const Distribution e =
          distribution(evolve(build(Ex2{p, 0.3, -1.1, 2.0}), initial_state(DensityMat::diagonal(a, 1 - a)), 25));
      CHECK(compare(e, testing::correlated_walk(p, a, 25)).max_abs < 1e-13);
    }
  }
}
