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

// Quantum-trajectory Monte Carlo for the walk: the Markov chain (rho_n, X_n)
// jumps to (B rho B* / p_B, X - 1) with probability p_B = Tr(B rho B*) and to
// (C rho C* / p_C, X + 1) otherwise. Its position marginal is the walker law.

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

#include "oqrw/distribution.hpp"
#include "oqrw/qop.hpp"

namespace oqrw {

/// SplitMix64. Each trajectory gets its own stream keyed by (seed, index),
/// so results are independent of scheduling.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform();

 private:
  std::uint64_t state_;
};

inline constexpr double kDegenerateBranch = 1e-14;

struct TrajectoryState {
  DensityMat rho;
  Site x = 0;
};

/// Probability of the left (B) branch from `rho`.
double left_branch_probability(const KrausPair& kp, const DensityMat& rho);

/// One jump driven by the uniform variate `u` in [0, 1): left iff u < p_B.
/// A selected branch with probability below 1e-14 is replaced by the other
/// one; DegenerateJump is thrown if both are below that floor.
TrajectoryState trajectory_step(const KrausPair& kp, const TrajectoryState& s, double u);

struct SampleReport {
  std::size_t n_steps = 0;
  std::size_t n_traj = 0;
  std::uint64_t seed = 0;
  Distribution empirical;
  double mean = 0.0;
  double variance = 0.0;
};

/// Runs `n_traj` independent trajectories of `n_steps` jumps from (rho0, 0).
/// Deterministic in `seed` regardless of OQRW_THREADS.
SampleReport sample(const KrausPair& kp, const DensityMat& rho0, std::size_t n_steps,
                    std::size_t n_traj, std::uint64_t seed);

}  // namespace oqrw
