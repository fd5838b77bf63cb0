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

// Direct evolution of the block-diagonal walker state
//   rho^(n) = sum_x rho_x (x) |x><x|,
//   rho_x^(n+1) = B rho_{x+1}^(n) B* + C rho_{x-1}^(n) C*.
// This is the ground-truth engine the Fourier route is checked against.

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "oqrw/distribution.hpp"
#include "oqrw/qop.hpp"

namespace oqrw {

/// Blocks with trace below this are dropped after each step.
inline constexpr double kPruneTrace = 1e-16;
inline constexpr double kDistributionSumTolerance = 1e-8;

/// Immutable snapshot of the walker: sparse map site -> unnormalized block
/// (trace = probability of the site), sorted by site.
class LatticeState {
 public:
  using Block = std::pair<Site, Mat2>;

  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::size_t step_count() const noexcept { return steps_; }

  /// Block at `x`, or nullptr when the site is empty.
  const Mat2* find(Site x) const;
  double total_trace() const;
  /// Smallest eigenvalue over all blocks (Hermitian part).
  double min_block_eigenvalue() const;

 private:
  LatticeState(std::vector<Block> blocks, std::size_t steps)
      : blocks_(std::move(blocks)), steps_(steps) {}

  friend LatticeState initial_state(const DensityMat& rho0, Site site);
  friend LatticeState step(const KrausPair& kp, const LatticeState& s);

  std::vector<Block> blocks_;
  std::size_t steps_ = 0;
};

LatticeState initial_state(const DensityMat& rho0, Site site = 0);

/// One application of the lifted map. Missing neighbours count as zero.
LatticeState step(const KrausPair& kp, const LatticeState& s);

struct EvolveLimits {
  std::size_t max_sites = std::size_t{1} << 22;
};

/// n-fold step. Throws ResourceLimitError if the support could outgrow
/// `limits.max_sites`.
LatticeState evolve(const KrausPair& kp, LatticeState s0, std::size_t n, EvolveLimits limits = {});

/// p_x = Tr(rho_x), negatives clipped to 0, no renormalization.
/// Throws SumError when |sum p_x - 1| > 1e-8.
Distribution distribution(const LatticeState& s);

}  // namespace oqrw
