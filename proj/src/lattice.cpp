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

#include "oqrw/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oqrw/errors.hpp"

namespace oqrw {

const Mat2* LatticeState::find(Site x) const {
  const auto it = std::lower_bound(blocks_.begin(), blocks_.end(), x,
                                   [](const Block& b, Site key) { return b.first < key; });
  if (it == blocks_.end() || it->first != x) return nullptr;
  return &it->second;
}

double LatticeState::total_trace() const {
  double s = 0.0;
  for (const auto& [x, block] : blocks_) s += block.trace().real();
  return s;
}

double LatticeState::min_block_eigenvalue() const {
  double lo = 0.0;
  for (const auto& [x, block] : blocks_) lo = std::min(lo, hermitian_eigenvalues(block)(0));
  return lo;
}

LatticeState initial_state(const DensityMat& rho0, Site site) {
  return LatticeState({{site, rho0.matrix()}}, 0);
}

LatticeState step(const KrausPair& kp, const LatticeState& s) {
  if (s.blocks_.empty()) return LatticeState({}, s.steps_ + 1);

  const Mat2& b = kp.left();
  const Mat2& c = kp.right();
  const Mat2 b_adj = b.adjoint();
  const Mat2 c_adj = c.adjoint();

  // New support lies in [lo - 1, hi + 1]; accumulate densely, then compress.
  const Site lo = s.blocks_.front().first - 1;
  const Site hi = s.blocks_.back().first + 1;
  std::vector<Mat2> dense(static_cast<std::size_t>(hi - lo + 1), Mat2::Zero());
  for (const auto& [x, rho] : s.blocks_) {
    dense[static_cast<std::size_t>(x - 1 - lo)] += b * rho * b_adj;
    dense[static_cast<std::size_t>(x + 1 - lo)] += c * rho * c_adj;
  }

  std::vector<LatticeState::Block> next;
  next.reserve(dense.size());
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i].trace().real() < kPruneTrace) continue;
    next.emplace_back(lo + static_cast<Site>(i), dense[i]);
  }
  return LatticeState(std::move(next), s.steps_ + 1);
}

LatticeState evolve(const KrausPair& kp, LatticeState s0, std::size_t n, EvolveLimits limits) {
  const std::size_t current = s0.blocks().empty()
                                  ? 0
                                  : static_cast<std::size_t>(s0.blocks().back().first -
                                                             s0.blocks().front().first + 1);
  if (current + 2 * n > limits.max_sites) {
    std::ostringstream msg;
    msg << "evolving " << n << " steps could reach " << current + 2 * n
        << " sites, above the limit of " << limits.max_sites;
    throw ResourceLimitError(msg.str());
  }
  for (std::size_t i = 0; i < n; ++i) s0 = step(kp, s0);
  return s0;
}

Distribution distribution(const LatticeState& s) {
  std::map<Site, double> probs;
  double sum = 0.0;
  for (const auto& [x, block] : s.blocks()) {
    const double p = std::max(0.0, block.trace().real());
    probs.emplace_hint(probs.end(), x, p);
    sum += p;
  }
  if (std::abs(sum - 1.0) > kDistributionSumTolerance) {
    std::ostringstream msg;
    msg << "site probabilities sum to " << sum << " after " << s.step_count() << " steps";
    throw SumError(msg.str());
  }
  return Distribution(std::move(probs));
}

}  // namespace oqrw
