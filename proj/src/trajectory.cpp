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

#include "oqrw/trajectory.hpp"

#include <sstream>
#include <vector>

#include "oqrw/errors.hpp"
#include "oqrw/parallel.hpp"

namespace oqrw {
namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

TrajectoryState jump(const Mat2& op, const DensityMat& rho, double prob, Site x) {
  Mat2 next = op * rho.matrix() * op.adjoint() / prob;
  return {DensityMat::from_matrix(hermitian_part(next)), x};
}

}  // namespace

SplitMix64 SplitMix64::stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix(seed) ^ mix(index + 0x9e3779b97f4a7c15ULL));
}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

double SplitMix64::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double left_branch_probability(const KrausPair& kp, const DensityMat& rho) {
  const Mat2& b = kp.left();
  return (b * rho.matrix() * b.adjoint()).trace().real();
}

TrajectoryState trajectory_step(const KrausPair& kp, const TrajectoryState& s, double u) {
  const double p_left = left_branch_probability(kp, s.rho);
  const Mat2& c = kp.right();
  const double p_right = (c * s.rho.matrix() * c.adjoint()).trace().real();

  const bool left_ok = p_left >= kDegenerateBranch;
  const bool right_ok = p_right >= kDegenerateBranch;
  if (!left_ok && !right_ok) {
    std::ostringstream msg;
    msg << "both branches vanish (p_B = " << p_left << ", p_C = " << p_right << ")";
    throw DegenerateJump(msg.str());
  }
  bool go_left = u < p_left;
  if (go_left && !left_ok) go_left = false;
  if (!go_left && !right_ok) go_left = true;

  return go_left ? jump(kp.left(), s.rho, p_left, s.x - 1)
                 : jump(kp.right(), s.rho, p_right, s.x + 1);
}

SampleReport sample(const KrausPair& kp, const DensityMat& rho0, std::size_t n_steps,
                    std::size_t n_traj, std::uint64_t seed) {
  if (n_traj == 0) throw ParameterError("sample needs at least one trajectory");

  // Final positions live in [-n, n]; count them per chunk and merge.
  const std::size_t width = 2 * n_steps + 1;
  const std::size_t chunks = std::max<std::size_t>(1, std::min(thread_budget(), n_traj / 256));
  const std::size_t per_chunk = (n_traj + chunks - 1) / chunks;
  std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(width, 0));

  parallel_for(
      chunks,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t ch = begin; ch < end; ++ch) {
          auto& counts = partial[ch];
          const std::size_t first = ch * per_chunk;
          const std::size_t last = std::min(n_traj, first + per_chunk);
          for (std::size_t i = first; i < last; ++i) {
            SplitMix64 rng = SplitMix64::stream(seed, i);
            TrajectoryState s{rho0, 0};
            for (std::size_t t = 0; t < n_steps; ++t) s = trajectory_step(kp, s, rng.uniform());
            ++counts[static_cast<std::size_t>(s.x + static_cast<Site>(n_steps))];
          }
        }
      },
      1);

  std::vector<std::uint64_t> counts(width, 0);
  for (const auto& part : partial) {
    for (std::size_t i = 0; i < width; ++i) counts[i] += part[i];
  }

  SampleReport report;
  report.n_steps = n_steps;
  report.n_traj = n_traj;
  report.seed = seed;
  std::map<Site, double> probs;
  const double total = static_cast<double>(n_traj);
  double sum_x = 0.0;
  for (std::size_t i = 0; i < width; ++i) {
    if (counts[i] == 0) continue;
    const Site x = static_cast<Site>(i) - static_cast<Site>(n_steps);
    probs.emplace_hint(probs.end(), x, static_cast<double>(counts[i]) / total);
    sum_x += static_cast<double>(x) * static_cast<double>(counts[i]);
  }
  report.mean = sum_x / total;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < width; ++i) {
    if (counts[i] == 0) continue;
    const double dx = static_cast<double>(static_cast<Site>(i) - static_cast<Site>(n_steps)) - report.mean;
    sum_sq += dx * dx * static_cast<double>(counts[i]);
  }
  report.variance = sum_sq / total;
  report.empirical = Distribution(std::move(probs));
  return report;
}

}  // namespace oqrw
