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

#pragma once

#include <cstdint>
#include <map>

namespace oqrw {

using Site = std::int64_t;

/// Finite measure on the integer lattice, x -> p_x. Sites not stored have
/// probability zero.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(std::map<Site, double> probs) : probs_(std::move(probs)) {}

  static Distribution delta(Site x) { return Distribution({{x, 1.0}}); }

  const std::map<Site, double>& probs() const noexcept { return probs_; }
  double at(Site x) const;
  double total() const;
  bool empty() const noexcept { return probs_.empty(); }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::map<Site, double> probs_;
};

/// sum_x x^order p_x.
double moment(const Distribution& d, int order);
double mean(const Distribution& d);
double variance(const Distribution& d);

struct ComparisonReport {
  double max_abs = 0.0;
  double tv_distance = 0.0;
};

/// Max-abs difference over the union of supports and TV = 1/2 sum |a - b|.
ComparisonReport compare(const Distribution& a, const Distribution& b);

}  // namespace oqrw
