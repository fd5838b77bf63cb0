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

#include "oqrw/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "oqrw/errors.hpp"

namespace oqrw {

double Distribution::at(Site x) const {
  const auto it = probs_.find(x);
  return it == probs_.end() ? 0.0 : it->second;
}

double Distribution::total() const {
  double s = 0.0;
  for (const auto& [x, p] : probs_) s += p;
  return s;
}

double moment(const Distribution& d, int order) {
  if (order < 0) throw ParameterError("moment order must be non-negative");
  double s = 0.0;
  for (const auto& [x, p] : d.probs()) s += std::pow(static_cast<double>(x), order) * p;
  return s;
}

double mean(const Distribution& d) { return moment(d, 1); }

double variance(const Distribution& d) {
  const double m = mean(d);
  double s = 0.0;
  for (const auto& [x, p] : d.probs()) {
    const double dx = static_cast<double>(x) - m;
    s += dx * dx * p;
  }
  return s;
}

ComparisonReport compare(const Distribution& a, const Distribution& b) {
  ComparisonReport r;
  double l1 = 0.0;
  auto visit = [&](double diff) {
    r.max_abs = std::max(r.max_abs, diff);
    l1 += diff;
  };
  auto ia = a.probs().begin();
  auto ib = b.probs().begin();
  const auto ea = a.probs().end();
  const auto eb = b.probs().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      visit(std::abs(ia->second));
      ++ia;
    } else if (ia == ea || ib->first < ia->first) {
      visit(std::abs(ib->second));
      ++ib;
    } else {
      visit(std::abs(ia->second - ib->second));
      ++ia;
      ++ib;
    }
  }
  r.tv_distance = 0.5 * l1;
  return r;
}

}  // namespace oqrw
