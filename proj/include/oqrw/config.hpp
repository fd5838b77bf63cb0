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

// Run configuration shared by the command-line tool and config files.
//
// JSON layout:
//   {
//     "example": "ex4:eps=0.1,theta=0.7",        or  "kraus": {"B": M, "C": M}
//     "rho0": M,                                  2x2, entries number or [re, im]
//     "steps": 20,
//     "method": "lattice" | "dual" | "trajectory" | "closed_form" | "cut_unfold" | "both",
//     "seed": 7, "traj": 100000,                  trajectory only
//     "output": {"path": "", "format": "csv" | "json"}
//   }

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "oqrw/catalog.hpp"
#include "oqrw/io.hpp"
#include "oqrw/qop.hpp"

namespace oqrw {

enum class Method { lattice, dual, trajectory, closed_form, cut_unfold, both };
enum class OutputFormat { csv, json };

std::string_view to_string(Method m);
std::string_view to_string(OutputFormat f);
/// Throws ParameterError on unknown names.
Method parse_method(std::string_view text);
OutputFormat parse_format(std::string_view text);

struct InlineKraus {
  Mat2 left = Mat2::Zero();
  Mat2 right = Mat2::Zero();
  friend bool operator==(const InlineKraus& a, const InlineKraus& b) {
    return a.left == b.left && a.right == b.right;
  }
};

struct RunConfig {
  std::variant<ExampleSpec, InlineKraus> kraus = ExampleSpec{Ex5{}};
  DensityMat rho0 = DensityMat::maximally_mixed();
  /// Signed so that negative input reaches validation instead of wrapping.
  std::int64_t steps = 0;
  Method method = Method::lattice;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> traj;
  /// Empty means standard output.
  std::string output_path;
  OutputFormat format = OutputFormat::csv;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

Json to_json(const RunConfig& c);
/// Unknown keys, wrong types and invalid matrices raise ValidationError.
RunConfig config_from_json(const Json& j);

/// Method-specific requirements; throws ValidationError.
void validate(const RunConfig& c);

/// Validated Kraus pair of the configured walk.
KrausPair kraus_pair(const RunConfig& c);

}  // namespace oqrw
