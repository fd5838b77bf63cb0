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

// Site distribution through the dual (Heisenberg-side) process.
//
// For momentum k the dual symbol is the superoperator
//   S(k) = e^{ik} L_{B*} R_B + e^{-ik} L_{C*} R_C,   X -> e^{ik} B* X B + e^{-ik} C* X C,
// and the dual process is Y_n(k) = S(k)^n (I). The walker law is recovered as
//   p_x = (1/2pi) int_{-pi}^{pi} e^{ikx} Tr(rho0 Y_n(k)) dk.
// Tr(rho0 Y_n(k)) is a trigonometric polynomial of degree <= n, so an N-point
// rectangle rule on k_j = 2 pi j / N is exact once N >= 2n + 1.
//
// The initial state never enters the evolution: Y_n is computed from the
// Kraus pair alone and rho0 only appears in the final trace.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "oqrw/distribution.hpp"
#include "oqrw/qop.hpp"

namespace oqrw {

inline constexpr double kResidueTolerance = 1e-9;

struct DualSymbol {
  double k = 0.0;
  Superoperator op;
};

DualSymbol dual_symbol(const KrausPair& kp, double k);

/// Y_n(k) by n successive applications of the symbol to vec(I).
Mat2 dual_power(const KrausPair& kp, double k, std::size_t n);

/// Y_n(k) through binary powering of the 4x4 symbol. Cheaper for isolated
/// large-n queries.
Mat2 dual_power_binary(const KrausPair& kp, double k, std::size_t n);

/// Y_n sampled on the uniform grid k_j = 2 pi j / N, j = 0..N-1.
struct DualTrajectory {
  std::size_t steps = 0;
  std::vector<double> nodes;
  std::vector<Mat2> values;
};

DualTrajectory dual_trajectory(const KrausPair& kp, std::size_t n, std::size_t node_count);

/// Default quadrature size, 2n + 2.
std::size_t default_node_count(std::size_t n);

struct DualOptions {
  /// Grid size; must be >= 2n + 1. Defaults to default_node_count(n).
  std::optional<std::size_t> nodes;
};

/// Walker law after n steps from rho0 at the origin. Reports p_x for every
/// x in [-n, n]; negatives from rounding are clipped to 0. Throws ResidueError
/// if any |Im p_x| > 1e-9.
Distribution distribution_via_dual(const KrausPair& kp, const DensityMat& rho0, std::size_t n,
                                   DualOptions options = {});

/// E[exp(i t (X - center) / scale)] for a given law.
Complex characteristic_function(const Distribution& d, double t, double scale, double center = 0.0);

/// E[exp(i t X_n / scale)] with X_n computed by distribution_via_dual.
Complex characteristic_function(const KrausPair& kp, const DensityMat& rho0, std::size_t n,
                                double t, double scale);

}  // namespace oqrw
