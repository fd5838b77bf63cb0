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

// Long-time behaviour of the walk: invariant states of the internal channel,
// central-limit parameters, the Laplace-type ratio verifier, and the local
// limit scaling of the triangular example.
//
// CLT parameters for a channel with unique invariant state rho:
//   m      = Tr(C rho C*) - Tr(B rho B*)
//   L      solves L - Lstar(L) = C*C - B*B - m I   (Lstar(X) = B* X B + C* X C)
//   sigma2 = Tr(B rho B* + C rho C*) - m^2 + 2 Tr[(C rho C* - B rho B*) L] - 2 m Tr(rho L)

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "oqrw/distribution.hpp"
#include "oqrw/qop.hpp"

namespace oqrw {

inline constexpr double kFixedPointThreshold = 1e-9;
inline constexpr double kInvariantResidual = 1e-10;
inline constexpr double kSolvabilityTolerance = 1e-10;
inline constexpr double kPoissonResidual = 1e-9;

struct InvariantReport {
  /// Number of channel eigenvalues with |lambda - 1| <= 1e-9.
  std::size_t fixed_space_dim = 0;
  /// Present iff fixed_space_dim == 1.
  std::optional<DensityMat> rho_inf;
  /// |L(rho_inf) - rho_inf|_max, zero when rho_inf is absent.
  double residual = 0.0;
  std::vector<Complex> spectrum;
};

/// Throws NoInvariantState when no eigenvalue is within the threshold.
InvariantReport invariant_states(const KrausPair& kp);

struct CltParams {
  DensityMat rho_inf;
  double m = 0.0;
  Mat2 poisson_solution;
  double sigma2 = 0.0;
  /// |Tr(rho_inf (C*C - B*B - m I))|.
  double solvability = 0.0;
  /// |L - Lstar(L) - (C*C - B*B - m I)|_max.
  double poisson_residual = 0.0;
};

/// Requires a unique invariant state (NonUniqueInvariant otherwise). L is the
/// Hermitized minimum-norm least-squares solution of the singular 4x4 system.
CltParams clt_params(const KrausPair& kp);

/// CLT parameters relative to a chosen invariant state, e.g. one ergodic
/// component of a channel with several. The Poisson equation may then have
/// no exact solution; the residual is reported, not enforced.
/// Throws ValidationError if `rho` is not invariant within 1e-10.
CltParams clt_params_at(const KrausPair& kp, const DensityMat& rho);

/// The variance formula for an arbitrary candidate L.
double clt_variance(const KrausPair& kp, const DensityMat& rho, double m, const Mat2& poisson_solution);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

inline constexpr std::size_t kLaplacePanels = std::size_t{1} << 14;

/// (int f^n g) / (int f^n) on `iv` by composite Simpson with 2^14 panels.
/// Tends to g(c) when |f| peaks uniquely at c. Throws DegenerateMax when the
/// grid maximum of |f| is not isolated.
double laplace_ratio(const std::function<double(double)>& f, const std::function<double(double)>& g,
                     Interval iv, unsigned n);

/// alpha_n = int_{-pi/2}^{pi/2} lambda1(k)^n dk for the triangular example,
/// adaptive Gauss-Kronrod, relative error <= 1e-8.
double ex5_alpha(std::size_t n);

struct LocalLimitRow {
  Site x = 0;
  double p = 0.0;
  double alpha = 0.0;
  double ratio = 0.0;
  /// 1/pi when x has the parity of `steps`, else 0.
  double limit = 0.0;
};

/// p_x^(steps) / alpha_steps for |x| <= radius, p from the dual engine.
std::vector<LocalLimitRow> ex5_local_limit(std::size_t steps, Site radius, const DensityMat& rho0);

/// Mass outside the window |x + n| <= 0.5 n^alpha after n steps (dual engine).
/// Meant for the drifting family ex3, whose mass runs to -n.
double drift_concentration_check(const KrausPair& kp, const DensityMat& rho0, double alpha,
                                 std::size_t n);

}  // namespace oqrw
