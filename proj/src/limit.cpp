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

#include "oqrw/limit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "oqrw/catalog.hpp"
#include "oqrw/dual.hpp"
#include "oqrw/errors.hpp"

namespace oqrw {
namespace {

// Unit-norm vector spanning the (numerical) kernel of a 4x4 matrix.
Vec4 kernel_vector(const Superoperator& a) {
  Eigen::JacobiSVD<Superoperator> svd(a, Eigen::ComputeFullV);
  return svd.matrixV().col(3);
}

}  // namespace

InvariantReport invariant_states(const KrausPair& kp) {
  const Superoperator channel = channel_superoperator(kp);
  Eigen::ComplexEigenSolver<Superoperator> solver(channel, false);
  InvariantReport report;
  for (Eigen::Index i = 0; i < 4; ++i) {
    const Complex lambda = solver.eigenvalues()(i);
    report.spectrum.push_back(lambda);
    if (std::abs(lambda - 1.0) <= kFixedPointThreshold) ++report.fixed_space_dim;
  }
  if (report.fixed_space_dim == 0) {
    throw NoInvariantState("channel has no eigenvalue within 1e-9 of 1");
  }
  if (report.fixed_space_dim > 1) return report;

  Mat2 rho = devectorize(kernel_vector(channel - Superoperator::Identity()));
  rho /= rho.trace();
  rho = hermitian_part(rho);
  const DensityMat state = DensityMat::from_matrix(rho);
  report.residual = max_abs(apply_channel(kp, state).matrix() - state.matrix());
  if (report.residual > kInvariantResidual) {
    std::ostringstream msg;
    msg << "invariant state residual " << report.residual << " exceeds 1e-10";
    throw NumericalGuardError(msg.str());
  }
  report.rho_inf = state;
  return report;
}

double clt_variance(const KrausPair& kp, const DensityMat& rho, double m, const Mat2& poisson_solution) {
  const Mat2& b = kp.left();
  const Mat2& c = kp.right();
  const Mat2 left_part = b * rho.matrix() * b.adjoint();
  const Mat2 right_part = c * rho.matrix() * c.adjoint();
  const Complex v = (left_part + right_part).trace() - m * m +
                    2.0 * ((right_part - left_part) * poisson_solution).trace() -
                    2.0 * m * (rho.matrix() * poisson_solution).trace();
  return v.real();
}

CltParams clt_params_at(const KrausPair& kp, const DensityMat& rho) {
  const double drift = max_abs(apply_channel(kp, rho).matrix() - rho.matrix());
  if (drift > kInvariantResidual) {
    std::ostringstream msg;
    msg << "state is not invariant under the channel (residual " << drift << ")";
    throw ValidationError(msg.str());
  }
  const Mat2& b = kp.left();
  const Mat2& c = kp.right();
  const double m = (c * rho.matrix() * c.adjoint()).trace().real() -
                   (b * rho.matrix() * b.adjoint()).trace().real();
  const Mat2 rhs = c.adjoint() * c - b.adjoint() * b - m * Mat2::Identity();

  const Superoperator dual = adjoint_channel_superoperator(kp);
  const Superoperator system = Superoperator::Identity() - dual;
  Eigen::JacobiSVD<Superoperator> svd(system, Eigen::ComputeFullU | Eigen::ComputeFullV);
  svd.setThreshold(1e-10);
  const Mat2 poisson = hermitian_part(devectorize(svd.solve(vectorize(rhs))));

  CltParams out{rho, m, poisson, 0.0, 0.0, 0.0};
  out.solvability = std::abs((rho.matrix() * rhs).trace());
  out.poisson_residual = max_abs(Mat2(poisson - oqrw::apply(dual, poisson) - rhs));
  out.sigma2 = clt_variance(kp, rho, m, poisson);
  return out;
}

CltParams clt_params(const KrausPair& kp) {
  const InvariantReport report = invariant_states(kp);
  if (report.fixed_space_dim != 1) {
    throw NonUniqueInvariant("channel has a " + std::to_string(report.fixed_space_dim) +
                             "-dimensional fixed space; the invariant state is not unique");
  }
  CltParams out = clt_params_at(kp, *report.rho_inf);
  if (out.solvability > kSolvabilityTolerance) {
    std::ostringstream msg;
    msg << "Poisson equation not solvable: |Tr(rho (C*C - B*B - mI))| = " << out.solvability;
    throw NumericalGuardError(msg.str());
  }
  if (out.poisson_residual > kPoissonResidual) {
    std::ostringstream msg;
    msg << "Poisson residual " << out.poisson_residual << " exceeds 1e-9";
    throw NumericalGuardError(msg.str());
  }
  if (out.sigma2 < -1e-10) {
    std::ostringstream msg;
    msg << "negative variance " << out.sigma2;
    throw NumericalGuardError(msg.str());
  }
  out.sigma2 = std::max(0.0, out.sigma2);
  return out;
}

double laplace_ratio(const std::function<double(double)>& f, const std::function<double(double)>& g,
                     Interval iv, unsigned n) {
  if (!(iv.hi > iv.lo)) throw ParameterError("laplace_ratio needs a non-empty interval");
  const std::size_t panels = kLaplacePanels;
  const double h = (iv.hi - iv.lo) / static_cast<double>(panels);

  std::vector<double> fv(panels + 1);
  double peak = 0.0;
  for (std::size_t i = 0; i <= panels; ++i) {
    fv[i] = f(iv.lo + h * static_cast<double>(i));
    if (!std::isfinite(fv[i])) throw ParameterError("f is not finite on the interval");
    peak = std::max(peak, std::abs(fv[i]));
  }
  if (peak == 0.0) throw DegenerateMax("|f| vanishes identically on the grid");

  // The near-maximal grid points must form one short contiguous run.
  std::size_t first = panels + 1;
  std::size_t last = 0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i <= panels; ++i) {
    if (std::abs(fv[i]) >= peak * (1.0 - 1e-12)) {
      first = std::min(first, i);
      last = std::max(last, i);
      ++hits;
    }
  }
  if (hits != last - first + 1 || (last - first) > panels / 100) {
    throw DegenerateMax("grid maximum of |f| is not isolated");
  }

  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i <= panels; ++i) {
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double fn = std::pow(fv[i] / peak, static_cast<double>(n));
    num += w * fn * g(iv.lo + h * static_cast<double>(i));
    den += w * fn;
  }
  if (den == 0.0) throw DegenerateMax("integral of f^n vanishes");
  return num / den;
}

double ex5_alpha(std::size_t n) {
  if (n == 0) throw ParameterError("ex5_alpha needs n >= 1");
  using boost::math::quadrature::gauss_kronrod;
  const double power = static_cast<double>(n);
  auto integrand = [power](double k) { return std::pow(ex5_lambda1(k), power); };
  // lambda1 is even in k.
  const double half = gauss_kronrod<double, 61>::integrate(integrand, 0.0, std::numbers::pi / 2.0, 20, 1e-12);
  return 2.0 * half;
}

std::vector<LocalLimitRow> ex5_local_limit(std::size_t steps, Site radius, const DensityMat& rho0) {
  const KrausPair kp = build(Ex5{});
  const Distribution d = distribution_via_dual(kp, rho0, steps);
  const double alpha = ex5_alpha(steps);
  std::vector<LocalLimitRow> rows;
  for (Site x = -radius; x <= radius; ++x) {
    LocalLimitRow row;
    row.x = x;
    row.p = d.at(x);
    row.alpha = alpha;
    row.ratio = row.p / alpha;
    const bool same_parity = ((x + static_cast<Site>(steps)) % 2 + 2) % 2 == 0;
    row.limit = same_parity ? 1.0 / std::numbers::pi : 0.0;
    rows.push_back(row);
  }
  return rows;
}

double drift_concentration_check(const KrausPair& kp, const DensityMat& rho0, double alpha,
                                 std::size_t n) {
  if (!(alpha > 0.0)) throw ParameterError("drift_concentration_check needs alpha > 0");
  const Distribution d = distribution_via_dual(kp, rho0, n);
  const double window = 0.5 * std::pow(static_cast<double>(n), alpha);
  double outside = 0.0;
  for (const auto& [x, p] : d.probs()) {
    if (std::abs(static_cast<double>(x + static_cast<Site>(n))) > window) outside += p;
  }
  return outside;
}

}  // namespace oqrw
