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

#include "oqrw/qop.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "oqrw/errors.hpp"

namespace oqrw {

Vec4 vectorize(const Mat2& a) { return Vec4(a(0, 0), a(1, 0), a(0, 1), a(1, 1)); }

Mat2 devectorize(const Vec4& v) {
  Mat2 a;
  a << v(0), v(2), v(1), v(3);
  return a;
}

Complex hs_inner(const Mat2& a, const Mat2& b) { return (a.adjoint() * b).trace(); }

Mat2 hermitian_part(const Mat2& a) { return 0.5 * (a + a.adjoint()); }

Eigen::Vector2d hermitian_eigenvalues(const Mat2& a) {
  // Closed form for 2x2 Hermitian: t/2 -+ sqrt((d/2)^2 + |off|^2).
  const Mat2 h = hermitian_part(a);
  const double p = h(0, 0).real();
  const double q = h(1, 1).real();
  const double half_gap = 0.5 * (p - q);
  const double r = std::hypot(half_gap, std::abs(h(0, 1)));
  const double mid = 0.5 * (p + q);
  return Eigen::Vector2d(mid - r, mid + r);
}

double KrausPair::normalization_error() const {
  const Mat2 sum = left_.adjoint() * left_ + right_.adjoint() * right_;
  return max_abs(sum - Mat2::Identity());
}

KrausPair validate_kraus_pair(const Mat2& left, const Mat2& right) {
  if (!left.allFinite() || !right.allFinite()) {
    throw InvalidStateError("Kraus operators must have finite entries");
  }
  KrausPair kp(left, right);
  const double err = kp.normalization_error();
  if (!(err <= kKrausTolerance)) throw NormalizationError(err);
  return kp;
}

DensityMat DensityMat::from_matrix(const Mat2& rho) {
  if (!rho.allFinite()) throw InvalidStateError("density matrix has non-finite entries");
  const double herm = max_abs(rho - rho.adjoint());
  if (herm > kStateTolerance) {
    std::ostringstream msg;
    msg << "density matrix is not Hermitian (|rho - rho*|_max = " << herm << ")";
    throw InvalidStateError(msg.str());
  }
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > kStateTolerance) {
    std::ostringstream msg;
    msg << "density matrix trace is " << tr << ", expected 1";
    throw InvalidStateError(msg.str());
  }
  const double min_eig = hermitian_eigenvalues(rho)(0);
  if (min_eig < -kStateTolerance) {
    std::ostringstream msg;
    msg << "density matrix is not positive (min eigenvalue " << min_eig << ")";
    throw InvalidStateError(msg.str());
  }
  return DensityMat(rho);
}

DensityMat DensityMat::diagonal(double a, double b) {
  Mat2 rho = Mat2::Zero();
  rho(0, 0) = a;
  rho(1, 1) = b;
  return from_matrix(rho);
}

DensityMat DensityMat::maximally_mixed() { return diagonal(0.5, 0.5); }

DensityMat apply_channel(const KrausPair& kp, const DensityMat& rho) {
  const Mat2& b = kp.left();
  const Mat2& c = kp.right();
  const Mat2 out = b * rho.matrix() * b.adjoint() + c * rho.matrix() * c.adjoint();
  return DensityMat::from_matrix(hermitian_part(out));
}

Superoperator left_mult(const Mat2& b) {
  return Eigen::kroneckerProduct(Mat2::Identity(), b).eval();
}

Superoperator right_mult(const Mat2& b) {
  return Eigen::kroneckerProduct(Mat2(b.transpose()), Mat2::Identity()).eval();
}

Mat2 apply(const Superoperator& op, const Mat2& a) { return devectorize(op * vectorize(a)); }

Superoperator channel_superoperator(const KrausPair& kp) {
  const Mat2& b = kp.left();
  const Mat2& c = kp.right();
  return left_mult(b) * right_mult(b.adjoint()) + left_mult(c) * right_mult(c.adjoint());
}

Superoperator adjoint_channel_superoperator(const KrausPair& kp) {
  const Mat2& b = kp.left();
  const Mat2& c = kp.right();
  return left_mult(b.adjoint()) * right_mult(b) + left_mult(c.adjoint()) * right_mult(c);
}

}  // namespace oqrw
