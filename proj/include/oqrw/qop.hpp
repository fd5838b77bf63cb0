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

// 2x2 operator algebra for the internal degree of freedom of the walker:
// Kraus pairs, density matrices, and superoperators on vectorized 2x2
// matrices.
//
// Vectorization is column-stacking, vec(A) = (A00, A10, A01, A11), so that
//   vec(B A C) = (C^T kron B) vec(A),
//   left_mult(B)  = I kron B,
//   right_mult(C) = C^T kron I.

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace oqrw {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec4 = Eigen::Vector4cd;
using Superoperator = Eigen::Matrix4cd;

inline constexpr double kKrausTolerance = 1e-12;
inline constexpr double kStateTolerance = 1e-12;

/// Max-norm, the largest entry modulus.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.cwiseAbs().maxCoeff();
}

Vec4 vectorize(const Mat2& a);
Mat2 devectorize(const Vec4& v);

/// Hilbert-Schmidt pairing <A, B> = Tr(A* B).
Complex hs_inner(const Mat2& a, const Mat2& b);

/// (A + A*) / 2.
Mat2 hermitian_part(const Mat2& a);

/// Eigenvalues of the Hermitian part of `a`, ascending.
Eigen::Vector2d hermitian_eigenvalues(const Mat2& a);

/// Normalized pair of Kraus operators. `left()` moves the walker to x-1,
/// `right()` to x+1. Only obtainable through validate_kraus_pair().
class KrausPair {
 public:
  const Mat2& left() const noexcept { return left_; }
  const Mat2& right() const noexcept { return right_; }

  /// |B*B + C*C - I|_max for this pair.
  double normalization_error() const;

 private:
  KrausPair(Mat2 left, Mat2 right) : left_(std::move(left)), right_(std::move(right)) {}
  friend KrausPair validate_kraus_pair(const Mat2& left, const Mat2& right);

  Mat2 left_;
  Mat2 right_;
};

/// Throws InvalidStateError on non-finite entries and NormalizationError when
/// |B*B + C*C - I|_max exceeds kKrausTolerance.
KrausPair validate_kraus_pair(const Mat2& left, const Mat2& right);

/// Hermitian, positive semidefinite, unit-trace 2x2 matrix.
class DensityMat {
 public:
  /// Validates Hermiticity, positivity (eigenvalue floor -1e-12) and unit trace,
  /// all at kStateTolerance. Throws InvalidStateError.
  static DensityMat from_matrix(const Mat2& rho);
  static DensityMat diagonal(double a, double b);
  static DensityMat maximally_mixed();

  const Mat2& matrix() const noexcept { return rho_; }

  friend bool operator==(const DensityMat& x, const DensityMat& y) { return x.rho_ == y.rho_; }

 private:
  explicit DensityMat(Mat2 rho) : rho_(std::move(rho)) {}
  Mat2 rho_;
};

/// rho -> B rho B* + C rho C*.
DensityMat apply_channel(const KrausPair& kp, const DensityMat& rho);

/// A -> B A.
Superoperator left_mult(const Mat2& b);
/// A -> A B.
Superoperator right_mult(const Mat2& b);

Mat2 apply(const Superoperator& op, const Mat2& a);

/// L_B R_{B*} + L_C R_{C*}: the matrix of rho -> B rho B* + C rho C*.
Superoperator channel_superoperator(const KrausPair& kp);

/// L_{B*} R_B + L_{C*} R_C: the Heisenberg-side map X -> B* X B + C* X C.
Superoperator adjoint_channel_superoperator(const KrausPair& kp);

}  // namespace oqrw
