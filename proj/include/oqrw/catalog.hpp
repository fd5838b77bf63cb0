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

// The five reference walks, their closed-form laws, and the combinatorial
// evaluator for the triangular pair (Ex5).
//
//   ex1(p)          B = diag(1, sqrt p),  C = diag(0, sqrt q)
//   ex2(p, phases)  B = [[b11, 0], [b21, 0]], C = [[0, c12], [0, c22]], B + C unitary
//   ex3(p, gamma)   B = diag(1, sqrt(p - g^2/2)), C = [[0, g], [0, sqrt(q - g^2/2)]]
//   ex4(eps, theta) B = [[a, e], [e, a]], C = [[a, -e], [-e, a]], a = sqrt(1/2 - eps^2),
//                   e = eps exp(i theta)
//   ex5             B = [[1, 1], [0, 1]] / sqrt 3, C = [[1, 0], [-1, 1]] / sqrt 3

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>

#include <boost/rational.hpp>

#include "oqrw/distribution.hpp"
#include "oqrw/qop.hpp"

namespace oqrw {

struct Ex1 {
  double p = 0.5;
  friend bool operator==(const Ex1&, const Ex1&) = default;
};

/// Phases of b11, b21, c12; c22 = -sqrt(p) exp(i(phase_b21 + phase_c12 - phase_b11))
/// keeps B + C unitary.
struct Ex2 {
  double p = 0.5;
  double phase_b11 = 0.0;
  double phase_b21 = 0.0;
  double phase_c12 = 0.0;
  friend bool operator==(const Ex2&, const Ex2&) = default;
};

struct Ex3 {
  double p = 0.5;
  double gamma = 0.4;
  friend bool operator==(const Ex3&, const Ex3&) = default;
};

struct Ex4 {
  double eps = 0.1;
  double theta = 0.7;
  friend bool operator==(const Ex4&, const Ex4&) = default;
};

struct Ex5 {
  friend bool operator==(const Ex5&, const Ex5&) = default;
};

using ExampleSpec = std::variant<Ex1, Ex2, Ex3, Ex4, Ex5>;

/// Parses "ex1", "ex1:p=0.3", "ex3:p=0.5,gamma=0.4", "ex4:eps=0.1,theta=0.7", "ex5".
/// Unknown keys and malformed numbers raise ParameterError.
ExampleSpec parse_example(std::string_view text);

/// Canonical text form with every parameter spelled out; parse_example
/// inverts it exactly.
std::string format_example(const ExampleSpec& spec);

/// Throws ParameterError naming the violated constraint.
KrausPair build(const ExampleSpec& spec);

/// Exact finite-sum laws for ex1, ex3 and ex4 from rho0 = diag(a, b).
/// Throws UnsupportedExample for ex2 and ex5.
Distribution closed_form(const ExampleSpec& spec, double a, double b, std::size_t n);

/// Eigen-data of the Ex5 dual symbol at momentum k (u = cos k):
///   xi = (2u + sqrt(4u^2 + 1))^{1/3},  s = xi - 1/xi,
///   lambda0 = s(s^2+3)/6, lambda1 = s(s^2+5)/6,
///   lambda2 = s(s^2+2)/6 + i (sqrt3/6) sqrt(s^2+4), lambda3 = conj(lambda2),
///   gaps[j-1] = lambda_j - lambda0.
struct Ex5Spectrum {
  double k = 0.0;
  double u = 0.0;
  double xi = 0.0;
  double s = 0.0;
  std::array<Complex, 4> lambda{};
  std::array<Complex, 3> gaps{};
};

Ex5Spectrum ex5_spectrum(double k);

/// The Ex5 symbol's dominant eigenvalue, real and in [-1, 1].
double ex5_lambda1(double k);

inline constexpr std::size_t kMaxCutUnfoldSteps = 14;

/// Ex5 law by the cutting/unfolding expansion over Kraus words. Exponential
/// in n; throws SizeError for n > 14.
Distribution cut_unfold_distribution(double a, double b, std::size_t n);

using Rational = boost::rational<std::int64_t>;

/// Same expansion in exact rational arithmetic.
std::map<Site, Rational> cut_unfold_distribution_exact(Rational a, Rational b, std::size_t n);

/// (l^2 + 2) / 3^l, checked against Tr(B*^l B^l) and Tr(C*^l C^l) from
/// matrix powers; throws NumericalGuardError on mismatch.
double ex5_power_traces(unsigned l);

}  // namespace oqrw
