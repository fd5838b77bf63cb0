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

#include "oqrw/dual.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oqrw/errors.hpp"
#include "oqrw/parallel.hpp"

namespace oqrw {
namespace {

struct SymbolParts {
  Superoperator left;   // L_{B*} R_B, carries e^{ik}
  Superoperator right;  // L_{C*} R_C, carries e^{-ik}
};

SymbolParts symbol_parts(const KrausPair& kp) {
  const Mat2& b = kp.left();
  const Mat2& c = kp.right();
  return {left_mult(b.adjoint()) * right_mult(b), left_mult(c.adjoint()) * right_mult(c)};
}

Superoperator assemble(const SymbolParts& parts, Complex phase) {
  return phase * parts.left + std::conj(phase) * parts.right;
}

Complex unit_phase(double k) { return std::polar(1.0, k); }

// e^{2 pi i m / N} for m = 0..N-1.
std::vector<Complex> twiddles(std::size_t count) {
  std::vector<Complex> w(count);
  const double base = 2.0 * std::numbers::pi / static_cast<double>(count);
  for (std::size_t m = 0; m < count; ++m) w[m] = unit_phase(base * static_cast<double>(m));
  return w;
}

// Repeated application of a fixed 4x4 complex operator, real and imaginary
// parts split for speed.
constexpr double kUnderflowFloor = 1e-250;

class SplitOperator {
 public:
  explicit SplitOperator(const Superoperator& op) {
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        re_[4 * r + c] = op(r, c).real();
        im_[4 * r + c] = op(r, c).imag();
      }
    }
  }

  Vec4 power_apply(const Vec4& v0, std::size_t n) const {
    std::array<double, 4> vr{};
    std::array<double, 4> vi{};
    for (int r = 0; r < 4; ++r) {
      vr[r] = v0(r).real();
      vi[r] = v0(r).imag();
    }
    for (std::size_t step = 0; step < n; ++step) {
      std::array<double, 4> nr{};
      std::array<double, 4> ni{};
      for (int r = 0; r < 4; ++r) {
        double sr = 0.0;
        double si = 0.0;
        for (int c = 0; c < 4; ++c) {
          sr += re_[4 * r + c] * vr[c] - im_[4 * r + c] * vi[c];
          si += re_[4 * r + c] * vi[c] + im_[4 * r + c] * vr[c];
        }
        nr[r] = sr;
        ni[r] = si;
      }
      vr = nr;
      vi = ni;
      // Decayed iterates would otherwise run into subnormal arithmetic; their
      // contribution to any probability is below 1e-250.
      if (step % 64 == 63) {
        double peak = 0.0;
        for (int r = 0; r < 4; ++r) peak = std::max({peak, std::abs(vr[r]), std::abs(vi[r])});
        if (peak < kUnderflowFloor) {
          vr.fill(0.0);
          vi.fill(0.0);
          break;
        }
      }
    }
    Vec4 out;
    for (int r = 0; r < 4; ++r) out(r) = Complex(vr[r], vi[r]);
    return out;
  }

 private:
  std::array<double, 16> re_{};
  std::array<double, 16> im_{};
};

Complex trace_against(const Mat2& rho0, const Mat2& y) {
  return rho0(0, 0) * y(0, 0) + rho0(0, 1) * y(1, 0) + rho0(1, 0) * y(0, 1) +
         rho0(1, 1) * y(1, 1);
}

}  // namespace

DualSymbol dual_symbol(const KrausPair& kp, double k) {
  return {k, assemble(symbol_parts(kp), unit_phase(k))};
}

Mat2 dual_power(const KrausPair& kp, double k, std::size_t n) {
  const SplitOperator op(dual_symbol(kp, k).op);
  return devectorize(op.power_apply(vectorize(Mat2::Identity()), n));
}

Mat2 dual_power_binary(const KrausPair& kp, double k, std::size_t n) {
  Superoperator base = dual_symbol(kp, k).op;
  Superoperator acc = Superoperator::Identity();
  while (n > 0) {
    if (n & 1u) acc = acc * base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return devectorize(acc * vectorize(Mat2::Identity()));
}

std::size_t default_node_count(std::size_t n) { return 2 * n + 2; }

DualTrajectory dual_trajectory(const KrausPair& kp, std::size_t n, std::size_t node_count) {
  if (node_count == 0) throw ParameterError("dual grid needs at least one node");
  DualTrajectory out;
  out.steps = n;
  out.nodes.resize(node_count);
  out.values.resize(node_count);

  const SymbolParts parts = symbol_parts(kp);
  const std::vector<Complex> phases = twiddles(node_count);
  const double base = 2.0 * std::numbers::pi / static_cast<double>(node_count);
  const Vec4 identity = vectorize(Mat2::Identity());

  parallel_for(
      node_count,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
          const SplitOperator op(assemble(parts, phases[j]));
          out.nodes[j] = base * static_cast<double>(j);
          out.values[j] = devectorize(op.power_apply(identity, n));
        }
      },
      n >= 64 ? 8 : 1024);
  return out;
}

Distribution distribution_via_dual(const KrausPair& kp, const DensityMat& rho0, std::size_t n,
                                   DualOptions options) {
  const std::size_t nodes = options.nodes.value_or(default_node_count(n));
  if (nodes < 2 * n + 1) {
    std::ostringstream msg;
    msg << "dual quadrature with " << nodes << " nodes is not exact for " << n
        << " steps (need >= " << 2 * n + 1 << ")";
    throw ParameterError(msg.str());
  }

  const DualTrajectory traj = dual_trajectory(kp, n, nodes);
  std::vector<Complex> symbol_trace(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    symbol_trace[j] = trace_against(rho0.matrix(), traj.values[j]);
  }

  // p_x = (1/N) sum_j e^{i k_j x} f_j, each x summed serially in j order.
  const std::vector<Complex> w = twiddles(nodes);
  const auto n_sites = 2 * n + 1;
  const auto size = static_cast<Site>(nodes);
  std::vector<Complex> p(n_sites);
  parallel_for(
      n_sites,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          const Site x = static_cast<Site>(i) - static_cast<Site>(n);
          const Site stride = ((x % size) + size) % size;
          Site idx = 0;
          double re = 0.0;
          double im = 0.0;
          // Written out by hand: std::complex products go through the
          // NaN-aware library routine and dominate the runtime.
          for (std::size_t j = 0; j < nodes; ++j) {
            const Complex& a = w[static_cast<std::size_t>(idx)];
            const Complex& f = symbol_trace[j];
            re += a.real() * f.real() - a.imag() * f.imag();
            im += a.real() * f.imag() + a.imag() * f.real();
            idx += stride;
            if (idx >= size) idx -= size;
          }
          p[i] = Complex(re, im) / static_cast<double>(nodes);
        }
      },
      256);

  std::map<Site, double> probs;
  for (std::size_t i = 0; i < n_sites; ++i) {
    const Site x = static_cast<Site>(i) - static_cast<Site>(n);
    if (std::abs(p[i].imag()) > kResidueTolerance) {
      std::ostringstream msg;
      msg << "imaginary residue " << p[i].imag() << " at site " << x;
      throw ResidueError(msg.str());
    }
    probs.emplace_hint(probs.end(), x, std::max(0.0, p[i].real()));
  }
  return Distribution(std::move(probs));
}

Complex characteristic_function(const Distribution& d, double t, double scale, double center) {
  if (!(scale > 0.0)) throw ParameterError("characteristic function scale must be positive");
  Complex acc = 0.0;
  for (const auto& [x, p] : d.probs()) {
    acc += p * unit_phase(t * (static_cast<double>(x) - center) / scale);
  }
  return acc;
}

Complex characteristic_function(const KrausPair& kp, const DensityMat& rho0, std::size_t n,
                                double t, double scale) {
  if (!(scale > 0.0)) throw ParameterError("characteristic function scale must be positive");
  return characteristic_function(distribution_via_dual(kp, rho0, n), t, scale);
}

}  // namespace oqrw
