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

#include "oqrw/catalog.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "oqrw/errors.hpp"

namespace oqrw {
namespace {

constexpr Complex kI{0.0, 1.0};

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ParameterError("bad value for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return v;
}

// Binds known keys to fields; anything else is rejected.
class KeyValues {
 public:
  explicit KeyValues(std::string_view body) {
    while (!body.empty()) {
      const auto comma = body.find(',');
      const std::string_view item = body.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw ParameterError("expected key=value, got '" + std::string(item) + "'");
      }
      std::string key(item.substr(0, eq));
      if (values_.count(key)) throw ParameterError("duplicate key '" + key + "'");
      values_.emplace(std::move(key), std::string(item.substr(eq + 1)));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
      if (body.empty()) throw ParameterError("trailing ',' in example parameters");
    }
  }

  void bind(const std::string& key, double& field) {
    const auto it = values_.find(key);
    if (it == values_.end()) return;
    field = parse_double(key, it->second);
    values_.erase(it);
  }

  void finish(std::string_view example) const {
    if (values_.empty()) return;
    throw ParameterError("unknown key '" + values_.begin()->first + "' for " + std::string(example));
  }

 private:
  std::map<std::string, std::string> values_;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

double checked_sqrt(double v) { return std::sqrt(std::max(0.0, v)); }

// log C(n, l)
double log_choose(std::size_t n, std::size_t l) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(l) + 1.0) -
         std::lgamma(static_cast<double>(n - l) + 1.0);
}

// C(n, l) x^l y^(n-l) for x, y >= 0, with 0^0 = 1.
double binomial_term(std::size_t n, std::size_t l, double x, double y) {
  if (x == 0.0) return l == 0 ? std::pow(y, static_cast<double>(n)) : 0.0;
  if (y == 0.0) return l == n ? std::pow(x, static_cast<double>(n)) : 0.0;
  return std::exp(log_choose(n, l) + static_cast<double>(l) * std::log(x) +
                  static_cast<double>(n - l) * std::log(y));
}

Site as_site(std::size_t v) { return static_cast<Site>(v); }

Distribution ex1_closed_form(const Ex1& e, double a, double b, std::size_t n) {
  std::map<Site, double> probs;
  const double q = 1.0 - e.p;
  for (std::size_t l = 0; l <= n; ++l) {
    probs[as_site(n) - 2 * as_site(l)] += b * binomial_term(n, l, e.p, q);
  }
  probs[-as_site(n)] += a;
  return Distribution(std::move(probs));
}

Distribution ex3_closed_form(const Ex3& e, double a, double b, std::size_t n) {
  const double g2 = e.gamma * e.gamma;
  const double pt = std::max(0.0, e.p - 0.5 * g2);
  const double qt = std::max(0.0, (1.0 - e.p) - 0.5 * g2);
  std::map<Site, double> probs;
  probs[-as_site(n)] += a;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l <= j; ++l) {
      const Site x = 2 * (as_site(j) - as_site(l) + 1) - as_site(n);
      probs[x] += b * g2 * binomial_term(j, l, pt, qt);
    }
  }
  for (std::size_t j = 0; j <= n; ++j) {
    probs[as_site(n) - 2 * as_site(j)] += b * binomial_term(n, j, pt, qt);
  }
  return Distribution(std::move(probs));
}

Distribution ex4_closed_form(const Ex4& e, double a, double b, std::size_t n) {
  const double amp = std::sqrt(0.5 - e.eps * e.eps);
  const double split = 2.0 * e.eps * amp * std::cos(e.theta);
  const double lam_plus = 0.5 + split;
  const double lam_minus = 0.5 - split;

  Mat2 u;
  u << 1.0, 1.0, 1.0, -1.0;
  u /= std::numbers::sqrt2;
  Mat2 rho0 = Mat2::Zero();
  rho0(0, 0) = a;
  rho0(1, 1) = b;
  const Mat2 rotated = u * rho0 * u.adjoint();
  const double a1 = rotated(0, 0).real();
  const double a2 = rotated(1, 1).real();

  std::map<Site, double> probs;
  for (std::size_t l = 0; l <= n; ++l) {
    probs[as_site(n) - 2 * as_site(l)] +=
        a1 * binomial_term(n, l, lam_plus, lam_minus) + a2 * binomial_term(n, l, lam_minus, lam_plus);
  }
  return Distribution(std::move(probs));
}

// ---- cutting / unfolding -------------------------------------------------

enum class RunKind { left, right };  // B-run, C-run

RunKind flip(RunKind k) { return k == RunKind::left ? RunKind::right : RunKind::left; }

std::int64_t pow3(unsigned e) {
  std::int64_t v = 1;
  for (unsigned i = 0; i < e; ++i) v *= 3;
  return v;
}

template <class Scalar>
Scalar ratio(std::int64_t num, std::int64_t den) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return static_cast<double>(num) / static_cast<double>(den);
  } else {
    return Scalar(num, den);
  }
}

// Evaluates Tr(rho0 W* W) for a word given as runs listed from the middle of
// the sandwich outwards. Removing the innermost run X^m in front of Y^m':
//   Y*^m' X*^m X^m Y^m' = w(m) Y*^m' Y^m' - Y*^(m+m') Y^(m+m'),
// with w(m) = (m^2 + 2) / 3^m, i.e. a cut (weight w(m)) or an unfold
// (weight -1). A single run T^l contributes Tr(rho0 T*^l T^l).
template <class Scalar>
class CutUnfoldEvaluator {
 public:
  CutUnfoldEvaluator(Scalar a, Scalar b) : a_(a), b_(b) {}

  Scalar evaluate(const std::vector<unsigned>& runs, RunKind innermost) {
    const auto key = std::make_pair(runs, innermost);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;

    Scalar value;
    if (runs.size() == 1) {
      value = terminal(runs.front(), innermost);
    } else {
      const std::vector<unsigned> cut(runs.begin() + 1, runs.end());
      std::vector<unsigned> unfolded(runs.begin() + 1, runs.end());
      unfolded.front() += runs.front();
      const RunKind next = flip(innermost);
      value = weight(runs.front()) * evaluate(cut, next) - evaluate(unfolded, next);
    }
    memo_.emplace(key, value);
    return value;
  }

 private:
  static Scalar weight(unsigned r) {
    return ratio<Scalar>(static_cast<std::int64_t>(r) * r + 2, pow3(r));
  }

  // Tr(rho0 B*^l B^l) = (a + b(l^2+1)) / 3^l, Tr(rho0 C*^l C^l) = (a(l^2+1) + b) / 3^l.
  Scalar terminal(unsigned l, RunKind kind) const {
    const Scalar big = ratio<Scalar>(static_cast<std::int64_t>(l) * l + 1, 1);
    const Scalar scale = ratio<Scalar>(1, pow3(l));
    return kind == RunKind::left ? (a_ + b_ * big) * scale : (a_ * big + b_) * scale;
  }

  Scalar a_;
  Scalar b_;
  std::map<std::pair<std::vector<unsigned>, RunKind>, Scalar> memo_;
};

template <class Scalar>
std::map<Site, Scalar> cut_unfold_impl(Scalar a, Scalar b, std::size_t n) {
  if (n > kMaxCutUnfoldSteps) {
    throw SizeError("cutting/unfolding enumerates 2^n words; n = " + std::to_string(n) +
                    " exceeds " + std::to_string(kMaxCutUnfoldSteps));
  }
  std::map<Site, Scalar> probs;
  if (n == 0) {
    probs[0] = a + b;
    return probs;
  }
  CutUnfoldEvaluator<Scalar> eval(a, b);
  const std::uint32_t words = std::uint32_t{1} << n;
  for (std::uint32_t w = 0; w < words; ++w) {
    // Bit t set = step t moves right (C). The last step sits in the middle of
    // W* W, so runs are read from step n-1 down to step 0.
    Site x = 0;
    std::vector<unsigned> runs;
    RunKind innermost = RunKind::left;
    RunKind current = RunKind::left;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t t = n - 1 - i;
      const RunKind kind = (w >> t) & 1u ? RunKind::right : RunKind::left;
      x += kind == RunKind::right ? 1 : -1;
      if (runs.empty()) {
        innermost = current = kind;
        runs.push_back(1);
      } else if (kind == current) {
        ++runs.back();
      } else {
        current = kind;
        runs.push_back(1);
      }
    }
    auto [it, inserted] = probs.try_emplace(x, ratio<Scalar>(0, 1));
    it->second += eval.evaluate(runs, innermost);
  }
  return probs;
}

}  // namespace

ExampleSpec parse_example(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view body =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  KeyValues kv(body);
  if (name == "ex1") {
    Ex1 e;
    kv.bind("p", e.p);
    kv.finish(name);
    return e;
  }
  if (name == "ex2") {
    Ex2 e;
    kv.bind("p", e.p);
    kv.bind("phase_b11", e.phase_b11);
    kv.bind("phase_b21", e.phase_b21);
    kv.bind("phase_c12", e.phase_c12);
    kv.finish(name);
    return e;
  }
  if (name == "ex3") {
    Ex3 e;
    kv.bind("p", e.p);
    kv.bind("gamma", e.gamma);
    kv.finish(name);
    return e;
  }
  if (name == "ex4") {
    Ex4 e;
    kv.bind("eps", e.eps);
    kv.bind("theta", e.theta);
    kv.finish(name);
    return e;
  }
  if (name == "ex5") {
    kv.finish(name);
    return Ex5{};
  }
  throw ParameterError("unknown example '" + std::string(name) + "' (expected ex1..ex5)");
}

std::string format_example(const ExampleSpec& spec) {
  return std::visit(
      [](const auto& e) -> std::string {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Ex1>) {
          return "ex1:p=" + format_double(e.p);
        } else if constexpr (std::is_same_v<T, Ex2>) {
          return "ex2:p=" + format_double(e.p) + ",phase_b11=" + format_double(e.phase_b11) +
                 ",phase_b21=" + format_double(e.phase_b21) +
                 ",phase_c12=" + format_double(e.phase_c12);
        } else if constexpr (std::is_same_v<T, Ex3>) {
          return "ex3:p=" + format_double(e.p) + ",gamma=" + format_double(e.gamma);
        } else if constexpr (std::is_same_v<T, Ex4>) {
          return "ex4:eps=" + format_double(e.eps) + ",theta=" + format_double(e.theta);
        } else {
          return "ex5";
        }
      },
      spec);
}

KrausPair build(const ExampleSpec& spec) {
  return std::visit(
      [](const auto& e) -> KrausPair {
        using T = std::decay_t<decltype(e)>;
        Mat2 b = Mat2::Zero();
        Mat2 c = Mat2::Zero();
        if constexpr (std::is_same_v<T, Ex1>) {
          require(e.p >= 0.0 && e.p <= 1.0, "ex1: p must lie in [0, 1]");
          b(0, 0) = 1.0;
          b(1, 1) = std::sqrt(e.p);
          c(1, 1) = std::sqrt(1.0 - e.p);
        } else if constexpr (std::is_same_v<T, Ex2>) {
          require(e.p >= 0.0 && e.p <= 1.0, "ex2: p must lie in [0, 1]");
          const double sp = std::sqrt(e.p);
          const double sq = std::sqrt(1.0 - e.p);
          b(0, 0) = sp * std::exp(kI * e.phase_b11);
          b(1, 0) = sq * std::exp(kI * e.phase_b21);
          c(0, 1) = sq * std::exp(kI * e.phase_c12);
          c(1, 1) = -sp * std::exp(kI * (e.phase_b21 + e.phase_c12 - e.phase_b11));
        } else if constexpr (std::is_same_v<T, Ex3>) {
          require(e.p >= 0.0 && e.p <= 1.0, "ex3: p must lie in [0, 1]");
          const double bound = std::min(std::sqrt(2.0 * e.p), std::sqrt(2.0 * (1.0 - e.p)));
          require(e.gamma > 0.0, "ex3: gamma must be positive");
          require(e.gamma <= bound, "ex3: gamma must not exceed min(sqrt(2p), sqrt(2q)) = " +
                                        format_double(bound));
          const double g2 = e.gamma * e.gamma;
          b(0, 0) = 1.0;
          b(1, 1) = checked_sqrt(e.p - 0.5 * g2);
          c(0, 1) = e.gamma;
          c(1, 1) = checked_sqrt((1.0 - e.p) - 0.5 * g2);
        } else if constexpr (std::is_same_v<T, Ex4>) {
          require(e.eps > 0.0, "ex4: eps must be positive");
          require(e.eps * e.eps < 0.5, "ex4: eps^2 must be below 1/2");
          const double amp = std::sqrt(0.5 - e.eps * e.eps);
          require(2.0 * e.eps * amp < 0.5, "ex4: 2 eps a(eps) must be below 1/2");
          require(std::isfinite(e.theta), "ex4: theta must be finite");
          const Complex off = e.eps * std::exp(kI * e.theta);
          b << amp, off, off, amp;
          c << amp, -off, -off, amp;
        } else {
          const double r = 1.0 / std::sqrt(3.0);
          b << r, r, 0.0, r;
          c << r, 0.0, -r, r;
        }
        return validate_kraus_pair(b, c);
      },
      spec);
}

Distribution closed_form(const ExampleSpec& spec, double a, double b, std::size_t n) {
  DensityMat::diagonal(a, b);  // validates a + b = 1, a, b >= 0
  build(spec);                 // validates parameters
  return std::visit(
      [&](const auto& e) -> Distribution {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Ex1>) {
          return ex1_closed_form(e, a, b, n);
        } else if constexpr (std::is_same_v<T, Ex3>) {
          return ex3_closed_form(e, a, b, n);
        } else if constexpr (std::is_same_v<T, Ex4>) {
          return ex4_closed_form(e, a, b, n);
        } else {
          throw UnsupportedExample("no closed form for " + format_example(e) +
                                   "; use the lattice or dual engine");
        }
      },
      spec);
}

Ex5Spectrum ex5_spectrum(double k) {
  Ex5Spectrum sp;
  sp.k = k;
  sp.u = std::cos(k);
  // 4u^2 + 1 >= 1 and 2u + sqrt(4u^2 + 1) > 0 for real k: a real cube root,
  // no branch cut.
  sp.xi = std::cbrt(2.0 * sp.u + std::sqrt(4.0 * sp.u * sp.u + 1.0));
  sp.s = sp.xi - 1.0 / sp.xi;
  const double s = sp.s;
  const double s2 = s * s;
  sp.lambda[0] = s * (s2 + 3.0) / 6.0;
  sp.lambda[1] = s * (s2 + 5.0) / 6.0;
  sp.lambda[2] = Complex(s * (s2 + 2.0) / 6.0, std::sqrt(3.0) / 6.0 * std::sqrt(s2 + 4.0));
  sp.lambda[3] = std::conj(sp.lambda[2]);
  for (std::size_t j = 0; j < 3; ++j) sp.gaps[j] = sp.lambda[j + 1] - sp.lambda[0];
  return sp;
}

double ex5_lambda1(double k) { return ex5_spectrum(k).lambda[1].real(); }

Distribution cut_unfold_distribution(double a, double b, std::size_t n) {
  DensityMat::diagonal(a, b);
  auto probs = cut_unfold_impl<double>(a, b, n);
  for (auto& [x, p] : probs) p = std::max(0.0, p);
  return Distribution(std::move(probs));
}

std::map<Site, Rational> cut_unfold_distribution_exact(Rational a, Rational b, std::size_t n) {
  if (a < 0 || b < 0 || a + b != Rational(1)) {
    throw InvalidStateError("initial diagonal (a, b) must be non-negative with a + b = 1");
  }
  return cut_unfold_impl<Rational>(a, b, n);
}

double ex5_power_traces(unsigned l) {
  const double closed = static_cast<double>(static_cast<std::int64_t>(l) * l + 2) /
                        std::pow(3.0, static_cast<double>(l));
  const KrausPair kp = build(Ex5{});
  Mat2 bl = Mat2::Identity();
  Mat2 cl = Mat2::Identity();
  for (unsigned i = 0; i < l; ++i) {
    bl = kp.left() * bl;
    cl = kp.right() * cl;
  }
  const double tb = (bl.adjoint() * bl).trace().real();
  const double tc = (cl.adjoint() * cl).trace().real();
  const double tol = 1e-12 * closed;
  if (std::abs(tb - closed) > tol || std::abs(tc - closed) > tol) {
    std::ostringstream msg;
    msg << "power trace mismatch at l = " << l << ": closed " << closed << ", B " << tb << ", C "
        << tc;
    throw NumericalGuardError(msg.str());
  }
  return closed;
}

}  // namespace oqrw
