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

#include "oqrw/io.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <string_view>

#include "oqrw/errors.hpp"

namespace oqrw {
namespace {

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParameterError("malformed " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw ParameterError("cannot format number");
  return std::string(buf.data(), ptr);
}

Json to_json(const Mat2& m) {
  Json rows = Json::array();
  for (int i = 0; i < 2; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 2; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Mat2 mat2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParameterError("matrix must be a 2x2 array");
  Mat2 m;
  for (int i = 0; i < 2; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != 2) throw ParameterError("matrix row must have 2 entries");
    for (int c = 0; c < 2; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(i, c) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ParameterError("matrix entry must be a number or [re, im]");
      }
    }
  }
  return m;
}

void write_csv(std::ostream& os, const Distribution& d) {
  os << "x,p\n";
  for (const auto& [x, p] : d.probs()) os << x << ',' << format_double(p) << '\n';
}

Distribution read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != "x,p") throw ParameterError("CSV header must be 'x,p'");
  std::map<Site, double> probs;
  while (std::getline(is, line)) {
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos) throw ParameterError("CSV row without comma: " + line);
    const Site x = parse_number<Site>(trim(row.substr(0, comma)), "site");
    const double p = parse_number<double>(trim(row.substr(comma + 1)), "probability");
    if (!probs.emplace(x, p).second) throw ParameterError("duplicate site in CSV: " + std::to_string(x));
  }
  return Distribution(std::move(probs));
}

Json to_json(const Distribution& d) {
  Json out = Json::object();
  Json xs = Json::array();
  Json ps = Json::array();
  for (const auto& [x, p] : d.probs()) {
    xs.push_back(x);
    ps.push_back(p);
  }
  out["x"] = xs;
  out["p"] = ps;
  out["mean"] = d.empty() ? 0.0 : mean(d);
  out["variance"] = d.empty() ? 0.0 : variance(d);
  return out;
}

Json to_json(const LatticeState& s) {
  Json blocks = Json::object();
  for (const auto& [x, m] : s.blocks()) blocks[std::to_string(x)] = to_json(m);
  return {{"steps", s.step_count()}, {"blocks", blocks}};
}

Json to_json(const SampleReport& r) {
  return {{"n_steps", r.n_steps}, {"n_traj", r.n_traj}, {"seed", r.seed},
          {"mean", r.mean},       {"variance", r.variance}, {"empirical", to_json(r.empirical)}};
}

Json to_json(const CltParams& c) {
  return {{"m", c.m},
          {"sigma2", c.sigma2},
          {"rho_inf", to_json(c.rho_inf.matrix())},
          {"L", to_json(c.poisson_solution)},
          {"residuals", {{"solvability", c.solvability}, {"poisson", c.poisson_residual}}}};
}

Json to_json(const InvariantReport& r) {
  Json spectrum = Json::array();
  for (const Complex& z : r.spectrum) spectrum.push_back({z.real(), z.imag()});
  Json out = {{"fixed_space_dim", r.fixed_space_dim}, {"residual", r.residual}, {"spectrum", spectrum}};
  out["rho_inf"] = r.rho_inf ? to_json(r.rho_inf->matrix()) : Json(nullptr);
  return out;
}

Json to_json(const ComparisonReport& r) { return {{"max_abs", r.max_abs}, {"tv_distance", r.tv_distance}}; }

}  // namespace oqrw
