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

#include "oqrw/config.hpp"

#include <array>
#include <set>
#include <utility>

#include "oqrw/errors.hpp"

namespace oqrw {
namespace {

constexpr std::array<std::pair<Method, std::string_view>, 6> kMethods{{
    {Method::lattice, "lattice"},
    {Method::dual, "dual"},
    {Method::trajectory, "trajectory"},
    {Method::closed_form, "closed_form"},
    {Method::cut_unfold, "cut_unfold"},
    {Method::both, "both"},
}};

template <typename T>
T read_field(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

std::string_view to_string(Method m) {
  for (const auto& [value, name] : kMethods) {
    if (value == m) return name;
  }
  return "lattice";
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

Method parse_method(std::string_view text) {
  for (const auto& [value, name] : kMethods) {
    if (name == text) return value;
  }
  throw ParameterError("unknown method '" + std::string(text) + "'");
}

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ParameterError("unknown output format '" + std::string(text) + "'");
}

Json to_json(const RunConfig& c) {
  Json j = Json::object();
  if (const auto* spec = std::get_if<ExampleSpec>(&c.kraus)) {
    j["example"] = format_example(*spec);
  } else {
    const auto& k = std::get<InlineKraus>(c.kraus);
    j["kraus"] = {{"B", to_json(k.left)}, {"C", to_json(k.right)}};
  }
  j["rho0"] = to_json(c.rho0.matrix());
  j["steps"] = c.steps;
  j["method"] = std::string(to_string(c.method));
  if (c.seed) j["seed"] = *c.seed;
  if (c.traj) j["traj"] = *c.traj;
  j["output"] = {{"path", c.output_path}, {"format", std::string(to_string(c.format))}};
  return j;
}

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ParameterError("config must be a JSON object");
  static const std::set<std::string> known{"example", "kraus", "rho0", "steps", "method", "seed", "traj", "output"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ParameterError("unknown config field '" + key + "'");
  }
  if (j.contains("example") == j.contains("kraus")) {
    throw ParameterError("config needs exactly one of 'example' and 'kraus'");
  }

  RunConfig c;
  if (j.contains("example")) {
    c.kraus = parse_example(read_field<std::string>(j, "example"));
  } else {
    const Json& k = j.at("kraus");
    if (!k.is_object() || !k.contains("B") || !k.contains("C") || k.size() != 2) {
      throw ParameterError("'kraus' must be {\"B\": matrix, \"C\": matrix}");
    }
    c.kraus = InlineKraus{mat2_from_json(k.at("B")), mat2_from_json(k.at("C"))};
  }
  if (j.contains("rho0")) c.rho0 = DensityMat::from_matrix(mat2_from_json(j.at("rho0")));
  if (j.contains("steps")) c.steps = read_field<std::int64_t>(j, "steps");
  if (j.contains("method")) c.method = parse_method(read_field<std::string>(j, "method"));
  if (j.contains("seed")) c.seed = read_field<std::uint64_t>(j, "seed");
  if (j.contains("traj")) c.traj = read_field<std::uint64_t>(j, "traj");
  if (j.contains("output")) {
    const Json& o = j.at("output");
    if (!o.is_object()) throw ParameterError("'output' must be an object");
    for (const auto& [key, value] : o.items()) {
      if (key != "path" && key != "format") throw ParameterError("unknown output field '" + key + "'");
    }
    if (o.contains("path")) c.output_path = read_field<std::string>(o, "path");
    if (o.contains("format")) c.format = parse_format(read_field<std::string>(o, "format"));
  }
  return c;
}

void validate(const RunConfig& c) {
  if (c.steps < 0) throw ParameterError("steps must be >= 0, got " + std::to_string(c.steps));
  const KrausPair kp = kraus_pair(c);
  (void)kp;

  const ExampleSpec* spec = std::get_if<ExampleSpec>(&c.kraus);
  const Mat2& rho = c.rho0.matrix();
  const bool diagonal = rho(0, 1) == Complex(0.0) && rho(1, 0) == Complex(0.0);
  switch (c.method) {
    case Method::trajectory:
      if (!c.seed) throw ParameterError("method 'trajectory' requires a seed");
      if (!c.traj || *c.traj == 0) throw ParameterError("method 'trajectory' requires traj >= 1");
      break;
    case Method::closed_form:
      if (spec == nullptr || std::holds_alternative<Ex2>(*spec) || std::holds_alternative<Ex5>(*spec)) {
        throw UnsupportedExample("closed forms exist for ex1, ex3 and ex4 only");
      }
      if (!diagonal) throw ParameterError("closed forms need a diagonal rho0");
      break;
    case Method::cut_unfold:
      if (spec == nullptr || !std::holds_alternative<Ex5>(*spec)) {
        throw UnsupportedExample("cutting/unfolding is implemented for ex5 only");
      }
      if (!diagonal) throw ParameterError("cutting/unfolding needs a diagonal rho0");
      if (static_cast<std::uint64_t>(c.steps) > kMaxCutUnfoldSteps) {
        throw SizeError("cutting/unfolding is limited to " + std::to_string(kMaxCutUnfoldSteps) + " steps");
      }
      break;
    default:
      break;
  }
}

KrausPair kraus_pair(const RunConfig& c) {
  if (const auto* spec = std::get_if<ExampleSpec>(&c.kraus)) return build(*spec);
  const auto& k = std::get<InlineKraus>(c.kraus);
  return validate_kraus_pair(k.left, k.right);
}

}  // namespace oqrw
