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

#include "oqrw/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "oqrw/catalog.hpp"
#include "oqrw/config.hpp"
#include "oqrw/dual.hpp"
#include "oqrw/errors.hpp"
#include "oqrw/io.hpp"
#include "oqrw/lattice.hpp"
#include "oqrw/limit.hpp"
#include "oqrw/trajectory.hpp"

namespace oqrw {
namespace {

double parse_real(std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParameterError("malformed number '" + std::string(text) + "'");
  return v;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Distribution load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  return read_csv(in);
}

// Writes to `out` when path is empty or "-", otherwise to the file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : stream_(&out) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ParameterError("cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void emit(const RunConfig& c, const Distribution& d, std::ostream& out) {
  Sink sink(c.output_path, out);
  if (c.format == OutputFormat::csv) {
    write_csv(sink.stream(), d);
  } else {
    sink.stream() << to_json(d).dump(2) << '\n';
  }
}

void emit_json(const std::string& path, const Json& j, std::ostream& out) {
  Sink sink(path, out);
  sink.stream() << j.dump(2) << '\n';
}

std::pair<double, double> diagonal_of(const DensityMat& rho) {
  return {rho.matrix()(0, 0).real(), rho.matrix()(1, 1).real()};
}

void run_config(const RunConfig& c, std::ostream& out) {
  validate(c);
  const KrausPair kp = kraus_pair(c);
  const auto n = static_cast<std::size_t>(c.steps);
  switch (c.method) {
    case Method::lattice:
      emit(c, distribution(evolve(kp, initial_state(c.rho0), n)), out);
      return;
    case Method::dual:
      emit(c, distribution_via_dual(kp, c.rho0, n), out);
      return;
    case Method::closed_form: {
      const auto [a, b] = diagonal_of(c.rho0);
      emit(c, closed_form(std::get<ExampleSpec>(c.kraus), a, b, n), out);
      return;
    }
    case Method::cut_unfold: {
      const auto [a, b] = diagonal_of(c.rho0);
      emit(c, cut_unfold_distribution(a, b, n), out);
      return;
    }
    case Method::trajectory: {
      const SampleReport report = sample(kp, c.rho0, n, *c.traj, *c.seed);
      if (c.format == OutputFormat::csv) {
        emit(c, report.empirical, out);
      } else {
        emit_json(c.output_path, to_json(report), out);
      }
      return;
    }
    case Method::both: {
      const Distribution lattice = distribution(evolve(kp, initial_state(c.rho0), n));
      const Distribution dual = distribution_via_dual(kp, c.rho0, n);
      Json report = {{"steps", n},
                     {"comparison", to_json(compare(lattice, dual))},
                     {"lattice", to_json(lattice)},
                     {"dual", to_json(dual)}};
      emit_json(c.output_path, report, out);
      return;
    }
  }
}

// Options shared by `dist` and `sample`; explicitly given flags override the
// config file.
struct RunFlags {
  std::string config;
  std::string example;
  std::string rho0;
  std::int64_t steps = 0;
  std::string method;
  std::uint64_t seed = 0;
  std::uint64_t traj = 0;
  std::string output;
  std::string format;

  CLI::Option* o_example = nullptr;
  CLI::Option* o_rho0 = nullptr;
  CLI::Option* o_steps = nullptr;
  CLI::Option* o_method = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_traj = nullptr;
  CLI::Option* o_output = nullptr;
  CLI::Option* o_format = nullptr;

  void attach(CLI::App* cmd, bool with_method) {
    cmd->add_option("--config", config, "JSON run configuration");
    o_example = cmd->add_option("--example", example, "catalog walk, e.g. ex3:p=0.5,gamma=0.4");
    o_rho0 = cmd->add_option("--rho0", rho0, "initial state: 'a,b' for diag(a,b), mixed, plus, minus");
    o_steps = cmd->add_option("--steps,-n", steps, "number of steps");
    if (with_method) {
      o_method = cmd->add_option("--method", method,
                                 "lattice | dual | trajectory | closed_form | cut_unfold | both");
    }
    o_seed = cmd->add_option("--seed", seed, "trajectory seed");
    o_traj = cmd->add_option("--traj", traj, "number of trajectories");
    o_output = cmd->add_option("--output,-o", output, "output file (default stdout)");
    o_format = cmd->add_option("--format", format, "csv | json");
  }

  RunConfig resolve() const {
    RunConfig c = config.empty() ? RunConfig{} : config_from_json(load_json(config));
    if (o_example->count() > 0) c.kraus = parse_example(example);
    if (o_rho0->count() > 0) c.rho0 = parse_state(rho0);
    if (o_steps->count() > 0) c.steps = steps;
    if (o_method != nullptr && o_method->count() > 0) c.method = parse_method(method);
    if (o_seed->count() > 0) c.seed = seed;
    if (o_traj->count() > 0) c.traj = traj;
    if (o_output->count() > 0) c.output_path = output;
    if (o_format->count() > 0) c.format = parse_format(format);
    return c;
  }
};

}  // namespace

DensityMat parse_state(std::string_view text) {
  if (text == "mixed") return DensityMat::maximally_mixed();
  if (text == "plus" || text == "minus") {
    const double s = text == "plus" ? 0.5 : -0.5;
    Mat2 m;
    m << 0.5, s, s, 0.5;
    return DensityMat::from_matrix(m);
  }
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw ParameterError("state must be 'a,b', mixed, plus or minus; got '" + std::string(text) + "'");
  }
  return DensityMat::diagonal(parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1)));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Open quantum random walks on the integer line"};
  app.name("oqrw");
  app.require_subcommand(1);

  RunFlags dist_flags;
  CLI::App* dist = app.add_subcommand("dist", "position law after n steps");
  dist_flags.attach(dist, true);

  RunFlags sample_flags;
  CLI::App* sample_cmd = app.add_subcommand("sample", "Monte Carlo quantum trajectories");
  sample_flags.attach(sample_cmd, false);

  std::string clt_config;
  std::string clt_example;
  std::string clt_state;
  CLI::App* clt = app.add_subcommand("clt", "central-limit parameters (m, sigma2)");
  clt->add_option("--config", clt_config, "JSON run configuration");
  CLI::Option* clt_example_opt = clt->add_option("--example", clt_example, "catalog walk");
  clt->add_option("--state", clt_state, "evaluate at this invariant state instead ('a,b', mixed, plus, minus)");

  std::string asym_rho0 = "mixed";
  std::string asym_example = "ex5";
  std::size_t asym_n = 300;
  Site asym_radius = 10;
  std::string asym_output;
  std::string asym_format = "csv";
  CLI::App* asym = app.add_subcommand("asym", "local limit table p_x(2n) / alpha_2n for ex5");
  asym->add_option("--example", asym_example, "must be ex5");
  asym->add_option("--n", asym_n, "half the number of steps");
  asym->add_option("--radius", asym_radius, "report sites |x| <= radius");
  asym->add_option("--rho0", asym_rho0, "initial state");
  asym->add_option("--output,-o", asym_output, "output file (default stdout)");
  asym->add_option("--format", asym_format, "csv | json");

  std::string cmp_a;
  std::string cmp_b;
  std::string cmp_output;
  CLI::App* cmp = app.add_subcommand("compare", "max-abs and total-variation distance of two x,p CSV files");
  cmp->add_option("a", cmp_a, "first CSV")->required();
  cmp->add_option("b", cmp_b, "second CSV")->required();
  cmp->add_option("--output,-o", cmp_output, "output file (default stdout)");

  std::string init_spec;
  std::string init_save;
  RunFlags init_flags;
  CLI::App* init = app.add_subcommand("init-example", "write a run configuration for a catalog walk");
  init->add_option("spec", init_spec, "catalog walk, e.g. ex4:eps=0.1,theta=0.7")->required();
  init->add_option("--save", init_save, "write the configuration here (default stdout)");
  init->add_option("--rho0", init_flags.rho0, "initial state");
  init->add_option("--steps,-n", init_flags.steps, "number of steps")->default_val(20);
  init->add_option("--method", init_flags.method, "engine")->default_val("lattice");
  CLI::Option* init_seed = init->add_option("--seed", init_flags.seed, "trajectory seed");
  CLI::Option* init_traj = init->add_option("--traj", init_flags.traj, "number of trajectories");
  init->add_option("--output,-o", init_flags.output, "output path recorded in the configuration");
  init->add_option("--format", init_flags.format, "csv | json")->default_val("csv");

  std::vector<std::string> argv_storage{"oqrw"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (dist->parsed()) {
      run_config(dist_flags.resolve(), out);
    } else if (sample_cmd->parsed()) {
      RunConfig c = sample_flags.resolve();
      c.method = Method::trajectory;
      run_config(c, out);
    } else if (clt->parsed()) {
      RunConfig c = clt_config.empty() ? RunConfig{} : config_from_json(load_json(clt_config));
      if (clt_example_opt->count() > 0) c.kraus = parse_example(clt_example);
      const KrausPair kp = kraus_pair(c);
      const InvariantReport inv = invariant_states(kp);
      const CltParams params = clt_state.empty() ? clt_params(kp) : clt_params_at(kp, parse_state(clt_state));
      Json j = to_json(params);
      j["fixed_space_dim"] = inv.fixed_space_dim;
      out << j.dump(2) << '\n';
    } else if (asym->parsed()) {
      if (!std::holds_alternative<Ex5>(parse_example(asym_example))) {
        throw UnsupportedExample("asym supports ex5 only");
      }
      const OutputFormat format = parse_format(asym_format);
      const auto rows = ex5_local_limit(2 * asym_n, asym_radius, parse_state(asym_rho0));
      Sink sink(asym_output, out);
      if (format == OutputFormat::csv) {
        sink.stream() << "x,p,alpha,ratio,limit\n";
        for (const auto& r : rows) {
          sink.stream() << r.x << ',' << format_double(r.p) << ',' << format_double(r.alpha) << ','
                        << format_double(r.ratio) << ',' << format_double(r.limit) << '\n';
        }
      } else {
        Json table = Json::array();
        for (const auto& r : rows) {
          table.push_back({{"x", r.x}, {"p", r.p}, {"alpha", r.alpha}, {"ratio", r.ratio}, {"limit", r.limit}});
        }
        sink.stream() << Json{{"steps", 2 * asym_n}, {"rows", table}}.dump(2) << '\n';
      }
    } else if (cmp->parsed()) {
      emit_json(cmp_output, to_json(compare(load_csv(cmp_a), load_csv(cmp_b))), out);
    } else if (init->parsed()) {
      RunConfig c;
      c.kraus = parse_example(init_spec);
      if (!init_flags.rho0.empty()) c.rho0 = parse_state(init_flags.rho0);
      c.steps = init_flags.steps;
      c.method = parse_method(init_flags.method);
      if (init_seed->count() > 0) c.seed = init_flags.seed;
      if (init_traj->count() > 0) c.traj = init_flags.traj;
      c.output_path = init_flags.output;
      c.format = parse_format(init_flags.format);
      validate(c);
      emit_json(init_save, to_json(c), out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalGuardError& e) {
    err << "numerical guard: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace oqrw
