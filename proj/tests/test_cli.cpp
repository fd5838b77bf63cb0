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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "oqrw/catalog.hpp"
#include "oqrw/cli.hpp"
#include "oqrw/config.hpp"
#include "oqrw/errors.hpp"
#include "oqrw/io.hpp"

using namespace oqrw;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("oqrw_cli_test_" + std::to_string(std::hash<std::string>{}(std::to_string(::getpid()))));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config JSON round trip") {
  RunConfig c;
  c.kraus = ExampleSpec{Ex3{0.6, 0.3}};
  c.rho0 = DensityMat::diagonal(0.25, 0.75);
  c.steps = 42;
  c.method = Method::trajectory;
  c.seed = 7;
  c.traj = 1000;
  c.output_path = "out.csv";
  c.format = OutputFormat::json;
  CHECK(config_from_json(Json::parse(to_json(c).dump())) == c);

  RunConfig inline_cfg;
  const KrausPair ex5 = build(Ex5{});
  inline_cfg.kraus = InlineKraus{ex5.left(), ex5.right()};
  inline_cfg.steps = 3;
  CHECK(config_from_json(Json::parse(to_json(inline_cfg).dump())) == inline_cfg);
}

TEST_CASE("config JSON rejects bad documents") {
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"steps": 3})")), ParameterError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"example": "ex5", "kraus": {}})")), ParameterError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"example": "ex5", "colour": 1})")), ParameterError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"example": 5})")), ParameterError);
  CHECK_THROWS_AS(config_from_json(Json::parse("[1]")), ParameterError);
}

TEST_CASE("run configuration validation") {
  RunConfig c;
  c.steps = -1;
  CHECK_THROWS_AS(validate(c), ParameterError);
  c.steps = 5;
  c.method = Method::trajectory;
  CHECK_THROWS_AS(validate(c), ParameterError);
  c.seed = 1;
  c.traj = 0;
  CHECK_THROWS_AS(validate(c), ParameterError);
  c.traj = 10;
  CHECK_NOTHROW(validate(c));

  c.method = Method::closed_form;
  CHECK_THROWS_AS(validate(c), UnsupportedExample);
  c.kraus = ExampleSpec{Ex4{}};
  c.rho0 = parse_state("plus");
  CHECK_THROWS_AS(validate(c), ParameterError);
  c.rho0 = DensityMat::diagonal(1.0, 0.0);
  CHECK_NOTHROW(validate(c));

  c.method = Method::cut_unfold;
  CHECK_THROWS_AS(validate(c), UnsupportedExample);
  c.kraus = ExampleSpec{Ex5{}};
  c.steps = 15;
  CHECK_THROWS_AS(validate(c), SizeError);
  c.steps = 14;
  CHECK_NOTHROW(validate(c));

  c.kraus = InlineKraus{Mat2::Identity(), Mat2::Identity()};
  c.method = Method::lattice;
  CHECK_THROWS_AS(validate(c), NormalizationError);
}

TEST_CASE("state strings") {
  CHECK(parse_state("mixed") == DensityMat::maximally_mixed());
  CHECK(parse_state("0.25,0.75") == DensityMat::diagonal(0.25, 0.75));
  CHECK(parse_state("plus").matrix()(0, 1) == Complex(0.5));
  CHECK(parse_state("minus").matrix()(0, 1) == Complex(-0.5));
  CHECK_THROWS_AS(parse_state("up"), ParameterError);
  CHECK_THROWS_AS(parse_state("0.5,x"), ParameterError);
  CHECK_THROWS_AS(parse_state("0.5,0.6"), InvalidStateError);
}

TEST_CASE("dist: both engines") {
  const Run r = run({"dist", "--example", "ex5", "--steps", "4", "--method", "both"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["steps"] == 4);
  CHECK(j["comparison"]["max_abs"].get<double>() <= 1e-12);
  CHECK(j["lattice"]["x"].size() == 5);
}

TEST_CASE("dist: csv output and engines agree") {
  const Run lattice = run({"dist", "--example", "ex5", "-n", "4", "--rho0", "0.5,0.5"});
  REQUIRE(lattice.code == kExitOk);
  std::istringstream is(lattice.out);
  const Distribution d = read_csv(is);
  CHECK(std::abs(d.at(0) - 1.0 / 3.0) < 1e-12);
  const Run cut = run({"dist", "--example", "ex5", "-n", "4", "--rho0", "0.5,0.5", "--method", "cut_unfold"});
  REQUIRE(cut.code == kExitOk);
  std::istringstream is2(cut.out);
  CHECK(compare(read_csv(is2), d).max_abs < 1e-12);
  const Run closed = run({"dist", "--example", "ex3", "-n", "10", "--rho0", "0,1", "--method", "closed_form"});
  CHECK(closed.code == kExitOk);
}

TEST_CASE("exit codes") {
  CHECK(run({"dist", "--steps", "-1"}).code == kExitValidation);
  CHECK(run({"clt", "--example", "ex1"}).code == kExitValidation);
  CHECK(run({"frobnicate"}).code == kExitValidation);
  CHECK(run({}).code == kExitValidation);
  CHECK(run({"dist", "--example", "ex9"}).code == kExitValidation);
  CHECK(run({"dist", "--example", "ex5", "--method", "trajectory", "-n", "3"}).code == kExitValidation);
  CHECK(run({"sample", "--example", "ex5", "-n", "3", "--traj", "10"}).code == kExitValidation);
  CHECK(run({"dist", "--config", "/nonexistent/config.json"}).code == kExitValidation);
  CHECK(run({"asym", "--example", "ex3"}).code == kExitValidation);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("clt subcommand") {
  const Run ex3 = run({"clt", "--example", "ex3"});
  REQUIRE(ex3.code == kExitOk);
  const Json j = Json::parse(ex3.out);
  CHECK(std::abs(j["m"].get<double>() + 1.0) < 1e-9);
  CHECK(std::abs(j["sigma2"].get<double>()) < 1e-9);
  CHECK(j["fixed_space_dim"] == 1);

  const Run ex4 = run({"clt", "--example", "ex4", "--state", "plus"});
  REQUIRE(ex4.code == kExitOk);
  CHECK(Json::parse(ex4.out)["fixed_space_dim"] == 2);
}

TEST_CASE("sample output is reproducible byte for byte") {
  const std::vector<std::string> args{"sample", "--example", "ex2", "-n", "12", "--traj", "3000", "--seed", "99"};
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("x,p\n", 0) == 0);
  auto json_args = args;
  json_args.insert(json_args.end(), {"--format", "json"});
  const Run c = run(json_args);
  REQUIRE(c.code == kExitOk);
  CHECK(Json::parse(c.out)["seed"] == 99);
}

TEST_CASE("init-example writes a configuration that dist accepts") {
  TempDir dir;
  const std::string path = dir.file("cfg.json");
  REQUIRE(run({"init-example", "ex4:eps=0.2,theta=1.1", "--save", path, "--steps", "9", "--rho0", "0.3,0.7"}).code ==
          kExitOk);
  const RunConfig c = config_from_json(Json::parse(slurp(path)));
  RunConfig expected;
  expected.kraus = ExampleSpec{Ex4{0.2, 1.1}};
  expected.rho0 = DensityMat::diagonal(0.3, 0.7);
  expected.steps = 9;
  CHECK(c == expected);

  const Run from_config = run({"dist", "--config", path});
  REQUIRE(from_config.code == kExitOk);
  const Run direct = run({"dist", "--example", "ex4:eps=0.2,theta=1.1", "-n", "9", "--rho0", "0.3,0.7"});
  CHECK(from_config.out == direct.out);

  // explicit flags override the file
  const Run overridden = run({"dist", "--config", path, "-n", "2"});
  std::istringstream is(overridden.out);
  CHECK(read_csv(is).probs().size() == 3);

  CHECK(run({"init-example", "ex5", "--method", "cut_unfold", "--steps", "20"}).code == kExitValidation);
}

TEST_CASE("compare subcommand") {
  TempDir dir;
  const std::string a = dir.file("a.csv");
  const std::string b = dir.file("b.csv");
  REQUIRE(run({"dist", "--example", "ex2", "-n", "20", "-o", a}).code == kExitOk);
  REQUIRE(run({"dist", "--example", "ex2", "-n", "20", "--method", "dual", "-o", b}).code == kExitOk);
  const Run r = run({"compare", a, b});
  REQUIRE(r.code == kExitOk);
  CHECK(Json::parse(r.out)["max_abs"].get<double>() <= 1e-10);
  CHECK(run({"compare", a, dir.file("missing.csv")}).code == kExitValidation);
}

TEST_CASE("asym table") {
  const Run r = run({"asym", "--example", "ex5", "--n", "50", "--radius", "2"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("x,p,alpha,ratio,limit\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : r.out) lines += ch == '\n';
  CHECK(lines == 6);
}
