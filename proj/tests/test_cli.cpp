// Copyright 2026 The spinboson Authors.
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

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spinboson/cli.hpp"
#include "spinboson/config.hpp"
#include "spinboson/error.hpp"

using namespace spinboson;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "/tmp/spinboson_test_" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("kernel config parsing") {
  CHECK(parse_kernel_spec_text(R"({"mode":"indicator","cutoff":2})").cutoff == 2.0);
  CHECK(parse_kernel_spec_text(R"({"mode":"h_table","points":[[0,1],[1,0]]})").points.size() == 2);
  CHECK_THROWS_AS(parse_kernel_spec_text("{"), ConfigError);
  CHECK_THROWS_AS(parse_kernel_spec_text(R"({"mode":"nope"})"), ConfigError);
  CHECK_THROWS_AS(parse_kernel_spec_text(R"({"mode":"indicator","cutoff":-1})"), ConfigError);
  CHECK_THROWS_AS(parse_kernel_spec_text(R"({"mode":"h_table","points":[[0]]})"), ConfigError);
  CHECK_THROWS_AS(load_kernel_spec("/nonexistent/kernel.json"), ConfigError);
  const KernelSpec s = parse_kernel_spec_text(R"({"mode":"radial_table","points":[[0,1],[1,1]]})");
  CHECK(parse_kernel_spec(kernel_spec_to_json(s)).points == s.points);
}

TEST_CASE("radius from a config file") {
  const std::string path = write_temp("ind.json", R"({"mode":"indicator","cutoff":1.0})");
  const Run r = run({"radius", "--kernel", path});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["R_min"].get<double>() == doctest::Approx(7.54e-4).epsilon(1e-3));
  CHECK(doc["lambda_radius"].get<double>() == doctest::Approx(0.345).epsilon(0.01));
}

TEST_CASE("kernel path from the environment") {
  const std::string path = write_temp("big.json", R"({"mode":"indicator","cutoff":2.0})");
  setenv(kKernelEnvVar, path.c_str(), 1);
  const Run r = run({"norms"});
  unsetenv(kKernelEnvVar);
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["kernel"]["cutoff"].get<double>() == 2.0);
}

TEST_CASE("simulate at alpha zero") {
  const Run r = run({"simulate", "--alpha", "0", "--horizon", "5", "--samples", "10", "--seed", "1"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["value"].get<double>() == 1.0);
  CHECK(doc["std_error"].get<double>() == 0.0);
  CHECK(r.out.find("\"value\": 1.0") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"simulate", "--alpha", "0"}).code == 2);
  CHECK(run({"coefficient", "--p", "1", "--method", "mc"}).code == 2);
  CHECK(run({"coefficient", "--p", "1", "--method", "nope"}).code == 2);
  CHECK(run({"energy", "--alpha", "1", "--lambda", "1"}).code == 2);
  CHECK(run({"energy", "--pmax", "1"}).code == 2);
  CHECK(run({"counts", "--p", "7"}).code != 0);
  CHECK(run({"norms", "--kernel", "/nonexistent.json"}).code == 2);
}

TEST_CASE("help for every subcommand") {
  for (const char* sub : {"norms", "radius", "simulate", "coefficient", "energy", "counts", "verify"}) {
    const Run r = run({sub, "--help"});
    CAPTURE(sub);
    CHECK(r.code == 0);
    CHECK(r.out.find("--") != std::string::npos);
  }
  CHECK(run({"verify", "lemma1", "--help"}).code == 0);
}

TEST_CASE("coefficient outputs") {
  const Run j = run({"coefficient", "--p", "2", "--per-term"});
  REQUIRE(j.code == 0);
  const json doc = json::parse(j.out);
  CHECK(doc["terms"].size() == 3);
  CHECK(doc["method"] == "quadrature");
  const Run c = run({"coefficient", "--p", "2", "--output", "csv"});
  REQUIRE(c.code == 0);
  CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 4);
  CHECK(c.out.rfind("index,matching,forest", 0) == 0);
}

TEST_CASE("energy output") {
  const Run r = run({"energy", "--lambda", "0.1", "--pmax", "2"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["energy"].get<double>() < 0.0);
  CHECK(doc["certified"] == true);
  CHECK(doc["coefficients"].size() == 2);
  const Run a = run({"energy", "--alpha", "0.01", "--pmax", "1", "--gamma", "auto"});
  REQUIRE(a.code == 0);
  CHECK(json::parse(a.out)["gamma"].get<double>() == doctest::Approx(0.4));
  CHECK(json::parse(a.out)["certified"] == false);
}

TEST_CASE("verification subcommands") {
  CHECK(run({"verify", "counts"}).code == 0);
  CHECK(run({"verify", "bkar", "--configs", "20"}).code == 0);
  const Run l = run({"verify", "lemma1", "--samples", "20000", "--seed", "7"});
  CHECK(l.code == 0);
  CHECK(json::parse(l.out)["tuples"].size() == 20);
}

TEST_CASE("byte-identical output across worker counts") {
  const std::vector<std::vector<std::string>> cmds = {
      {"simulate", "--alpha", "0.001", "--horizon", "10", "--samples", "3000", "--seed", "5"},
      {"coefficient", "--p", "3", "--method", "mc", "--budget", "2000", "--seed", "5", "--per-term"},
      {"verify", "lemma1", "--samples", "5000", "--seed", "5"},
  };
  for (auto cmd : cmds) {
    auto one = cmd, eight = cmd;
    one.insert(one.end(), {"--workers", "1"});
    eight.insert(eight.end(), {"--workers", "8"});
    const Run a = run(one), b = run(eight);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

}
