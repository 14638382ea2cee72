// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

// Runs the installed command line tool as a subprocess.

#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Run run(const std::string& args) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto out = dir / ("stablefp_cli_out_" + std::to_string(::getpid()));
  const auto err = dir / ("stablefp_cli_err_" + std::to_string(::getpid()));
  const std::string cmd =
      std::string(STABLEFP_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  std::filesystem::remove(out);
  std::filesystem::remove(err);
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> v;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) v.push_back(f);
  return v;
}

}  // namespace

TEST_CASE("exit codes") {
  const Run ok = run("eval --fn D --alpha 1.5 --x 1");
  CHECK(ok.code == 0);
  REQUIRE(lines(ok.out).size() == 2);
  CHECK(lines(ok.out)[0] == "alpha,x,value,abs_err,method");
  CHECK(std::stod(fields(lines(ok.out)[1])[2]) == doctest::Approx(0.21624290440113944).epsilon(1e-14));

  CHECK(run("eval --fn D --alpha 2.5 --x 1").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("eval --fn nope --alpha 1.5 --x 1").code == 2);
  CHECK(run("eval --fn D --alpha 1.5 --x 1 --out /nonexistent/dir/file.csv").code == 2);
  CHECK(run("check --suite no_such_check").code == 2);

  const Run fail = run("check --suite small_time --alpha 1.8");
  CHECK(fail.code == 1);
  CHECK(fail.out.find(",false,") != std::string::npos);

  const Run numerical = run("eval --fn D --alpha 1.5 --x 1 --tol 1e-18");
  CHECK(numerical.code == 3);
  CHECK(lines(numerical.out).size() == 2);
  CHECK_FALSE(numerical.err.empty());

  CHECK(run("--version").out.find("0.1.0") != std::string::npos);
}

TEST_CASE("tables on a log grid") {
  const Run r = run("table --fn D --alpha 1.5 --grid 1e-3:1e3:50:log");
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 51);
  CHECK(std::stod(fields(ls[1])[1]) == doctest::Approx(1e-3));
  CHECK(std::stod(fields(ls[50])[1]) == doctest::Approx(1e3));
  double prev = 2.0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const double v = std::stod(fields(ls[i])[2]);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("csv and json carry the same values") {
  const std::string args = "density --name T1 --alpha 1.5 --grid 1e-2:1e2:9:log";
  const Run csv = run(args);
  const Run js = run(args + " --format json");
  REQUIRE(csv.code == 0);
  REQUIRE(js.code == 0);
  const auto arr = nlohmann::json::parse(js.out);
  const auto ls = lines(csv.out);
  REQUIRE(arr.size() + 1 == ls.size());
  std::set<std::string> methods;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto f = fields(ls[i + 1]);
    CHECK(std::stod(f[1]) == arr[i]["t"].get<double>());
    CHECK(std::stod(f[2]) == arr[i]["value"].get<double>());
    CHECK(f[4] == arr[i]["method"].get<std::string>());
    methods.insert(f[4]);
  }
  // The automatic choice changes representation along the axis.
  CHECK(methods.size() >= 2);
}

TEST_CASE("output is byte-identical across runs and worker counts") {
  const std::string sample = "sample --name T1_product --alpha 1.5 --n 9000 --seed 42";
  const Run a = run(sample);
  const Run b = run(sample);
  const Run c = run(sample + " --workers 4");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(lines(a.out).size() == 9001);
  CHECK(lines(a.out)[0] == "distribution,alpha,seed,stream_id,n,i,value");
  CHECK(run("sample --name T1_product --alpha 1.5 --n 9000 --seed 43").out != a.out);

  const std::string check = "check --suite corollary5 --alpha 1.5 --seed 3 --set n=3000";
  const Run d = run(check + " --format json");
  const Run e = run(check + " --format json --workers 3");
  REQUIRE(d.code == 0);
  CHECK(d.out == e.out);
  const auto j = nlohmann::json::parse(d.out);
  CHECK(j[0]["name"] == "corollary5");
  CHECK(j[0]["passed"] == true);
}

TEST_CASE("writing to a file") {
  const auto path = std::filesystem::temp_directory_path() / "stablefp_cli_file.csv";
  const Run r = run("eval --fn mlf --order 0.5 --x -1 --out " + path.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const auto ls = lines(slurp(path));
  REQUIRE(ls.size() == 2);
  CHECK(std::stod(fields(ls[1])[2]) == doctest::Approx(std::exp(1.0) * std::erfc(1.0)).epsilon(1e-13));
  std::filesystem::remove(path);
}
