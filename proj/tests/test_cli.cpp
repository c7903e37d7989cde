// Copyright 2026 The stqm Authors
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

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + STQM_CLI_PATH + " " + args + " 2>/dev/null";
  Result r{-1, ""};
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string last_line(const std::string& s) {
  auto end = s.find_last_not_of('\n');
  auto start = s.rfind('\n', end);
  return s.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / ("stqm_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("run --suite ''").code == 2);
  CHECK(run("run").code == 2);
  CHECK(run("run --suite nosuch").code == 2);
  CHECK(run("run --suite dirac --n-slices 0").code == 2);
  CHECK(run("run --suite fig3 --panel q").code == 2);
  CHECK(run("run --suite dirac --tolerance broken").code == 2);
  CHECK(run("run --suite dirac --config /nonexistent/file").code == 2);
}

TEST_CASE("list prints every suite") {
  const auto r = run("list");
  CHECK(r.code == 0);
  for (const char* s : {"verify-boson", "verify-fermion", "wick", "states", "fig3", "dirac", "matsubara", "composite"})
    CHECK(r.out.find(s) != std::string::npos);
}

TEST_CASE("passing suite prints CSV and summary") {
  const auto r = run("run --suite dirac");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("suite,case_id,params,lhs_re,lhs_im,rhs_re,rhs_im,abs_error,tolerance,pass\n", 0) == 0);
  CHECK(last_line(r.out).rfind("PASS ", 0) == 0);
}

TEST_CASE("output file, determinism and config file precedence") {
  const fs::path d = scratch();
  const fs::path a = d / "a.csv", b = d / "b.csv", cfg = d / "run.cfg";
  {
    std::ofstream c(cfg);
    c << "# sample configuration\nsuite = verify-boson\nn-slices = 2\ncases = 3\nseed = 5\n";
  }
  const auto r1 = run("run --config " + cfg.string() + " --output " + a.string());
  const auto r2 = run("run --config " + cfg.string() + " -o " + b.string());
  CHECK(r1.code == 0);
  CHECK(last_line(r1.out) == last_line(r2.out));
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).find("N=2;") != std::string::npos);
  const auto r3 = run("run --config " + cfg.string() + " --n-slices 3 -o " + b.string());
  CHECK(r3.code == 0);
  CHECK(slurp(b).find("N=3;") != std::string::npos);
  const auto r4 = run("run --config " + cfg.string() + " --seed 6 -o " + b.string());
  CHECK(slurp(a) != slurp(b));
  fs::remove_all(d);
}

TEST_CASE("failing cases exit with 1") {
  // tighten a tolerance below rounding
  const auto r = run("run --suite dirac --tolerance propagator=0");
  CHECK(r.code == 1);
  CHECK(last_line(r.out).rfind("PASS ", 0) == 0);
}

TEST_CASE("dimension cap from the environment") {
  const auto r = run("run --suite verify-boson --n-slices 3 --local-dim 3 --cases 1", "STQM_MAX_DIM=16");
  CHECK(r.code == 1);
  CHECK(r.out.find("error=") != std::string::npos);
  CHECK(run("run --suite verify-boson --n-slices 3 --local-dim 3 --cases 1").code == 0);
}
