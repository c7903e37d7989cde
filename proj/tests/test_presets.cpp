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

#include <algorithm>
#include <functional>
#include <random>

#include "error.hpp"
#include "polynomial.hpp"
#include "presets.hpp"
#include "support.hpp"
#include "suites.hpp"
#include "tensor.hpp"
#include "variational.hpp"

using namespace stqm;
namespace ts = testing_support;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST_CASE("qudit presets") {
  const Mat z = (Mat(2, 2) << 1, 0, 0, -1).finished();
  const Mat x = (Mat(2, 2) << 0, 1, 1, 0).finished();
  const Mat y = (Mat(2, 2) << 0, cplx(0, -1), cplx(0, 1), 0).finished();
  CHECK(max_abs(presets::qudit_hamiltonian("zfield:0.5", 2, 2) - 0.5 * (ts::kron_loops(z, identity(2)) + ts::kron_loops(identity(2), z))) ==
        0.0);
  Mat z3 = Mat::Zero(3, 3);
  z3(0, 0) = 1.0;
  z3(2, 2) = -1.0;
  CHECK(max_abs(presets::qudit_hamiltonian("zfield:2", 1, 3) - 2.0 * z3) == 0.0);
  CHECK(max_abs(presets::qudit_hamiltonian("xyfield:1.5", 1, 2) - 1.5 * (x + y)) == 0.0);
  const Mat xy = -0.5 * (ts::kron_loops(x, x) + ts::kron_loops(y, y));
  CHECK(max_abs(presets::qudit_hamiltonian("hopping:1", 2, 2) - xy) < 1e-15);
  CHECK(max_abs(presets::qudit_hamiltonian("pauli:0.5 X0 X1, -1 Z1", 2, 2) -
                (0.5 * ts::kron_loops(x, x) - ts::kron_loops(identity(2), z))) < 1e-15);
  const Mat r = presets::qudit_hamiltonian("random-quartic:3", 2, 2);
  CHECK(max_abs(r - r.adjoint()) < 1e-15);
  CHECK(max_abs(r - presets::qudit_hamiltonian("random-quartic:3", 2, 2)) == 0.0);
}

TEST_CASE("fermionic presets") {
  const auto a = jw_ladder(2);
  const Mat a0(a[0]), a1(a[1]);
  const Mat n0 = a0.adjoint() * a0, n1 = a1.adjoint() * a1;
  CHECK(max_abs(presets::fermion_hamiltonian("zfield:0.7", 2).compile(a, 4) - 0.7 * (2.0 * identity(4) - 2.0 * n0 - 2.0 * n1)) <
        1e-15);
  const Mat hop = -0.3 * (a0.adjoint() * a1 + a1.adjoint() * a0);
  CHECK(max_abs(presets::fermion_hamiltonian("hopping:0.3", 2).compile(a, 4) - hop) < 1e-15);
  CHECK(max_abs(presets::fermion_hamiltonian("hubbard:2", 2).compile(a, 4) - (hop / 0.3 + 2.0 * n0 * n1)) < 1e-15);
  CHECK(max_abs(presets::fermion_hamiltonian("poly:1.5 +0 -1, 1.5 +1 -0", 2).compile(a, 4) -
                1.5 * (a0.adjoint() * a1 + a1.adjoint() * a0)) < 1e-15);
  CHECK(presets::fermion_hamiltonian("random-quartic:9", 3).is_even());
  const Mat q = presets::fermion_hamiltonian("random-quadratic:9", 2).compile(a, 4);
  CHECK(max_abs(q - q.adjoint()) < 1e-14);
}

TEST_CASE("preset errors") {
  CHECK(code_of([] { presets::fermion_hamiltonian("xyfield:1", 2); }) == ErrorCode::Parity);
  CHECK(code_of([] { presets::fermion_hamiltonian("poly:1 +0", 2); }) == ErrorCode::Parity);
  CHECK(code_of([] { presets::qudit_hamiltonian("zfield", 1, 2); }) == ErrorCode::Config);
  CHECK(code_of([] { presets::qudit_hamiltonian("zfield:abc", 1, 2); }) == ErrorCode::Config);
  CHECK(code_of([] { presets::qudit_hamiltonian("nosuch:1", 1, 2); }) == ErrorCode::Config);
  CHECK(code_of([] { presets::qudit_hamiltonian("hopping:1", 2, 3); }) == ErrorCode::Config);
  CHECK(code_of([] { presets::qudit_hamiltonian("pauli:1 X5", 2, 2); }) == ErrorCode::Config);
  CHECK(code_of([] { presets::fermion_hamiltonian("poly:1 *0 -1", 2); }) == ErrorCode::Config);
}

TEST_CASE("random helpers") {
  std::mt19937_64 rng(61);
  const Mat rho = presets::random_density(rng, 4);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-14);
  CHECK(Eigen::SelfAdjointEigenSolver<Mat>(rho).eigenvalues().minCoeff() > -1e-14);
  CHECK(presets::random_vector(rng, 5).norm() == doctest::Approx(1.0));
}

TEST_CASE("settings parse and validate") {
  suites::Config c;
  suites::apply_setting(c, "suite", "dirac");
  suites::apply_setting(c, "n-slices", "4");
  suites::apply_setting(c, "epsilon", "0.25");
  suites::apply_setting(c, "tolerance.gamma", "1e-3");
  CHECK(c.n_slices == 4);
  CHECK(c.epsilon == 0.25);
  CHECK(c.tolerances.at("gamma") == 1e-3);
  CHECK(code_of([&] { suites::apply_setting(c, "n-slices", "0"); }) == ErrorCode::Config);
  CHECK(code_of([&] { suites::apply_setting(c, "n-slices", "3x"); }) == ErrorCode::Config);
  CHECK(code_of([&] { suites::apply_setting(c, "bogus", "1"); }) == ErrorCode::Config);
  CHECK(code_of([&] { suites::apply_setting(c, "seed", "-1"); }) == ErrorCode::Config);
  suites::validate(c);
  c.suite = "";
  CHECK(code_of([&] { suites::validate(c); }) == ErrorCode::Config);
  c.suite = "fig3";
  c.panel = "d";
  CHECK(code_of([&] { suites::validate(c); }) == ErrorCode::Config);
}

TEST_CASE("suite output is deterministic and ordered") {
  suites::Config c;
  c.suite = "states";
  const auto a = suites::run(c), b = suites::run(c);
  CHECK(suites::to_csv(a) == suites::to_csv(b));
  for (std::size_t k = 1; k < a.size(); ++k) CHECK(a[k - 1].case_id <= a[k].case_id);
  CHECK(suites::to_csv(a).rfind(suites::csv_header() + "\n", 0) == 0);
  c.seed = 8;
  CHECK(suites::to_csv(suites::run(c)) != suites::to_csv(a));
}

TEST_CASE("tolerance overrides reach the rows") {
  suites::Config c;
  c.suite = "dirac";
  c.tolerances["gamma"] = -0.0;
  c.tolerances["bogoliubov"] = 0.25;
  for (const auto& r : suites::run(c)) {
    if (r.case_id.rfind("bogoliubov/", 0) == 0) CHECK(r.tolerance == 0.25);
    if (r.case_id.rfind("gamma/", 0) == 0) CHECK(r.tolerance == 0.0);
  }
}

TEST_CASE("unparseable Hamiltonians are configuration errors") {
  suites::Config c;
  c.suite = "verify-boson";
  c.hamiltonian = "nosuch:1";
  try {
    suites::run(c);
    FAIL("expected a configuration error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Config);
  }
}

TEST_CASE("numerical failures become failing rows") {
  suites::Config c;
  c.suite = "verify-boson";
  c.n_slices = 3;
  c.local_dim = 3;
  c.cases = 1;
  const std::size_t saved = max_dim();
  set_max_dim(16);
  const auto rows = suites::run(c);
  set_max_dim(saved);
  REQUIRE(!rows.empty());
  CHECK(suites::count_pass(rows) < rows.size());
  bool flagged = false;
  for (const auto& r : rows)
    if (r.params.find("error=") != std::string::npos) flagged = true;
  CHECK(flagged);
}

TEST_CASE("CSV lines have ten fields") {
  suites::Row r{"s", "fam/id", "a=1;b=2", cplx(1, 2), cplx(3, 4), 0.5, 1e-9, false};
  const std::string line = suites::csv_line(r);
  CHECK(std::count(line.begin(), line.end(), ',') == 9);
  CHECK(line.substr(line.size() - 2) == ",0");
}

TEST_CASE("hbar setting reaches the fig3 functional") {
  suites::Config c;
  suites::apply_setting(c, "hbar", "0.5");
  CHECK(c.hbar == 0.5);
  CHECK(variational::panel_qubit('a', 1.0, 0.0, 0.0, 0.5).value != variational::panel_qubit('a', 1.0, 0.0, 0.0).value);
  suites::apply_setting(c, "hbar", "-1");
  c.suite = "fig3";
  CHECK_THROWS_AS(suites::run(c), Error);
}
