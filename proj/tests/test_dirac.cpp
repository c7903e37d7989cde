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

#include <random>

#include "dirac.hpp"
#include "support.hpp"

using namespace stqm;
namespace ts = testing_support;

TEST_CASE("Clifford algebra in the Dirac representation") {
  const auto& g = dirac::gamma_set();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      CHECK(max_abs(g.gamma[mu] * g.gamma[nu] + g.gamma[nu] * g.gamma[mu] - 2.0 * dirac::metric(mu, nu) * identity(4)) ==
            0.0);
  Mat beta = Mat::Zero(4, 4);
  beta(0, 0) = beta(1, 1) = 1.0;
  beta(2, 2) = beta(3, 3) = -1.0;
  CHECK(max_abs(g.gamma[0] - beta) == 0.0);
  for (int k = 0; k < 3; ++k) CHECK(max_abs(g.alpha[k] - g.gamma[0] * g.gamma[k + 1]) == 0.0);
}

TEST_CASE("slash squares to the invariant mass") {
  dirac::FourMomentum k;
  k.p0 = 1.3;
  k.p = {0.2, -0.4, 0.7};
  const double p2 = 1.3 * 1.3 - (0.04 + 0.16 + 0.49);
  CHECK(max_abs(dirac::slash(k) * dirac::slash(k) - p2 * identity(4)) < 1e-14);
  k.m = 0.5;
  CHECK(dirac::energy(k) == doctest::Approx(std::sqrt(0.69 + 0.25)));
  CHECK(dirac::effective_regulator(k) == doctest::Approx(1e-6 * 1.25));
}

TEST_CASE("spinors in the rest frame") {
  const auto s = dirac::spinor_basis({0.0, 0.0, 0.0}, 2.0);
  Mat u = Mat::Zero(4, 2), v = Mat::Zero(4, 2);
  u(0, 0) = u(1, 1) = 2.0;
  v(2, 0) = v(3, 1) = 2.0;
  CHECK(max_abs(s.u - u) < 1e-15);
  CHECK(max_abs(s.v - v) < 1e-15);
  CHECK_THROWS_AS(dirac::spinor_basis({0.0, 0.0, 0.0}, 0.0), Error);
  CHECK_THROWS_AS(dirac::spinor_basis({1.0, 0.0, 0.0}, -1.0), Error);
}

TEST_CASE("spinors solve the free Dirac equation") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int k = 0; k < 10; ++k) {
    const std::array<double, 3> p{d(rng), d(rng), d(rng)};
    const double m = std::abs(d(rng)) + 0.1;
    const auto s = dirac::spinor_basis(p, m);
    const Mat h = dirac::dirac_hamiltonian(p, m);
    CHECK(max_abs(h * s.u - s.e * s.u) < 1e-12);
    const auto sm = dirac::spinor_basis({-p[0], -p[1], -p[2]}, m);
    CHECK(max_abs(h * sm.v + s.e * sm.v) < 1e-12);
    const auto r = dirac::bogoliubov_check(p, m);
    CHECK(r.unitarity < 1e-12);
    CHECK(r.orthogonality < 1e-12);
    CHECK(r.normalization < 1e-12);
    const Mat w = dirac::bogoliubov_matrix(p, m);
    CHECK(max_abs(w * h * w.adjoint() - Mat(Eigen::Vector4cd(s.e, s.e, -s.e, -s.e).asDiagonal())) < 1e-11);
  }
}

TEST_CASE("propagator limit converges at first order") {
  dirac::FourMomentum k;
  k.p0 = 1.7;
  k.p = {0.1, 0.2, -0.3};
  k.m = 0.6;
  const auto r = dirac::propagator_limit_check(k, {4e-3, 2e-3, 1e-3, 5e-4});
  for (std::size_t q = 0; q + 1 < r.errors.size(); ++q) CHECK(r.errors[q + 1] < r.errors[q]);
  for (double ratio : r.ratios) CHECK(ratio == doctest::Approx(0.5).epsilon(0.05));
  CHECK(r.rational_error < 1e-12);
  k.p0 = dirac::energy(k);
  k.regulator = 0.0;
  CHECK_THROWS_AS(dirac::propagator_limit_check(k, {1e-3}), Error);
}

TEST_CASE("Fermi sums are exact at every N") {
  for (double lam : {-1.2, 0.0, 0.8})
    for (int n : {1, 3, 8, 32}) {
      const auto s = dirac::matsubara_fermi_sum(lam, 1.5, n);
      CHECK(std::abs(s.exact - 1.0 / (1.0 + std::exp(-1.5 * lam))) < 1e-12);
    }
  const auto big = dirac::matsubara_fermi_sum(0.8, 1.5, 4000);
  CHECK(std::abs(big.continuum - big.thermal) < 1e-3);
  std::mt19937_64 rng(52);
  const Mat h = ts::random_hermitian(rng, 3);
  const auto m = dirac::matsubara_fermi_matrix(h, 0.9, 6);
  const Mat direct = (identity(3) + ts::taylor_exp(-0.9 * h)).inverse();
  CHECK(max_abs(m.exact - direct) < 1e-12);
  CHECK(max_abs(m.thermal - direct) < 1e-12);
}

TEST_CASE("action diagonalization") {
  dirac::FourMomentum k;
  k.p0 = 0.3;
  k.m = 1.1;
  const auto rest = dirac::action_diagonalization_check(k);
  CHECK(rest.error < 1e-12);
  CHECK(std::abs(rest.expected(0, 0) - (0.3 - 1.1)) < 1e-14);
  CHECK(std::abs(rest.expected(3, 3) - (0.3 + 1.1)) < 1e-14);
  k.p = {0.5, 0.5, -0.2};
  k.p0 = dirac::energy(k);
  const auto shell = dirac::action_diagonalization_check(k);
  CHECK(shell.congruence.topLeftCorner(2, 2).cwiseAbs().maxCoeff() < 1e-12);
}
