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
#include <numeric>
#include <random>

#include "boson.hpp"
#include "lattice.hpp"
#include "support.hpp"

using namespace stqm;
namespace ts = testing_support;

namespace {

// |i_0 .. i_{N-1}> -> |i_{N-1} i_0 .. i_{N-2}>, slice 0 most significant.
Mat cyclic_shift(int n, int d) {
  int dim = 1;
  for (int k = 0; k < n; ++k) dim *= d;
  Mat e = Mat::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    std::vector<int> digits(n);
    int r = s;
    for (int k = n - 1; k >= 0; --k) {
      digits[k] = r % d;
      r /= d;
    }
    std::rotate(digits.rbegin(), digits.rbegin() + 1, digits.rend());
    int target = 0;
    for (int k = 0; k < n; ++k) target = target * d + digits[k];
    e(target, s) = 1.0;
  }
  return e;
}

std::vector<Insertion> draw(std::mt19937_64& rng, const Lattice& lat, int count) {
  std::vector<int> slices(lat.n_slices());
  std::iota(slices.begin(), slices.end(), 0);
  std::shuffle(slices.begin(), slices.end(), rng);
  std::vector<Insertion> ins;
  for (int k = 0; k < std::min(count, lat.n_slices()); ++k)
    ins.push_back({ts::random_matrix(rng, static_cast<int>(lat.slice_dim())), slices[k]});
  return ins;
}

std::vector<ts::Timed> as_timed(const std::vector<Insertion>& ins) {
  std::vector<ts::Timed> out;
  for (const auto& in : ins) out.push_back({in.op, in.t, false});
  return out;
}

}  // namespace

TEST_CASE("time translation is the cyclic slice shift") {
  for (int n : {2, 3, 4})
    for (int d : {2, 3}) {
      const Lattice lat = Lattice::boson(n, 1, 0.5, d);
      CHECK(max_abs(boson::time_translation(lat) - cyclic_shift(n, d)) == 0.0);
    }
}

TEST_CASE("translation moves slice operators forward by one slice") {
  std::mt19937_64 rng(1);
  const Lattice lat = Lattice::boson(3, 1, 0.5, 2);
  const Mat e = boson::time_translation(lat);
  const Mat op = ts::random_matrix(rng, 2);
  CHECK(max_abs(e * embed_at_slice(op, 0, lat) * e.adjoint() - embed_at_slice(op, 1, lat)) < 1e-14);
  CHECK(max_abs(e * embed_at_slice(op, 2, lat) * e.adjoint() - embed_at_slice(op, 0, lat)) < 1e-14);
}

TEST_CASE("free correlators are ordered products") {
  std::mt19937_64 rng(2);
  const Lattice lat = Lattice::boson(3, 1, 0.5, 2);
  const Mat e = boson::time_translation(lat);
  for (int k = 0; k < 10; ++k) {
    const auto ins = draw(rng, lat, 1 + k % 4);
    CHECK(std::abs(boson::spacetime_correlator(e, ins, lat) - ts::time_ordered(identity(2), 3, as_timed(ins))) < 1e-11);
  }
}

TEST_CASE("action correlators equal time-ordered traces") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 12; ++k) {
    const int n = 2 + k % 3, d = 2 + k % 2;
    const Lattice lat = Lattice::boson(n, 1, 0.4, d);
    const Mat h = k % 2 ? Mat(ts::random_hermitian(rng, d)) : Mat(0.5 * ts::random_matrix(rng, d));
    const ActionBundle b = boson::action_bundle(h, lat);
    const Mat step = ts::taylor_exp(-I_UNIT * 0.4 * h);
    const auto ins = draw(rng, lat, 3);
    const cplx expect = ts::time_ordered(step, n, as_timed(ins));
    CHECK(std::abs(boson::spacetime_correlator(b.e_iS, ins, lat) - expect) < 1e-10);
    CHECK(std::abs(boson::timeordered_oracle(h, lat, ins) - expect) < 1e-10);
    CHECK(std::abs(b.e_iS.trace() - ts::time_ordered(step, n, {})) < 1e-10);
  }
}

TEST_CASE("two-site slices") {
  std::mt19937_64 rng(4);
  const Lattice lat = Lattice::boson(2, 2, 0.3, 2);
  const Mat h = ts::random_hermitian(rng, 4);
  const ActionBundle b = boson::action_bundle(h, lat);
  const auto ins = draw(rng, lat, 2);
  CHECK(std::abs(boson::spacetime_correlator(b.e_iS, ins, lat) -
                 ts::time_ordered(ts::taylor_exp(-I_UNIT * 0.3 * h), 2, as_timed(ins))) < 1e-10);
}

TEST_CASE("action bundle structure") {
  std::mt19937_64 rng(5);
  const Lattice lat = Lattice::boson(3, 1, 0.5, 2);
  const Mat h = ts::random_hermitian(rng, 2);
  const ActionBundle b = boson::action_bundle(h, lat);
  Mat p = identity(8);
  for (int k = 0; k < 3; ++k) p = b.e_iS_tilde * p;
  CHECK(max_abs(p - identity(8)) < 1e-12);
  CHECK(max_abs(b.e_iS_tilde - b.V.inverse() * b.translation * b.V) < 1e-12);
  CHECK(std::abs(b.e_minus_SE.trace() - ts::taylor_exp(-1.5 * h).trace()) < 1e-11);
  CHECK(max_abs(b.e_iS * b.e_iS.adjoint() - identity(8)) < 1e-12);
}

TEST_CASE("density matrix insertion at the earliest slice") {
  std::mt19937_64 rng(6);
  const Lattice lat = Lattice::boson(3, 1, 0.5, 2);
  const Mat h = ts::random_hermitian(rng, 2);
  Mat rho = ts::random_matrix(rng, 2);
  rho = rho * rho.adjoint();
  const auto ins = draw(rng, lat, 2);
  const cplx expect = ts::time_ordered(ts::taylor_exp(-I_UNIT * 0.5 * h), 3, as_timed(ins), &rho);
  CHECK(std::abs(boson::timeordered_oracle(h, lat, ins, rho) - expect) < 1e-11);
}

TEST_CASE("commutator recovery from the extended space") {
  std::mt19937_64 rng(7);
  const Lattice lat = Lattice::boson(3, 1, 0.5, 3);
  const Mat h = ts::random_hermitian(rng, 3);
  const Mat a = ts::random_matrix(rng, 3), bop = ts::random_matrix(rng, 3);
  Vec psi = Vec::Random(3);
  psi.normalize();
  for (int t1 = 0; t1 < 3; ++t1)
    for (int t2 = 0; t2 <= t1; ++t2) {
      const Mat u1 = ts::taylor_exp(-I_UNIT * (0.5 * t1) * h), u2 = ts::taylor_exp(-I_UNIT * (0.5 * t2) * h);
      const Mat at = u1.adjoint() * a * u1, bt = u2.adjoint() * bop * u2;
      const cplx expect = psi.dot((at * bt - bt * at) * psi);
      CHECK(std::abs(boson::heisenberg_commutator(psi, h, a, bop, t1, t2, lat) - expect) < 1e-10);
      CHECK(std::abs(boson::direct_commutator(psi, h, a, bop, t1, t2, 0.5) - expect) < 1e-10);
    }
}

TEST_CASE("bosonic thermal contractions") {
  for (double lam : {0.3, 1.0, 2.5}) {
    Mat m(1, 1);
    m(0, 0) = lam;
    const double expect = 1.0 / (1.0 - std::exp(-lam));
    CHECK(std::abs(boson::bose_contraction(m)(0, 0) - expect) < 1e-13);
    CHECK(boson::fock_bose_contraction(lam, 200) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("bosonic lattice two-point function equals the thermal one") {
  std::mt19937_64 rng(8);
  Mat m = ts::random_hermitian(rng, 2);
  m += (1.0 - Eigen::SelfAdjointEigenSolver<Mat>(m).eigenvalues().minCoeff()) * identity(2);
  for (int n : {2, 3, 5}) {
    const Lattice lat = Lattice::boson(n, 1, 1.2 / n, 2);
    for (int t1 = 0; t1 < n; ++t1)
      for (int t2 = 0; t2 < n; ++t2)
        CHECK(max_abs(boson::matsubara_twopoint(m, lat, t1, t2) -
                      boson::thermal_twopoint(m, 1.2, lat.epsilon() * t1, lat.epsilon() * t2)) < 1e-10);
  }
}

TEST_CASE("thermal two-point function of a scalar") {
  Mat m(1, 1);
  m(0, 0) = 0.8;
  const double nb = 1.0 / (std::exp(0.8 * 2.0) - 1.0);
  CHECK(std::abs(boson::thermal_twopoint(m, 2.0, 0.5, 0.2)(0, 0) - std::exp(-0.8 * 0.3) * (1.0 + nb)) < 1e-13);
  CHECK(std::abs(boson::thermal_twopoint(m, 2.0, 0.2, 0.5)(0, 0) - std::exp(0.8 * 0.3) * nb) < 1e-13);
}

TEST_CASE("continuum Matsubara sum converges at first order") {
  Mat m(1, 1);
  m(0, 0) = 1.0;
  const cplx exact = boson::thermal_twopoint(m, 2.0, 0.5, 0.0)(0, 0);
  const double e1 = std::abs(boson::continuum_partial_sum(m, 2.0, 100, 0.5)(0, 0) - exact);
  const double e2 = std::abs(boson::continuum_partial_sum(m, 2.0, 200, 0.5)(0, 0) - exact);
  CHECK(e2 < e1);
  CHECK(e2 / e1 == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("boson operations validate input") {
  const Lattice lat = Lattice::boson(2, 1, 0.5, 2);
  CHECK_THROWS_AS(boson::action_bundle(identity(3), lat), Error);
  CHECK_THROWS_AS(boson::spacetime_correlator(identity(4), {{identity(2), 2}}, lat), Error);
  CHECK_THROWS_AS(boson::spacetime_correlator(identity(4), {{identity(3), 0}}, lat), Error);
}

TEST_CASE("operators sharing a slice are rejected") {
  std::mt19937_64 rng(9);
  const Lattice lat = Lattice::boson(3, 1, 0.5, 2);
  const Mat e = boson::time_translation(lat);
  const std::vector<Insertion> ins{{ts::random_matrix(rng, 2), 1}, {ts::random_matrix(rng, 2), 1}};
  CHECK_THROWS_AS(boson::spacetime_correlator(e, ins, lat), Error);
}
