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

#include "fermion.hpp"
#include "presets.hpp"
#include "support.hpp"
#include "wick.hpp"

using namespace stqm;
namespace ts = testing_support;

namespace {

// Tr[P W x_1 ... x_k] straight from explicit Jordan-Wigner matrices.
cplx brute(const Lattice& lat, const Mat& w, const std::vector<wick::LadderInsertion>& ins) {
  const auto a = ts::jordan_wigner(lat.n_modes());
  Mat prod = ts::parity_diagonal(lat.n_modes()) * w;
  for (const auto& in : ins) {
    const Mat& op = a[in.mode.t * lat.n_sites() + in.mode.i];
    prod = prod * (in.create ? Mat(op.adjoint()) : op);
  }
  return prod.trace();
}

}  // namespace

TEST_CASE("pfaffian route reproduces dense traces") {
  std::mt19937_64 rng(21);
  const Lattice lat = Lattice::fermion(3, 2, 0.4);
  const fermion::Algebra alg(lat);
  const ActionBundle num = fermion::action_bundle({fermion::quadratic(presets::random_hermitian(rng, 2))}, alg);
  const ActionBundle pair = fermion::action_bundle({presets::random_quadratic(rng, 2)}, alg);
  std::uniform_int_distribution<int> t(0, 2), i(0, 1), c(0, 1);
  for (const Mat* w : {&num.e_iS, &num.e_minus_SE, &pair.e_iS}) {
    for (int k = 0; k < 6; ++k) {
      std::vector<wick::LadderInsertion> ins;
      for (int q = 0; q < 2 + 2 * (k % 3); ++q) ins.push_back({c(rng) == 1, {t(rng), i(rng)}});
      const cplx ref = brute(lat, *w, ins);
      CHECK(std::abs(wick::pfaffian_correlator(alg, *w, ins) - ref) < 1e-9);
      CHECK(std::abs(wick::dense_correlator(alg, *w, ins) - ref) < 1e-10);
    }
  }
}

TEST_CASE("contraction matrix is antisymmetric with two-point entries") {
  std::mt19937_64 rng(22);
  const Lattice lat = Lattice::fermion(2, 2, 0.5);
  const fermion::Algebra alg(lat);
  const ActionBundle b = fermion::action_bundle({presets::random_quadratic(rng, 2)}, alg);
  const std::vector<wick::LadderInsertion> ins{{false, {0, 0}}, {true, {1, 1}}, {false, {1, 0}}, {true, {0, 1}}};
  const Mat c = wick::contraction_matrix(alg, b.e_iS, ins);
  CHECK(max_abs(c + c.transpose()) < 1e-14);
  for (int x = 0; x < 4; ++x)
    for (int y = x + 1; y < 4; ++y) CHECK(std::abs(c(x, y) - brute(lat, b.e_iS, {ins[x], ins[y]})) < 1e-11);
}

TEST_CASE("number-conserving weights give exact zeros") {
  std::mt19937_64 rng(23);
  const fermion::Algebra alg(Lattice::fermion(3, 2, 0.4));
  const ActionBundle b = fermion::action_bundle({fermion::quadratic(presets::random_hermitian(rng, 2))}, alg);
  const std::vector<wick::LadderInsertion> ann{{false, {0, 0}}, {false, {1, 1}}, {false, {2, 0}}, {false, {2, 1}}};
  CHECK(wick::pfaffian_correlator(alg, b.e_iS, ann) == cplx(0.0));
  const std::vector<wick::LadderInsertion> cre{{true, {0, 0}}, {true, {1, 1}}};
  CHECK(wick::pfaffian_correlator(alg, b.e_iS, cre) == cplx(0.0));
  const std::vector<wick::LadderInsertion> odd{{false, {0, 0}}, {true, {1, 1}}, {true, {2, 1}}};
  CHECK(wick::pfaffian_correlator(alg, b.e_iS, odd) == cplx(0.0));
}

TEST_CASE("empty insertion list gives the normalization") {
  std::mt19937_64 rng(24);
  const Lattice lat = Lattice::fermion(2, 1, 0.5);
  const fermion::Algebra alg(lat);
  const ActionBundle b = fermion::action_bundle({presets::random_quadratic(rng, 1)}, alg);
  CHECK(std::abs(wick::pfaffian_correlator(alg, b.e_iS, {}) - brute(lat, b.e_iS, {})) < 1e-12);
}
