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

#include "lattice.hpp"
#include "support.hpp"

using namespace stqm;
namespace ts = testing_support;

TEST_CASE("lattice dimensions") {
  const Lattice b = Lattice::boson(3, 2, 0.5, 3);
  CHECK(b.slice_dim() == 9);
  CHECK(b.extended_dim() == 729);
  CHECK(b.total_time() == doctest::Approx(1.5));
  const Lattice f = Lattice::fermion(4, 2, 0.25);
  CHECK(f.n_modes() == 8);
  CHECK(f.extended_dim() == 256);
  CHECK(f.local_dim() == 2);
}

TEST_CASE("lattice rejects invalid shapes and oversized spaces") {
  CHECK_THROWS_AS(Lattice::boson(0, 1, 0.5, 2), Error);
  CHECK_THROWS_AS(Lattice::boson(2, 1, -0.5, 2), Error);
  CHECK_THROWS_AS(Lattice::boson(2, 1, 0.5, 0), Error);
  CHECK_THROWS_AS(Lattice::fermion(40, 2, 0.1), Error);
}

TEST_CASE("flat and mode indices are inverse") {
  const Lattice f = Lattice::fermion(3, 2, 0.5);
  for (std::size_t k = 0; k < 6; ++k) CHECK(flat_index(mode_index(k, f), f) == k);
  CHECK(flat_index({2, 1}, f) == 5);
  CHECK(flat_index({1, 0}, f) == 2);
}

TEST_CASE("frequencies and temporal Fourier matrix") {
  const Lattice b = Lattice::boson(4, 1, 0.5, 2);
  const Lattice f = Lattice::fermion(4, 1, 0.5);
  const auto wb = matsubara_frequencies(b);
  const auto wf = matsubara_frequencies(f);
  for (int k = 0; k < 4; ++k) {
    CHECK(wb[k] == doctest::Approx(2.0 * kPi * k / 2.0));
    CHECK(wf[k] == doctest::Approx((2.0 * k + 1.0) * kPi / 2.0));
  }
  for (const Lattice* l : {&b, &f}) {
    const Mat u = fourier_in_time(*l);
    CHECK(max_abs(u * u.adjoint() - identity(4)) < 1e-14);
  }
}

TEST_CASE("slice embedding is a Kronecker product with identities") {
  std::mt19937_64 rng(3);
  const Lattice b = Lattice::boson(3, 1, 0.5, 2);
  const Mat op = ts::random_matrix(rng, 2);
  CHECK(max_abs(embed_at_slice(op, 1, b) - ts::kron_loops(ts::kron_loops(identity(2), op), identity(2))) == 0.0);
  CHECK_THROWS_AS(embed_at_slice(op, 3, b), Error);
  CHECK_THROWS_AS(embed_at_slice(identity(3), 0, b), Error);
  CHECK_THROWS_AS(embed_at_slice(op, 0, Lattice::fermion(2, 1, 0.5)), Error);
}
