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

#pragma once

#include <optional>
#include <vector>

#include "lattice.hpp"
#include "tensor.hpp"

namespace stqm {

// Operators that every action-like construction hands back. For qudits the
// parity slot holds the identity.
struct ActionBundle {
  Mat e_iS;
  Mat e_iS_tilde;
  Mat e_minus_SE;
  Mat V;
  Mat translation;
  Mat parity;
};

// Single-slice operator placed on slice t.
struct Insertion {
  Mat op;
  int t;
};

namespace boson {

// Permutation |i0 i1 ... i_{N-1}> -> |i_{N-1} i0 ... i_{N-2}>.
Mat time_translation(const Lattice& lat);

// H acts on one slice (dimension d^L) and may be non-Hermitian, in which
// case V^{-1} plays the role of V^dagger.
ActionBundle action_bundle(const Mat& h, const Lattice& lat);

// Tr[weight * prod_l embed(O_l, t_l)], list order. One insertion per slice.
cplx spacetime_correlator(const Mat& weight, const std::vector<Insertion>& ins, const Lattice& lat);

// tr[exp(-iTH) T prod O(eps t)] with O(t) = e^{iHt} O e^{-iHt}, evaluated in
// the single-slice space. rho, when given, is the earliest factor.
cplx timeordered_oracle(const Mat& h, const Lattice& lat, const std::vector<Insertion>& ins,
                        const std::optional<Mat>& rho = std::nullopt);

// tr[rho T prod O(eps t)].
cplx expectation_oracle(const Mat& h, const Lattice& lat, const std::vector<Insertion>& ins,
                        const Mat& rho);

// Tr[(R - R^dagger) A_{t1} B_{t2}] with R = |psi>_0 <psi,-T| e^{iS}, psi
// normalized internally. Requires t1 >= t2; at t1 == t2 the adjoint term
// takes the reversed slice product.
cplx heisenberg_commutator(const Vec& psi, const Mat& h, const Mat& a, const Mat& b, int t1, int t2,
                           const Lattice& lat);
// <psi|[A(eps t1), B(eps t2)]|psi> evaluated directly.
cplx direct_commutator(const Vec& psi, const Mat& h, const Mat& a, const Mat& b, int t1, int t2,
                       double epsilon);

// [1 / (I - e^{-M})]
Mat bose_contraction(const Mat& m);

// (1/N) sum_n e^{-i eps w_n (t1-t2)} [I - e^{i eps (w_n I + i M)}]^{-1}
Mat matsubara_twopoint(const Mat& m, const Lattice& lat, int t1, int t2);

// Thermal ordered propagator <T b(-i tau1) b^dagger(-i tau2)> at inverse
// temperature beta, from Bose occupations of the eigenmodes of M.
Mat thermal_twopoint(const Mat& m, double beta, double tau1, double tau2);

// Symmetric partial sum of the continuum Matsubara series with n_terms
// frequencies, (1/beta) sum_n e^{-i w_n tau} (M - i w_n)^{-1}.
Mat continuum_partial_sum(const Mat& m, double beta, int n_terms, double tau);

// tr[e^{-lambda n} b b^dagger] / tr[e^{-lambda n}] on a Fock space truncated
// at `cutoff` levels.
double fock_bose_contraction(double lambda, int cutoff);

}  // namespace boson
}  // namespace stqm
