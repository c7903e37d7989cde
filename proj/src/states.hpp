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

#include <vector>

#include "boson.hpp"
#include "fermion.hpp"

namespace stqm::states {

// Unnormalized sum_i |i>|i>.
Vec phi_plus(std::size_t dim);
// exp(sum_k a_k^dagger a~_k^dagger)|vac> on 2*n_modes JW modes, environment
// modes appended after the system modes.
Vec phi_plus_fermion(int n_modes);

// (A (x) I)|Phi+>, and <B|A>.
Vec choi_vector(const Mat& a);
cplx choi_overlap(const Mat& b, const Mat& a);
// Fermionic versions; operators must be parity even.
Vec choi_vector_fermion(const Mat& a, int n_modes);
// <C| O |B> with O acting on the system modes.
cplx choi_element_fermion(const Mat& c, const Mat& o, const Mat& b, int n_modes);

enum class Purification {
  SameSlice,  // |Psi> = rho_0 e^{iS~} |Phi+>, |Psi~> = |Phi+>
  HalfStep,   // |Psi> = rho_0 e^{iS~/2} |Phi+>, |Psi~> = (e^{iS~/2})^dagger |Phi+>
};

struct StatePair {
  Vec psi;
  Vec psibar;
  cplx overlap;
};

struct GeneralizedState {
  StatePair pair;
  Mat r;
  std::size_t system_dim;
  bool fermionic;
};

// e^{iS~/2} = V^{-1} sqrt(translation) V. For fermions pass the generator
// based square root, for qudits the principal one.
Mat half_action_tilde(const ActionBundle& b, const Mat& sqrt_translation);

// rho0 is an extended operator (rho on slice 0). half is only read for
// the half-step purification.
GeneralizedState spacetime_state(const ActionBundle& b, const Mat& rho0, Purification kind, const Mat& half,
                                 bool fermionic);

// Tr_E[R]; for fermions the environment modes trail the system modes so the
// same tensor trace applies.
Mat trace_environment(const GeneralizedState& s);

// <Psi~| O (x) 1 |Psi> / <Psi~|Psi>.
cplx weak_value(const GeneralizedState& s, const Mat& o);

// Reduced state of the kept modes (kept modes first, in the given order).
Mat fermionic_mode_rdm(const Vec& state, int n_modes, const std::vector<int>& keep);

// J (rho (x) 1) with J = sum_ij U^dagger |i><j| U (x) |j><i|.
Mat t_ab(const Mat& rho, const Mat& u);

// || Tr_outside[W - W^dagger] ||_p with the kept factors listed in keep.
double imagitivity(const Mat& w, const std::vector<std::size_t>& factor_dims, const std::vector<std::size_t>& keep,
                   double p);

// rho_0 SWAP_01 SWAP_23 SWAP_12 (U (x) 1 (x) 1 (x) U^dagger) on h^{(x)4}.
Mat histories_x(const Mat& rho, const Mat& u);
// Tr[X (a0 (x) a1) (x) (b0 (x) b1)].
cplx decoherence_from_x(const Mat& x, const Mat& a0, const Mat& a1, const Mat& b0, const Mat& b1);
// tr[C_a^dagger rho C_b] with C = x0 x1(t), x1(t) = U^dagger x1 U.
cplx decoherence_direct(const Mat& rho, const Mat& u, const Mat& a0, const Mat& a1, const Mat& b0, const Mat& b1);

// Permutation of tensor factors i and j among n factors of dimension d.
Mat factor_swap(std::size_t i, std::size_t j, std::size_t n, std::size_t d);

}  // namespace stqm::states
