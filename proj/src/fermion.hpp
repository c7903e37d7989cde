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

#include "boson.hpp"
#include "lattice.hpp"
#include "polynomial.hpp"
#include "tensor.hpp"

namespace stqm::fermion {

// Jordan-Wigner realization of the spacetime modes a_{ti}, flat index
// k = t*L + i.
class Algebra {
 public:
  explicit Algebra(const Lattice& lat);

  const Lattice& lattice() const { return lat_; }
  std::size_t dim() const { return lat_.extended_dim(); }
  const std::vector<SpMat>& ladder() const { return ladder_; }
  const SpMat& a(int t, int i) const;
  Mat a_dense(int t, int i) const { return Mat(a(t, i)); }
  // Hermitian Majorana operators, mu = 1..2NL, with a_k = (c_{2k+1} + i c_{2k+2}) / 2.
  Mat majorana(int mu) const;
  const Mat& parity() const { return parity_; }

  std::vector<SpMat> slice_ladder(int t) const;
  Mat compile(const Polynomial& p, int t) const;
  // Matrix on one slice (dimension 2^L) placed on slice t. Slice 0 accepts
  // any operator; later slices need parity-even input.
  Mat embed_matrix(const Mat& op, int t) const;

 private:
  Lattice lat_;
  std::vector<SpMat> ladder_;
  Mat parity_;
};

// Single-slice objects: ladder operators and parity on 2^L states.
std::vector<SpMat> slice_algebra(int n_sites);
Mat number_parity(int n_modes);

struct Translation {
  Mat generator;
  Mat unitary;      // signed permutation of occupation states, built directly
  Mat exponential;  // e^{i eps generator}; agrees with unitary to rounding
};

Translation translation_generator(const Algebra& alg);

// One Hamiltonian per slice, or a single one shared by all slices. Each
// must be parity even.
ActionBundle action_bundle(const std::vector<Polynomial>& h, const Algebra& alg);

struct FInsertion {
  Polynomial op;
  int t;
};

// Tr[P * weight * prod_l O_l(t_l)], list order.
cplx spacetime_correlator(const Algebra& alg, const Mat& weight, const std::vector<FInsertion>& ins);

// tr[U(T) T prod O(eps t)] with the fermionic time ordering, in the
// single-slice space. rho, when given, is the earliest factor.
cplx timeordered_oracle(const std::vector<Polynomial>& h, const Lattice& lat,
                        const std::vector<FInsertion>& ins, const std::optional<Mat>& rho = std::nullopt);
// tr[rho T prod O(eps t)].
cplx expectation_oracle(const std::vector<Polynomial>& h, const Lattice& lat,
                        const std::vector<FInsertion>& ins, const Mat& rho);

// Tr[P (|psi>_0<psi| e^{iS~} - e^{-iS~} |psi>_0<psi|) a_{t1 i} a^dagger_{t2 j}]
// with psi normalized. Requires t1 >= t2; at t1 == t2 the second term uses
// the reversed slice product.
cplx anticommutator_recovery(const Algebra& alg, const Vec& psi, const Polynomial& h, int i, int j, int t1,
                             int t2);
cplx direct_anticommutator(const Vec& psi, const Polynomial& h, int n_sites, int i, int j, int t1, int t2,
                           double epsilon);

// [1 / (I + e^{-K})]
Mat fermi_contraction(const Mat& k);

// Closed form; no extended space is built, so N is not capped.
Mat matsubara_twopoint(const Mat& m, int n_slices, double epsilon, int t1, int t2);
// Closed form from Fermi occupations of the eigenmodes of M.
Mat thermal_twopoint(const Mat& m, double beta, double tau1, double tau2);
// Same quantity by brute force in the Fock space of L = dim(M) modes.
Mat thermal_twopoint_fock(const Mat& m, double beta, double tau1, double tau2);

// Quadratic form sum_ij M_ij a_i^dagger a_j.
Polynomial quadratic(const Mat& m);

// Projector onto total particle number m*N.
Mat sector_projector(const Algebra& alg, int m);
// Projector onto m particles within one slice of L sites.
Mat slice_sector_projector(int n_sites, int m);

// One term B (x) F of a boson-fermion coupling.
struct Coupling {
  Mat boson;
  Polynomial fermion;
};

struct CompositeInsertion {
  Mat boson;  // empty means identity
  Polynomial fermion;
  int t;
};

struct CompositeResult {
  cplx extended;
  cplx oracle;
};

// Builds the joint action on the qudit (x) fermion extended space and
// evaluates Tr[P_F e^{iS} prod ins] together with the joint time-ordered
// oracle in the single-slice product space.
CompositeResult composite_correlator(const Mat& hb, const Polynomial& hf, const std::vector<Coupling>& hint,
                                     const std::vector<CompositeInsertion>& ins, const Lattice& lat_b,
                                     const Lattice& lat_f);

}  // namespace stqm::fermion
