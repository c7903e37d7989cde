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

#include <cstdint>
#include <random>
#include <string>

#include "polynomial.hpp"
#include "tensor.hpp"

namespace stqm::presets {

// Preset grammar: name:argument, with names zfield, xyfield, hopping,
// hubbard, random-quadratic, random-quartic. Fermions additionally accept
//   poly:<coef> <op> <op> ..., <coef> <op> ...
// where +k creates and -k annihilates site k (ops written left to right).
// Qubits accept
//   pauli:<coef> X0 Z1, <coef> Y1
Mat qudit_hamiltonian(const std::string& spec, int n_sites, int local_dim);
Polynomial fermion_hamiltonian(const std::string& spec, int n_sites);

// Random draws shared by suites and tests.
Mat random_matrix(std::mt19937_64& rng, std::size_t n);
Mat random_hermitian(std::mt19937_64& rng, std::size_t n);
Vec random_vector(std::mt19937_64& rng, std::size_t n);
// Hermitian positive semidefinite, unit trace.
Mat random_density(std::mt19937_64& rng, std::size_t n);

// Parity-even fermionic Hamiltonians on n_sites modes.
Polynomial random_quadratic(std::mt19937_64& rng, int n_sites, bool hermitian = true);
Polynomial random_quartic(std::mt19937_64& rng, int n_sites, bool hermitian = true);

}  // namespace stqm::presets
