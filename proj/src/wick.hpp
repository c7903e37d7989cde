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

#include "fermion.hpp"

namespace stqm::wick {

struct LadderInsertion {
  bool create;
  ModeIndex mode;
};

// Antisymmetric matrix of dense two-point traces Tr[P W psi_i psi_j], i < j,
// in insertion-list order.
Mat contraction_matrix(const fermion::Algebra& alg, const Mat& weight, const std::vector<LadderInsertion>& ins);

// Z * Pf(C / Z) with Z = Tr[P W]; zero for an odd number of insertions.
cplx pfaffian_correlator(const fermion::Algebra& alg, const Mat& weight, const std::vector<LadderInsertion>& ins);

// Tr[P W prod psi], the dense reference.
cplx dense_correlator(const fermion::Algebra& alg, const Mat& weight, const std::vector<LadderInsertion>& ins);

}  // namespace stqm::wick
