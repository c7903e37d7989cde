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

#include <Eigen/SparseCore>
#include <string>
#include <vector>

#include "tensor.hpp"

namespace stqm {

using SpMat = Eigen::SparseMatrix<cplx>;

struct Ladder {
  bool dagger;
  int site;
};

struct Monomial {
  cplx coef;
  std::vector<Ladder> ops;  // applied right to left, as written
};

// Polynomial in the ladder operators of one slice (sites 0..L-1). The same
// object compiles to the single-slice space and to any slice of the
// extended space.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Monomial> terms) : terms_(std::move(terms)) {}

  static Polynomial constant(cplx c);
  static Polynomial annihilate(int site);
  static Polynomial create(int site);
  static Polynomial number(int site);

  const std::vector<Monomial>& terms() const { return terms_; }
  int max_site() const;

  // +1 even, -1 odd, 0 mixed. The empty polynomial counts as even.
  int parity() const;
  bool is_even() const { return parity() == 1; }

  Polynomial adjoint() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(cplx c) const;

  // `ladder[i]` is the annihilator of site i in the target space.
  Mat compile(const std::vector<SpMat>& ladder, std::size_t dim) const;

 private:
  std::vector<Monomial> terms_;
};

inline Polynomial operator*(cplx c, const Polynomial& p) { return p * c; }

// Jordan-Wigner annihilators on n_modes qubits, big-endian basis:
// a_k = Z^{(x)k} (x) sigma^- (x) I.
std::vector<SpMat> jw_ladder(int n_modes);

}  // namespace stqm
