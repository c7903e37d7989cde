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

#include "wick.hpp"

#include <algorithm>

namespace stqm::wick {

namespace {

Mat ladder_matrix(const fermion::Algebra& alg, const LadderInsertion& in) {
  const Mat a = alg.a_dense(in.mode.t, in.mode.i);
  return in.create ? Mat(a.adjoint()) : a;
}

// True when the weight has no entries between different particle-number
// sectors; same-type contractions then vanish identically.
bool conserves_number(const Mat& w) {
  const double tol = 1e-12 * std::max(1.0, max_abs(w));
  for (Eigen::Index c = 0; c < w.cols(); ++c)
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      if (__builtin_popcountll(r) != __builtin_popcountll(c) && std::abs(w(r, c)) > tol) return false;
  return true;
}

}  // namespace

Mat contraction_matrix(const fermion::Algebra& alg, const Mat& weight, const std::vector<LadderInsertion>& ins) {
  const std::size_t n = ins.size();
  if (n % 2 != 0) fail(ErrorCode::Domain, "contraction_matrix: odd number of insertions");
  const Mat pw = alg.parity() * weight;
  std::vector<Mat> ops;
  ops.reserve(n);
  for (const auto& in : ins) ops.push_back(ladder_matrix(alg, in));
  const bool charge = conserves_number(weight);
  Mat c = Mat::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Mat left = pw * ops[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      if (charge && ins[i].create == ins[j].create) continue;
      c(i, j) = (left * ops[j]).trace();
      c(j, i) = -c(i, j);
    }
  }
  return c;
}

cplx pfaffian_correlator(const fermion::Algebra& alg, const Mat& weight, const std::vector<LadderInsertion>& ins) {
  if (ins.size() % 2 != 0) return 0.0;
  const cplx z = (alg.parity() * weight).trace();
  if (std::abs(z) < 1e-300) fail(ErrorCode::Singular, "pfaffian_correlator: weight has zero trace");
  return z * pfaffian(contraction_matrix(alg, weight, ins) / z);
}

cplx dense_correlator(const fermion::Algebra& alg, const Mat& weight, const std::vector<LadderInsertion>& ins) {
  Mat prod = alg.parity() * weight;
  for (const auto& in : ins) prod = prod * ladder_matrix(alg, in);
  return prod.trace();
}

}  // namespace stqm::wick
