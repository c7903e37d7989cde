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

#include "boson.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace stqm::boson {

namespace {

void check_boson(const Lattice& lat, const char* what) {
  if (lat.statistics() != Statistics::BosonLike)
    fail(ErrorCode::Domain, std::string(what) + ": requires a boson-like lattice");
}

void check_slice_op(const Mat& op, const Lattice& lat, const char* what) {
  if (!is_square(op) || static_cast<std::size_t>(op.rows()) != lat.slice_dim())
    fail(ErrorCode::Dimension, std::string(what) + ": operator does not match slice dimension");
}

// Descending slice order; equal slices keep list order.
std::vector<std::size_t> time_order(const std::vector<Insertion>& ins) {
  std::vector<std::size_t> idx(ins.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return ins[a].t > ins[b].t; });
  return idx;
}

Mat ordered_product(const Mat& h, double epsilon, const std::vector<Insertion>& ins) {
  const auto n = h.rows();
  Mat prod = identity(n);
  for (std::size_t k : time_order(ins)) {
    const double t = epsilon * ins[k].t;
    prod = prod * mat_exp(I_UNIT * t * h) * ins[k].op * mat_exp(-I_UNIT * t * h);
  }
  return prod;
}

}  // namespace

Mat time_translation(const Lattice& lat) {
  check_boson(lat, "time_translation");
  const std::size_t d = lat.slice_dim();
  const std::size_t dim = lat.extended_dim();
  const std::size_t block = dim / d;  // d^{N-1}
  Mat e = Mat::Zero(dim, dim);
  // idx = i0 * d^{N-1} + rest; the image moves i_{N-1} to the front.
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const std::size_t last = idx % d;
    const std::size_t head = idx / d;
    e(last * block + head, idx) = 1.0;
  }
  return e;
}

ActionBundle action_bundle(const Mat& h, const Lattice& lat) {
  check_boson(lat, "action_bundle");
  check_slice_op(h, lat, "action_bundle");
  const int n = lat.n_slices();
  const double eps = lat.epsilon();
  const std::size_t dim = lat.extended_dim();
  ActionBundle b;
  b.translation = time_translation(lat);
  b.parity = identity(dim);
  const Mat step = mat_exp(-I_UNIT * eps * h);
  const Mat step_e = mat_exp(-eps * h);
  Mat evol = identity(dim), evol_e = identity(dim), v = identity(dim);
  for (int t = 0; t < n; ++t) {
    evol = evol * embed_at_slice(step, t, lat);
    evol_e = evol_e * embed_at_slice(step_e, t, lat);
    v = v * embed_at_slice(mat_exp(I_UNIT * (eps * t) * h), t, lat);
  }
  b.e_iS = b.translation * evol;
  b.e_minus_SE = b.translation * evol_e;
  b.e_iS_tilde = embed_at_slice(mat_exp(I_UNIT * lat.total_time() * h), 0, lat) * b.e_iS;
  b.V = v;
  return b;
}

cplx spacetime_correlator(const Mat& weight, const std::vector<Insertion>& ins, const Lattice& lat) {
  check_boson(lat, "spacetime_correlator");
  if (static_cast<std::size_t>(weight.rows()) != lat.extended_dim() || !is_square(weight))
    fail(ErrorCode::Dimension, "spacetime_correlator: weight does not match lattice");
  std::vector<bool> used(lat.n_slices(), false);
  Mat prod = weight;
  for (const auto& in : ins) {
    check_slice_op(in.op, lat, "spacetime_correlator");
    if (in.t < 0 || in.t >= lat.n_slices()) fail(ErrorCode::Domain, "spacetime_correlator: slice out of range");
    if (used[in.t])
      fail(ErrorCode::Domain, "spacetime_correlator: duplicate slice " + std::to_string(in.t) +
                                  "; pre-multiply operators sharing a slice");
    used[in.t] = true;
    prod = prod * embed_at_slice(in.op, in.t, lat);
  }
  return prod.trace();
}

cplx timeordered_oracle(const Mat& h, const Lattice& lat, const std::vector<Insertion>& ins,
                        const std::optional<Mat>& rho) {
  check_slice_op(h, lat, "timeordered_oracle");
  for (const auto& in : ins) check_slice_op(in.op, lat, "timeordered_oracle");
  Mat prod = mat_exp(-I_UNIT * lat.total_time() * h) * ordered_product(h, lat.epsilon(), ins);
  if (rho) prod = prod * (*rho);
  return prod.trace();
}

cplx expectation_oracle(const Mat& h, const Lattice& lat, const std::vector<Insertion>& ins, const Mat& rho) {
  check_slice_op(h, lat, "expectation_oracle");
  check_slice_op(rho, lat, "expectation_oracle");
  return (rho * ordered_product(h, lat.epsilon(), ins)).trace();
}

cplx heisenberg_commutator(const Vec& psi, const Mat& h, const Mat& a, const Mat& b, int t1, int t2,
                           const Lattice& lat) {
  check_boson(lat, "heisenberg_commutator");
  if (t1 < t2) fail(ErrorCode::Domain, "heisenberg_commutator: requires t1 >= t2; swap and negate");
  const Vec p = psi / psi.norm();
  const Vec back = mat_exp(-I_UNIT * lat.total_time() * h) * p;
  const Mat proj = p * back.adjoint();
  const ActionBundle bundle = action_bundle(h, lat);
  const Mat r = embed_at_slice(proj, 0, lat) * bundle.e_iS;
  if (t1 == t2) {
    const Mat ab = embed_at_slice(a * b, t1, lat);
    const Mat ba = embed_at_slice(b * a, t1, lat);
    return (r * ab).trace() - (r.adjoint() * ba).trace();
  }
  const Mat ins = embed_at_slice(a, t1, lat) * embed_at_slice(b, t2, lat);
  return ((r - r.adjoint()) * ins).trace();
}

cplx direct_commutator(const Vec& psi, const Mat& h, const Mat& a, const Mat& b, int t1, int t2,
                       double epsilon) {
  const Vec p = psi / psi.norm();
  auto heis = [&](const Mat& o, int t) {
    return Mat(mat_exp(I_UNIT * (epsilon * t) * h) * o * mat_exp(-I_UNIT * (epsilon * t) * h));
  };
  const Mat at = heis(a, t1), bt = heis(b, t2);
  return p.dot(commutator(at, bt) * p);
}

Mat bose_contraction(const Mat& m) {
  if (!is_square(m)) fail(ErrorCode::Dimension, "bose_contraction: matrix must be square");
  Eigen::ComplexEigenSolver<Mat> es(m);
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const cplx lam = es.eigenvalues()(k);
    if (std::abs(1.0 - std::exp(-lam)) < 1e-12)
      fail(ErrorCode::Singular, "bose_contraction: eigenvalue with 1 - e^{-lambda} ~ 0");
  }
  const auto n = m.rows();
  return (identity(n) - mat_exp(-m)).inverse();
}

Mat matsubara_twopoint(const Mat& m, const Lattice& lat, int t1, int t2) {
  if (!is_square(m)) fail(ErrorCode::Dimension, "matsubara_twopoint: matrix must be square");
  const auto w = matsubara_frequencies(Lattice::boson(lat.n_slices(), 1, lat.epsilon(), 1));
  const double eps = lat.epsilon();
  const auto n = m.rows();
  const Mat decay = mat_exp(-eps * m);
  Mat acc = Mat::Zero(n, n);
  for (double wn : w) {
    Mat factor = identity(n) - std::exp(I_UNIT * eps * wn) * decay;
    Eigen::PartialPivLU<Mat> lu(factor);
    if (std::abs(lu.determinant()) < 1e-14)
      fail(ErrorCode::Singular, "matsubara_twopoint: singular frequency factor");
    acc += std::exp(-I_UNIT * (eps * wn * (t1 - t2))) * lu.inverse();
  }
  return acc / static_cast<double>(w.size());
}

Mat thermal_twopoint(const Mat& m, double beta, double tau1, double tau2) {
  Eigen::ComplexEigenSolver<Mat> es(m);
  const Mat& u = es.eigenvectors();
  const Mat uinv = u.inverse();
  const auto n = m.rows();
  Vec g(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx lam = es.eigenvalues()(k);
    const cplx occ = 1.0 / (std::exp(beta * lam) - 1.0);  // Bose occupation
    const cplx prop = std::exp(-lam * (tau1 - tau2));
    g(k) = tau1 >= tau2 ? prop * (1.0 + occ) : prop * occ;
  }
  return u * g.asDiagonal() * uinv;
}

Mat continuum_partial_sum(const Mat& m, double beta, int n_terms, double tau) {
  const auto n = m.rows();
  Mat acc = Mat::Zero(n, n);
  for (int k = -(n_terms / 2) + 1; k <= n_terms / 2; ++k) {
    const double wn = 2.0 * kPi * k / beta;
    acc += std::exp(-I_UNIT * wn * tau) * (m - I_UNIT * wn * identity(n)).inverse();
  }
  return acc / beta;
}

double fock_bose_contraction(double lambda, int cutoff) {
  if (cutoff < 2) fail(ErrorCode::Domain, "fock_bose_contraction: cutoff must be at least 2");
  Mat b = Mat::Zero(cutoff, cutoff);
  for (int k = 1; k < cutoff; ++k) b(k - 1, k) = std::sqrt(static_cast<double>(k));
  const Mat num = b.adjoint() * b;
  const Mat w = mat_exp(-lambda * num);
  return ((w * b * b.adjoint()).trace() / w.trace()).real();
}

}  // namespace stqm::boson
