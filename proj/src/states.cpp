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

#include "states.hpp"

#include <algorithm>
#include <cmath>

namespace stqm::states {

Vec phi_plus(std::size_t dim) {
  check_dim(dim * dim, "phi_plus");
  Vec v = Vec::Zero(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) v(i * dim + i) = 1.0;
  return v;
}

Vec phi_plus_fermion(int n_modes) {
  const int total = 2 * n_modes;
  const auto ladder = jw_ladder(total);
  const std::size_t dim = std::size_t{1} << total;
  Vec v = Vec::Zero(dim);
  v(0) = 1.0;
  for (int k = 0; k < n_modes; ++k) {
    const SpMat pair = SpMat(ladder[k].adjoint()) * SpMat(ladder[n_modes + k].adjoint());
    v = v + pair * v;
  }
  return v;
}

Vec choi_vector(const Mat& a) { return kron(a, identity(a.rows())) * phi_plus(a.rows()); }

cplx choi_overlap(const Mat& b, const Mat& a) { return choi_vector(b).dot(choi_vector(a)); }

namespace {

void require_even(const Mat& a, int n_modes, const char* what) {
  const Mat p = fermion::number_parity(n_modes);
  if (max_abs(commutator(p, a)) > 1e-12 * std::max(1.0, max_abs(a)))
    fail(ErrorCode::Parity, std::string(what) + ": parity-odd operator violates superselection");
}

}  // namespace

Vec choi_vector_fermion(const Mat& a, int n_modes) {
  require_even(a, n_modes, "choi_vector_fermion");
  return kron(a, identity(a.rows())) * phi_plus_fermion(n_modes);
}

cplx choi_element_fermion(const Mat& c, const Mat& o, const Mat& b, int n_modes) {
  const Vec vb = choi_vector_fermion(b, n_modes);
  const Vec vc = choi_vector_fermion(c, n_modes);
  return vc.dot(kron(o, identity(o.rows())) * vb);
}

Mat half_action_tilde(const ActionBundle& b, const Mat& sqrt_translation) {
  return b.V.inverse() * sqrt_translation * b.V;
}

GeneralizedState spacetime_state(const ActionBundle& b, const Mat& rho0, Purification kind, const Mat& half,
                                 bool fermionic) {
  const std::size_t dim = b.e_iS_tilde.rows();
  int n_modes = 0;
  if (fermionic) {
    while ((std::size_t{1} << n_modes) < dim) ++n_modes;
    require_even(rho0, n_modes, "spacetime_state");
  }
  const Vec phi = fermionic ? phi_plus_fermion(n_modes) : phi_plus(dim);
  const Mat ie = identity(dim);
  GeneralizedState s;
  s.system_dim = dim;
  s.fermionic = fermionic;
  if (kind == Purification::SameSlice) {
    s.pair.psi = kron(rho0 * b.e_iS_tilde, ie) * phi;
    s.pair.psibar = fermionic ? Vec(kron(b.parity, ie) * phi) : phi;
  } else {
    s.pair.psi = kron(rho0 * half, ie) * phi;
    const Mat left = fermionic ? Mat(b.parity * half) : half;
    s.pair.psibar = kron(left.adjoint(), ie) * phi;
  }
  s.pair.overlap = s.pair.psibar.dot(s.pair.psi);
  if (std::abs(s.pair.overlap) < 1e-12) fail(ErrorCode::Singular, "spacetime_state: degenerate overlap");
  s.r = s.pair.psi * s.pair.psibar.adjoint() / s.pair.overlap;
  return s;
}

Mat trace_environment(const GeneralizedState& s) {
  return partial_trace(s.r, {s.system_dim, s.system_dim}, {0});
}

cplx weak_value(const GeneralizedState& s, const Mat& o) {
  return s.pair.psibar.dot(kron(o, identity(s.system_dim)) * s.pair.psi) / s.pair.overlap;
}

Mat fermionic_mode_rdm(const Vec& state, int n_modes, const std::vector<int>& keep) {
  const std::size_t dim = std::size_t{1} << n_modes;
  if (static_cast<std::size_t>(state.size()) != dim) fail(ErrorCode::Dimension, "fermionic_mode_rdm: state size");
  std::vector<bool> kept(n_modes, false);
  std::vector<int> order;
  for (int k : keep) {
    if (k < 0 || k >= n_modes || kept[k]) fail(ErrorCode::Domain, "fermionic_mode_rdm: bad mode list");
    kept[k] = true;
    order.push_back(k);
  }
  const int nk = static_cast<int>(order.size());
  for (int k = 0; k < n_modes; ++k)
    if (!kept[k]) order.push_back(k);

  // |n> = prod_k (a_k^dagger)^{n_k} |0> in ascending k. Re-express each basis
  // state with the creators in `order`; the sign counts transpositions of
  // occupied modes.
  Vec moved = Vec::Zero(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    if (state(s) == cplx(0.0)) continue;
    auto occ = [&](int mode) { return (s >> (n_modes - 1 - mode)) & 1u; };
    std::size_t target = 0;
    int swaps = 0;
    for (int p = 0; p < n_modes; ++p) {
      if (!occ(order[p])) continue;
      target |= std::size_t{1} << (n_modes - 1 - p);
      for (int q = p + 1; q < n_modes; ++q)
        if (occ(order[q]) && order[q] < order[p]) ++swaps;
    }
    moved(target) += (swaps % 2 ? -1.0 : 1.0) * state(s);
  }
  const std::size_t dk = std::size_t{1} << nk;
  const std::size_t de = dim / dk;
  Mat gamma(dk, de);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < de; ++j) gamma(i, j) = moved(i * de + j);
  return gamma * gamma.adjoint();
}

Mat t_ab(const Mat& rho, const Mat& u) {
  const auto d = rho.rows();
  Mat j = Mat::Zero(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      Mat eab = Mat::Zero(d, d), eba = Mat::Zero(d, d);
      eab(a, b) = 1.0;
      eba(b, a) = 1.0;
      j += kron(u.adjoint() * eab * u, eba);
    }
  return j * kron(rho, identity(d));
}

double imagitivity(const Mat& w, const std::vector<std::size_t>& factor_dims, const std::vector<std::size_t>& keep,
                   double p) {
  return schatten_norm(partial_trace(w - w.adjoint(), factor_dims, keep), p);
}

Mat factor_swap(std::size_t i, std::size_t j, std::size_t n, std::size_t d) {
  std::size_t dim = 1;
  for (std::size_t k = 0; k < n; ++k) dim *= d;
  Mat s = Mat::Zero(dim, dim);
  std::vector<std::size_t> digits(n);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t rem = idx;
    for (std::size_t k = n; k-- > 0;) {
      digits[k] = rem % d;
      rem /= d;
    }
    std::swap(digits[i], digits[j]);
    std::size_t out = 0;
    for (std::size_t k = 0; k < n; ++k) out = out * d + digits[k];
    s(out, idx) = 1.0;
  }
  return s;
}

Mat histories_x(const Mat& rho, const Mat& u) {
  const auto d = static_cast<std::size_t>(rho.rows());
  const Mat id = identity(d);
  const Mat rho0 = kron_all({rho, id, id, id});
  return rho0 * factor_swap(0, 1, 4, d) * factor_swap(2, 3, 4, d) * factor_swap(1, 2, 4, d) *
         kron_all({u, id, id, Mat(u.adjoint())});
}

cplx decoherence_from_x(const Mat& x, const Mat& a0, const Mat& a1, const Mat& b0, const Mat& b1) {
  return (x * kron_all({a0, a1, b0, b1})).trace();
}

cplx decoherence_direct(const Mat& rho, const Mat& u, const Mat& a0, const Mat& a1, const Mat& b0, const Mat& b1) {
  const Mat ca = a0 * u.adjoint() * a1 * u;
  const Mat cb = b0 * u.adjoint() * b1 * u;
  return (ca.adjoint() * rho * cb).trace();
}

}  // namespace stqm::states
