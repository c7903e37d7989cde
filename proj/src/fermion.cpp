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

#include "fermion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace stqm::fermion {

namespace {

void check_fermion(const Lattice& lat, const char* what) {
  if (lat.statistics() != Statistics::Fermion)
    fail(ErrorCode::Domain, std::string(what) + ": requires a fermion lattice");
}

std::vector<Polynomial> broadcast(const std::vector<Polynomial>& h, int n, const char* what) {
  if (h.size() == 1) return std::vector<Polynomial>(n, h.front());
  if (static_cast<int>(h.size()) != n)
    fail(ErrorCode::Dimension, std::string(what) + ": need one Hamiltonian or one per slice");
  return h;
}

void check_even(const Polynomial& p, const char* what) {
  if (!p.is_even()) fail(ErrorCode::Parity, std::string(what) + ": Hamiltonian is not parity even");
}

// Sign of bringing the odd insertions from list order into `order`.
double reorder_sign(const std::vector<int>& parities, const std::vector<std::size_t>& order) {
  int swaps = 0;
  for (std::size_t x = 0; x < order.size(); ++x)
    for (std::size_t y = x + 1; y < order.size(); ++y)
      if (order[x] > order[y] && parities[order[x]] < 0 && parities[order[y]] < 0) ++swaps;
  return swaps % 2 ? -1.0 : 1.0;
}

std::vector<std::size_t> descending(const std::vector<int>& slices) {
  std::vector<std::size_t> idx(slices.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return slices[a] > slices[b]; });
  return idx;
}

// Evolution operators U(eps t) = e^{-i eps H_{t-1}} ... e^{-i eps H_0},
// t = 0..N, in the single-slice space.
std::vector<Mat> slice_evolutions(const std::vector<Mat>& h, double eps) {
  const auto n = h.front().rows();
  std::vector<Mat> u{identity(n)};
  for (const auto& ht : h) u.push_back(mat_exp(-I_UNIT * eps * ht) * u.back());
  return u;
}

// Core of both oracles: T-ordered product of Heisenberg operators and the
// reordering sign.
Mat ordered_heisenberg(const std::vector<Mat>& u, const std::vector<Mat>& ops, const std::vector<int>& slices,
                       const std::vector<int>& parities) {
  const auto n = u.front().rows();
  for (int p : parities)
    if (p == 0) fail(ErrorCode::Parity, "timeordered_oracle: insertion without definite parity");
  const auto order = descending(slices);
  Mat prod = identity(n);
  for (std::size_t k : order) {
    const Mat& ut = u[slices[k]];
    prod = prod * ut.inverse() * ops[k] * ut;
  }
  return reorder_sign(parities, order) * prod;
}

}  // namespace

std::vector<SpMat> slice_algebra(int n_sites) { return jw_ladder(n_sites); }

Mat number_parity(int n_modes) {
  const std::size_t dim = std::size_t{1} << n_modes;
  Mat p = Mat::Zero(dim, dim);
  for (std::size_t s = 0; s < dim; ++s) p(s, s) = (__builtin_popcountll(s) % 2) ? -1.0 : 1.0;
  return p;
}

Algebra::Algebra(const Lattice& lat) : lat_(lat) {
  check_fermion(lat, "jw_algebra");
  if (lat.n_modes() > 12) fail(ErrorCode::Cap, "jw_algebra: more than 12 modes");
  ladder_ = jw_ladder(lat.n_modes());
  parity_ = number_parity(lat.n_modes());
}

const SpMat& Algebra::a(int t, int i) const { return ladder_[flat_index({t, i}, lat_)]; }

Mat Algebra::majorana(int mu) const {
  if (mu < 1 || mu > 2 * lat_.n_modes()) fail(ErrorCode::Domain, "majorana: index out of range");
  const int k = (mu - 1) / 2;
  const Mat a = Mat(ladder_[k]);
  if (mu % 2 == 1) return a + a.adjoint();
  return I_UNIT * (a.adjoint() - a);
}

std::vector<SpMat> Algebra::slice_ladder(int t) const {
  if (t < 0 || t >= lat_.n_slices()) fail(ErrorCode::Domain, "slice_ladder: slice out of range");
  const int l = lat_.n_sites();
  return std::vector<SpMat>(ladder_.begin() + t * l, ladder_.begin() + (t + 1) * l);
}

Mat Algebra::compile(const Polynomial& p, int t) const { return p.compile(slice_ladder(t), dim()); }

Mat Algebra::embed_matrix(const Mat& op, int t) const {
  const std::size_t sd = lat_.slice_dim();
  if (!is_square(op) || static_cast<std::size_t>(op.rows()) != sd)
    fail(ErrorCode::Dimension, "embed_matrix: operator does not match slice dimension");
  if (t < 0 || t >= lat_.n_slices()) fail(ErrorCode::Domain, "embed_matrix: slice out of range");
  if (t > 0) {
    const Mat ps = number_parity(lat_.n_sites());
    if (max_abs(commutator(ps, op)) > 1e-12 * std::max(1.0, max_abs(op)))
      fail(ErrorCode::Parity, "embed_matrix: odd operator away from slice 0 needs the ladder construction");
  }
  const std::size_t left = std::size_t{1} << (t * lat_.n_sites());
  const std::size_t right = dim() / (left * sd);
  return kron(kron(identity(left), op), identity(right));
}

Translation translation_generator(const Algebra& alg) {
  const Lattice& lat = alg.lattice();
  const int n = lat.n_slices(), l = lat.n_sites();
  const Mat f = fourier_in_time(lat);
  const auto w = matsubara_frequencies(lat);
  Eigen::VectorXcd wd(n);
  for (int k = 0; k < n; ++k) wd(k) = w[k];
  const Mat single = f.adjoint() * wd.asDiagonal() * f;
  std::vector<Monomial> terms;
  for (int j = 0; j < l; ++j)
    for (int t = 0; t < n; ++t)
      for (int s = 0; s < n; ++s)
        if (std::abs(single(t, s)) > 0.0)
          terms.push_back({single(t, s), {{true, t * l + j}, {false, s * l + j}}});
  Translation out;
  out.generator = Polynomial(std::move(terms)).compile(alg.ladder(), alg.dim());
  out.generator = 0.5 * (out.generator + out.generator.adjoint());
  out.exponential = mat_exp(I_UNIT * lat.epsilon() * out.generator);

  // a^dag_k -> s_k a^dag_{k+L}, with s_k = -1 across the boundary, vacuum fixed.
  const int modes = lat.n_modes();
  const std::size_t dim = alg.dim();
  out.unitary = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::vector<int> image;
  for (std::size_t state = 0; state < dim; ++state) {
    image.clear();
    double sign = 1.0;
    for (int k = 0; k < modes; ++k) {
      if (!((state >> (modes - 1 - k)) & 1U)) continue;
      const int moved = k + l;
      if (moved >= modes) sign = -sign;
      image.push_back(moved % modes);
    }
    std::size_t target = 0;
    for (std::size_t x = 0; x < image.size(); ++x) {
      target |= std::size_t{1} << (modes - 1 - image[x]);
      for (std::size_t y = x + 1; y < image.size(); ++y)
        if (image[x] > image[y]) sign = -sign;
    }
    out.unitary(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(state)) = sign;
  }
  return out;
}

ActionBundle action_bundle(const std::vector<Polynomial>& h_in, const Algebra& alg) {
  const Lattice& lat = alg.lattice();
  const int n = lat.n_slices();
  const double eps = lat.epsilon();
  const auto h = broadcast(h_in, n, "action_bundle");
  for (const auto& p : h) check_even(p, "action_bundle");
  const std::size_t dim = alg.dim();

  std::vector<Mat> ht(n);
  for (int t = 0; t < n; ++t) ht[t] = alg.compile(h[t], t);
  // Checked at desk scale only; evenness already guarantees commutation.
  if (dim <= 256)
    for (int t = 0; t + 1 < n; ++t)
      if (max_abs(commutator(ht[t], ht[t + 1])) > 1e-10)
        fail(ErrorCode::Parity, "action_bundle: slice Hamiltonians do not commute");

  ActionBundle b;
  b.translation = translation_generator(alg).unitary;
  b.parity = alg.parity();
  Mat evol = identity(dim), evol_e = identity(dim), v = identity(dim);
  for (int t = 0; t < n; ++t) {
    evol = evol * mat_exp(-I_UNIT * eps * ht[t]);
    evol_e = evol_e * mat_exp(-eps * ht[t]);
  }
  // V = prod_t U(eps t)^{-1}, U(eps t) built from the Hamiltonians of the
  // earlier slices and acting on slice t.
  std::vector<Mat> hs(n);
  const auto sl = slice_algebra(lat.n_sites());
  for (int t = 0; t < n; ++t) hs[t] = h[t].compile(sl, lat.slice_dim());
  const auto u = slice_evolutions(hs, eps);
  for (int t = 1; t < n; ++t) v = v * alg.embed_matrix(u[t].inverse(), t);
  b.e_iS = b.translation * evol;
  b.e_minus_SE = b.translation * evol_e;
  b.e_iS_tilde = alg.embed_matrix(u[n].inverse(), 0) * b.e_iS;
  b.V = v;
  return b;
}

cplx spacetime_correlator(const Algebra& alg, const Mat& weight, const std::vector<FInsertion>& ins) {
  if (static_cast<std::size_t>(weight.rows()) != alg.dim() || !is_square(weight))
    fail(ErrorCode::Dimension, "spacetime_correlator: weight does not match algebra");
  Mat prod = alg.parity() * weight;
  for (const auto& in : ins) prod = prod * alg.compile(in.op, in.t);
  return prod.trace();
}

namespace {

struct OracleParts {
  std::vector<Mat> u;
  std::vector<Mat> ops;
  std::vector<int> slices;
  std::vector<int> parities;
};

OracleParts oracle_parts(const std::vector<Polynomial>& h_in, const Lattice& lat,
                         const std::vector<FInsertion>& ins) {
  check_fermion(lat, "timeordered_oracle");
  const auto h = broadcast(h_in, lat.n_slices(), "timeordered_oracle");
  const auto sl = slice_algebra(lat.n_sites());
  std::vector<Mat> hs;
  for (const auto& p : h) hs.push_back(p.compile(sl, lat.slice_dim()));
  OracleParts parts;
  parts.u = slice_evolutions(hs, lat.epsilon());
  for (const auto& in : ins) {
    if (in.t < 0 || in.t >= lat.n_slices()) fail(ErrorCode::Domain, "timeordered_oracle: slice out of range");
    parts.ops.push_back(in.op.compile(sl, lat.slice_dim()));
    parts.slices.push_back(in.t);
    parts.parities.push_back(in.op.parity());
  }
  return parts;
}

}  // namespace

cplx timeordered_oracle(const std::vector<Polynomial>& h, const Lattice& lat, const std::vector<FInsertion>& ins,
                        const std::optional<Mat>& rho) {
  const auto parts = oracle_parts(h, lat, ins);
  Mat prod = parts.u.back() * ordered_heisenberg(parts.u, parts.ops, parts.slices, parts.parities);
  if (rho) prod = prod * (*rho);
  return prod.trace();
}

cplx expectation_oracle(const std::vector<Polynomial>& h, const Lattice& lat, const std::vector<FInsertion>& ins,
                        const Mat& rho) {
  const auto parts = oracle_parts(h, lat, ins);
  return (rho * ordered_heisenberg(parts.u, parts.ops, parts.slices, parts.parities)).trace();
}

cplx anticommutator_recovery(const Algebra& alg, const Vec& psi, const Polynomial& h, int i, int j, int t1,
                             int t2) {
  if (t1 < t2) fail(ErrorCode::Domain, "anticommutator_recovery: requires t1 >= t2");
  const Vec p = psi / psi.norm();
  const Mat proj = alg.embed_matrix(p * p.adjoint(), 0);
  const ActionBundle b = action_bundle({h}, alg);
  const Mat fwd = alg.parity() * proj * b.e_iS_tilde;
  const Mat bwd = alg.parity() * b.e_iS_tilde.inverse() * proj;
  const Mat ai = alg.a_dense(t1, i);
  const Mat aj = alg.a_dense(t2, j).adjoint();
  if (t1 == t2) return (fwd * ai * aj).trace() + (bwd * aj * ai).trace();
  return ((fwd - bwd) * ai * aj).trace();
}

cplx direct_anticommutator(const Vec& psi, const Polynomial& h, int n_sites, int i, int j, int t1, int t2,
                           double epsilon) {
  const Vec p = psi / psi.norm();
  const auto sl = slice_algebra(n_sites);
  const std::size_t dim = std::size_t{1} << n_sites;
  const Mat hm = h.compile(sl, dim);
  auto heis = [&](const Mat& o, int t) {
    return Mat(mat_exp(I_UNIT * (epsilon * t) * hm) * o * mat_exp(-I_UNIT * (epsilon * t) * hm));
  };
  const Mat ai = heis(Mat(sl[i]), t1);
  const Mat aj = heis(Mat(sl[j]).adjoint(), t2);
  return p.dot(anticommutator(ai, aj) * p);
}

Mat fermi_contraction(const Mat& k) {
  if (!is_square(k)) fail(ErrorCode::Dimension, "fermi_contraction: matrix must be square");
  const Mat m = identity(k.rows()) + mat_exp(-k);
  Eigen::FullPivLU<Mat> lu(m);
  if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-14)
    fail(ErrorCode::Singular, "fermi_contraction: I + e^{-K} is singular");
  return lu.inverse();
}

Mat matsubara_twopoint(const Mat& m, int n_slices, double epsilon, int t1, int t2) {
  if (!is_square(m)) fail(ErrorCode::Dimension, "matsubara_twopoint: matrix must be square");
  if (n_slices < 1 || !(epsilon > 0.0)) fail(ErrorCode::Domain, "matsubara_twopoint: need N >= 1 and epsilon > 0");
  const int n = n_slices;
  const double eps = epsilon;
  const double tt = eps * n;
  const auto dim = m.rows();
  const Mat decay = mat_exp(-eps * m);
  Mat acc = Mat::Zero(dim, dim);
  for (int k = 0; k < n; ++k) {
    const double wn = (2.0 * k + 1.0) * kPi / tt;
    Mat factor = identity(dim) - std::exp(I_UNIT * eps * wn) * decay;
    Eigen::PartialPivLU<Mat> lu(factor);
    if (std::abs(lu.determinant()) < 1e-14)
      fail(ErrorCode::Singular, "matsubara_twopoint: singular frequency factor");
    acc += std::exp(-I_UNIT * (eps * wn * (t1 - t2))) * lu.inverse();
  }
  return acc / static_cast<double>(n);
}

Mat thermal_twopoint(const Mat& m, double beta, double tau1, double tau2) {
  Eigen::ComplexEigenSolver<Mat> es(m);
  const Mat& u = es.eigenvectors();
  const auto n = m.rows();
  Vec g(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx lam = es.eigenvalues()(k);
    const cplx occ = 1.0 / (std::exp(beta * lam) + 1.0);
    const cplx prop = std::exp(-lam * (tau1 - tau2));
    g(k) = tau1 >= tau2 ? prop * (1.0 - occ) : -prop * occ;
  }
  return u * g.asDiagonal() * u.inverse();
}

Polynomial quadratic(const Mat& m) {
  std::vector<Monomial> terms;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != cplx(0.0))
        terms.push_back({m(i, j), {{true, static_cast<int>(i)}, {false, static_cast<int>(j)}}});
  return Polynomial(std::move(terms));
}

Mat thermal_twopoint_fock(const Mat& m, double beta, double tau1, double tau2) {
  const int l = static_cast<int>(m.rows());
  const auto sl = slice_algebra(l);
  const std::size_t dim = std::size_t{1} << l;
  const Mat h = quadratic(m).compile(sl, dim);
  const Mat rho = mat_exp(-beta * h);
  const cplx z = rho.trace();
  auto euclid = [&](const Mat& o, double tau) { return Mat(mat_exp(tau * h) * o * mat_exp(-tau * h)); };
  Mat out(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      const Mat ai = euclid(Mat(sl[i]), tau1);
      const Mat aj = euclid(Mat(sl[j]).adjoint(), tau2);
      out(i, j) = tau1 >= tau2 ? (rho * ai * aj).trace() / z : -(rho * aj * ai).trace() / z;
    }
  return out;
}

Mat sector_projector(const Algebra& alg, int m) {
  const Lattice& lat = alg.lattice();
  if (m < 0 || m > lat.n_sites()) fail(ErrorCode::Domain, "sector_projector: particle number out of range");
  const int target = m * lat.n_slices();
  Mat q = Mat::Zero(alg.dim(), alg.dim());
  for (std::size_t s = 0; s < alg.dim(); ++s)
    if (__builtin_popcountll(s) == target) q(s, s) = 1.0;
  return q;
}

Mat slice_sector_projector(int n_sites, int m) {
  const std::size_t dim = std::size_t{1} << n_sites;
  Mat q = Mat::Zero(dim, dim);
  for (std::size_t s = 0; s < dim; ++s)
    if (__builtin_popcountll(s) == m) q(s, s) = 1.0;
  return q;
}

CompositeResult composite_correlator(const Mat& hb, const Polynomial& hf, const std::vector<Coupling>& hint,
                                     const std::vector<CompositeInsertion>& ins, const Lattice& lat_b,
                                     const Lattice& lat_f) {
  if (lat_b.statistics() != Statistics::BosonLike) fail(ErrorCode::Domain, "composite: first lattice must be boson-like");
  check_fermion(lat_f, "composite");
  if (lat_b.n_slices() != lat_f.n_slices() || lat_b.epsilon() != lat_f.epsilon())
    fail(ErrorCode::Domain, "composite: lattices must share slices and spacing");
  check_even(hf, "composite");
  for (const auto& c : hint) check_even(c.fermion, "composite");
  check_dim(lat_b.extended_dim() * lat_f.extended_dim(), "composite");

  const int n = lat_b.n_slices();
  const double eps = lat_b.epsilon();
  const Algebra alg(lat_f);
  const std::size_t db = lat_b.extended_dim(), df = alg.dim();
  const Mat ib = identity(db), iff = identity(df);

  auto joint_slice = [&](const Mat& b, const Polynomial& f, int t) {
    const Mat bm = b.size() == 0 ? ib : embed_at_slice(b, t, lat_b);
    return kron(bm, alg.compile(f, t));
  };

  Mat evol = identity(db * df);
  for (int t = 0; t < n; ++t) {
    Mat ht = kron(embed_at_slice(hb, t, lat_b), iff) + kron(ib, alg.compile(hf, t));
    for (const auto& c : hint) ht += joint_slice(c.boson, c.fermion, t);
    evol = evol * mat_exp(-I_UNIT * eps * ht);
  }
  const Mat e_iS = kron(boson::time_translation(lat_b), translation_generator(alg).unitary) * evol;
  Mat prod = kron(ib, alg.parity()) * e_iS;
  for (const auto& in : ins) prod = prod * joint_slice(in.boson, in.fermion, in.t);

  // Oracle in h_B (x) h_F.
  const auto sl = slice_algebra(lat_f.n_sites());
  const std::size_t sb = lat_b.slice_dim(), sf = lat_f.slice_dim();
  const Mat isb = identity(sb), isf = identity(sf);
  Mat h = kron(hb, isf) + kron(isb, hf.compile(sl, sf));
  for (const auto& c : hint) h += kron(c.boson.size() == 0 ? isb : c.boson, c.fermion.compile(sl, sf));
  std::vector<Mat> hs(n, h);
  const auto u = slice_evolutions(hs, eps);
  std::vector<Mat> ops;
  std::vector<int> slices, parities;
  for (const auto& in : ins) {
    ops.push_back(kron(in.boson.size() == 0 ? isb : in.boson, in.fermion.compile(sl, sf)));
    slices.push_back(in.t);
    parities.push_back(in.fermion.parity());
  }
  const Mat oracle = u.back() * ordered_heisenberg(u, ops, slices, parities);
  return {prod.trace(), oracle.trace()};
}

}  // namespace stqm::fermion
