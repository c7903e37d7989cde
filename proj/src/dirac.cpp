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

#include "dirac.hpp"

#include <cmath>

#include "error.hpp"

namespace stqm::dirac {

namespace {

Mat sigma(int k) {
  Mat s = Mat::Zero(2, 2);
  if (k == 1) s << 0, 1, 1, 0;
  if (k == 2) s << 0, -I_UNIT, I_UNIT, 0;
  if (k == 3) s << 1, 0, 0, -1;
  return s;
}

Mat blocks(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
  Mat m(4, 4);
  m << a, b, c, d;
  return m;
}

GammaSet build() {
  GammaSet g;
  const Mat id = identity(2), z = Mat::Zero(2, 2);
  g.gamma[0] = blocks(id, z, z, -id);
  for (int k = 1; k <= 3; ++k) {
    g.gamma[k] = blocks(z, sigma(k), -sigma(k), z);
    g.alpha[k - 1] = g.gamma[0] * g.gamma[k];
  }
  g.beta = g.gamma[0];
  return g;
}

Mat sigma_dot(const std::array<double, 3>& p) {
  Mat s = Mat::Zero(2, 2);
  for (int k = 0; k < 3; ++k) s += p[k] * sigma(k + 1);
  return s;
}

double norm(const Mat& a) { return a.norm(); }

}  // namespace

const GammaSet& gamma_set() {
  static const GammaSet g = build();
  return g;
}

double metric(int mu, int nu) {
  if (mu != nu) return 0.0;
  return mu == 0 ? 1.0 : -1.0;
}

double energy(const FourMomentum& k) {
  return std::sqrt(k.p[0] * k.p[0] + k.p[1] * k.p[1] + k.p[2] * k.p[2] + k.m * k.m);
}

double effective_regulator(const FourMomentum& k) {
  return k.regulator < 0.0 ? 1e-6 * (k.m * k.m + 1.0) : k.regulator;
}

Mat slash(const FourMomentum& k) {
  const GammaSet& g = gamma_set();
  Mat s = k.p0 * g.gamma[0];
  for (int i = 0; i < 3; ++i) s -= k.p[i] * g.gamma[i + 1];
  return s;
}

Mat dirac_hamiltonian(const std::array<double, 3>& p, double m) {
  const GammaSet& g = gamma_set();
  Mat h = m * g.beta;
  for (int i = 0; i < 3; ++i) h += p[i] * g.alpha[i];
  return h;
}

PropagatorReport propagator_limit_check(const FourMomentum& k, const std::vector<double>& taus) {
  const GammaSet& g = gamma_set();
  const cplx m2 = cplx(k.m * k.m, -effective_regulator(k));
  const cplx mass = std::sqrt(m2);
  const double p2 = k.p0 * k.p0 - k.p[0] * k.p[0] - k.p[1] * k.p[1] - k.p[2] * k.p[2];
  if (std::abs(p2 - m2) < 1e-14) fail(ErrorCode::Singular, "propagator_limit_check: on-shell momentum");
  const Mat id = identity(4);
  const Mat op = slash(k) - mass * id;
  const Mat inv = op.inverse();
  PropagatorReport r;
  r.rational_error = norm(inv - (slash(k) + mass * id) / (p2 - m2)) / std::max(1.0, norm(inv));
  const Mat target = I_UNIT * inv;
  for (double tau : taus) {
    if (!(tau > 0.0)) fail(ErrorCode::Domain, "propagator_limit_check: tau must be positive");
    const Mat m = (id - mat_exp(I_UNIT * tau * g.gamma[0] * op)).inverse() * g.gamma[0];
    r.taus.push_back(tau);
    r.errors.push_back(norm(tau * m - target));
  }
  for (std::size_t i = 1; i < r.errors.size(); ++i) r.ratios.push_back(r.errors[i] / r.errors[i - 1]);
  return r;
}

MatsubaraSum matsubara_fermi_sum(double lambda, double total_time, int n) {
  if (n < 1) fail(ErrorCode::Domain, "matsubara_fermi_sum: need at least one slice");
  if (!(total_time > 0.0)) fail(ErrorCode::Domain, "matsubara_fermi_sum: total time must be positive");
  const double eps = total_time / n;
  cplx exact = 0.0, cont = 0.0;
  for (int k = 0; k < n; ++k) {
    const double w = (2.0 * k + 1.0) * kPi / total_time;
    exact += 1.0 / (1.0 - std::exp(I_UNIT * eps * w - eps * lambda));
  }
  for (int k = -n / 2; k < n - n / 2; ++k) {
    const double w = (2.0 * k + 1.0) * kPi / total_time;
    cont += 1.0 / (lambda - I_UNIT * w);
  }
  return {exact.real() / n, 1.0 / (1.0 + std::exp(-total_time * lambda)), 0.5 + cont.real() / total_time};
}

MatsubaraMatrix matsubara_fermi_matrix(const Mat& h, double total_time, int n) {
  if (n < 1) fail(ErrorCode::Domain, "matsubara_fermi_matrix: need at least one slice");
  const double eps = total_time / n;
  const Mat id = identity(h.rows());
  const Mat step = mat_exp(-eps * h);
  MatsubaraMatrix r;
  r.exact = Mat::Zero(h.rows(), h.cols());
  for (int k = 0; k < n; ++k) {
    const double w = (2.0 * k + 1.0) * kPi / total_time;
    r.exact += (id - std::exp(I_UNIT * eps * w) * step).inverse();
  }
  r.exact /= static_cast<double>(n);
  Eigen::ComplexEigenSolver<Mat> es(h);
  const Mat vecs = es.eigenvectors();
  Vec f(h.rows());
  for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = 1.0 / (1.0 + std::exp(-total_time * es.eigenvalues()(i)));
  r.thermal = vecs * f.asDiagonal() * vecs.inverse();
  return r;
}

SpinorBasis spinor_basis(const std::array<double, 3>& p, double m) {
  const double e = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + m * m);
  if (!(e > 0.0)) fail(ErrorCode::Singular, "spinor_basis: zero energy mode");
  if (m < 0.0) fail(ErrorCode::Domain, "spinor_basis: negative mass");
  const double a = std::sqrt(e + m);
  const Mat sp = sigma_dot(p);
  const Mat id = identity(2);
  SpinorBasis s;
  s.e = e;
  s.u = Mat(4, 2);
  s.u << a * id, sp / a;
  s.v = Mat(4, 2);
  s.v << sp / a, a * id;
  return s;
}

Mat bogoliubov_matrix(const std::array<double, 3>& p, double m) {
  const SpinorBasis up = spinor_basis(p, m);
  const SpinorBasis vm = spinor_basis({-p[0], -p[1], -p[2]}, m);
  Mat w(4, 4);
  w << up.u, vm.v;
  return w.adjoint() / std::sqrt(2.0 * up.e);
}

BogoliubovReport bogoliubov_check(const std::array<double, 3>& p, double m) {
  const SpinorBasis up = spinor_basis(p, m);
  const SpinorBasis vm = spinor_basis({-p[0], -p[1], -p[2]}, m);
  const Mat w = bogoliubov_matrix(p, m);
  const Mat id4 = identity(4), id2 = identity(2);
  BogoliubovReport r;
  r.unitarity = std::max(norm(w.adjoint() * w - id4), norm(w * w.adjoint() - id4));
  r.orthogonality = norm(up.u.adjoint() * vm.v);
  r.normalization = std::max(norm(up.u.adjoint() * up.u - 2.0 * up.e * id2), norm(up.v.adjoint() * up.v - 2.0 * up.e * id2));
  r.completeness = norm(up.u * up.u.adjoint() + vm.v * vm.v.adjoint() - 2.0 * up.e * id4);
  return r;
}

DiagonalizationReport action_diagonalization_check(const FourMomentum& k) {
  const double e = energy(k);
  const Mat w = bogoliubov_matrix(k.p, k.m);
  DiagonalizationReport r;
  r.congruence = w * (k.p0 * identity(4) - dirac_hamiltonian(k.p, k.m)) * w.adjoint();
  r.expected = Mat::Zero(4, 4);
  r.expected.diagonal() << k.p0 - e, k.p0 - e, k.p0 + e, k.p0 + e;
  r.error = norm(r.congruence - r.expected);
  return r;
}

}  // namespace stqm::dirac
