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

#include "variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "boson.hpp"

namespace stqm::variational {

namespace {

bool imag_on_lattice(cplx f) { return std::abs(std::remainder(f.imag(), kPi)) < 1e-8; }

cplx trace_product(const Mat& a, const Mat& b) { return (a.transpose().array() * b.array()).sum(); }

}  // namespace

Mat gamma_operator(const GammaSpec& g) {
  if (!is_square(g.k) || g.k.rows() != g.translation.rows())
    fail(ErrorCode::Dimension, "gamma_operator: K and translation differ in size");
  const double scale = std::max(1.0, max_abs(g.k));
  if (max_abs(commutator(g.k, g.translation)) > 1e-10 * scale)
    fail(ErrorCode::Domain, "gamma_operator: K does not commute with the translation");
  Mat base = g.translation;
  if (g.base == Base::Fermion) {
    if (max_abs(commutator(g.k, g.parity)) > 1e-10 * scale)
      fail(ErrorCode::Parity, "gamma_operator: K does not commute with parity");
    base = g.parity * g.translation;
  }
  return base * mat_exp(-g.k);
}

FValue f_functional(const GammaSpec& g, const Mat& hsum) {
  if (!(g.hbar > 0.0)) fail(ErrorCode::Domain, "f_functional: hbar must be positive");
  const Mat gamma = gamma_operator(g);
  const cplx z = gamma.trace();
  if (std::abs(z) < 1e-12) fail(ErrorCode::Singular, "f_functional: degenerate normalization");
  cplx f = trace_product(gamma, hsum - g.hbar * g.k) / z - g.hbar * std::log(z);
  if (g.hbar != 1.0) {
    const Mat base = g.base == Base::Fermion ? Mat(g.parity * g.translation) : g.translation;
    f += (g.hbar - 1.0) * trace_product(gamma, mat_log_principal(base)) / z;
  }
  return {f, imag_on_lattice(f)};
}

double stable_cut(const Mat& a) {
  Eigen::ComplexEigenSolver<Mat> es(a, false);
  std::vector<double> ph;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) ph.push_back(std::arg(es.eigenvalues()(k)));
  std::sort(ph.begin(), ph.end());
  double best_gap = -1.0, cut = kPi;
  for (std::size_t k = 0; k < ph.size(); ++k) {
    const double next = k + 1 < ph.size() ? ph[k + 1] : ph[0] + 2.0 * kPi;
    if (next - ph[k] > best_gap) {
      best_gap = next - ph[k];
      cut = ph[k] + best_gap / 2.0;
    }
  }
  return cut;
}

FValue f_raw(const Mat& gamma, const Mat& e_minus_se, double cut, double hbar) {
  if (std::abs(gamma.trace() - 1.0) > 1e-8) fail(ErrorCode::Domain, "f_raw: operator must have unit trace");
  const cplx z = e_minus_se.trace();
  if (std::abs(z) < 1e-12) fail(ErrorCode::Singular, "f_raw: degenerate normalization");
  const Mat se = -std::log(z) * identity(gamma.rows()) - mat_log(e_minus_se / z, cut);
  const cplx f = trace_product(gamma, se) + hbar * trace_product(gamma, mat_log(gamma, cut));
  return {f, imag_on_lattice(f)};
}

Eigen::VectorXd finite_diff_gradient(const Objective& f, const Eigen::VectorXd& theta0, double h) {
  Eigen::VectorXd g(theta0.size());
  for (Eigen::Index i = 0; i < theta0.size(); ++i) {
    Eigen::VectorXd p = theta0, m = theta0;
    p(i) += h;
    m(i) -= h;
    const double fp = f(p), fm = f(m);
    if (!std::isfinite(fp) || !std::isfinite(fm)) fail(ErrorCode::NonFinite, "finite_diff_gradient: non-finite value");
    g(i) = (fp - fm) / (2.0 * h);
  }
  return g;
}

Eigen::MatrixXd finite_diff_hessian(const Objective& f, const Eigen::VectorXd& theta0, double h) {
  const Eigen::Index n = theta0.size();
  Eigen::MatrixXd hess(n, n);
  auto at = [&](Eigen::Index i, double si, Eigen::Index j, double sj) {
    Eigen::VectorXd p = theta0;
    p(i) += si * h;
    p(j) += sj * h;
    const double v = f(p);
    if (!std::isfinite(v)) fail(ErrorCode::NonFinite, "finite_diff_hessian: non-finite value");
    return v;
  };
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = (at(i, 1, j, 1) - at(i, 1, j, -1) - at(i, -1, j, 1) + at(i, -1, j, -1)) / (4.0 * h * h);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  return hess;
}

Mat pauli(int i) {
  Mat s = Mat::Zero(2, 2);
  switch (i) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -I_UNIT, I_UNIT, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: fail(ErrorCode::Domain, "pauli: index must be 0..3");
  }
  return s;
}

Mat qubit_k(const QubitK& p) {
  const Mat id = pauli(0);
  Mat k = Mat::Zero(4, 4);
  for (int i = 0; i < 3; ++i) k += p.alpha[i] * (kron(pauli(i + 1), id) + kron(id, pauli(i + 1)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double g = 0.5 * (p.gamma[i][j] + p.gamma[j][i]);
      k += g * kron(pauli(i + 1), pauli(j + 1));
    }
  return k;
}

Mat panel_a_k(double alpha, double gamma) {
  QubitK p;
  p.alpha[0] = alpha;
  p.gamma[0][1] = p.gamma[1][0] = gamma;
  return qubit_k(p);
}

Mat panel_b_k(double alpha, double gamma) {
  QubitK p;
  p.alpha[0] = alpha;
  for (int i = 0; i < 3; ++i) p.gamma[i][i] = gamma;
  return qubit_k(p);
}

Mat majorana_k(const MajoranaK& p, const fermion::Algebra& alg) {
  if (alg.lattice().n_slices() != 2 || alg.lattice().n_sites() != 1)
    fail(ErrorCode::Domain, "majorana_k: family is defined for two slices of one site");
  const Mat c1 = alg.majorana(1), c2 = alg.majorana(2), c3 = alg.majorana(3), c4 = alg.majorana(4);
  return p.a12 * I_UNIT * (c1 * c2 + c3 * c4) + p.a13 * I_UNIT * c1 * c3 + p.a14 * I_UNIT * (c1 * c4 + c2 * c3) +
         p.a24 * I_UNIT * c2 * c4 + p.delta * c1 * c2 * c3 * c4;
}

FValue panel_qubit(char panel, double lambda, double alpha, double gamma, double hbar) {
  if (panel != 'a' && panel != 'b') fail(ErrorCode::Domain, "panel_qubit: panel must be a or b");
  static const Mat swap = boson::time_translation(Lattice::boson(2, 1, 1.0, 2));
  const Mat z = pauli(3), id = pauli(0);
  const Mat hsum = lambda * (kron(z, id) + kron(id, z));
  GammaSpec g;
  g.translation = swap;
  g.k = hsum + (panel == 'a' ? panel_a_k(alpha, gamma) : panel_b_k(alpha, gamma));
  g.hbar = hbar;
  return f_functional(g, hsum);
}

namespace {

struct MajoranaSetup {
  fermion::Algebra alg{Lattice::fermion(2, 1, 1.0)};
  Mat translation = fermion::translation_generator(alg).unitary;
  Mat z_sum = -I_UNIT * (alg.majorana(1) * alg.majorana(2) + alg.majorana(3) * alg.majorana(4));
};

const MajoranaSetup& majorana_setup() {
  static const MajoranaSetup s;
  return s;
}

}  // namespace

FValue panel_majorana(double lambda, const MajoranaK& p, double hbar) {
  const MajoranaSetup& s = majorana_setup();
  const Mat hsum = lambda * s.z_sum;
  GammaSpec g;
  g.base = Base::Fermion;
  g.translation = s.translation;
  g.parity = s.alg.parity();
  g.k = hsum + majorana_k(p, s.alg);
  g.hbar = hbar;
  return f_functional(g, hsum);
}

std::vector<SurfacePoint> fig3_grid(char panel, double lambda, int grid, double half_width, double hbar) {
  if (grid < 2) fail(ErrorCode::Domain, "fig3_grid: need at least two grid points");
  const cplx ref = panel_qubit(panel, lambda, 0.0, 0.0, hbar).value;
  std::vector<SurfacePoint> out;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double a = -half_width + 2.0 * half_width * i / (grid - 1);
      const double g = -half_width + 2.0 * half_width * j / (grid - 1);
      out.push_back({lambda, {a, g}, panel_qubit(panel, lambda, a, g, hbar).value, ref});
    }
  return out;
}

std::vector<SurfacePoint> fig3_samples(int samples, std::uint64_t seed, double hbar) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lam(-2.0, 2.0), par(-0.2, 0.2);
  std::vector<SurfacePoint> out;
  for (int s = 0; s < samples; ++s) {
    const double l = lam(rng);
    MajoranaK p;
    p.a13 = par(rng);
    p.a14 = par(rng);
    p.a24 = par(rng);
    out.push_back({l, {p.a13, p.a14, p.a24}, panel_majorana(l, p, hbar).value, panel_majorana(l, {}, hbar).value});
  }
  return out;
}

Eigen::MatrixXd majorana_hessian(double lambda, double h, double hbar) {
  auto f = [lambda, hbar](const Eigen::VectorXd& x) {
    MajoranaK p;
    p.a13 = x(0);
    p.a14 = x(1);
    p.a24 = x(2);
    return panel_majorana(lambda, p, hbar).value.real();
  };
  return finite_diff_hessian(f, Eigen::VectorXd::Zero(3), h);
}

ScalingReport variational_identity_check(const Mat& e_minus_se, const Mat& delta_a,
                                         const std::vector<double>& scales) {
  if (delta_a.rows() != e_minus_se.rows() || !is_square(delta_a))
    fail(ErrorCode::Dimension, "variational_identity_check: perturbation size");
  if (std::abs(delta_a.trace()) > 1e-12 * std::max(1.0, max_abs(delta_a)))
    fail(ErrorCode::Domain, "variational_identity_check: perturbation must be traceless");
  const Mat g0 = e_minus_se / e_minus_se.trace();
  const double cut = stable_cut(g0);
  const cplx f0 = f_raw(g0, e_minus_se, cut).value;
  ScalingReport r{scales, {}, std::numeric_limits<double>::quiet_NaN(), true};
  for (double s : scales) {
    const double d = std::abs(f_raw(g0 + s * delta_a, e_minus_se, cut).value - f0);
    r.deltas.push_back(d);
    if (d != 0.0) r.exact = false;
  }
  if (r.exact || scales.size() < 2) return r;
  // least-squares slope of log delta against log s
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < scales.size(); ++k) {
    mx += std::log(scales[k]);
    my += std::log(r.deltas[k]);
  }
  mx /= scales.size();
  my /= scales.size();
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < scales.size(); ++k) {
    const double dx = std::log(scales[k]) - mx;
    sxy += dx * (std::log(r.deltas[k]) - my);
    sxx += dx * dx;
  }
  r.slope = sxy / sxx;
  return r;
}

}  // namespace stqm::variational
