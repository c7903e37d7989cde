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

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "fermion.hpp"

namespace stqm::variational {

enum class Base { BosonLike, Fermion };

// Gamma = base * e^{-K}, base = translation (qudits) or parity * translation.
struct GammaSpec {
  Base base = Base::BosonLike;
  Mat translation;
  Mat parity;  // read for Base::Fermion
  Mat k;
  double hbar = 1.0;
};

struct FValue {
  cplx value;
  // Im F sits on {0, +-pi} up to 1e-8.
  bool imag_ok;
};

Mat gamma_operator(const GammaSpec& g);

// hsum is the extended operator epsilon * sum_t H_t.
FValue f_functional(const GammaSpec& g, const Mat& hsum);

// Branch cut in the widest gap of the eigenphases of a.
double stable_cut(const Mat& a);

// Tr[G S_E] + hbar Tr[G log G] with S_E = -log(e_minus_se); both logs on the
// given cut. G must have unit trace.
FValue f_raw(const Mat& gamma, const Mat& e_minus_se, double cut, double hbar = 1.0);

using Objective = std::function<double(const Eigen::VectorXd&)>;

Eigen::VectorXd finite_diff_gradient(const Objective& f, const Eigen::VectorXd& theta0, double h = 1e-4);
Eigen::MatrixXd finite_diff_hessian(const Objective& f, const Eigen::VectorXd& theta0, double h = 1e-4);

// Qubit N = 2 families.
struct QubitK {
  std::array<double, 3> alpha{};
  std::array<std::array<double, 3>, 3> gamma{};  // symmetrized on use
};
Mat pauli(int i);  // 0 = identity, 1..3 = X, Y, Z
Mat qubit_k(const QubitK& p);
Mat panel_a_k(double alpha, double gamma);
Mat panel_b_k(double alpha, double gamma);

// Majorana family on N = 2, L = 1: Majoranas c1, c2 on slice 0 and c3, c4 on
// slice 1. Time invariance ties a34 = a12 and a23 = a14.
struct MajoranaK {
  double a12 = 0, a13 = 0, a14 = 0, a24 = 0, delta = 0;
};
Mat majorana_k(const MajoranaK& p, const fermion::Algebra& alg);

// Panel evaluators at H = lambda Z per slice, N = 2, epsilon = 1.
FValue panel_qubit(char panel, double lambda, double alpha, double gamma, double hbar = 1.0);
FValue panel_majorana(double lambda, const MajoranaK& p, double hbar = 1.0);

struct SurfacePoint {
  double lambda;
  std::vector<double> params;
  cplx f;
  cplx reference;
};

// Panels a and b: grid x grid over (alpha, gamma) in [-half_width, half_width].
std::vector<SurfacePoint> fig3_grid(char panel, double lambda, int grid, double half_width, double hbar = 1.0);
// Panel c: samples with alpha12 = 0, (a13, a14, a24) in (-0.2, 0.2), lambda in (-2, 2).
std::vector<SurfacePoint> fig3_samples(int samples, std::uint64_t seed, double hbar = 1.0);
// Hessian of Re F over (a13, a14, a24) at the origin.
Eigen::MatrixXd majorana_hessian(double lambda, double h = 1e-3, double hbar = 1.0);

struct ScalingReport {
  std::vector<double> scales;
  std::vector<double> deltas;
  double slope;  // NaN when every delta vanishes
  bool exact;
};

// |F[G* + s dA] - F[G*]| over the scales, G* = e^{-S_E} / Z.
ScalingReport variational_identity_check(const Mat& e_minus_se, const Mat& delta_a,
                                         const std::vector<double>& scales);

}  // namespace stqm::variational
