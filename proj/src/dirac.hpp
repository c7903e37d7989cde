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
#include <vector>

#include "tensor.hpp"

namespace stqm::dirac {

// Dirac representation, signature (+,-,-,-).
struct GammaSet {
  std::array<Mat, 4> gamma;
  std::array<Mat, 3> alpha;
  Mat beta;
};

const GammaSet& gamma_set();
double metric(int mu, int nu);

struct FourMomentum {
  double p0 = 0.0;
  std::array<double, 3> p{};
  double m = 0.0;
  double regulator = -1.0;  // negative selects 1e-6 (m^2 + 1)
};

double energy(const FourMomentum& k);
double effective_regulator(const FourMomentum& k);
// gamma^mu p_mu
Mat slash(const FourMomentum& k);
// alpha . p + beta m
Mat dirac_hamiltonian(const std::array<double, 3>& p, double m);

struct PropagatorReport {
  std::vector<double> taus;
  std::vector<double> errors;  // || tau M(tau) - i (slash p - m)^{-1} ||
  std::vector<double> ratios;  // errors[k+1] / errors[k]
  double rational_error;       // (slash p - m)^{-1} against (slash p + m) / (p^2 - m^2), relative to the inverse norm
};

// The mass enters as sqrt(m^2 - i regulator).
PropagatorReport propagator_limit_check(const FourMomentum& k, const std::vector<double>& taus);

struct MatsubaraSum {
  double exact;      // (1/N) sum_n 1 / (1 - e^{i eps w_n - eps lambda})
  double thermal;    // 1 / (1 + e^{-T lambda})
  double continuum;  // 1/2 + (1/T) sum_{symmetric n} 1 / (lambda - i w_n)
};

MatsubaraSum matsubara_fermi_sum(double lambda, double total_time, int n);

struct MatsubaraMatrix {
  Mat exact;
  Mat thermal;  // (I + e^{-T h})^{-1} by eigendecomposition
};

MatsubaraMatrix matsubara_fermi_matrix(const Mat& h, double total_time, int n);

struct SpinorBasis {
  Mat u;  // 4x2, columns u^1, u^2
  Mat v;  // 4x2
  double e;
};

SpinorBasis spinor_basis(const std::array<double, 3>& p, double m);
// (1 / sqrt(2E)) [u_p | v_{-p}]^dagger
Mat bogoliubov_matrix(const std::array<double, 3>& p, double m);

struct BogoliubovReport {
  double unitarity;      // max of ||W^dagger W - I||, ||W W^dagger - I||
  double orthogonality;  // ||u_p^dagger v_{-p}||
  double normalization;  // ||u^dagger u - 2E||, ||v^dagger v - 2E||
  double completeness;   // ||u_p u_p^dagger + v_{-p} v_{-p}^dagger - 2E I||
};

BogoliubovReport bogoliubov_check(const std::array<double, 3>& p, double m);

struct DiagonalizationReport {
  Mat congruence;
  Mat expected;
  double error;
};

DiagonalizationReport action_diagonalization_check(const FourMomentum& k);

}  // namespace stqm::dirac
