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

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "error.hpp"

namespace stqm {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr cplx I_UNIT{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;

// Global cap on operator dimension. Initialized from STQM_MAX_DIM when set.
std::size_t max_dim();
void set_max_dim(std::size_t cap);
void check_dim(std::size_t dim, const char* what);

Mat identity(std::size_t n);
bool is_finite(const Mat& a);
bool is_square(const Mat& a);

Mat kron(const Mat& a, const Mat& b);
Mat kron_all(const std::vector<Mat>& factors);

// Hermitian and anti-Hermitian inputs go through an eigendecomposition,
// everything else through Pade scaling and squaring.
Mat mat_exp(const Mat& a);

// Logarithm with the branch cut along arg(z) = cut, so arguments lie in
// (cut - 2pi, cut]. cut = pi is the principal branch.
Mat mat_log(const Mat& a, double cut);
Mat mat_log_principal(const Mat& a);

// Principal square root via eigendecomposition (diagonalizable input).
Mat mat_sqrt_principal(const Mat& a);

cplx pfaffian(const Mat& a);

// Keeps the listed factors (ascending order is not required; output keeps
// the original factor order).
Mat partial_trace(const Mat& a, const std::vector<std::size_t>& factor_dims,
                  const std::vector<std::size_t>& keep);

// p = infinity gives the spectral norm.
double schatten_norm(const Mat& a, double p);

double max_abs(const Mat& a);
Mat commutator(const Mat& a, const Mat& b);
Mat anticommutator(const Mat& a, const Mat& b);

}  // namespace stqm
