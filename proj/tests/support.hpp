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

// Independent reference implementations used only by the tests. Nothing
// here calls into the library beyond plain matrix types.

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace testing_support {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat random_matrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double re = g(rng);
      m(i, j) = cplx(re, g(rng));
    }
  return m;
}

inline Mat random_hermitian(std::mt19937_64& rng, int n) {
  const Mat a = random_matrix(rng, n);
  return 0.5 * (a + a.adjoint());
}

inline Mat random_antisymmetric(std::mt19937_64& rng, int n) {
  const Mat a = random_matrix(rng, n);
  return a - a.transpose();
}

// Truncated Taylor series with repeated squaring; fine for moderate norms.
inline Mat taylor_exp(const Mat& a) {
  int squarings = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.1) {
    norm /= 2.0;
    ++squarings;
  }
  const Mat b = a / std::pow(2.0, squarings);
  Mat term = Mat::Identity(a.rows(), a.cols()), sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

// Expansion along the first row; exponential cost, small n only.
inline cplx pfaffian_expansion(const Mat& a) {
  const auto n = a.rows();
  if (n == 0) return 1.0;
  if (n % 2) return 0.0;
  cplx total = 0.0;
  for (Eigen::Index j = 1; j < n; ++j) {
    std::vector<Eigen::Index> rest;
    for (Eigen::Index k = 1; k < n; ++k)
      if (k != j) rest.push_back(k);
    Mat minor(n - 2, n - 2);
    for (std::size_t x = 0; x < rest.size(); ++x)
      for (std::size_t y = 0; y < rest.size(); ++y) minor(x, y) = a(rest[x], rest[y]);
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    total += sign * a(0, j) * pfaffian_expansion(minor);
  }
  return total;
}

inline Mat kron_loops(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Trace over the second factor of a (da x db) bipartite operator.
inline Mat trace_second(const Mat& a, int da, int db) {
  Mat out = Mat::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k) out(i, j) += a(i * db + k, j * db + k);
  return out;
}

inline Mat trace_first(const Mat& a, int da, int db) {
  Mat out = Mat::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += a(k * db + i, k * db + j);
  return out;
}

// Jordan-Wigner annihilators on n modes, mode 0 the most significant bit,
// with the string on lower modes.
inline std::vector<Mat> jordan_wigner(int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  std::vector<Mat> out;
  for (int k = 0; k < n; ++k) {
    Mat a = Mat::Zero(dim, dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
      const int bit = n - 1 - k;
      if (!((s >> bit) & 1)) continue;
      int below = 0;
      for (int q = 0; q < k; ++q) below += (s >> (n - 1 - q)) & 1;
      a(s & ~(Eigen::Index{1} << bit), s) = (below % 2) ? -1.0 : 1.0;
    }
    out.push_back(a);
  }
  return out;
}

inline Mat parity_diagonal(int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Mat p = Mat::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s) p(s, s) = (__builtin_popcountll(static_cast<unsigned long long>(s)) % 2) ? -1.0 : 1.0;
  return p;
}

struct Timed {
  Mat op;
  int t;
  bool odd;
};

// tr[ U^{N - t_1} O_1 U^{t_1 - t_2} ... O_k U^{t_k} (rho) ] with insertions
// stably sorted latest first; odd operators pick up the reordering sign.
inline cplx time_ordered(const Mat& step, int n_slices, std::vector<Timed> ins, const Mat* rho = nullptr) {
  std::vector<std::size_t> order(ins.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return ins[x].t > ins[y].t; });
  double sign = 1.0;
  for (std::size_t x = 0; x < order.size(); ++x)
    for (std::size_t y = x + 1; y < order.size(); ++y)
      if (order[x] > order[y] && ins[order[x]].odd && ins[order[y]].odd) sign = -sign;
  const Eigen::Index d = step.rows();
  auto power = [&](int k) {
    Mat r = Mat::Identity(d, d);
    for (int q = 0; q < k; ++q) r = step * r;
    return r;
  };
  Mat acc = Mat::Identity(d, d);
  int now = n_slices;
  for (std::size_t k : order) {
    acc = acc * power(now - ins[k].t) * ins[k].op;
    now = ins[k].t;
  }
  acc = acc * power(now);
  if (rho) acc = acc * (*rho);
  return sign * acc.trace();
}

}  // namespace testing_support
