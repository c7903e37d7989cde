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

#include "tensor.hpp"

#include <Eigen/Eigenvalues>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

namespace stqm {

namespace {

std::size_t initial_cap() {
  if (const char* env = std::getenv("STQM_MAX_DIM")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 4096;
}

std::atomic<std::size_t>& cap_storage() {
  static std::atomic<std::size_t> cap{initial_cap()};
  return cap;
}

constexpr double kNormalTol = 1e-12;

struct Eig {
  Vec values;
  Mat vectors;
  Mat inverse;
};

Eig eigen_with_condition(const Mat& a, const char* what) {
  Eigen::ComplexEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::Conditioning, std::string(what) + ": eigendecomposition failed");
  Eig out{es.eigenvalues(), es.eigenvectors(), Mat()};
  Eigen::JacobiSVD<Mat> svd(out.vectors);
  const auto& s = svd.singularValues();
  double cond = s(0) / s(s.size() - 1);
  if (!std::isfinite(cond) || cond > 1e10)
    fail(ErrorCode::Conditioning,
         std::string(what) + ": eigenvector condition number " + std::to_string(cond));
  out.inverse = out.vectors.inverse();
  return out;
}

}  // namespace

std::size_t max_dim() { return cap_storage().load(); }

void set_max_dim(std::size_t cap) {
  if (cap == 0) fail(ErrorCode::Config, "dimension cap must be positive");
  cap_storage().store(cap);
}

void check_dim(std::size_t dim, const char* what) {
  if (dim > max_dim())
    fail(ErrorCode::Cap, std::string(what) + ": dimension " + std::to_string(dim) +
                             " exceeds cap " + std::to_string(max_dim()));
}

Mat identity(std::size_t n) { return Mat::Identity(n, n); }

bool is_finite(const Mat& a) { return a.allFinite(); }

bool is_square(const Mat& a) { return a.rows() == a.cols(); }

Mat kron(const Mat& a, const Mat& b) {
  if (!is_square(a) || !is_square(b)) fail(ErrorCode::Dimension, "kron: operands must be square");
  const Eigen::Index na = a.rows(), nb = b.rows();
  // Checked in floating point so that huge products do not wrap around.
  if (static_cast<double>(na) * static_cast<double>(nb) > static_cast<double>(max_dim()))
    fail(ErrorCode::Cap, "kron: dimension " + std::to_string(na) + "x" + std::to_string(nb) +
                             " exceeds cap " + std::to_string(max_dim()));
  Mat out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < na; ++j) out.block(i * nb, j * nb, nb, nb) = a(i, j) * b;
  return out;
}

Mat kron_all(const std::vector<Mat>& factors) {
  if (factors.empty()) return identity(1);
  Mat out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

Mat mat_exp(const Mat& a) {
  if (!is_square(a)) fail(ErrorCode::Dimension, "mat_exp: matrix must be square");
  if (!is_finite(a)) fail(ErrorCode::NonFinite, "mat_exp: non-finite entries");
  if (a.rows() == 0) return a;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() < kNormalTol * scale) {
    Mat h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Vec e = es.eigenvalues().array().exp().cast<cplx>();
    return es.eigenvectors() * e.asDiagonal() * es.eigenvectors().adjoint();
  }
  if ((a + a.adjoint()).cwiseAbs().maxCoeff() < kNormalTol * scale) {
    Mat h = (-0.5 * I_UNIT) * (a - a.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Vec e(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k) e(k) = std::exp(I_UNIT * es.eigenvalues()(k));
    return es.eigenvectors() * e.asDiagonal() * es.eigenvectors().adjoint();
  }
  return a.exp();
}

Mat mat_log(const Mat& a, double cut) {
  if (!is_square(a)) fail(ErrorCode::Dimension, "mat_log: matrix must be square");
  if (!is_finite(a)) fail(ErrorCode::NonFinite, "mat_log: non-finite entries");
  Eig e = eigen_with_condition(a, "mat_log");
  Vec l(e.values.size());
  for (Eigen::Index k = 0; k < l.size(); ++k) {
    cplx z = e.values(k);
    if (std::abs(z) < 1e-14) fail(ErrorCode::Singular, "mat_log: eigenvalue near zero");
    double rel = std::arg(z * std::exp(-I_UNIT * cut));
    // eigenvalues within rounding of the cut land on its closed side
    double ang = rel > 1e-12 ? cut + rel - 2.0 * kPi : cut + rel;
    l(k) = cplx(std::log(std::abs(z)), ang);
  }
  return e.vectors * l.asDiagonal() * e.inverse;
}

Mat mat_log_principal(const Mat& a) { return mat_log(a, kPi); }

Mat mat_sqrt_principal(const Mat& a) {
  if (!is_square(a)) fail(ErrorCode::Dimension, "mat_sqrt: matrix must be square");
  Eig e = eigen_with_condition(a, "mat_sqrt");
  Vec s = e.values.array().sqrt();
  return e.vectors * s.asDiagonal() * e.inverse;
}

cplx pfaffian(const Mat& a) {
  if (!is_square(a)) fail(ErrorCode::Dimension, "pfaffian: matrix must be square");
  const Eigen::Index n = a.rows();
  if (n % 2 != 0) fail(ErrorCode::Dimension, "pfaffian: odd dimension");
  if (n == 0) return 1.0;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    fail(ErrorCode::Domain, "pfaffian: matrix is not antisymmetric");

  // Parlett-Reid: Gauss transformations with pivoting reduce A to
  // tridiagonal skew form; the Pfaffian is the product of A(k, k+1).
  Mat m = a;
  cplx pf = 1.0;
  for (Eigen::Index k = 0; k < n - 1; k += 2) {
    Eigen::Index piv;
    m.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&piv);
    piv += k + 1;
    if (piv != k + 1) {
      m.row(k + 1).swap(m.row(piv));
      m.col(k + 1).swap(m.col(piv));
      pf = -pf;
    }
    if (m(k + 1, k) == cplx(0.0)) return 0.0;
    pf *= m(k, k + 1);
    if (k + 2 < n) {
      const Eigen::Index r = n - k - 2;
      Vec tau = m.row(k).tail(r).transpose() / m(k, k + 1);
      Vec col = m.col(k + 1).tail(r);
      m.bottomRightCorner(r, r) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

Mat partial_trace(const Mat& a, const std::vector<std::size_t>& factor_dims,
                  const std::vector<std::size_t>& keep) {
  if (!is_square(a)) fail(ErrorCode::Dimension, "partial_trace: matrix must be square");
  std::size_t total = 1;
  for (std::size_t d : factor_dims) total *= d;
  if (total != static_cast<std::size_t>(a.rows()))
    fail(ErrorCode::Dimension, "partial_trace: factor dimensions do not match matrix");
  const std::size_t nf = factor_dims.size();
  std::vector<bool> kept(nf, false);
  for (std::size_t k : keep) {
    if (k >= nf) fail(ErrorCode::Dimension, "partial_trace: factor index out of range");
    kept[k] = true;
  }
  // Row-major strides of each factor in the full index.
  std::vector<std::size_t> stride(nf, 1);
  for (std::size_t f = nf; f-- > 1;) stride[f - 1] = stride[f] * factor_dims[f];
  std::vector<std::size_t> kf, tf;
  for (std::size_t f = 0; f < nf; ++f) (kept[f] ? kf : tf).push_back(f);
  std::size_t dk = 1, dt = 1;
  for (std::size_t f : kf) dk *= factor_dims[f];
  for (std::size_t f : tf) dt *= factor_dims[f];

  auto offsets = [&](const std::vector<std::size_t>& fs, std::size_t count) {
    std::vector<std::size_t> off(count, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t rem = idx, o = 0;
      for (std::size_t p = fs.size(); p-- > 0;) {
        std::size_t d = factor_dims[fs[p]];
        o += (rem % d) * stride[fs[p]];
        rem /= d;
      }
      off[idx] = o;
    }
    return off;
  };
  const auto ko = offsets(kf, dk);
  const auto to = offsets(tf, dt);
  Mat out = Mat::Zero(dk, dk);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dk; ++j) {
      cplx s = 0.0;
      for (std::size_t m = 0; m < dt; ++m) s += a(ko[i] + to[m], ko[j] + to[m]);
      out(i, j) = s;
    }
  return out;
}

double schatten_norm(const Mat& a, double p) {
  if (!is_square(a)) fail(ErrorCode::Dimension, "schatten_norm: matrix must be square");
  if (!(p >= 1.0)) fail(ErrorCode::Domain, "schatten_norm: p < 1 is not a norm");
  if (a.rows() == 0) return 0.0;
  Eigen::BDCSVD<Mat> svd(a);
  const Eigen::VectorXd& s = svd.singularValues();
  if (std::isinf(p)) return s(0);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) acc += std::pow(s(k), p);
  return std::pow(acc, 1.0 / p);
}

double max_abs(const Mat& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

Mat anticommutator(const Mat& a, const Mat& b) { return a * b + b * a; }

}  // namespace stqm
