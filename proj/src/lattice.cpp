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

#include "lattice.hpp"

#include <cmath>
#include <string>

namespace stqm {

Lattice::Lattice(int n, int l, double eps, int d, Statistics s)
    : n_slices_(n), n_sites_(l), epsilon_(eps), local_dim_(d), statistics_(s) {
  if (n < 1 || l < 1) fail(ErrorCode::Domain, "lattice: need at least one slice and one site");
  if (!(eps > 0.0) || !std::isfinite(eps)) fail(ErrorCode::Domain, "lattice: spacing must be positive");
  if (d < 1) fail(ErrorCode::Domain, "lattice: local dimension must be positive");
  double slice = std::pow(static_cast<double>(d), l);
  double ext = std::pow(slice, n);
  if (ext > static_cast<double>(max_dim()))
    fail(ErrorCode::Cap, "lattice: extended dimension " + std::to_string(static_cast<long double>(ext)) +
                             " exceeds cap " + std::to_string(max_dim()));
  slice_dim_ = static_cast<std::size_t>(std::llround(slice));
  extended_dim_ = static_cast<std::size_t>(std::llround(ext));
}

Lattice Lattice::boson(int n_slices, int n_sites, double epsilon, int local_dim) {
  return Lattice(n_slices, n_sites, epsilon, local_dim, Statistics::BosonLike);
}

Lattice Lattice::fermion(int n_slices, int n_sites, double epsilon) {
  return Lattice(n_slices, n_sites, epsilon, 2, Statistics::Fermion);
}

std::size_t flat_index(ModeIndex m, const Lattice& lat) {
  if (m.t < 0 || m.t >= lat.n_slices() || m.i < 0 || m.i >= lat.n_sites())
    fail(ErrorCode::Domain, "flat_index: mode out of range");
  return static_cast<std::size_t>(m.t) * lat.n_sites() + m.i;
}

ModeIndex mode_index(std::size_t k, const Lattice& lat) {
  if (k >= static_cast<std::size_t>(lat.n_modes())) fail(ErrorCode::Domain, "mode_index: out of range");
  return {static_cast<int>(k / lat.n_sites()), static_cast<int>(k % lat.n_sites())};
}

std::vector<double> matsubara_frequencies(const Lattice& lat) {
  const int n = lat.n_slices();
  const double tt = lat.total_time();
  std::vector<double> w(n);
  for (int k = 0; k < n; ++k)
    w[k] = lat.statistics() == Statistics::Fermion ? (2.0 * k + 1.0) * kPi / tt : 2.0 * kPi * k / tt;
  return w;
}

Mat fourier_in_time(const Lattice& lat) {
  const int n = lat.n_slices();
  const auto w = matsubara_frequencies(lat);
  Mat f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k)
    for (int t = 0; t < n; ++t) f(k, t) = norm * std::exp(I_UNIT * (lat.epsilon() * w[k] * t));
  return f;
}

Mat embed_at_slice(const Mat& op, int t, const Lattice& lat) {
  if (lat.statistics() == Statistics::Fermion)
    fail(ErrorCode::Domain,
         "embed_at_slice: tensor embedding is not available for fermions; build slice operators from "
         "the Jordan-Wigner ladder instead");
  if (static_cast<std::size_t>(op.rows()) != lat.slice_dim() || !is_square(op))
    fail(ErrorCode::Dimension, "embed_at_slice: operator does not match slice dimension");
  if (t < 0 || t >= lat.n_slices()) fail(ErrorCode::Domain, "embed_at_slice: slice out of range");
  const std::size_t left = static_cast<std::size_t>(std::pow(lat.slice_dim(), t));
  const std::size_t right = static_cast<std::size_t>(std::pow(lat.slice_dim(), lat.n_slices() - 1 - t));
  return kron(kron(identity(left), op), identity(right));
}

}  // namespace stqm
