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

#include "polynomial.hpp"

#include <algorithm>

namespace stqm {

Polynomial Polynomial::constant(cplx c) { return Polynomial({Monomial{c, {}}}); }
Polynomial Polynomial::annihilate(int site) { return Polynomial({Monomial{1.0, {{false, site}}}}); }
Polynomial Polynomial::create(int site) { return Polynomial({Monomial{1.0, {{true, site}}}}); }
Polynomial Polynomial::number(int site) {
  return Polynomial({Monomial{1.0, {{true, site}, {false, site}}}});
}

int Polynomial::max_site() const {
  int m = -1;
  for (const auto& t : terms_)
    for (const auto& op : t.ops) m = std::max(m, op.site);
  return m;
}

int Polynomial::parity() const {
  bool even = false, odd = false;
  for (const auto& t : terms_) {
    if (t.coef == cplx(0.0)) continue;
    (t.ops.size() % 2 == 0 ? even : odd) = true;
  }
  if (even && odd) return 0;
  return odd ? -1 : 1;
}

Polynomial Polynomial::adjoint() const {
  std::vector<Monomial> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m{std::conj(t.coef), {}};
    for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it) m.ops.push_back({!it->dagger, it->site});
    out.push_back(std::move(m));
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Monomial> out = terms_;
  out.insert(out.end(), o.terms_.begin(), o.terms_.end());
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  std::vector<Monomial> out;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      Monomial m{a.coef * b.coef, a.ops};
      m.ops.insert(m.ops.end(), b.ops.begin(), b.ops.end());
      out.push_back(std::move(m));
    }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(cplx c) const {
  std::vector<Monomial> out = terms_;
  for (auto& t : out) t.coef *= c;
  return Polynomial(std::move(out));
}

Mat Polynomial::compile(const std::vector<SpMat>& ladder, std::size_t dim) const {
  if (max_site() >= static_cast<int>(ladder.size()))
    fail(ErrorCode::Dimension, "polynomial: site index exceeds available modes");
  SpMat acc(dim, dim);
  SpMat id(dim, dim);
  id.setIdentity();
  for (const auto& t : terms_) {
    SpMat prod = id;
    for (const auto& op : t.ops) {
      const SpMat& a = ladder[op.site];
      prod = op.dagger ? SpMat(prod * SpMat(a.adjoint())) : SpMat(prod * a);
    }
    acc += t.coef * prod;
  }
  return Mat(acc);
}

std::vector<SpMat> jw_ladder(int n_modes) {
  if (n_modes < 1) fail(ErrorCode::Domain, "jw_ladder: need at least one mode");
  if (n_modes > 30) fail(ErrorCode::Cap, "jw_ladder: too many modes");
  const std::size_t dim = std::size_t{1} << n_modes;
  check_dim(dim, "jw_ladder");
  std::vector<SpMat> out;
  out.reserve(n_modes);
  for (int k = 0; k < n_modes; ++k) {
    const int shift = n_modes - 1 - k;  // bit of mode k, n_0 most significant
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(dim / 2);
    for (std::size_t s = 0; s < dim; ++s) {
      if (!((s >> shift) & 1u)) continue;
      // Z string over modes 0..k-1.
      const std::size_t higher = s >> (shift + 1);
      const double sign = (__builtin_popcountll(higher) % 2) ? -1.0 : 1.0;
      trip.emplace_back(s & ~(std::size_t{1} << shift), s, sign);
    }
    SpMat a(dim, dim);
    a.setFromTriplets(trip.begin(), trip.end());
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace stqm
