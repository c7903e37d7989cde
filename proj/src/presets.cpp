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

#include "presets.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "error.hpp"

namespace stqm::presets {

namespace {

struct Parsed {
  std::string name;
  std::string arg;
};

Parsed split(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size())
    fail(ErrorCode::Config, "hamiltonian: expected name:argument, got '" + spec + "'");
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

double number(const std::string& s, const std::string& spec) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::Config, "hamiltonian: bad number in '" + spec + "'");
  }
}

std::uint64_t seed_of(const std::string& s, const std::string& spec) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::Config, "hamiltonian: bad seed in '" + spec + "'");
  }
}

std::vector<std::string> split_terms(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

// Diagonal "Z" for a qudit: evenly spaced from 1 to -1.
Mat qudit_z(int d) {
  Mat z = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) z(k, k) = d == 1 ? 0.0 : 1.0 - 2.0 * k / (d - 1);
  return z;
}

Mat pauli_char(char c) {
  Mat s = Mat::Zero(2, 2);
  switch (c) {
    case 'X': s << 0, 1, 1, 0; break;
    case 'Y': s << 0, -I_UNIT, I_UNIT, 0; break;
    case 'Z': s << 1, 0, 0, -1; break;
    case 'I': s << 1, 0, 0, 1; break;
    default: fail(ErrorCode::Config, std::string("hamiltonian: unknown Pauli '") + c + "'");
  }
  return s;
}

Mat site_op(const Mat& op, int site, int n_sites, int d) {
  std::vector<Mat> f(n_sites, identity(d));
  f[site] = op;
  return kron_all(f);
}

Mat xy_chain(int n_sites, double t) {
  Mat h = Mat::Zero(std::size_t{1} << n_sites, std::size_t{1} << n_sites);
  for (int i = 0; i + 1 < n_sites; ++i) {
    const Mat x = site_op(pauli_char('X'), i, n_sites, 2) * site_op(pauli_char('X'), i + 1, n_sites, 2);
    const Mat y = site_op(pauli_char('Y'), i, n_sites, 2) * site_op(pauli_char('Y'), i + 1, n_sites, 2);
    h -= 0.5 * t * (x + y);
  }
  return h;
}

Polynomial hopping(int n_sites, double t) {
  Polynomial h;
  for (int i = 0; i + 1 < n_sites; ++i)
    h = h + (-t) * (Polynomial::create(i) * Polynomial::annihilate(i + 1) +
                    Polynomial::create(i + 1) * Polynomial::annihilate(i));
  return h;
}

}  // namespace

Mat random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  Mat a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = g(rng);
      a(i, j) = cplx(re, g(rng));
    }
  return a;
}

Mat random_hermitian(std::mt19937_64& rng, std::size_t n) {
  const Mat a = random_matrix(rng, n);
  return 0.5 * (a + a.adjoint());
}

Vec random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double re = g(rng);
    v(i) = cplx(re, g(rng));
  }
  return v / v.norm();
}

Mat random_density(std::mt19937_64& rng, std::size_t n) {
  const Mat g = random_matrix(rng, n);
  const Mat r = g * g.adjoint();
  return r / r.trace();
}

Polynomial random_quadratic(std::mt19937_64& rng, int n_sites, bool hermitian) {
  const Mat m = hermitian ? random_hermitian(rng, n_sites) : random_matrix(rng, n_sites);
  Polynomial h;
  for (int i = 0; i < n_sites; ++i)
    for (int j = 0; j < n_sites; ++j) h = h + m(i, j) * (Polynomial::create(i) * Polynomial::annihilate(j));
  // pairing
  const Mat p = random_matrix(rng, n_sites);
  for (int i = 0; i < n_sites; ++i)
    for (int j = i + 1; j < n_sites; ++j) {
      const Polynomial pair = Polynomial::create(i) * Polynomial::create(j);
      h = h + p(i, j) * pair;
      h = h + (hermitian ? std::conj(p(i, j)) : p(j, i)) * pair.adjoint();
    }
  return h;
}

Polynomial random_quartic(std::mt19937_64& rng, int n_sites, bool hermitian) {
  Polynomial h = random_quadratic(rng, n_sites, hermitian);
  std::normal_distribution<double> g;
  for (int i = 0; i < n_sites; ++i)
    for (int j = i + 1; j < n_sites; ++j) {
      const double re = g(rng);
      const cplx v = hermitian ? cplx(re, 0.0) : cplx(re, g(rng));
      h = h + v * (Polynomial::number(i) * Polynomial::number(j));
    }
  if (n_sites >= 4) {
    const double re = g(rng);
    const cplx v(re, g(rng));
    const Polynomial q = Polynomial::create(0) * Polynomial::create(1) * Polynomial::annihilate(2) *
                         Polynomial::annihilate(3);
    h = h + v * q + (hermitian ? std::conj(v) : cplx(g(rng), 0.0)) * q.adjoint();
  }
  return h;
}

Mat qudit_hamiltonian(const std::string& spec, int n_sites, int d) {
  if (n_sites < 1 || d < 1) fail(ErrorCode::Config, "hamiltonian: sites and local dimension must be positive");
  const Parsed p = split(spec);
  const std::size_t dim = static_cast<std::size_t>(std::pow(d, n_sites));
  check_dim(dim, "hamiltonian");
  if (p.name == "zfield") {
    const double lam = number(p.arg, spec);
    Mat h = Mat::Zero(dim, dim);
    for (int i = 0; i < n_sites; ++i) h += lam * site_op(qudit_z(d), i, n_sites, d);
    return h;
  }
  if (p.name == "xyfield" || p.name == "hopping" || p.name == "hubbard" || p.name == "pauli") {
    if (d != 2) fail(ErrorCode::Config, "hamiltonian: " + p.name + " needs local dimension 2");
  }
  if (p.name == "xyfield") {
    const double v = number(p.arg, spec);
    Mat h = Mat::Zero(dim, dim);
    for (int i = 0; i < n_sites; ++i) h += v * site_op(pauli_char('X') + pauli_char('Y'), i, n_sites, 2);
    return h;
  }
  if (p.name == "hopping") return xy_chain(n_sites, number(p.arg, spec));
  if (p.name == "hubbard") {
    const double u = number(p.arg, spec);
    Mat h = xy_chain(n_sites, 1.0);
    const Mat n_op = 0.5 * (identity(2) - pauli_char('Z'));
    for (int i = 0; i + 1 < n_sites; ++i) h += u * site_op(n_op, i, n_sites, 2) * site_op(n_op, i + 1, n_sites, 2);
    return h;
  }
  if (p.name == "random-quadratic" || p.name == "random-quartic") {
    std::mt19937_64 rng(seed_of(p.arg, spec));
    return random_hermitian(rng, dim);
  }
  if (p.name == "pauli") {
    Mat h = Mat::Zero(dim, dim);
    for (const auto& term : split_terms(p.arg)) {
      std::stringstream ts(term);
      std::string tok;
      if (!(ts >> tok)) fail(ErrorCode::Config, "hamiltonian: empty term in '" + spec + "'");
      Mat t = number(tok, spec) * identity(dim);
      while (ts >> tok) {
        if (tok.size() < 2) fail(ErrorCode::Config, "hamiltonian: bad Pauli token '" + tok + "'");
        const int site = static_cast<int>(number(tok.substr(1), spec));
        if (site < 0 || site >= n_sites) fail(ErrorCode::Config, "hamiltonian: site out of range in '" + spec + "'");
        t = t * site_op(pauli_char(tok[0]), site, n_sites, 2);
      }
      h += t;
    }
    return h;
  }
  fail(ErrorCode::Config, "hamiltonian: unknown preset '" + p.name + "'");
}

Polynomial fermion_hamiltonian(const std::string& spec, int n_sites) {
  if (n_sites < 1) fail(ErrorCode::Config, "hamiltonian: sites must be positive");
  const Parsed p = split(spec);
  if (p.name == "zfield") {
    const double lam = number(p.arg, spec);
    Polynomial h;
    for (int i = 0; i < n_sites; ++i) h = h + lam * (Polynomial::constant(1.0) + (-2.0) * Polynomial::number(i));
    return h;
  }
  if (p.name == "xyfield")
    fail(ErrorCode::Parity, "hamiltonian: xyfield is parity odd and has no fermionic counterpart");
  if (p.name == "hopping") return hopping(n_sites, number(p.arg, spec));
  if (p.name == "hubbard") {
    const double u = number(p.arg, spec);
    Polynomial h = hopping(n_sites, 1.0);
    for (int i = 0; i + 1 < n_sites; ++i) h = h + u * (Polynomial::number(i) * Polynomial::number(i + 1));
    return h;
  }
  if (p.name == "random-quadratic") {
    std::mt19937_64 rng(seed_of(p.arg, spec));
    return random_quadratic(rng, n_sites);
  }
  if (p.name == "random-quartic") {
    std::mt19937_64 rng(seed_of(p.arg, spec));
    return random_quartic(rng, n_sites);
  }
  if (p.name == "poly") {
    std::vector<Monomial> terms;
    for (const auto& term : split_terms(p.arg)) {
      std::stringstream ts(term);
      std::string tok;
      if (!(ts >> tok)) fail(ErrorCode::Config, "hamiltonian: empty term in '" + spec + "'");
      Monomial m{number(tok, spec), {}};
      while (ts >> tok) {
        if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-'))
          fail(ErrorCode::Config, "hamiltonian: bad ladder token '" + tok + "'");
        const int site = static_cast<int>(number(tok.substr(1), spec));
        if (site < 0 || site >= n_sites) fail(ErrorCode::Config, "hamiltonian: site out of range in '" + spec + "'");
        m.ops.push_back({tok[0] == '+', site});
      }
      terms.push_back(m);
    }
    Polynomial h(std::move(terms));
    if (!h.is_even()) fail(ErrorCode::Parity, "hamiltonian: polynomial is not parity even");
    return h;
  }
  fail(ErrorCode::Config, "hamiltonian: unknown preset '" + p.name + "'");
}

}  // namespace stqm::presets
