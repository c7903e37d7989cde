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

#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "boson.hpp"
#include "dirac.hpp"
#include "error.hpp"
#include "fermion.hpp"
#include "presets.hpp"
#include "states.hpp"
#include "variational.hpp"
#include "wick.hpp"

namespace stqm::suites {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string pad(int k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d", k);
  return buf;
}

class Params {
 public:
  Params& add(const std::string& k, const std::string& v) {
    if (!s_.empty()) s_ += ';';
    std::string clean = v;
    // keep the CSV column intact
    std::replace(clean.begin(), clean.end(), ',', '|');
    std::replace(clean.begin(), clean.end(), ';', '|');
    s_ += k + '=' + clean;
    return *this;
  }
  Params& add(const std::string& k, int v) { return add(k, std::to_string(v)); }
  Params& add(const std::string& k, double v) { return add(k, fmt(v)); }
  const std::string& str() const { return s_; }

 private:
  std::string s_;
};

class Sink {
 public:
  Sink(const Config& c, std::string suite) : c_(c), suite_(std::move(suite)) {}

  void eq(const std::string& id, const std::string& params, cplx lhs, cplx rhs, double tol) {
    push(id, params, lhs, rhs, std::abs(lhs - rhs), tol, std::nullopt);
  }
  // lhs >= rhs - tol
  void ge(const std::string& id, const std::string& params, double lhs, double rhs, double tol) {
    push(id, params, lhs, rhs, std::max(0.0, rhs - lhs), tol, std::nullopt);
  }
  // lhs <= rhs + tol
  void le(const std::string& id, const std::string& params, double lhs, double rhs, double tol) {
    push(id, params, lhs, rhs, std::max(0.0, lhs - rhs), tol, std::nullopt);
  }
  // lhs < rhs strictly
  void lt(const std::string& id, const std::string& params, double lhs, double rhs) {
    push(id, params, lhs, rhs, std::max(0.0, lhs - rhs), 0.0, lhs < rhs);
  }
  void gt(const std::string& id, const std::string& params, double lhs, double rhs) {
    push(id, params, lhs, rhs, std::max(0.0, rhs - lhs), 0.0, lhs > rhs);
  }

  // Runs one case; exceptions become failing rows.
  void guard(const std::string& id, const std::string& params, const std::function<void()>& f) {
    try {
      f();
    } catch (const std::exception& e) {
      std::string msg = e.what();
      std::replace(msg.begin(), msg.end(), ',', ' ');
      std::replace(msg.begin(), msg.end(), ';', ' ');
      push(id, params.empty() ? "error=" + msg : params + ";error=" + msg, kNaN, kNaN, kNaN, 0.0, false);
    }
  }

  std::vector<Row> rows;

 private:
  void push(const std::string& id, const std::string& params, cplx lhs, cplx rhs, double err, double tol,
            std::optional<bool> pass) {
    const auto fam = c_.tolerances.find(id.substr(0, id.find('/')));
    if (fam != c_.tolerances.end()) tol = fam->second;
    const bool ok = pass.has_value() ? (*pass && std::isfinite(err)) : (std::isfinite(err) && err <= tol);
    rows.push_back({suite_, id, params, lhs, rhs, err, tol, ok});
  }

  const Config& c_;
  std::string suite_;
};

int cases_or(const Config& c, int fallback) { return c.cases < 0 ? fallback : c.cases; }

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double diff(const Mat& a, const Mat& b) { return max_abs(a - b); }

// Greedy matching distance between two eigenvalue multisets.
double spectrum_distance(const Mat& a, const Mat& b) {
  Eigen::ComplexEigenSolver<Mat> ea(a, false), eb(b, false);
  std::vector<cplx> x(ea.eigenvalues().data(), ea.eigenvalues().data() + ea.eigenvalues().size());
  std::vector<cplx> y(eb.eigenvalues().data(), eb.eigenvalues().data() + eb.eigenvalues().size());
  double worst = 0.0;
  for (const cplx& v : x) {
    auto it = std::min_element(y.begin(), y.end(),
                               [&](const cplx& p, const cplx& q) { return std::abs(p - v) < std::abs(q - v); });
    worst = std::max(worst, std::abs(*it - v));
    y.erase(it);
  }
  return worst;
}

std::vector<std::size_t> slice_factors(const Lattice& lat) {
  return std::vector<std::size_t>(lat.n_slices(), lat.slice_dim());
}

// ---------------------------------------------------------------- boson

std::vector<Insertion> random_insertions(std::mt19937_64& rng, const Lattice& lat) {
  std::vector<Insertion> ins;
  for (int t = 0; t < lat.n_slices(); ++t)
    if (uniform(rng, 0, 1) < 0.7) ins.push_back({presets::random_matrix(rng, lat.slice_dim()), t});
  if (ins.empty()) ins.push_back({presets::random_matrix(rng, lat.slice_dim()), uniform_int(rng, 0, lat.n_slices() - 1)});
  std::shuffle(ins.begin(), ins.end(), rng);
  return ins;
}

void verify_boson(const Config& c, Sink& s) {
  std::mt19937_64 rng(c.seed);
  const Lattice lat = Lattice::boson(c.n_slices, c.n_sites, c.epsilon, c.local_dim);
  const Mat h = presets::qudit_hamiltonian(c.hamiltonian, c.n_sites, c.local_dim);
  const std::string base = Params()
                               .add("N", c.n_slices)
                               .add("L", c.n_sites)
                               .add("d", c.local_dim)
                               .add("eps", c.epsilon)
                               .add("H", c.hamiltonian)
                               .str();
  const std::size_t dim = lat.extended_dim();
  const int n = lat.n_slices();

  s.guard("translation/cycle", base, [&] {
    const Mat e = boson::time_translation(lat);
    Mat en = identity(dim);
    for (int t = 0; t < n; ++t) en = e * en;
    s.eq("translation/cycle", base, diff(en, identity(dim)), 0.0, 0.0);
    s.eq("translation/unitary", base, diff(e * e.adjoint(), identity(dim)), 0.0, 0.0);
  });

  s.guard("action/config", base, [&] {
    const ActionBundle b = boson::action_bundle(h, lat);
    const Mat ut = mat_exp(-I_UNIT * lat.total_time() * h);
    s.eq("partition/config", base, b.e_minus_SE.trace(), mat_exp(-lat.total_time() * h).trace(), 1e-10);
    const Mat vinv = b.V.inverse();
    s.eq("factorization/config", base, diff(b.e_iS, embed_at_slice(ut, 0, lat) * vinv * b.translation * b.V), 0.0,
         1e-10);
    s.eq("shifted-action/config", base, diff(b.e_iS_tilde, vinv * b.translation * b.V), 0.0, 1e-10);
    s.eq("shifted-spectrum/config", base, spectrum_distance(b.e_iS_tilde, b.translation), 0.0, 1e-9);

    for (int k = 0; k < 4; ++k) {
      const auto ins = random_insertions(rng, lat);
      const std::string p = Params().add("draw", k).add("insertions", static_cast<int>(ins.size())).str();
      s.eq("free-correlator/config-" + pad(k), base + ";" + p, boson::spacetime_correlator(b.translation, ins, lat),
           boson::timeordered_oracle(Mat::Zero(h.rows(), h.cols()), lat, ins), 1e-10);
      s.eq("action-correlator/config-" + pad(k), base + ";" + p, boson::spacetime_correlator(b.e_iS, ins, lat),
           boson::timeordered_oracle(h, lat, ins), 1e-10);
    }

    const Mat rho = presets::random_density(rng, lat.slice_dim());
    const Mat w = embed_at_slice(rho, 0, lat) * b.e_iS_tilde;
    const cplx z = w.trace();
    for (int t = 0; t < n; ++t) {
      const Mat u = mat_exp(-I_UNIT * (lat.epsilon() * t) * h);
      const Mat reduced = partial_trace(w, slice_factors(lat), {static_cast<std::size_t>(t)}) / z;
      s.eq("rho-t/config-t" + std::to_string(t), base, diff(reduced, u * rho * u.inverse() / rho.trace()), 0.0,
           1e-10);
    }

    const Vec psi = presets::random_vector(rng, lat.slice_dim());
    const Mat pure = psi * psi.adjoint();
    const Mat wp = embed_at_slice(pure, 0, lat) * b.e_iS_tilde;
    for (int t = 0; t < n; ++t) {
      const Mat o = presets::random_hermitian(rng, lat.slice_dim());
      const Vec evolved = mat_exp(-I_UNIT * (lat.epsilon() * t) * h) * psi;
      s.eq("schrodinger/config-t" + std::to_string(t), base,
           boson::spacetime_correlator(wp, {{o, t}}, lat) / wp.trace(), evolved.dot(o * evolved), 1e-10);
    }

    const auto ins = random_insertions(rng, lat);
    s.eq("expectation/config", base, boson::spacetime_correlator(w, ins, lat) / rho.trace(),
         boson::expectation_oracle(h, lat, ins, rho) / rho.trace(), 1e-10);

    for (int t1 = 0; t1 < n; ++t1)
      for (int t2 = 0; t2 <= t1; ++t2) {
        const Mat a = presets::random_matrix(rng, lat.slice_dim());
        const Mat bb = presets::random_matrix(rng, lat.slice_dim());
        const Vec v = presets::random_vector(rng, lat.slice_dim());
        const std::string p = Params().add("t1", t1).add("t2", t2).str();
        s.eq("commutator/config-" + std::to_string(t1) + "-" + std::to_string(t2), base + ";" + p,
             boson::heisenberg_commutator(v, h, a, bb, t1, t2, lat),
             boson::direct_commutator(v, h, a, bb, t1, t2, lat.epsilon()), 1e-10);
      }
  });

  const int total = cases_or(c, 50);
  for (int k = 0; k < total; ++k) {
    const int nn = uniform_int(rng, 2, 4);
    const int d = uniform_int(rng, 2, 3);
    const double eps = uniform(rng, 0.2, 0.7);
    const bool hermitian = k % 2 == 0;
    const Lattice l = Lattice::boson(nn, 1, eps, d);
    const Mat hk = hermitian ? presets::random_hermitian(rng, d) : Mat(0.5 * presets::random_matrix(rng, d));
    const auto ins = random_insertions(rng, l);
    const std::string p = Params()
                              .add("N", nn)
                              .add("d", d)
                              .add("eps", eps)
                              .add("hermitian", hermitian ? 1 : 0)
                              .add("insertions", static_cast<int>(ins.size()))
                              .str();
    s.guard("action-correlator/" + pad(k), p, [&] {
      const ActionBundle b = boson::action_bundle(hk, l);
      s.eq("free-correlator/" + pad(k), p, boson::spacetime_correlator(b.translation, ins, l),
           boson::timeordered_oracle(Mat::Zero(d, d), l, ins), 1e-10);
      s.eq("action-correlator/" + pad(k), p, boson::spacetime_correlator(b.e_iS, ins, l), boson::timeordered_oracle(hk, l, ins),
           1e-10);
      s.eq("shifted-action/" + pad(k), p, diff(b.e_iS_tilde, b.V.inverse() * b.translation * b.V), 0.0, 1e-10);
    });
  }
}

// ---------------------------------------------------------------- fermion

Polynomial random_fermion_insertion(std::mt19937_64& rng, int l) {
  const int i = uniform_int(rng, 0, l - 1), j = uniform_int(rng, 0, l - 1);
  std::normal_distribution<double> g;
  const double re = g(rng);
  const cplx coef(re, g(rng));
  switch (uniform_int(rng, 0, 4)) {
    case 0: return coef * Polynomial::annihilate(i);
    case 1: return coef * Polynomial::create(i);
    case 2: return coef * Polynomial::number(i) + Polynomial::constant(g(rng));
    case 3: return coef * (Polynomial::create(i) * Polynomial::annihilate(j));
    default:
      return coef * (Polynomial::annihilate(i) + Polynomial::create(j) * Polynomial::number(i));
  }
}

std::vector<fermion::FInsertion> random_fermion_insertions(std::mt19937_64& rng, const Lattice& lat, int count) {
  std::vector<fermion::FInsertion> ins;
  for (int k = 0; k < count; ++k)
    ins.push_back({random_fermion_insertion(rng, lat.n_sites()), uniform_int(rng, 0, lat.n_slices() - 1)});
  return ins;
}

void verify_fermion(const Config& c, Sink& s) {
  std::mt19937_64 rng(c.seed);

  for (int nn = 2; nn <= 5; ++nn)
    for (int l = 1; l <= 2; ++l) {
      const std::string p = Params().add("N", nn).add("L", l).str();
      s.guard("parity-trace/N" + std::to_string(nn) + "L" + std::to_string(l), p, [&] {
        const fermion::Algebra alg(Lattice::fermion(nn, l, c.epsilon));
        const Mat e = fermion::translation_generator(alg).unitary;
        s.eq("parity-trace/N" + std::to_string(nn) + "L" + std::to_string(l), p, fermion::spacetime_correlator(alg, e, {}),
             std::pow(2.0, l), 1e-9);
      });
    }

  for (int nn = 2; nn <= 3; ++nn)
    for (int l = 1; l <= 2; ++l) {
      const std::string tag = "N" + std::to_string(nn) + "L" + std::to_string(l);
      s.guard("twopoint/" + tag, Params().add("N", nn).add("L", l).str(), [&] {
        const fermion::Algebra alg(Lattice::fermion(nn, l, c.epsilon));
        const Mat e = fermion::translation_generator(alg).unitary;
        for (int t1 = 0; t1 < nn; ++t1)
          for (int t2 = 0; t2 < nn; ++t2)
            for (int i = 0; i < l; ++i)
              for (int j = 0; j < l; ++j) {
                const std::string p =
                    Params().add("N", nn).add("L", l).add("t1", t1).add("t2", t2).add("i", i).add("j", j).str();
                const std::string id = tag + "-" + std::to_string(t1) + std::to_string(t2) + std::to_string(i) +
                                       std::to_string(j);
                const double expect = (i == j ? std::pow(2.0, l - 1) : 0.0) * (t1 >= t2 ? 1.0 : -1.0);
                s.eq("twopoint/" + id, p,
                     fermion::spacetime_correlator(
                         alg, e, {{Polynomial::annihilate(i), t1}, {Polynomial::create(j), t2}}),
                     expect, 1e-9);
                s.eq("vanishing/aa-" + id, p,
                     fermion::spacetime_correlator(
                         alg, e, {{Polynomial::annihilate(i), t1}, {Polynomial::annihilate(j), t2}}),
                     0.0, 1e-12);
                s.eq("vanishing/cc-" + id, p,
                     fermion::spacetime_correlator(alg, e, {{Polynomial::create(i), t1}, {Polynomial::create(j), t2}}),
                     0.0, 1e-12);
              }
      });
    }

  s.guard("block-swap/N2L1", "N=2;L=1", [&] {
    const fermion::Algebra alg(Lattice::fermion(2, 1, c.epsilon));
    const Mat e = fermion::translation_generator(alg).unitary;
    Mat lit(4, 4);
    lit << 1, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 1;
    s.eq("block-swap/N2L1", "N=2;L=1", diff(e, lit), 0.0, 0.0);
    s.eq("block-swap/exponential", "N=2;L=1", diff(fermion::translation_generator(alg).exponential, lit), 0.0, 1e-12);
    s.eq("block-swap/square-is-parity", "N=2;L=1", diff(e * e, alg.parity()), 0.0, 0.0);
  });

  const Lattice lat = Lattice::fermion(c.n_slices, c.n_sites, c.epsilon);
  const std::string base =
      Params().add("N", c.n_slices).add("L", c.n_sites).add("eps", c.epsilon).add("H", c.hamiltonian).str();
  s.guard("algebra/config", base, [&] {
    const fermion::Algebra alg(lat);
    const int modes = lat.n_modes();
    double worst = 0.0;
    if (modes <= 8)
      for (int k = 0; k < modes; ++k)
        for (int q = 0; q < modes; ++q) {
          const Mat ak = alg.a_dense(k / lat.n_sites(), k % lat.n_sites());
          const Mat aq = alg.a_dense(q / lat.n_sites(), q % lat.n_sites());
          worst = std::max(worst, diff(anticommutator(ak, aq.adjoint()), (k == q ? 1.0 : 0.0) * identity(alg.dim())));
          worst = std::max(worst, max_abs(anticommutator(ak, aq)));
        }
    s.eq("algebra/config", base, worst, 0.0, 1e-13);
    const Mat e = fermion::translation_generator(alg).unitary;
    double shift = 0.0;
    for (int t = 0; t < lat.n_slices(); ++t)
      for (int i = 0; i < lat.n_sites(); ++i) {
        const Mat moved = e * alg.a_dense(t, i) * e.adjoint();
        const Mat target = t + 1 < lat.n_slices() ? alg.a_dense(t + 1, i) : Mat(-alg.a_dense(0, i));
        shift = std::max(shift, diff(moved, target));
      }
    s.eq("boundary/config", base, shift, 0.0, 1e-12);
    const auto tr = fermion::translation_generator(alg);
    s.eq("translation/exponential-config", base, diff(tr.exponential, tr.unitary), 0.0, 1e-10);
    Mat en = identity(alg.dim());
    for (int t = 0; t < lat.n_slices(); ++t) en = tr.unitary * en;
    s.eq("translation/parity-power-config", base, diff(en, alg.parity()), 0.0, 0.0);
  });

  s.guard("action/config", base, [&] {
    const fermion::Algebra alg(lat);
    const Polynomial h = presets::fermion_hamiltonian(c.hamiltonian, c.n_sites);
    const auto sl = fermion::slice_algebra(c.n_sites);
    const Mat hm = h.compile(sl, lat.slice_dim());
    const ActionBundle b = fermion::action_bundle({h}, alg);
    const Mat ut = mat_exp(-I_UNIT * lat.total_time() * hm);
    s.eq("action-factorization/config", base, diff(b.e_iS, alg.embed_matrix(ut, 0) * b.V.inverse() * b.translation * b.V), 0.0,
         1e-10);
    s.eq("thermal/config", base, (b.parity * b.e_minus_SE).trace(), mat_exp(-lat.total_time() * hm).trace(), 1e-9);
    s.eq("shifted-spectrum/config", base, spectrum_distance(b.e_iS_tilde, b.translation), 0.0, 1e-9);
    for (int k = 0; k < 6; ++k) {
      const auto ins = random_fermion_insertions(rng, lat, uniform_int(rng, 1, 4));
      const std::string p = Params().add("draw", k).add("insertions", static_cast<int>(ins.size())).str();
      s.eq("correlations/config-" + pad(k), base + ";" + p, fermion::spacetime_correlator(alg, b.e_iS, ins),
           fermion::timeordered_oracle({h}, lat, ins), 1e-9);
    }
    const Vec psi = presets::random_vector(rng, lat.slice_dim());
    for (int t1 = 0; t1 < lat.n_slices(); ++t1)
      for (int t2 = 0; t2 <= t1; ++t2)
        for (int i = 0; i < lat.n_sites(); ++i)
          for (int j = 0; j < lat.n_sites(); ++j) {
            const std::string p = Params().add("t1", t1).add("t2", t2).add("i", i).add("j", j).str();
            s.eq("anticomm/config-" + std::to_string(t1) + std::to_string(t2) + std::to_string(i) + std::to_string(j),
                 base + ";" + p, fermion::anticommutator_recovery(alg, psi, h, i, j, t1, t2),
                 fermion::direct_anticommutator(psi, h, lat.n_sites(), i, j, t1, t2, lat.epsilon()), 1e-10);
          }
  });

  s.guard("canonical/N3L2", "N=3;L=2;m=1", [&] {
    const Lattice cl = Lattice::fermion(3, 2, 0.4);
    const fermion::Algebra alg(cl);
    Mat m = presets::random_hermitian(rng, 2);
    const Polynomial h = fermion::quadratic(m) + 0.7 * (Polynomial::number(0) * Polynomial::number(1));
    const ActionBundle b = fermion::action_bundle({h}, alg);
    const auto sl = fermion::slice_algebra(2);
    const Mat hm = h.compile(sl, 4);
    const Mat q = fermion::slice_sector_projector(2, 1);
    const cplx rhs = (q * mat_exp(-I_UNIT * cl.total_time() * hm)).trace();
    s.eq("canonical/total", "N=3;L=2;m=1", (b.parity * b.e_iS * fermion::sector_projector(alg, 1)).trace(), rhs, 1e-10);
    Mat per = b.parity * b.e_iS;
    for (int t = 0; t < 3; ++t) per = per * alg.embed_matrix(q, t);
    s.eq("canonical/per-slice", "N=3;L=2;m=1", per.trace(), rhs, 1e-10);
  });

  const int total = cases_or(c, 100);
  for (int k = 0; k < total; ++k) {
    const int nn = uniform_int(rng, 2, 4);
    const int l = uniform_int(rng, 1, 2);
    const double eps = uniform(rng, 0.2, 0.6);
    const int kind = k % 4;  // quadratic, quartic, non-Hermitian quartic, time dependent
    const Lattice kl = Lattice::fermion(nn, l, eps);
    std::vector<Polynomial> h;
    if (kind == 0) h.push_back(presets::random_quadratic(rng, l));
    if (kind == 1) h.push_back(presets::random_quartic(rng, l));
    if (kind == 2) h.push_back(0.5 * presets::random_quartic(rng, l, false));
    if (kind == 3)
      for (int t = 0; t < nn; ++t) h.push_back(presets::random_quartic(rng, l));
    const auto ins = random_fermion_insertions(rng, kl, uniform_int(rng, 1, 4));
    const std::string p = Params()
                              .add("N", nn)
                              .add("L", l)
                              .add("eps", eps)
                              .add("kind", kind)
                              .add("insertions", static_cast<int>(ins.size()))
                              .str();
    s.guard("correlations/" + pad(k), p, [&] {
      const fermion::Algebra alg(kl);
      const ActionBundle b = fermion::action_bundle(h, alg);
      s.eq("correlations/" + pad(k), p, fermion::spacetime_correlator(alg, b.e_iS, ins),
           fermion::timeordered_oracle(h, kl, ins), 1e-9);
      if (kind != 3) {
        const auto sl = fermion::slice_algebra(l);
        const Mat ut = mat_exp(-I_UNIT * kl.total_time() * h[0].compile(sl, kl.slice_dim()));
        s.eq("action-factorization/" + pad(k), p, diff(b.e_iS, alg.embed_matrix(ut, 0) * b.V.inverse() * b.translation * b.V), 0.0,
             1e-9);
      }
    });
  }
}

// ---------------------------------------------------------------- matsubara

void matsubara(const Config& c, Sink& s) {
  std::mt19937_64 rng(c.seed);
  const Mat m = presets::random_hermitian(rng, 2);
  const double beta = 2.0;
  for (int nn : {2, 4, 8}) {
    for (int t1 = 0; t1 < nn; ++t1)
      for (int t2 = 0; t2 < nn; ++t2) {
        const std::string p = Params().add("N", nn).add("beta", beta).add("t1", t1).add("t2", t2).str();
        s.guard("fermi-twopoint/N" + std::to_string(nn) + "-" + std::to_string(t1) + std::to_string(t2), p, [&] {
          const double eps = beta / nn;
          const Mat lhs = fermion::matsubara_twopoint(m, nn, eps, t1, t2);
          const Mat rhs = fermion::thermal_twopoint(m, beta, eps * t1, eps * t2);
          s.eq("fermi-twopoint/N" + std::to_string(nn) + "-" + std::to_string(t1) + std::to_string(t2), p,
               diff(lhs, rhs), 0.0, 1e-11);
        });
      }
  }

  s.guard("fermi-fock/L2", "L=2", [&] {
    const Mat a = fermion::thermal_twopoint(m, beta, 0.7, 0.2), b = fermion::thermal_twopoint_fock(m, beta, 0.7, 0.2);
    s.eq("fermi-fock/forward", "L=2;tau1=0.7;tau2=0.2", diff(a, b), 0.0, 1e-11);
    s.eq("fermi-fock/backward", "L=2;tau1=0.2;tau2=0.7",
         diff(fermion::thermal_twopoint(m, beta, 0.2, 0.7), fermion::thermal_twopoint_fock(m, beta, 0.2, 0.7)), 0.0,
         1e-11);
  });

  s.guard("fermi-extended/N4", "N=4;L=2", [&] {
    const int nn = 4;
    const Lattice lat = Lattice::fermion(nn, 2, beta / nn);
    const fermion::Algebra alg(lat);
    const ActionBundle b = fermion::action_bundle({fermion::quadratic(m)}, alg);
    const cplx z = (b.parity * b.e_minus_SE).trace();
    for (int t1 = 0; t1 < nn; ++t1)
      for (int t2 = 0; t2 < nn; ++t2) {
        const Mat g = fermion::matsubara_twopoint(m, nn, lat.epsilon(), t1, t2);
        double worst = 0.0;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            const cplx ext =
                fermion::spacetime_correlator(alg, b.e_minus_SE, {{Polynomial::annihilate(i), t1}, {Polynomial::create(j), t2}}) / z;
            worst = std::max(worst, std::abs(ext - g(i, j)));
          }
        s.eq("fermi-extended/N4-" + std::to_string(t1) + std::to_string(t2),
             Params().add("N", nn).add("t1", t1).add("t2", t2).str(), worst, 0.0, 1e-10);
      }
  });

  s.guard("fermi-refine/N4", "", [&] {
    const Mat a = fermion::matsubara_twopoint(m, 4, beta / 4, 3, 1);
    const Mat b = fermion::matsubara_twopoint(m, 8, beta / 8, 6, 2);
    s.eq("fermi-refine/N4-N8", "beta=2;tau1=1.5;tau2=0.5", diff(a, b), 0.0, 1e-12);
  });

  for (double lam : {0.0, 1.0, -0.7, 2.5})
    for (double tt : {0.5, 2.0})
      for (int nn : {1, 2, 4, 8, 16}) {
        const std::string p = Params().add("lambda", lam).add("T", tt).add("N", nn).str();
        s.guard("fermi-scalar/" + p, p, [&] {
          const auto r = dirac::matsubara_fermi_sum(lam, tt, nn);
          s.eq("fermi-scalar/" + p, p, r.exact, r.thermal, 1e-12);
        });
      }

  s.guard("fermi-contraction/3x3", "", [&] {
    const Mat k = presets::random_hermitian(rng, 3);
    const Mat lhs = fermion::fermi_contraction(k);
    // brute force tr[e^{-a^dag K a} a_k a_l^dag] / tr[e^{-a^dag K a}]
    const auto sl = fermion::slice_algebra(3);
    const Mat w = mat_exp(-fermion::quadratic(k).compile(sl, 8));
    Mat rhs(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) rhs(i, j) = (w * Mat(sl[i]) * Mat(sl[j]).adjoint()).trace() / w.trace();
    s.eq("fermi-contraction/3x3", "L=3", diff(lhs, rhs), 0.0, 1e-11);
  });

  // bosons
  Mat mb = presets::random_hermitian(rng, 2);
  mb += (1.0 - Eigen::SelfAdjointEigenSolver<Mat>(mb).eigenvalues().minCoeff()) * identity(2);
  const int nb = 4;
  const Lattice lb = Lattice::boson(nb, 1, beta / nb, 2);
  for (int t1 = 0; t1 < nb; ++t1)
    for (int t2 = 0; t2 < nb; ++t2) {
      const std::string id = "bose-twopoint/N4-" + std::to_string(t1) + std::to_string(t2);
      const std::string p = Params().add("N", nb).add("t1", t1).add("t2", t2).str();
      s.guard(id, p, [&] {
        s.eq(id, p,
             diff(boson::matsubara_twopoint(mb, lb, t1, t2),
                  boson::thermal_twopoint(mb, beta, lb.epsilon() * t1, lb.epsilon() * t2)),
             0.0, 1e-10);
      });
    }
  s.guard("bose-contraction/fock", "lambda=1;cutoff=60", [&] {
    Mat one(1, 1);
    one(0, 0) = 1.0;
    s.eq("bose-contraction/fock", "lambda=1;cutoff=60", boson::bose_contraction(one)(0, 0),
         boson::fock_bose_contraction(1.0, 60), 1e-8);
  });
  s.guard("bose-richardson/tau0.5", "", [&] {
    Mat one(1, 1);
    one(0, 0) = 1.0;
    const double tau = 0.5;
    const cplx exact = boson::thermal_twopoint(one, beta, tau, 0.0)(0, 0);
    const double e1 = std::abs(boson::continuum_partial_sum(one, beta, 64, tau)(0, 0) - exact);
    const double e2 = std::abs(boson::continuum_partial_sum(one, beta, 128, tau)(0, 0) - exact);
    s.eq("bose-richardson/tau0.5", "beta=2;terms=64:128", e2 / e1, 0.5, 0.05);
  });
}

// ---------------------------------------------------------------- wick

std::vector<wick::LadderInsertion> random_ladders(std::mt19937_64& rng, const Lattice& lat, int count) {
  std::vector<wick::LadderInsertion> ins;
  for (int k = 0; k < count; ++k)
    ins.push_back({uniform_int(rng, 0, 1) == 1,
                   {uniform_int(rng, 0, lat.n_slices() - 1), uniform_int(rng, 0, lat.n_sites() - 1)}});
  return ins;
}

std::vector<fermion::FInsertion> as_finsertions(const std::vector<wick::LadderInsertion>& ins) {
  std::vector<fermion::FInsertion> out;
  for (const auto& in : ins)
    out.push_back({in.create ? Polynomial::create(in.mode.i) : Polynomial::annihilate(in.mode.i), in.mode.t});
  return out;
}

void wick_suite(const Config& c, Sink& s) {
  std::mt19937_64 rng(c.seed);
  const Lattice lat = Lattice::fermion(3, 2, 0.4);
  const fermion::Algebra alg(lat);
  const Mat m = presets::random_hermitian(rng, 2);
  const Polynomial h = fermion::quadratic(m);
  const ActionBundle b = fermion::action_bundle({h}, alg);
  const ActionBundle bp = fermion::action_bundle({presets::random_quadratic(rng, 2)}, alg);
  struct W {
    const char* name;
    const Mat* w;
  };
  const std::vector<W> weights{{"translation", &b.translation}, {"action", &b.e_iS}, {"euclid", &b.e_minus_SE},
                               {"pairing", &bp.e_iS}};

  for (const auto& w : weights) {
    const std::string p = Params().add("N", 3).add("L", 2).add("weight", w.name).str();
    s.guard(std::string("four-point/") + w.name, p, [&] {
      for (int k = 0; k < 4; ++k) {
        std::vector<wick::LadderInsertion> ins{{false, {uniform_int(rng, 0, 2), uniform_int(rng, 0, 1)}},
                                               {true, {uniform_int(rng, 0, 2), uniform_int(rng, 0, 1)}},
                                               {false, {uniform_int(rng, 0, 2), uniform_int(rng, 0, 1)}},
                                               {true, {uniform_int(rng, 0, 2), uniform_int(rng, 0, 1)}}};
        s.eq(std::string("four-point/") + w.name + "-" + pad(k), p, wick::pfaffian_correlator(alg, *w.w, ins),
             wick::dense_correlator(alg, *w.w, ins), 1e-9);
      }
      for (int k = 0; k < 6; ++k) {
        const auto ins = random_ladders(rng, lat, 6);
        s.eq(std::string("six-point/") + w.name + "-" + pad(k), p, wick::pfaffian_correlator(alg, *w.w, ins),
             wick::dense_correlator(alg, *w.w, ins), 1e-9);
      }
    });
  }

  s.guard("vanishing/annihilators", "", [&] {
    const std::vector<wick::LadderInsertion> ins{{false, {0, 0}}, {false, {1, 1}}, {false, {2, 0}}, {false, {0, 1}}};
    for (const auto& w : weights) {
      if (std::string(w.name) == "pairing") continue;
      const std::string p = Params().add("weight", w.name).str();
      s.eq(std::string("vanishing/pfaffian-") + w.name, p, wick::pfaffian_correlator(alg, *w.w, ins), 0.0, 0.0);
      s.eq(std::string("vanishing/dense-") + w.name, p, wick::dense_correlator(alg, *w.w, ins), 0.0, 1e-12);
    }
    const std::vector<wick::LadderInsertion> odd{{false, {0, 0}}, {true, {1, 1}}, {false, {2, 0}}};
    s.eq("vanishing/odd", "", wick::pfaffian_correlator(alg, b.e_iS, odd), 0.0, 0.0);
  });

  s.guard("oracle/four-point", "", [&] {
    for (int k = 0; k < 4; ++k) {
      const auto ins = random_ladders(rng, lat, k % 2 == 0 ? 4 : 6);
      s.eq("oracle/" + pad(k), Params().add("points", static_cast<int>(ins.size())).str(),
           wick::pfaffian_correlator(alg, b.e_iS, ins), fermion::timeordered_oracle({h}, lat, as_finsertions(ins)),
           1e-9);
    }
  });

  s.guard("reorder/six-point", "", [&] {
    // distinct modes, so every pair anticommutes
    std::vector<wick::LadderInsertion> ins;
    for (int t = 0; t < 3; ++t)
      for (int i = 0; i < 2; ++i) ins.push_back({uniform_int(rng, 0, 1) == 1, {t, i}});
    std::shuffle(ins.begin(), ins.end(), rng);
    std::vector<std::size_t> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<wick::LadderInsertion> moved;
    for (auto k : perm) moved.push_back(ins[k]);
    const Mat cm = wick::contraction_matrix(alg, b.e_iS, ins);
    Mat pm = Mat::Zero(6, 6);
    for (int r = 0; r < 6; ++r) pm(r, perm[r]) = 1.0;
    const Mat moved_c = pm * cm * pm.transpose();
    int inversions = 0;
    for (int x = 0; x < 6; ++x)
      for (int y = x + 1; y < 6; ++y)
        if (perm[x] > perm[y]) ++inversions;
    s.eq("reorder/six-point", "", pfaffian(moved_c), (inversions % 2 ? -1.0 : 1.0) * pfaffian(cm), 1e-12);
    s.eq("reorder/matrix", "", diff(moved_c, wick::contraction_matrix(alg, b.e_iS, moved)), 0.0, 1e-12);
  });
}

// ---------------------------------------------------------------- states

void states_suite(const Config& c, Sink& s) {
  std::mt19937_64 rng(c.seed);
  const Lattice lat = Lattice::boson(c.n_slices, c.n_sites, c.epsilon, c.local_dim);
  const std::string base = Params()
                               .add("N", c.n_slices)
                               .add("L", c.n_sites)
                               .add("d", c.local_dim)
                               .add("eps", c.epsilon)
                               .str();
  const std::size_t sd = lat.slice_dim();
  const int n = lat.n_slices();
  const Mat hpre = presets::qudit_hamiltonian(c.hamiltonian, c.n_sites, c.local_dim);
  const Mat hrand = presets::random_hermitian(rng, sd);
  for (int which = 0; which < 2; ++which) {
    const Mat& h = which == 0 ? hpre : hrand;
    const std::string hname = which == 0 ? "config" : "random";
    for (auto kind : {states::Purification::SameSlice, states::Purification::HalfStep}) {
      const std::string kname = kind == states::Purification::SameSlice ? "same" : "half";
      const std::string tag = hname + "-" + kname;
      const std::string p = base + ";H=" + hname + ";purification=" + kname;
      s.guard("state/" + tag, p, [&] {
        const ActionBundle b = boson::action_bundle(h, lat);
        const Mat rho = presets::random_density(rng, sd) * 2.0;
        const Mat rho0 = embed_at_slice(rho, 0, lat);
        const Mat half = states::half_action_tilde(b, mat_sqrt_principal(b.translation));
        const auto st = states::spacetime_state(b, rho0, kind, half, false);
        s.eq("idempotent/" + tag, p, diff(st.r * st.r, st.r), 0.0, 1e-9);
        s.eq("unit-trace/" + tag, p, st.r.trace(), 1.0, 1e-10);
        const Mat w = rho0 * b.e_iS_tilde;
        s.eq("trace-env/" + tag, p, diff(states::trace_environment(st), w / rho.trace()), 0.0, 1e-10);
        std::vector<std::size_t> dims(n + 1, sd);
        dims.back() = lat.extended_dim();
        for (int t = 0; t < n; ++t) {
          const Mat u = mat_exp(-I_UNIT * (lat.epsilon() * t) * h);
          const Mat red = partial_trace(st.r, dims, {static_cast<std::size_t>(t)});
          s.eq("rho-t/" + tag + "-t" + std::to_string(t), p, diff(red, u * rho * u.adjoint() / rho.trace()), 0.0,
               1e-10);
        }
        const auto ins = random_insertions(rng, lat);
        Mat prod = identity(lat.extended_dim());
        for (const auto& in : ins) prod = prod * embed_at_slice(in.op, in.t, lat);
        s.eq("weak-value/" + tag, p, states::weak_value(st, prod),
             boson::expectation_oracle(h, lat, ins, rho) / rho.trace(), 1e-10);
        s.eq("weak-value-empty/" + tag, p, states::weak_value(st, identity(lat.extended_dim())), 1.0, 1e-12);
        if (which == 1) s.gt("non-hermitian/" + tag, p, diff(st.r, st.r.adjoint()), 1e-6);
      });
    }
  }

  s.guard("choi/config", base, [&] {
    const ActionBundle b = boson::action_bundle(hrand, lat);
    const Mat rho = presets::random_density(rng, sd);
    const Mat w = embed_at_slice(rho, 0, lat) * b.e_iS_tilde;
    std::vector<Insertion> ins;
    std::vector<Mat> daggers;
    for (int t = 0; t < n; ++t) {
      ins.push_back({presets::random_matrix(rng, sd), t});
      daggers.push_back(ins.back().op.adjoint());
    }
    s.eq("choi/correlator", base, states::choi_overlap(kron_all(daggers), w),
         boson::expectation_oracle(hrand, lat, ins, rho), 1e-10);
    s.eq("choi/identity", base, states::choi_overlap(identity(lat.extended_dim()), identity(lat.extended_dim())),
         static_cast<double>(lat.extended_dim()), 1e-12);
    const Mat a = presets::random_matrix(rng, lat.extended_dim());
    const Vec phi = states::phi_plus(lat.extended_dim());
    s.eq("choi/trace", base, phi.dot(kron(a, identity(lat.extended_dim())) * phi), a.trace(), 1e-10);
  });

  // fermions, N = 2, L = 1
  s.guard("fermi-state/N2L1", "N=2;L=1", [&] {
    const Lattice fl = Lattice::fermion(2, 1, 0.6);
    const fermion::Algebra alg(fl);
    const Polynomial h = presets::random_quadratic(rng, 1);
    const ActionBundle b = fermion::action_bundle({h}, alg);
    const auto tr = fermion::translation_generator(alg);
    const Mat half = states::half_action_tilde(b, mat_exp(I_UNIT * (0.5 * fl.epsilon()) * tr.generator));
    const Mat rho0 = alg.embed_matrix(0.3 * identity(2) + 0.9 * Mat(fermion::slice_algebra(1)[0]).adjoint() *
                                                              Mat(fermion::slice_algebra(1)[0]),
                                      0);
    const Mat w = b.parity * rho0 * b.e_iS_tilde;
    for (auto kind : {states::Purification::SameSlice, states::Purification::HalfStep}) {
      const std::string kname = kind == states::Purification::SameSlice ? "same" : "half";
      const auto st = states::spacetime_state(b, rho0, kind, half, true);
      s.eq("fermi-idempotent/" + kname, "N=2;L=1", diff(st.r * st.r, st.r), 0.0, 1e-9);
      for (int k = 0; k < 4; ++k) {
        // even extended observable
        const Mat o = alg.a_dense(uniform_int(rng, 0, 1), 0) * alg.a_dense(uniform_int(rng, 0, 1), 0).adjoint() +
                      presets::random_matrix(rng, 1)(0, 0) * alg.a_dense(1, 0).adjoint() * alg.a_dense(0, 0);
        s.eq("fermi-weak-value/" + kname + "-" + pad(k), "N=2;L=1", states::weak_value(st, o), (w * o).trace() / w.trace(),
             1e-9);
      }
    }
  });

  s.guard("fermi-choi/modes2", "modes=2", [&] {
    const Mat par = fermion::number_parity(2);
    auto random_even = [&] {
      const Mat a = presets::random_matrix(rng, 4);
      return Mat(0.5 * (a + par * a * par));
    };
    for (int k = 0; k < 3; ++k) {
      const Mat bm = random_even(), cm = random_even(), om = random_even();
      s.eq("fermi-choi/" + pad(k), "modes=2", states::choi_element_fermion(cm, om, bm, 2),
           (bm * cm.adjoint() * om).trace(), 1e-10);
      s.eq("fermi-choi-overlap/" + pad(k), "modes=2", states::choi_element_fermion(cm, identity(4), bm, 2),
           states::choi_overlap(cm, bm), 1e-10);
    }
    const Vec one = states::phi_plus_fermion(1);
    Vec expect = Vec::Zero(4);
    expect(0) = 1.0;
    expect(3) = 1.0;
    s.eq("fermi-choi/single-mode", "modes=1", diff(one, expect), 0.0, 0.0);
  });

  s.guard("mode-rdm/4modes", "modes=4;keep=3:1", [&] {
    const Vec psi = presets::random_vector(rng, 16);
    const std::vector<int> keep{3, 1};
    const Mat rdm = states::fermionic_mode_rdm(psi, 4, keep);
    const auto full = jw_ladder(4);
    const auto local = jw_ladder(2);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      Polynomial o;
      std::normal_distribution<double> g;
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          const double re = g(rng);
          o = o + cplx(re, g(rng)) * (Polynomial::create(x) * Polynomial::annihilate(y));
        }
      const double re = g(rng);
      o = o + cplx(re, g(rng)) * (Polynomial::create(0) * Polynomial::create(1)) + Polynomial::constant(g(rng));
      // site x of the reduced state is mode keep[x] of the full state
      std::vector<SpMat> mapped{full[keep[0]], full[keep[1]]};
      const cplx direct = psi.dot(o.compile(mapped, 16) * psi);
      worst = std::max(worst, std::abs(direct - (rdm * o.compile(local, 4)).trace()));
    }
    s.eq("mode-rdm/4modes", "modes=4;keep=3:1", worst, 0.0, 1e-11);
  });

  const Lattice l2 = Lattice::boson(2, 1, c.epsilon, c.local_dim);
  const std::size_t d = c.local_dim;
  s.guard("t-ab/N2", "N=2", [&] {
    const Mat h = presets::random_hermitian(rng, d);
    const Mat u = mat_exp(-I_UNIT * l2.epsilon() * h);
    const Mat rho = presets::random_density(rng, d);
    const ActionBundle b = boson::action_bundle(h, l2);
    const Mat tab = states::t_ab(rho, u);
    const Mat w = embed_at_slice(rho, 0, l2) * b.e_iS_tilde;
    s.eq("t-ab/adjoint", "N=2", diff(tab, w.adjoint()), 0.0, 1e-12);
    const Mat oa = presets::random_matrix(rng, d), ob = presets::random_matrix(rng, d);
    s.eq("t-ab/wightman", "N=2", (tab * kron(oa, ob)).trace(), (rho * oa * u.adjoint() * ob * u).trace(), 1e-12);
    s.eq("t-ab/wightman-adjoint", "N=2", (tab.adjoint() * kron(oa, ob)).trace(),
         (rho * u.adjoint() * ob * u * oa).trace(), 1e-12);
    s.eq("t-ab/free", "N=2", diff(states::t_ab(rho, identity(d)), boson::time_translation(l2) * kron(rho, identity(d))),
         0.0, 1e-14);
  });

  s.guard("imagitivity/N2", "N=2", [&] {
    const Mat rho = presets::random_density(rng, d);
    const ActionBundle b0 = boson::action_bundle(Mat::Zero(d, d), l2);
    const Mat w0 = embed_at_slice(rho, 0, l2) * b0.e_iS_tilde;
    const std::vector<std::size_t> dims{d, d};
    const ActionBundle b = boson::action_bundle(presets::random_hermitian(rng, d), l2);
    const Mat w = embed_at_slice(rho, 0, l2) * b.e_iS_tilde;
    s.eq("imagitivity/hermitian-full", "N=2;H=0", states::imagitivity(0.5 * (w0 + w0.adjoint()), dims, {0, 1}, 2.0),
         0.0, 1e-12);
    s.eq("imagitivity/single-slice", "N=2", states::imagitivity(w, dims, {1}, 1.0), 0.0, 1e-12);
    s.gt("imagitivity/two-slice", "N=2", states::imagitivity(w, dims, {0, 1}, 1.0), 1e-6);
  });

  s.guard("histories/N2", "N=2", [&] {
    const Mat h = presets::random_hermitian(rng, d);
    const Mat u = mat_exp(-I_UNIT * l2.epsilon() * h);
    const Mat rho = presets::random_density(rng, d);
    const ActionBundle b = boson::action_bundle(h, l2);
    const Mat x = states::histories_x(rho, u);
    const Mat w = embed_at_slice(rho, 0, l2) * b.e_iS_tilde;
    s.eq("histories/partial-trace", "N=2", diff(partial_trace(x, {d, d, d, d}, {0, 1}), w), 0.0, 1e-11);
    const Mat free_x = states::histories_x(identity(d) / static_cast<double>(d), identity(d));
    s.eq("histories/free", "N=2",
         diff(partial_trace(free_x, {d, d, d, d}, {0, 1}), boson::time_translation(l2) / static_cast<double>(d)), 0.0,
         1e-12);
    for (int k = 0; k < 3; ++k) {
      std::vector<Mat> proj;
      for (int q = 0; q < 4; ++q) {
        const Vec v = presets::random_vector(rng, d);
        proj.push_back(v * v.adjoint());
      }
      s.eq("histories/decoherence-" + pad(k), "N=2",
           states::decoherence_from_x(x, proj[0], proj[1], proj[2], proj[3]),
           states::decoherence_direct(rho, u, proj[0], proj[1], proj[2], proj[3]), 1e-11);
      const cplx diag = states::decoherence_direct(rho, u, proj[0], proj[1], proj[0], proj[1]);
      s.ge("histories/diagonal-" + pad(k), "N=2", diag.real(), 0.0, 1e-12);
      s.le("histories/diagonal-" + pad(k) + "-max", "N=2", diag.real(), 1.0, 1e-12);
    }
  });
}

// ---------------------------------------------------------------- fig3

void fig3_suite(const Config& c, Sink& s) {
  const std::string panel = c.panel;
  const bool all = panel == "all";
  const double lam = c.lambda;
  auto grad_at_origin = [&](char which) {
    auto f = [which, lam, &c](const Eigen::VectorXd& x) {
      return variational::panel_qubit(which, lam, x(0), x(1), c.hbar).value.real();
    };
    return variational::finite_diff_gradient(f, Eigen::VectorXd::Zero(2), 1e-4);
  };

  if (all || panel == "a") {
    const std::string p = Params().add("panel", "a").add("lambda", lam).add("grid", c.grid).str();
    s.guard("panel-a/gradient", p, [&] {
      s.eq("panel-a/gradient", p, grad_at_origin('a').norm(), 0.0, 1e-6);
      const auto pts = variational::fig3_grid('a', lam, c.grid, 0.5, c.hbar);
      double worst = std::numeric_limits<double>::infinity(), imag = 0.0;
      for (const auto& q : pts) {
        worst = std::min(worst, q.f.real() - q.reference.real());
        imag = std::max(imag, std::abs(std::remainder(q.f.imag(), kPi)));
      }
      s.ge("panel-a/minimum", p, worst, 0.0, 1e-9);
      s.eq("panel-a/imaginary", p, imag, 0.0, 1e-8);
      s.eq("panel-a/reference", p, pts.front().reference, -std::log(2.0 * std::cosh(2.0 * lam)), 1e-10);
    });
  }
  if (all || panel == "b") {
    const std::string p = Params().add("panel", "b").add("lambda", lam).add("grid", c.grid).str();
    s.guard("panel-b/saddle", p, [&] {
      const auto pts = variational::fig3_grid('b', lam, c.grid, 0.5, c.hbar);
      double lowest = std::numeric_limits<double>::infinity();
      for (const auto& q : pts) lowest = std::min(lowest, q.f.real() - q.reference.real());
      s.lt("panel-b/saddle", p, lowest, 0.0);
      s.eq("panel-b/gradient", p, grad_at_origin('b').norm(), 0.0, 1e-6);
      auto f = [lam, &c](const Eigen::VectorXd& x) {
        return variational::panel_qubit('b', lam, x(0), x(1), c.hbar).value.real();
      };
      const Eigen::VectorXd ev =
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(variational::finite_diff_hessian(f, Eigen::VectorXd::Zero(2), 1e-3))
              .eigenvalues();
      s.lt("panel-b/hessian-negative", p, ev.minCoeff(), 0.0);
      s.gt("panel-b/hessian-positive", p, ev.maxCoeff(), 0.0);
    });
  }
  if (all || panel == "c") {
    const std::string p = Params().add("panel", "c").add("samples", c.samples).add("seed", std::to_string(c.seed)).str();
    s.guard("panel-c/samples", p, [&] {
      const auto pts = variational::fig3_samples(c.samples, c.seed, c.hbar);
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const auto& q = pts[k];
        const std::string pk = Params()
                                   .add("lambda", q.lambda)
                                   .add("a13", q.params[0])
                                   .add("a14", q.params[1])
                                   .add("a24", q.params[2])
                                   .add("seed", std::to_string(c.seed))
                                   .str();
        s.ge("panel-c/sample-" + pad(static_cast<int>(k)), pk, q.reference.real() - q.f.real(), 0.0, 1e-9);
      }
      for (double l : {-2.0, -1.0, 1.0, 2.0}) {
        const Eigen::VectorXd ev =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(variational::majorana_hessian(l, 1e-3, c.hbar)).eigenvalues();
        const std::string ph = Params().add("lambda", l).add("h", 1e-3).str();
        s.lt("panel-c/hessian-lambda" + fmt(l), ph, ev.maxCoeff(), 0.0);
      }
      variational::MajoranaK with_delta{0.0, 0.1, 0.05, -0.1, 0.3}, without{0.0, 0.1, 0.05, -0.1, 0.0};
      s.eq("panel-c/delta", "lambda=1;delta=0.3", variational::panel_majorana(1.0, with_delta, c.hbar).value.real(),
           variational::panel_majorana(1.0, without, c.hbar).value.real(), 1e-9);
    });
  }
  if (panel == "scaling") {
    std::mt19937_64 rng(c.seed);
    const Lattice l2 = Lattice::boson(2, 1, 1.0, 2);
    const Mat h = 0.25 * presets::random_hermitian(rng, 2);
    const ActionBundle b = boson::action_bundle(h, l2);
    const std::vector<double> scales{1e-2, 1e-3, 1e-4};
    for (int herm = 1; herm >= 0; --herm) {
      const std::string p = Params().add("hermitian", herm).add("scales", "1e-2:1e-3:1e-4").str();
      s.guard(std::string("scaling/") + (herm ? "hermitian" : "general"), p, [&] {
        Mat da = presets::random_matrix(rng, 4);
        if (herm) da = da + da.adjoint();
        da -= (da.trace() / 4.0) * identity(4);
        const auto r = variational::variational_identity_check(b.e_minus_SE, da, scales);
        s.eq(std::string("scaling/") + (herm ? "hermitian" : "general"), p, r.slope, 2.0, 0.1);
      });
    }
    s.guard("scaling/zero", "", [&] {
      const auto r = variational::variational_identity_check(b.e_minus_SE, Mat::Zero(4, 4), scales);
      s.eq("scaling/zero", "", *std::max_element(r.deltas.begin(), r.deltas.end()), 0.0, 0.0);
    });
    s.guard("scaling/raw-vs-operator", "", [&] {
      // separable K: both routes to F agree
      const Mat hp = h + 0.1 * presets::random_hermitian(rng, 2);
      const Mat k = kron(hp, identity(2)) + kron(identity(2), hp);
      const Mat hsum = kron(h, identity(2)) + kron(identity(2), h);
      variational::GammaSpec g;
      g.translation = b.translation;
      g.k = k;
      const cplx spec_f = variational::f_functional(g, hsum).value;
      const Mat gamma = variational::gamma_operator(g);
      const Mat gn = gamma / gamma.trace();
      const cplx raw_f = variational::f_raw(gn, b.e_minus_SE, variational::stable_cut(gn)).value;
      s.eq("scaling/raw-vs-operator", "", spec_f.real(), raw_f.real(), 1e-8);
      // F at H' for the Helmholtz form T tr[rho'(H - H')] - log Z'
      const Mat rp = mat_exp(-2.0 * hp);
      const cplx zp = rp.trace();
      s.eq("scaling/helmholtz", "", spec_f, 2.0 * (rp * (h - hp)).trace() / zp - std::log(zp), 1e-10);
    });
  }
}

// ---------------------------------------------------------------- dirac

void dirac_suite(const Config& c, Sink& s) {
  std::mt19937_64 rng(c.seed);
  s.guard("gamma/algebra", "", [&] {
    const auto& g = dirac::gamma_set();
    double worst = 0.0, traces = 0.0;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        worst = std::max(worst, diff(anticommutator(g.gamma[mu], g.gamma[nu]), 2.0 * dirac::metric(mu, nu) * identity(4)));
        traces = std::max(traces, std::abs((g.gamma[mu] * g.gamma[nu]).trace() - 4.0 * dirac::metric(mu, nu)));
      }
    s.eq("gamma/anticommutator", "", worst, 0.0, 0.0);
    s.eq("gamma/trace", "", traces, 0.0, 0.0);
    double herm = diff(g.beta, g.beta.adjoint());
    for (const auto& a : g.alpha) herm = std::max(herm, diff(a, a.adjoint()));
    s.eq("gamma/hermitian", "", herm, 0.0, 0.0);
    s.eq("gamma/square", "", diff(g.gamma[0] * g.gamma[0], identity(4)), 0.0, 0.0);
  });

  for (int k = 0; k < 50; ++k) {
    const std::array<double, 3> p{uniform(rng, -3, 3), uniform(rng, -3, 3), uniform(rng, -3, 3)};
    const double m = uniform(rng, 0.0, 2.0);
    const std::string ps =
        Params().add("px", p[0]).add("py", p[1]).add("pz", p[2]).add("m", m).str();
    s.guard("bogoliubov/" + pad(k), ps, [&] {
      const auto r = dirac::bogoliubov_check(p, m);
      s.eq("bogoliubov/" + pad(k), ps, r.unitarity, 0.0, 1e-12);
      s.eq("orthogonality/" + pad(k), ps, r.orthogonality, 0.0, 1e-12);
      s.eq("completeness/" + pad(k), ps, r.completeness, 0.0, 1e-11);
      dirac::FourMomentum fm;
      fm.p0 = uniform(rng, -4, 4);
      fm.p = p;
      fm.m = m;
      s.eq("diagonalization/" + pad(k), ps + ";p0=" + fmt(fm.p0), dirac::action_diagonalization_check(fm).error, 0.0,
           1e-11);
    });
  }
  s.guard("diagonalization/rest", "m=1.3;p0=0.4", [&] {
    dirac::FourMomentum fm;
    fm.p0 = 0.4;
    fm.m = 1.3;
    s.eq("diagonalization/rest", "m=1.3;p0=0.4", dirac::action_diagonalization_check(fm).error, 0.0, 1e-12);
    const auto sb = dirac::spinor_basis({0, 0, 0}, 1.3);
    Mat u = Mat::Zero(4, 2), v = Mat::Zero(4, 2);
    u.topRows(2) = std::sqrt(2.6) * identity(2);
    v.bottomRows(2) = std::sqrt(2.6) * identity(2);
    s.eq("spinor/rest", "m=1.3", std::max(diff(sb.u, u), diff(sb.v, v)), 0.0, 1e-14);
  });
  s.guard("diagonalization/on-shell", "", [&] {
    dirac::FourMomentum fm;
    fm.p = {0.3, -0.2, 0.9};
    fm.m = 0.8;
    fm.p0 = dirac::energy(fm);
    const auto r = dirac::action_diagonalization_check(fm);
    s.eq("diagonalization/on-shell", "", r.congruence.topLeftCorner(2, 2).cwiseAbs().maxCoeff(), 0.0, 1e-11);
  });

  s.guard("propagator/limit", "", [&] {
    dirac::FourMomentum fm;
    fm.p0 = 2.0;
    fm.p = {0.3, -0.1, 0.5};
    fm.m = 1.0;
    const auto r = dirac::propagator_limit_check(fm, {1e-2, 5e-3, 2.5e-3, 1.25e-3});
    for (std::size_t k = 0; k < r.ratios.size(); ++k)
      s.eq("propagator/ratio-" + std::to_string(k), "p0=2;px=0.3;py=-0.1;pz=0.5;m=1;tau=" + fmt(r.taus[k + 1]), r.ratios[k], 0.5,
           0.05);
    s.eq("propagator/rational", "p0=2;px=0.3;py=-0.1;pz=0.5;m=1", r.rational_error, 0.0, 1e-12);
    for (int k = 0; k < 10; ++k) {
      dirac::FourMomentum q;
      q.p0 = uniform(rng, -3, 3);
      q.p = {uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2)};
      q.m = uniform(rng, 0, 2);
      q.regulator = 0.0;
      s.eq("propagator/rational-" + pad(k), "", dirac::propagator_limit_check(q, {}).rational_error, 0.0, 1e-12);
    }
  });

  s.guard("fermi-matrix/dirac", "", [&] {
    const std::array<double, 3> p{0.4, -0.3, 0.2};
    const Mat h = dirac::dirac_hamiltonian(p, 0.9);
    for (int nn : {2, 4, 8}) {
      const auto r = dirac::matsubara_fermi_matrix(h, 1.5, nn);
      s.eq("fermi-matrix/N" + std::to_string(nn), "T=1.5;m=0.9", diff(r.exact, r.thermal), 0.0, 1e-12);
    }
  });
}

// ---------------------------------------------------------------- composite

void composite_suite(const Config& c, Sink& s) {
  std::mt19937_64 rng(c.seed);
  const int nn = c.n_slices;
  const double eps = c.epsilon;
  const Lattice lb = Lattice::boson(nn, 1, eps, 2);
  const Lattice lf = Lattice::fermion(nn, 1, eps);
  const std::string base = Params().add("N", nn).add("eps", eps).str();
  const Mat z = (Mat(2, 2) << 1, 0, 0, -1).finished();
  const Mat hb = presets::random_hermitian(rng, 2);
  const Polynomial hf = presets::fermion_hamiltonian("zfield:0.8", 1);
  const std::vector<fermion::Coupling> hint{{z, Polynomial::number(0)}};

  auto random_composite = [&](int count) {
    std::vector<fermion::CompositeInsertion> ins;
    for (int k = 0; k < count; ++k) {
      const int kind = uniform_int(rng, 0, 2);
      Polynomial f = kind == 0 ? Polynomial::annihilate(0) : kind == 1 ? Polynomial::create(0) : Polynomial::number(0);
      ins.push_back({presets::random_matrix(rng, 2), f, uniform_int(rng, 0, nn - 1)});
    }
    return ins;
  };

  for (int k = 0; k < 8; ++k) {
    const auto ins = random_composite(uniform_int(rng, 1, 4));
    const std::string p = base + ";draw=" + std::to_string(k) + ";insertions=" + std::to_string(ins.size());
    s.guard("composite/" + pad(k), p, [&] {
      const auto r = fermion::composite_correlator(hb, hf, hint, ins, lb, lf);
      s.eq("composite/" + pad(k), p, r.extended, r.oracle, 1e-9);
    });
  }
  s.guard("composite/random-coupling", base, [&] {
    const std::vector<fermion::Coupling> hr{{presets::random_hermitian(rng, 2), Polynomial::number(0)},
                                            {Mat(), 0.3 * Polynomial::number(0)}};
    const auto ins = random_composite(3);
    const auto r = fermion::composite_correlator(hb, hf, hr, ins, lb, lf);
    s.eq("composite/random-coupling", base, r.extended, r.oracle, 1e-9);
  });
  s.guard("composite/no-insertions", base, [&] {
    const auto r = fermion::composite_correlator(hb, hf, hint, {}, lb, lf);
    const auto sl = fermion::slice_algebra(1);
    const Mat h = kron(hb, identity(2)) + kron(identity(2), hf.compile(sl, 2)) + kron(z, Polynomial::number(0).compile(sl, 2));
    s.eq("composite/no-insertions", base, r.extended, mat_exp(-I_UNIT * lb.total_time() * h).trace(), 1e-9);
  });
  s.guard("composite/factorized", base, [&] {
    const auto ins = random_composite(3);
    const auto joint = fermion::composite_correlator(hb, hf, {}, ins, lb, lf);
    std::vector<Insertion> bi;
    std::vector<fermion::FInsertion> fi;
    // combine per slice for the bosonic side, keeping list order
    std::vector<Mat> per(nn, identity(2));
    std::vector<bool> used(nn, false);
    for (const auto& in : ins) {
      per[in.t] = per[in.t] * in.boson;
      used[in.t] = true;
      fi.push_back({in.fermion, in.t});
    }
    for (int t = 0; t < nn; ++t)
      if (used[t]) bi.push_back({per[t], t});
    const ActionBundle bb = boson::action_bundle(hb, lb);
    const fermion::Algebra alg(lf);
    const ActionBundle bf = fermion::action_bundle({hf}, alg);
    s.eq("composite/factorized", base, joint.extended,
         boson::spacetime_correlator(bb.e_iS, bi, lb) * fermion::spacetime_correlator(alg, bf.e_iS, fi), 1e-9);
  });
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"verify-boson", "verify-fermion", "wick",    "states",
                                              "fig3",         "dirac",          "matsubara", "composite"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

namespace {

long long parse_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) fail(ErrorCode::Config, key + ": expected an integer, got '" + v + "'");
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) fail(ErrorCode::Config, key + ": expected a number, got '" + v + "'");
  return out;
}

int parse_positive(const std::string& key, const std::string& v) {
  const long long x = parse_int(key, v);
  if (x < 1 || x > 1000000) fail(ErrorCode::Config, key + " must be a positive integer");
  return static_cast<int>(x);
}

}  // namespace

void apply_setting(Config& c, const std::string& key, const std::string& value) {
  if (key == "suite") {
    c.suite = value;
  } else if (key == "n-slices") {
    c.n_slices = parse_positive(key, value);
  } else if (key == "n-sites") {
    c.n_sites = parse_positive(key, value);
  } else if (key == "local-dim") {
    c.local_dim = parse_positive(key, value);
  } else if (key == "epsilon") {
    c.epsilon = parse_double(key, value);
  } else if (key == "hamiltonian") {
    c.hamiltonian = value;
  } else if (key == "seed") {
    const long long x = parse_int(key, value);
    if (x < 0) fail(ErrorCode::Config, "seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(x);
  } else if (key == "cases") {
    c.cases = parse_positive(key, value);
  } else if (key == "panel") {
    c.panel = value;
  } else if (key == "samples") {
    c.samples = parse_positive(key, value);
  } else if (key == "grid") {
    c.grid = parse_positive(key, value);
  } else if (key == "lambda") {
    c.lambda = parse_double(key, value);
  } else if (key == "hbar") {
    c.hbar = parse_double(key, value);
  } else if (key.rfind("tolerance.", 0) == 0 && key.size() > 10) {
    c.tolerances[key.substr(10)] = parse_double(key, value);
  } else {
    fail(ErrorCode::Config, "unknown setting '" + key + "'");
  }
}

void validate(const Config& c) {
  if (c.suite.empty()) fail(ErrorCode::Config, "suite name is empty");
  if (!is_suite(c.suite)) fail(ErrorCode::Config, "unknown suite '" + c.suite + "'");
  if (c.n_slices < 1 || c.n_sites < 1 || c.local_dim < 1) fail(ErrorCode::Config, "lattice sizes must be positive");
  if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) fail(ErrorCode::Config, "epsilon must be positive");
  if (!std::isfinite(c.lambda)) fail(ErrorCode::Config, "lambda must be finite");
  if (!(c.hbar > 0.0) || !std::isfinite(c.hbar)) fail(ErrorCode::Config, "hbar must be positive");
  if (c.samples < 1 || c.grid < 2) fail(ErrorCode::Config, "samples must be positive and grid at least 2");
  static const std::vector<std::string> panels{"a", "b", "c", "all", "scaling"};
  if (std::find(panels.begin(), panels.end(), c.panel) == panels.end())
    fail(ErrorCode::Config, "panel must be one of a, b, c, all, scaling");
  for (const auto& [k, v] : c.tolerances)
    if (!(v >= 0.0)) fail(ErrorCode::Config, "tolerance for '" + k + "' must be non-negative");
  if (c.suite == "composite" && c.n_slices > 4) fail(ErrorCode::Config, "composite suite supports at most 4 slices");
  try {
    if (c.suite == "verify-boson" || c.suite == "states") presets::qudit_hamiltonian(c.hamiltonian, c.n_sites, c.local_dim);
    if (c.suite == "verify-fermion") presets::fermion_hamiltonian(c.hamiltonian, c.n_sites);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Cap) fail(ErrorCode::Config, std::string("hamiltonian: ") + e.what());
  }
}

std::vector<Row> run(const Config& c) {
  validate(c);
  Sink s(c, c.suite);
  static const std::map<std::string, void (*)(const Config&, Sink&)> table{
      {"verify-boson", verify_boson}, {"verify-fermion", verify_fermion}, {"matsubara", matsubara},
      {"wick", wick_suite},           {"states", states_suite},           {"fig3", fig3_suite},
      {"dirac", dirac_suite},         {"composite", composite_suite}};
  // setup errors outside any case, such as the dimension cap, become a row
  s.guard("setup", "", [&] { table.at(c.suite)(c, s); });
  std::stable_sort(s.rows.begin(), s.rows.end(), [](const Row& a, const Row& b) { return a.case_id < b.case_id; });
  return s.rows;
}

std::string csv_header() {
  return "suite,case_id,params,lhs_re,lhs_im,rhs_re,rhs_im,abs_error,tolerance,pass";
}

std::string csv_line(const Row& r) {
  std::string out = r.suite + ',' + r.case_id + ',' + r.params;
  for (double v : {r.lhs.real(), r.lhs.imag(), r.rhs.real(), r.rhs.imag(), r.abs_error, r.tolerance})
    out += ',' + fmt(v);
  out += r.pass ? ",1" : ",0";
  return out;
}

std::string to_csv(const std::vector<Row>& rows) {
  std::string out = csv_header() + '\n';
  for (const auto& r : rows) out += csv_line(r) + '\n';
  return out;
}

std::size_t count_pass(const std::vector<Row>& rows) {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const Row& r) { return r.pass; }));
}

}  // namespace stqm::suites
