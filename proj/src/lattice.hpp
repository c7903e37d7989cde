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

#include <cstddef>
#include <vector>

#include "tensor.hpp"

namespace stqm {

enum class Statistics { BosonLike, Fermion };

// Immutable description of the time discretization. For fermions every
// (slice, site) pair is one mode and local_dim is fixed at 2.
class Lattice {
 public:
  static Lattice boson(int n_slices, int n_sites, double epsilon, int local_dim);
  static Lattice fermion(int n_slices, int n_sites, double epsilon);

  int n_slices() const { return n_slices_; }
  int n_sites() const { return n_sites_; }
  double epsilon() const { return epsilon_; }
  int local_dim() const { return local_dim_; }
  Statistics statistics() const { return statistics_; }
  double total_time() const { return epsilon_ * n_slices_; }
  int n_modes() const { return n_slices_ * n_sites_; }
  // Dimension of one slice (d^L) and of the extended space.
  std::size_t slice_dim() const { return slice_dim_; }
  std::size_t extended_dim() const { return extended_dim_; }

 private:
  Lattice(int n, int l, double eps, int d, Statistics s);
  int n_slices_;
  int n_sites_;
  double epsilon_;
  int local_dim_;
  Statistics statistics_;
  std::size_t slice_dim_;
  std::size_t extended_dim_;
};

struct ModeIndex {
  int t;
  int i;
  bool operator==(const ModeIndex&) const = default;
};

std::size_t flat_index(ModeIndex m, const Lattice& lat);
ModeIndex mode_index(std::size_t k, const Lattice& lat);

// F[n, t] = exp(i eps w_n t) / sqrt(N).
Mat fourier_in_time(const Lattice& lat);
std::vector<double> matsubara_frequencies(const Lattice& lat);

// I^{(x)t} (x) op (x) I^{(x)(N-1-t)}; boson-like lattices only.
Mat embed_at_slice(const Mat& op, int t, const Lattice& lat);

}  // namespace stqm
