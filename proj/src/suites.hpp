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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tensor.hpp"

namespace stqm::suites {

struct Config {
  std::string suite;
  int n_slices = 3;
  int n_sites = 1;
  int local_dim = 2;
  double epsilon = 0.5;
  std::string hamiltonian = "zfield:1.0";
  std::uint64_t seed = 7;
  int cases = -1;  // negative selects the suite default
  std::string panel = "all";
  int samples = 3000;
  int grid = 21;
  double lambda = 1.0;
  double hbar = 1.0;  // fig3 entropy weight
  // keyed by case family, the case_id prefix before the first '/'
  std::map<std::string, double> tolerances;
};

struct Row {
  std::string suite;
  std::string case_id;
  std::string params;
  cplx lhs;
  cplx rhs;
  double abs_error;
  double tolerance;
  bool pass;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// Throws Error(Config) for invalid settings.
// Applies one key=value setting; keys match the CLI long flags.
void apply_setting(Config& c, const std::string& key, const std::string& value);
void validate(const Config& c);
std::vector<Row> run(const Config& c);

std::string csv_header();
std::string csv_line(const Row& r);
std::string to_csv(const std::vector<Row>& rows);

std::size_t count_pass(const std::vector<Row>& rows);

}  // namespace stqm::suites
