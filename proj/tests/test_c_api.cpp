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

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "stqm/stqm.h"

TEST_CASE("matrix handles") {
  stqm_matrix* m = nullptr;
  REQUIRE(stqm_matrix_new(2, 3, &m) == STQM_OK);
  CHECK(stqm_matrix_rows(m) == 2);
  CHECK(stqm_matrix_cols(m) == 3);
  CHECK(stqm_matrix_set(m, 1, 2, 1.5, -2.0) == STQM_OK);
  double re = 0, im = 0;
  CHECK(stqm_matrix_get(m, 1, 2, &re, &im) == STQM_OK);
  CHECK(re == 1.5);
  CHECK(im == -2.0);
  CHECK(stqm_matrix_get(m, 2, 0, &re, &im) == STQM_ERR_DIMENSION);
  CHECK(std::strlen(stqm_last_error()) > 0);
  CHECK(stqm_matrix_set(m, 0, 0, NAN, 0.0) == STQM_ERR_NONFINITE);
  stqm_matrix_free(m);
  CHECK(stqm_matrix_new(2, 2, nullptr) == STQM_ERR_NULL);
  stqm_matrix_free(nullptr);
}

TEST_CASE("pfaffian and kron through the C interface") {
  // column-major (re, im) pairs of [[0, 2], [-2, 0]]
  const double data[] = {0, 0, -2, 0, 2, 0, 0, 0};
  stqm_matrix* a = nullptr;
  REQUIRE(stqm_matrix_from_data(2, 2, data, &a) == STQM_OK);
  double re = 0, im = 0;
  CHECK(stqm_pfaffian(a, &re, &im) == STQM_OK);
  CHECK(re == 2.0);
  CHECK(im == 0.0);
  stqm_matrix* k = nullptr;
  CHECK(stqm_kron(a, a, &k) == STQM_OK);
  CHECK(stqm_matrix_rows(k) == 4);
  CHECK(stqm_matrix_get(k, 0, 3, &re, &im) == STQM_OK);
  CHECK(re == 4.0);
  stqm_matrix* p = nullptr;
  const size_t dims[] = {2, 2}, keep[] = {0};
  CHECK(stqm_partial_trace(k, dims, 2, keep, 1, &p) == STQM_OK);
  CHECK(stqm_matrix_rows(p) == 2);
  double norm = 0;
  CHECK(stqm_schatten_norm(a, 2.0, &norm) == STQM_OK);
  CHECK(norm == doctest::Approx(std::sqrt(8.0)));
  CHECK(stqm_schatten_norm(a, 0.0, &norm) == STQM_OK);
  CHECK(norm == doctest::Approx(2.0));
  stqm_matrix* e = nullptr;
  CHECK(stqm_expm(a, &e) == STQM_OK);
  stqm_matrix* l = nullptr;
  CHECK(stqm_logm(e, 3.141592653589793, &l) == STQM_OK);
  stqm_matrix_free(l);
  stqm_matrix_free(e);
  stqm_matrix_free(p);
  stqm_matrix_free(k);
  const double odd[] = {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  stqm_matrix* o = nullptr;
  REQUIRE(stqm_matrix_from_data(3, 3, odd, &o) == STQM_OK);
  CHECK(stqm_pfaffian(o, &re, &im) == STQM_ERR_DIMENSION);
  stqm_matrix_free(o);
  stqm_matrix_free(a);
}

TEST_CASE("dimension cap through the C interface") {
  const size_t old = stqm_max_dim();
  CHECK(stqm_set_max_dim(4) == STQM_OK);
  stqm_matrix* m = nullptr;
  CHECK(stqm_matrix_new(8, 8, &m) == STQM_ERR_CAP);
  CHECK(stqm_set_max_dim(0) == STQM_ERR_CONFIG);
  CHECK(stqm_set_max_dim(old) == STQM_OK);
}

TEST_CASE("configuring and running a suite") {
  stqm_config* c = nullptr;
  REQUIRE(stqm_config_new(&c) == STQM_OK);
  CHECK(stqm_config_set(c, "suite", "dirac") == STQM_OK);
  CHECK(stqm_config_set(c, "seed", "3") == STQM_OK);
  CHECK(stqm_config_set(c, "nonsense", "3") == STQM_ERR_CONFIG);
  CHECK(std::string(stqm_last_error()).find("nonsense") != std::string::npos);
  stqm_report* r = nullptr;
  REQUIRE(stqm_run(c, &r) == STQM_OK);
  CHECK(stqm_report_total(r) > 100);
  CHECK(stqm_report_passed(r) == stqm_report_total(r));
  const std::string csv = stqm_report_csv(r);
  CHECK(csv.rfind("suite,case_id,params,", 0) == 0);
  stqm_report_free(r);
  CHECK(stqm_config_set(c, "suite", "") == STQM_OK);
  CHECK(stqm_run(c, &r) == STQM_ERR_CONFIG);
  stqm_config_free(c);
  CHECK(std::string(stqm_status_name(STQM_ERR_PARITY)) == "parity");
}
