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

#include "stqm/stqm.h"

#include <cmath>
#include <exception>
#include <limits>
#include <new>
#include <string>

#include "error.hpp"
#include "suites.hpp"
#include "tensor.hpp"

struct stqm_matrix {
  stqm::Mat m;
};

struct stqm_config {
  stqm::suites::Config c;
};

struct stqm_report {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::string csv;
};

namespace {

thread_local std::string g_last_error;

stqm_status to_status(stqm::ErrorCode code) {
  switch (code) {
    case stqm::ErrorCode::Dimension: return STQM_ERR_DIMENSION;
    case stqm::ErrorCode::Cap: return STQM_ERR_CAP;
    case stqm::ErrorCode::NonFinite: return STQM_ERR_NONFINITE;
    case stqm::ErrorCode::Singular: return STQM_ERR_SINGULAR;
    case stqm::ErrorCode::Conditioning: return STQM_ERR_CONDITIONING;
    case stqm::ErrorCode::Domain: return STQM_ERR_DOMAIN;
    case stqm::ErrorCode::Parity: return STQM_ERR_PARITY;
    case stqm::ErrorCode::Config: return STQM_ERR_CONFIG;
  }
  return STQM_ERR_INTERNAL;
}

template <class F>
stqm_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return STQM_OK;
  } catch (const stqm::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return STQM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return STQM_ERR_INTERNAL;
  }
}

stqm_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return STQM_ERR_NULL;
}

stqm_status emit(stqm::Mat m, stqm_matrix** out) {
  *out = new stqm_matrix{std::move(m)};
  return STQM_OK;
}

}  // namespace

extern "C" {

const char* stqm_last_error(void) { return g_last_error.c_str(); }

const char* stqm_status_name(stqm_status s) {
  switch (s) {
    case STQM_OK: return "ok";
    case STQM_ERR_DIMENSION: return "dimension";
    case STQM_ERR_CAP: return "cap";
    case STQM_ERR_NONFINITE: return "non-finite";
    case STQM_ERR_SINGULAR: return "singular";
    case STQM_ERR_CONDITIONING: return "conditioning";
    case STQM_ERR_DOMAIN: return "domain";
    case STQM_ERR_PARITY: return "parity";
    case STQM_ERR_CONFIG: return "config";
    case STQM_ERR_NULL: return "null";
    case STQM_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

size_t stqm_max_dim(void) { return stqm::max_dim(); }

stqm_status stqm_set_max_dim(size_t cap) {
  return guarded([&] { stqm::set_max_dim(cap); });
}

stqm_status stqm_matrix_new(size_t rows, size_t cols, stqm_matrix** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    stqm::check_dim(rows, "stqm_matrix_new");
    stqm::check_dim(cols, "stqm_matrix_new");
    emit(stqm::Mat::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)), out);
  });
}

stqm_status stqm_matrix_from_data(size_t rows, size_t cols, const double* data, stqm_matrix** out) {
  if (!out) return null_arg("out");
  if (!data && rows * cols > 0) return null_arg("data");
  return guarded([&] {
    stqm::check_dim(rows, "stqm_matrix_from_data");
    stqm::check_dim(cols, "stqm_matrix_from_data");
    stqm::Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (size_t k = 0; k < rows * cols; ++k) {
      if (!std::isfinite(data[2 * k]) || !std::isfinite(data[2 * k + 1]))
        stqm::fail(stqm::ErrorCode::NonFinite, "stqm_matrix_from_data: non-finite entry");
      m.data()[k] = stqm::cplx(data[2 * k], data[2 * k + 1]);
    }
    emit(std::move(m), out);
  });
}

void stqm_matrix_free(stqm_matrix* m) { delete m; }

size_t stqm_matrix_rows(const stqm_matrix* m) { return m ? static_cast<size_t>(m->m.rows()) : 0; }
size_t stqm_matrix_cols(const stqm_matrix* m) { return m ? static_cast<size_t>(m->m.cols()) : 0; }

stqm_status stqm_matrix_get(const stqm_matrix* m, size_t r, size_t c, double* re, double* im) {
  if (!m || !re || !im) return null_arg("matrix or output");
  return guarded([&] {
    if (r >= static_cast<size_t>(m->m.rows()) || c >= static_cast<size_t>(m->m.cols()))
      stqm::fail(stqm::ErrorCode::Dimension, "stqm_matrix_get: index out of range");
    const stqm::cplx v = m->m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    *re = v.real();
    *im = v.imag();
  });
}

stqm_status stqm_matrix_set(stqm_matrix* m, size_t r, size_t c, double re, double im) {
  if (!m) return null_arg("matrix");
  return guarded([&] {
    if (r >= static_cast<size_t>(m->m.rows()) || c >= static_cast<size_t>(m->m.cols()))
      stqm::fail(stqm::ErrorCode::Dimension, "stqm_matrix_set: index out of range");
    if (!std::isfinite(re) || !std::isfinite(im))
      stqm::fail(stqm::ErrorCode::NonFinite, "stqm_matrix_set: non-finite entry");
    m->m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = stqm::cplx(re, im);
  });
}

stqm_status stqm_kron(const stqm_matrix* a, const stqm_matrix* b, stqm_matrix** out) {
  if (!a || !b || !out) return null_arg("matrix");
  return guarded([&] { emit(stqm::kron(a->m, b->m), out); });
}

stqm_status stqm_expm(const stqm_matrix* a, stqm_matrix** out) {
  if (!a || !out) return null_arg("matrix");
  return guarded([&] { emit(stqm::mat_exp(a->m), out); });
}

stqm_status stqm_logm(const stqm_matrix* a, double cut, stqm_matrix** out) {
  if (!a || !out) return null_arg("matrix");
  return guarded([&] { emit(stqm::mat_log(a->m, cut), out); });
}

stqm_status stqm_pfaffian(const stqm_matrix* a, double* re, double* im) {
  if (!a || !re || !im) return null_arg("matrix or output");
  return guarded([&] {
    const stqm::cplx v = stqm::pfaffian(a->m);
    *re = v.real();
    *im = v.imag();
  });
}

stqm_status stqm_partial_trace(const stqm_matrix* a, const size_t* factor_dims, size_t n_factors, const size_t* keep,
                               size_t n_keep, stqm_matrix** out) {
  if (!a || !out || (!factor_dims && n_factors) || (!keep && n_keep)) return null_arg("matrix or array");
  return guarded([&] {
    std::vector<std::size_t> dims(factor_dims, factor_dims + n_factors);
    std::vector<std::size_t> kept(keep, keep + n_keep);
    emit(stqm::partial_trace(a->m, dims, kept), out);
  });
}

stqm_status stqm_schatten_norm(const stqm_matrix* a, double p, double* out) {
  if (!a || !out) return null_arg("matrix or output");
  return guarded([&] {
    *out = stqm::schatten_norm(a->m, p <= 0 ? std::numeric_limits<double>::infinity() : p);
  });
}

stqm_status stqm_config_new(stqm_config** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new stqm_config{}; });
}

void stqm_config_free(stqm_config* c) { delete c; }

stqm_status stqm_config_set(stqm_config* c, const char* key, const char* value) {
  if (!c || !key || !value) return null_arg("config, key or value");
  return guarded([&] { stqm::suites::apply_setting(c->c, key, value); });
}

stqm_status stqm_run(const stqm_config* c, stqm_report** out) {
  if (!c || !out) return null_arg("config or out");
  return guarded([&] {
    const auto rows = stqm::suites::run(c->c);
    auto* r = new stqm_report;
    r->total = rows.size();
    r->passed = stqm::suites::count_pass(rows);
    r->csv = stqm::suites::to_csv(rows);
    *out = r;
  });
}

void stqm_report_free(stqm_report* r) { delete r; }
size_t stqm_report_total(const stqm_report* r) { return r ? r->total : 0; }
size_t stqm_report_passed(const stqm_report* r) { return r ? r->passed : 0; }
const char* stqm_report_csv(const stqm_report* r) { return r ? r->csv.c_str() : ""; }

}  // extern "C"
