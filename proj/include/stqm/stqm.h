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

#ifndef STQM_STQM_H
#define STQM_STQM_H

#include <stddef.h>
#include <stdint.h>

#if defined(STQM_BUILDING_LIBRARY)
#define STQM_API __attribute__((visibility("default")))
#else
#define STQM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum stqm_status {
  STQM_OK = 0,
  STQM_ERR_DIMENSION = 1,
  STQM_ERR_CAP = 2,
  STQM_ERR_NONFINITE = 3,
  STQM_ERR_SINGULAR = 4,
  STQM_ERR_CONDITIONING = 5,
  STQM_ERR_DOMAIN = 6,
  STQM_ERR_PARITY = 7,
  STQM_ERR_CONFIG = 8,
  STQM_ERR_NULL = 9,
  STQM_ERR_INTERNAL = 10
} stqm_status;

/* Dense complex matrix, column-major storage of interleaved (re, im). */
typedef struct stqm_matrix stqm_matrix;
typedef struct stqm_config stqm_config;
typedef struct stqm_report stqm_report;

/* Message for the last failing call on this thread; empty when none. */
STQM_API const char* stqm_last_error(void);
STQM_API const char* stqm_status_name(stqm_status s);

STQM_API size_t stqm_max_dim(void);
STQM_API stqm_status stqm_set_max_dim(size_t cap);

STQM_API stqm_status stqm_matrix_new(size_t rows, size_t cols, stqm_matrix** out);
/* data holds rows*cols (re, im) pairs in column-major order. */
STQM_API stqm_status stqm_matrix_from_data(size_t rows, size_t cols, const double* data, stqm_matrix** out);
STQM_API void stqm_matrix_free(stqm_matrix* m);
STQM_API size_t stqm_matrix_rows(const stqm_matrix* m);
STQM_API size_t stqm_matrix_cols(const stqm_matrix* m);
STQM_API stqm_status stqm_matrix_get(const stqm_matrix* m, size_t r, size_t c, double* re, double* im);
STQM_API stqm_status stqm_matrix_set(stqm_matrix* m, size_t r, size_t c, double re, double im);

STQM_API stqm_status stqm_kron(const stqm_matrix* a, const stqm_matrix* b, stqm_matrix** out);
STQM_API stqm_status stqm_expm(const stqm_matrix* a, stqm_matrix** out);
/* Branch cut along arg(z) = cut; pass pi for the principal logarithm. */
STQM_API stqm_status stqm_logm(const stqm_matrix* a, double cut, stqm_matrix** out);
STQM_API stqm_status stqm_pfaffian(const stqm_matrix* a, double* re, double* im);
STQM_API stqm_status stqm_partial_trace(const stqm_matrix* a, const size_t* factor_dims, size_t n_factors,
                                        const size_t* keep, size_t n_keep, stqm_matrix** out);
/* p <= 0 selects the spectral norm. */
STQM_API stqm_status stqm_schatten_norm(const stqm_matrix* a, double p, double* out);

STQM_API stqm_status stqm_config_new(stqm_config** out);
STQM_API void stqm_config_free(stqm_config* c);
/* Keys mirror the command line flags without dashes, e.g. "n-slices".
   "tolerance.<family>" overrides the tolerance of one case family. */
STQM_API stqm_status stqm_config_set(stqm_config* c, const char* key, const char* value);

STQM_API stqm_status stqm_run(const stqm_config* c, stqm_report** out);
STQM_API void stqm_report_free(stqm_report* r);
STQM_API size_t stqm_report_total(const stqm_report* r);
STQM_API size_t stqm_report_passed(const stqm_report* r);
/* Owned by the report; valid until stqm_report_free. */
STQM_API const char* stqm_report_csv(const stqm_report* r);

#ifdef __cplusplus
}
#endif

#endif
