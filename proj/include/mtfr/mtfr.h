/* Copyright (C) 2026 The mtfr Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
 * WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
 * License for the specific language governing permissions and limitations
 * under the License.
 */
#ifndef MTFR_MTFR_H
#define MTFR_MTFR_H

#include <stddef.h>
#include <stdint.h>

#if defined(MTFR_BUILDING_LIBRARY)
#define MTFR_API __attribute__((visibility("default")))
#else
#define MTFR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; they double as the command-line exit codes. */
enum {
  MTFR_OK = 0,
  MTFR_INVALID_INPUT = 2,       /* bad input, parameters, or preconditions */
  MTFR_INTERNAL = 3,            /* an internal guarantee did not hold */
  MTFR_VERIFICATION_FAILED = 4  /* a numerical check ran and failed; any report is still returned */
};

enum { MTFR_ALTERNATIVE_I = 1, MTFR_ALTERNATIVE_II = 2 };

typedef struct mtfr_options mtfr_options;
typedef struct mtfr_matrix mtfr_matrix;
typedef struct mtfr_certificate mtfr_certificate;
typedef struct mtfr_field mtfr_field;

MTFR_API const char* mtfr_version(void);

/* Message and kind name of the last failure on the calling thread; empty after success. */
MTFR_API const char* mtfr_last_error(void);
MTFR_API const char* mtfr_last_error_kind(void);

/* Frees strings returned through char** out-parameters. */
MTFR_API void mtfr_string_free(char* s);

/* Options. Tolerance names: sympl, unit, inv, recon, sym, blk, borderline, rank, cluster, schur_cond, verify. */
MTFR_API mtfr_options* mtfr_options_new(void);
MTFR_API void mtfr_options_free(mtfr_options* o);
MTFR_API int mtfr_options_set_tolerance(mtfr_options* o, const char* name, double value);
MTFR_API int mtfr_options_set_seed(mtfr_options* o, uint64_t seed);

/* Symplectic matrices. JSON: {"n": half-dimension, "rows": [[...], ...]}. rows_data is row-major 2n x 2n. */
MTFR_API int mtfr_matrix_from_json(const char* json, const mtfr_options* o, mtfr_matrix** out);
MTFR_API int mtfr_matrix_from_rows(int n, const double* rows_data, const mtfr_options* o, mtfr_matrix** out);
MTFR_API int mtfr_matrix_half_dim(const mtfr_matrix* m, int* n);
MTFR_API void mtfr_matrix_free(mtfr_matrix* m);

/* Pre-Iwasawa factors and generator word as JSON. */
MTFR_API int mtfr_factor(const mtfr_matrix* m, const mtfr_options* o, char** json_out);

/* m must have even half-dimension 2d; *alternative receives MTFR_ALTERNATIVE_I or _II. */
MTFR_API int mtfr_classify(const mtfr_matrix* m, const mtfr_options* o, int* alternative);
MTFR_API int mtfr_certify(const mtfr_matrix* m, const mtfr_options* o, mtfr_certificate** out);
MTFR_API int mtfr_certificate_from_json(const char* json, mtfr_certificate** out);
MTFR_API int mtfr_certificate_to_json(const mtfr_certificate* c, char** json_out);
/* k is 0 for Alternative I. Any out pointer may be NULL. */
MTFR_API int mtfr_certificate_info(const mtfr_certificate* c, int* alternative, int* d, int* k);
MTFR_API void mtfr_certificate_free(mtfr_certificate* c);

/* Identity checks for Alternative II certificates; MTFR_VERIFICATION_FAILED still fills report_out. */
MTFR_API int mtfr_verify_gaussians(const mtfr_certificate* c, size_t points, double radius, const mtfr_options* o,
                                   char** report_out);
MTFR_API int mtfr_verify_fields(const mtfr_certificate* c, const mtfr_field* f, const mtfr_field* g, size_t points,
                                const mtfr_options* o, char** report_out);

/* Sampled fields on centered uniform grids. */
MTFR_API int mtfr_field_read(const char* path, mtfr_field** out);
MTFR_API int mtfr_field_write(const mtfr_field* f, const char* path);
MTFR_API int mtfr_field_dims(const mtfr_field* f, int* dims);
MTFR_API int mtfr_field_axis(const mtfr_field* f, int axis, size_t* points, double* extent);
MTFR_API int mtfr_field_size(const mtfr_field* f, size_t* count);
/* Interleaved (re, im) pairs, row-major; capacity counts doubles and must be at least 2 * size. */
MTFR_API int mtfr_field_copy_values(const mtfr_field* f, double* out, size_t capacity);
/* CSV of a 1-D or 2-D field; higher-dimensional fields are sliced through axes a, b at the center. */
MTFR_API int mtfr_field_csv(const mtfr_field* f, int a, int b, char** csv_out);
MTFR_API void mtfr_field_free(mtfr_field* f);

/* Parses "256@16", "256x128@16" (or with the multiplication sign). points has room for capacity counts;
 * *count receives the number of axes listed. */
MTFR_API int mtfr_grid_parse(const char* spec, size_t* points, size_t capacity, size_t* count, double* extent);

/* Compactly supported pair for an Alternative I certificate on `points` per axis over [-extent/2, extent/2).
 * Returns MTFR_VERIFICATION_FAILED when the TFR mass outside the predicted region exceeds 1e-4. */
MTFR_API int mtfr_counterexample(const mtfr_certificate* c, size_t points, double extent, const mtfr_options* o,
                                 mtfr_field** f_out, mtfr_field** g_out, mtfr_field** tfr_out, char** report_out);

/* kind: beurling, hardy, gs or nazarov; params is a JSON object. */
MTFR_API int mtfr_check(const char* kind, const char* params_json, const mtfr_options* o, char** report_out);

#ifdef __cplusplus
}
#endif

#endif
