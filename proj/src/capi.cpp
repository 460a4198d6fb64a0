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
#include "mtfr/mtfr.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "mtfr/app.hpp"

struct mtfr_options {
  mtfr::RunOptions run;
};
struct mtfr_matrix {
  mtfr::SymplecticMatrix m;
};
struct mtfr_certificate {
  mtfr::Certificate c;
};
struct mtfr_field {
  mtfr::SampledField f;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_kind;

void clear_error() {
  last_error.clear();
  last_kind.clear();
}

int fail(int status, const char* kind, const std::string& msg) {
  last_error = msg;
  last_kind = kind;
  return status;
}

// Runs body and maps exceptions onto status codes.
template <class F>
int guarded(F&& body) {
  clear_error();
  try {
    return body();
  } catch (const mtfr::Error& e) {
    return fail(mtfr::is_internal(e.kind()) ? MTFR_INTERNAL : MTFR_INVALID_INPUT, mtfr::error_kind_name(e.kind()),
                e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(MTFR_INVALID_INPUT, "InvalidInput", e.what());
  } catch (const std::bad_alloc&) {
    return fail(MTFR_INTERNAL, "OutOfMemory", "allocation failed");
  } catch (const std::exception& e) {
    return fail(MTFR_INTERNAL, "Internal", e.what());
  } catch (...) {
    return fail(MTFR_INTERNAL, "Internal", "unknown exception");
  }
}

int null_arg(const char* what) { return fail(MTFR_INVALID_INPUT, "InvalidInput", std::string("null argument: ") + what); }

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const mtfr::RunOptions& run_of(const mtfr_options* o) {
  static const mtfr::RunOptions defaults;
  return o ? o->run : defaults;
}

mtfr::CertifyOptions certify_options(const mtfr_options* o) {
  mtfr::CertifyOptions c;
  c.tol = run_of(o).tol;
  c.factor.tau_scan = run_of(o).tau_scan;
  return c;
}

}  // namespace

extern "C" {

const char* mtfr_version(void) { return "0.1.0"; }
const char* mtfr_last_error(void) { return last_error.c_str(); }
const char* mtfr_last_error_kind(void) { return last_kind.c_str(); }
void mtfr_string_free(char* s) { std::free(s); }

mtfr_options* mtfr_options_new(void) { return new (std::nothrow) mtfr_options(); }
void mtfr_options_free(mtfr_options* o) { delete o; }

int mtfr_options_set_tolerance(mtfr_options* o, const char* name, double value) {
  if (!o || !name) return null_arg("options or name");
  return guarded([&]() -> int {
    if (!(value > 0.0)) throw mtfr::Error(mtfr::ErrorKind::InvalidInput, "tolerances must be positive");
    mtfr::Tolerances& t = o->run.tol;
    const std::string n = name;
    double* slot = n == "sympl"        ? &t.sympl
                   : n == "unit"       ? &t.unit
                   : n == "inv"        ? &t.inv
                   : n == "recon"      ? &t.recon
                   : n == "sym"        ? &t.sym
                   : n == "blk"        ? &t.blk
                   : n == "borderline" ? &t.borderline
                   : n == "rank"       ? &t.rank
                   : n == "cluster"    ? &t.cluster
                   : n == "schur_cond" ? &t.schur_cond
                   : n == "verify"     ? &t.verify
                                       : nullptr;
    if (!slot) throw mtfr::Error(mtfr::ErrorKind::InvalidInput, "unknown tolerance '" + n + "'");
    *slot = value;
    return MTFR_OK;
  });
}

int mtfr_options_set_seed(mtfr_options* o, uint64_t seed) {
  if (!o) return null_arg("options");
  clear_error();
  o->run.seed = seed;
  return MTFR_OK;
}

int mtfr_matrix_from_json(const char* json, const mtfr_options* o, mtfr_matrix** out) {
  if (!json || !out) return null_arg("json or out");
  *out = nullptr;
  return guarded([&]() -> int {
    *out = new mtfr_matrix{mtfr::symplectic_from_json(mtfr::parse_json(json), run_of(o).tol)};
    return MTFR_OK;
  });
}

int mtfr_matrix_from_rows(int n, const double* rows_data, const mtfr_options* o, mtfr_matrix** out) {
  if (!rows_data || !out) return null_arg("rows or out");
  *out = nullptr;
  return guarded([&]() -> int {
    if (n < 1) throw mtfr::Error(mtfr::ErrorKind::InvalidInput, "half-dimension must be positive");
    mtfr::RMat m(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i)
      for (int j = 0; j < 2 * n; ++j) m(i, j) = rows_data[i * 2 * n + j];
    *out = new mtfr_matrix{mtfr::SymplecticMatrix(m, run_of(o).tol.sympl)};
    return MTFR_OK;
  });
}

int mtfr_matrix_half_dim(const mtfr_matrix* m, int* n) {
  if (!m || !n) return null_arg("matrix or n");
  clear_error();
  *n = m->m.n();
  return MTFR_OK;
}

void mtfr_matrix_free(mtfr_matrix* m) { delete m; }

int mtfr_factor(const mtfr_matrix* m, const mtfr_options* o, char** json_out) {
  if (!m || !json_out) return null_arg("matrix or out");
  *json_out = nullptr;
  return guarded([&]() -> int {
    *json_out = copy_string(mtfr::dump_json(mtfr::run_factor(m->m, run_of(o))));
    return MTFR_OK;
  });
}

int mtfr_classify(const mtfr_matrix* m, const mtfr_options* o, int* alternative) {
  if (!m || !alternative) return null_arg("matrix or alternative");
  return guarded([&]() -> int {
    auto c = mtfr::classify(m->m, run_of(o).tol);
    *alternative = c.alternative == mtfr::Alternative::I ? MTFR_ALTERNATIVE_I : MTFR_ALTERNATIVE_II;
    return MTFR_OK;
  });
}

int mtfr_certify(const mtfr_matrix* m, const mtfr_options* o, mtfr_certificate** out) {
  if (!m || !out) return null_arg("matrix or out");
  *out = nullptr;
  return guarded([&]() -> int {
    *out = new mtfr_certificate{mtfr::certify(m->m, certify_options(o))};
    return MTFR_OK;
  });
}

int mtfr_certificate_from_json(const char* json, mtfr_certificate** out) {
  if (!json || !out) return null_arg("json or out");
  *out = nullptr;
  return guarded([&]() -> int {
    *out = new mtfr_certificate{mtfr::certificate_from_json(mtfr::parse_json(json))};
    return MTFR_OK;
  });
}

int mtfr_certificate_to_json(const mtfr_certificate* c, char** json_out) {
  if (!c || !json_out) return null_arg("certificate or out");
  *json_out = nullptr;
  return guarded([&]() -> int {
    *json_out = copy_string(mtfr::dump_json(mtfr::certificate_to_json(c->c)));
    return MTFR_OK;
  });
}

int mtfr_certificate_info(const mtfr_certificate* c, int* alternative, int* d, int* k) {
  if (!c) return null_arg("certificate");
  clear_error();
  if (alternative) *alternative = c->c.alternative == mtfr::Alternative::I ? MTFR_ALTERNATIVE_I : MTFR_ALTERNATIVE_II;
  if (d) *d = c->c.d;
  if (k) *k = c->c.alternative == mtfr::Alternative::I ? 0 : c->c.k;
  return MTFR_OK;
}

void mtfr_certificate_free(mtfr_certificate* c) { delete c; }

int mtfr_verify_gaussians(const mtfr_certificate* c, size_t points, double radius, const mtfr_options* o,
                          char** report_out) {
  if (!c || !report_out) return null_arg("certificate or out");
  *report_out = nullptr;
  return guarded([&]() -> int {
    if (!(radius > 0.0)) throw mtfr::Error(mtfr::ErrorKind::InvalidInput, "radius must be positive");
    auto r = mtfr::run_verify_gaussians(c->c, points, radius, run_of(o));
    *report_out = copy_string(mtfr::dump_json(r.report));
    if (r.pass) return MTFR_OK;
    return fail(MTFR_VERIFICATION_FAILED, "VerificationFailed", "identity error exceeds tolerance");
  });
}

int mtfr_verify_fields(const mtfr_certificate* c, const mtfr_field* f, const mtfr_field* g, size_t points,
                       const mtfr_options* o, char** report_out) {
  if (!c || !f || !g || !report_out) return null_arg("certificate, fields or out");
  *report_out = nullptr;
  return guarded([&]() -> int {
    auto r = mtfr::run_verify_fields(c->c, f->f, g->f, points, run_of(o));
    *report_out = copy_string(mtfr::dump_json(r.report));
    if (r.pass) return MTFR_OK;
    return fail(MTFR_VERIFICATION_FAILED, "VerificationFailed", "identity error exceeds tolerance");
  });
}

int mtfr_field_read(const char* path, mtfr_field** out) {
  if (!path || !out) return null_arg("path or out");
  *out = nullptr;
  return guarded([&]() -> int {
    *out = new mtfr_field{mtfr::read_field(path)};
    return MTFR_OK;
  });
}

int mtfr_field_write(const mtfr_field* f, const char* path) {
  if (!f || !path) return null_arg("field or path");
  return guarded([&]() -> int {
    mtfr::write_field(path, f->f);
    return MTFR_OK;
  });
}

int mtfr_field_dims(const mtfr_field* f, int* dims) {
  if (!f || !dims) return null_arg("field or dims");
  clear_error();
  *dims = f->f.dims();
  return MTFR_OK;
}

int mtfr_field_axis(const mtfr_field* f, int axis, size_t* points, double* extent) {
  if (!f) return null_arg("field");
  if (axis < 0 || axis >= f->f.dims()) return fail(MTFR_INVALID_INPUT, "InvalidInput", "axis out of range");
  clear_error();
  if (points) *points = f->f.axes()[axis].points;
  if (extent) *extent = f->f.axes()[axis].extent;
  return MTFR_OK;
}

int mtfr_field_size(const mtfr_field* f, size_t* count) {
  if (!f || !count) return null_arg("field or count");
  clear_error();
  *count = f->f.size();
  return MTFR_OK;
}

int mtfr_field_copy_values(const mtfr_field* f, double* out, size_t capacity) {
  if (!f || !out) return null_arg("field or out");
  if (capacity < 2 * f->f.size()) return fail(MTFR_INVALID_INPUT, "InvalidInput", "output buffer too small");
  clear_error();
  for (std::size_t i = 0; i < f->f.size(); ++i) {
    out[2 * i] = f->f[i].real();
    out[2 * i + 1] = f->f[i].imag();
  }
  return MTFR_OK;
}

int mtfr_field_csv(const mtfr_field* f, int a, int b, char** csv_out) {
  if (!f || !csv_out) return null_arg("field or out");
  *csv_out = nullptr;
  return guarded([&]() -> int {
    if (f->f.dims() <= 2) {
      *csv_out = copy_string(mtfr::field_csv(f->f));
    } else {
      std::vector<std::size_t> center;
      for (const auto& ax : f->f.axes()) center.push_back(ax.points / 2);
      *csv_out = copy_string(mtfr::field_csv(mtfr::field_slice(f->f, a, b, center)));
    }
    return MTFR_OK;
  });
}

void mtfr_field_free(mtfr_field* f) { delete f; }

int mtfr_grid_parse(const char* spec, size_t* points, size_t capacity, size_t* count, double* extent) {
  if (!spec || !points || !count || !extent) return null_arg("grid spec outputs");
  return guarded([&]() -> int {
    mtfr::GridSpec g = mtfr::parse_grid_spec(spec);
    if (g.points.size() > capacity) throw mtfr::Error(mtfr::ErrorKind::InvalidInput, "grid spec lists too many axes");
    std::copy(g.points.begin(), g.points.end(), points);
    *count = g.points.size();
    *extent = g.extent;
    return MTFR_OK;
  });
}

int mtfr_counterexample(const mtfr_certificate* c, size_t points, double extent, const mtfr_options* o,
                        mtfr_field** f_out, mtfr_field** g_out, mtfr_field** tfr_out, char** report_out) {
  if (!c || !report_out) return null_arg("certificate or out");
  *report_out = nullptr;
  if (f_out) *f_out = nullptr;
  if (g_out) *g_out = nullptr;
  if (tfr_out) *tfr_out = nullptr;
  return guarded([&]() -> int {
    auto r = mtfr::run_counterexample(c->c, mtfr::Axis{points, extent}, run_of(o));
    *report_out = copy_string(mtfr::dump_json(r.report));
    if (f_out) *f_out = new mtfr_field{std::move(r.ce.f)};
    if (g_out) *g_out = new mtfr_field{std::move(r.ce.g)};
    if (tfr_out) *tfr_out = new mtfr_field{std::move(r.tfr)};
    if (r.report.value("pass", false)) return MTFR_OK;
    return fail(MTFR_VERIFICATION_FAILED, "VerificationFailed", "TFR mass outside the predicted region exceeds 1e-4");
  });
}

int mtfr_check(const char* kind, const char* params_json, const mtfr_options* o, char** report_out) {
  if (!kind || !params_json || !report_out) return null_arg("kind, params or out");
  *report_out = nullptr;
  return guarded([&]() -> int {
    *report_out = copy_string(mtfr::dump_json(mtfr::run_check(kind, mtfr::parse_json(params_json), run_of(o))));
    return MTFR_OK;
  });
}

}  // extern "C"
