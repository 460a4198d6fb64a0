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
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "mtfr/mtfr.h"

namespace {

const double s = 1.0 / std::sqrt(2.0);
// Bold R_U with U = (1/sqrt 2)((1, i), (i, 1)).
const std::vector<double> bold_ru = {s, 0, 0, s, 0, s, s, 0, 0, -s, s, 0, -s, 0, 0, s};
// Bold R_{iI}.
const std::vector<double> bold_ri = {0, 0, 1, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, -1, 0, 0};

std::string take(char* p) {
  std::string out = p ? p : "";
  mtfr_string_free(p);
  return out;
}

}  // namespace

TEST_CASE("version and error state") {
  CHECK(std::string(mtfr_version()) == "0.1.0");
  mtfr_matrix* m = nullptr;
  CHECK(mtfr_matrix_from_json("{", nullptr, &m) == MTFR_INVALID_INPUT);
  CHECK(m == nullptr);
  CHECK(std::string(mtfr_last_error_kind()) == "InvalidInput");
  CHECK(std::string(mtfr_last_error()).find("parse") != std::string::npos);
  CHECK(mtfr_matrix_from_json(R"({"n":1,"rows":[[1,0],[0,1]]})", nullptr, &m) == MTFR_OK);
  CHECK(std::string(mtfr_last_error()).empty());
  mtfr_matrix_free(m);
  CHECK(mtfr_factor(nullptr, nullptr, nullptr) == MTFR_INVALID_INPUT);
}

TEST_CASE("last error is per thread") {
  mtfr_matrix* m = nullptr;
  CHECK(mtfr_matrix_from_json("[", nullptr, &m) == MTFR_INVALID_INPUT);
  std::string other = "unset";
  std::thread t([&] { other = mtfr_last_error(); });
  t.join();
  CHECK(other.empty());
  CHECK_FALSE(std::string(mtfr_last_error()).empty());
}

TEST_CASE("options") {
  mtfr_options* o = mtfr_options_new();
  REQUIRE(o);
  CHECK(mtfr_options_set_tolerance(o, "verify", 1e-7) == MTFR_OK);
  CHECK(mtfr_options_set_tolerance(o, "nonsense", 1e-7) == MTFR_INVALID_INPUT);
  CHECK(mtfr_options_set_tolerance(o, "blk", -1.0) == MTFR_INVALID_INPUT);
  CHECK(mtfr_options_set_seed(o, 42) == MTFR_OK);
  mtfr_options_free(o);
}

TEST_CASE("non-symplectic rows report the residual") {
  const double rows[] = {2, 0, 0, 1};
  mtfr_matrix* m = nullptr;
  CHECK(mtfr_matrix_from_rows(1, rows, nullptr, &m) == MTFR_INVALID_INPUT);
  CHECK(std::string(mtfr_last_error_kind()) == "NotSymplectic");
  CHECK(std::string(mtfr_last_error()).find("residual") != std::string::npos);
}

TEST_CASE("factor J") {
  const double rows[] = {0, 1, -1, 0};
  mtfr_matrix* m = nullptr;
  REQUIRE(mtfr_matrix_from_rows(1, rows, nullptr, &m) == MTFR_OK);
  int n = 0;
  CHECK(mtfr_matrix_half_dim(m, &n) == MTFR_OK);
  CHECK(n == 1);
  char* out = nullptr;
  REQUIRE(mtfr_factor(m, nullptr, &out) == MTFR_OK);
  auto j = nlohmann::json::parse(take(out));
  CHECK(j["pre_iwasawa"]["U"]["re"][0][0].get<double>() == doctest::Approx(0.0));
  CHECK(j["pre_iwasawa"]["U"]["im"][0][0].get<double>() == doctest::Approx(1.0));
  CHECK(j["word_error"].get<double>() < 1e-12);
  mtfr_matrix_free(m);
}

TEST_CASE("classify, certify, round trip and verify") {
  mtfr_matrix* m = nullptr;
  REQUIRE(mtfr_matrix_from_rows(2, bold_ru.data(), nullptr, &m) == MTFR_OK);
  int alt = 0;
  CHECK(mtfr_classify(m, nullptr, &alt) == MTFR_OK);
  CHECK(alt == MTFR_ALTERNATIVE_II);
  mtfr_certificate* c = nullptr;
  REQUIRE(mtfr_certify(m, nullptr, &c) == MTFR_OK);
  int d = 0, k = 0;
  CHECK(mtfr_certificate_info(c, &alt, &d, &k) == MTFR_OK);
  CHECK(alt == MTFR_ALTERNATIVE_II);
  CHECK(d == 1);
  CHECK(k == 1);

  char* json = nullptr;
  REQUIRE(mtfr_certificate_to_json(c, &json) == MTFR_OK);
  std::string text = take(json);
  mtfr_certificate* c2 = nullptr;
  REQUIRE(mtfr_certificate_from_json(text.c_str(), &c2) == MTFR_OK);
  REQUIRE(mtfr_certificate_to_json(c2, &json) == MTFR_OK);
  CHECK(take(json) == text);

  char* report = nullptr;
  CHECK(mtfr_verify_gaussians(c2, 50, 3.0, nullptr, &report) == MTFR_OK);
  auto r = nlohmann::json::parse(take(report));
  CHECK(r["identity"]["max_error"].get<double>() <= 1e-8);
  CHECK(mtfr_verify_gaussians(c2, 0, 3.0, nullptr, &report) == MTFR_INVALID_INPUT);
  CHECK(report == nullptr);

  auto bad = nlohmann::json::parse(text);
  bad["Omega"]["rows"][0][0] = bad["Omega"]["rows"][0][0].get<double>() + 1e-2;
  mtfr_certificate* c3 = nullptr;
  REQUIRE(mtfr_certificate_from_json(bad.dump().c_str(), &c3) == MTFR_OK);
  CHECK(mtfr_verify_gaussians(c3, 50, 3.0, nullptr, &report) == MTFR_VERIFICATION_FAILED);
  CHECK(nlohmann::json::parse(take(report))["pass"] == false);

  mtfr_field *f = nullptr, *g = nullptr, *tfr = nullptr;
  CHECK(mtfr_counterexample(c, 64, 16.0, nullptr, &f, &g, &tfr, &report) == MTFR_INVALID_INPUT);
  CHECK(std::string(mtfr_last_error_kind()) == "WrongAlternative");

  mtfr_certificate_free(c3);
  mtfr_certificate_free(c2);
  mtfr_certificate_free(c);
  mtfr_matrix_free(m);
}

TEST_CASE("odd half-dimension is rejected") {
  const double rows[] = {1, 0, 0, 1};
  mtfr_matrix* m = nullptr;
  REQUIRE(mtfr_matrix_from_rows(1, rows, nullptr, &m) == MTFR_OK);
  int alt = 0;
  CHECK(mtfr_classify(m, nullptr, &alt) == MTFR_INVALID_INPUT);
  mtfr_matrix_free(m);
}

TEST_CASE("counterexample fields and field io") {
  mtfr_matrix* m = nullptr;
  REQUIRE(mtfr_matrix_from_rows(2, bold_ri.data(), nullptr, &m) == MTFR_OK);
  mtfr_certificate* c = nullptr;
  REQUIRE(mtfr_certify(m, nullptr, &c) == MTFR_OK);
  int alt = 0;
  mtfr_certificate_info(c, &alt, nullptr, nullptr);
  CHECK(alt == MTFR_ALTERNATIVE_I);

  mtfr_field *f = nullptr, *g = nullptr, *tfr = nullptr;
  char* report = nullptr;
  REQUIRE(mtfr_counterexample(c, 256, 16.0, nullptr, &f, &g, &tfr, &report) == MTFR_OK);
  auto r = nlohmann::json::parse(take(report));
  CHECK(r["mass_outside"].get<double>() <= 1e-6);

  int dims = 0;
  CHECK(mtfr_field_dims(tfr, &dims) == MTFR_OK);
  CHECK(dims == 2);
  std::size_t pts = 0;
  double ext = 0;
  CHECK(mtfr_field_axis(f, 0, &pts, &ext) == MTFR_OK);
  CHECK(pts == 256);
  CHECK(ext == 16.0);
  CHECK(mtfr_field_axis(f, 1, &pts, &ext) == MTFR_INVALID_INPUT);

  auto path = (std::filesystem::temp_directory_path() / "mtfr_capi_field.bin").string();
  REQUIRE(mtfr_field_write(f, path.c_str()) == MTFR_OK);
  mtfr_field* back = nullptr;
  REQUIRE(mtfr_field_read(path.c_str(), &back) == MTFR_OK);
  std::size_t n1 = 0, n2 = 0;
  mtfr_field_size(f, &n1);
  mtfr_field_size(back, &n2);
  REQUIRE(n1 == n2);
  std::vector<double> a(2 * n1), b(2 * n2);
  CHECK(mtfr_field_copy_values(f, a.data(), a.size()) == MTFR_OK);
  CHECK(mtfr_field_copy_values(back, b.data(), b.size()) == MTFR_OK);
  CHECK(a == b);
  CHECK(mtfr_field_copy_values(f, a.data(), a.size() - 1) == MTFR_INVALID_INPUT);
  std::remove(path.c_str());

  char* csv = nullptr;
  REQUIRE(mtfr_field_csv(tfr, 0, 1, &csv) == MTFR_OK);
  CHECK(take(csv).rfind("t0,t1,re,im,abs", 0) == 0);

  // Field verification needs an Alternative II certificate.
  CHECK(mtfr_verify_fields(c, f, g, 10, nullptr, &report) == MTFR_INVALID_INPUT);

  mtfr_field_free(back);
  mtfr_field_free(f);
  mtfr_field_free(g);
  mtfr_field_free(tfr);
  mtfr_certificate_free(c);
  mtfr_matrix_free(m);
}

TEST_CASE("grid specs") {
  std::size_t pts[4];
  std::size_t count = 0;
  double ext = 0;
  CHECK(mtfr_grid_parse("256x128@16", pts, 4, &count, &ext) == MTFR_OK);
  CHECK(count == 2);
  CHECK(pts[0] == 256);
  CHECK(pts[1] == 128);
  CHECK(ext == 16.0);
  CHECK(mtfr_grid_parse("256\xC3\x97" "64@8", pts, 4, &count, &ext) == MTFR_OK);
  CHECK(pts[1] == 64);
  CHECK(mtfr_grid_parse("256@", pts, 4, &count, &ext) == MTFR_INVALID_INPUT);
  CHECK(mtfr_grid_parse("abc@16", pts, 4, &count, &ext) == MTFR_INVALID_INPUT);
  CHECK(mtfr_grid_parse("8x8x8@16", pts, 2, &count, &ext) == MTFR_INVALID_INPUT);
}

TEST_CASE("checks") {
  char* report = nullptr;
  REQUIRE(mtfr_check("hardy", R"({"source":{"type":"vpp","d":1}})", nullptr, &report) == MTFR_OK);
  auto r = nlohmann::json::parse(take(report));
  CHECK(r["fit"]["alpha"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(mtfr_check("beurling", R"({"source":{"type":"vpp","d":1}})", nullptr, &report) == MTFR_OK);
  CHECK(nlohmann::json::parse(take(report))["verdict"] == "divergent-looking");
  CHECK(mtfr_check("hardy", R"({"source":{"type":"nope"}})", nullptr, &report) == MTFR_INVALID_INPUT);
  CHECK(mtfr_check("wiener", "{}", nullptr, &report) == MTFR_INVALID_INPUT);
  CHECK(mtfr_check("hardy", "{", nullptr, &report) == MTFR_INVALID_INPUT);
  const char* singular = R"({"A1":{"n":1,"rows":[[1,0],[0,1]]},"A2":{"n":1,"rows":[[1,0],[0,1]]},
    "S":{"kind":"box","center":[0],"half_widths":[1]},"T":{"kind":"box","center":[0],"half_widths":[1]}})";
  CHECK(mtfr_check("nazarov", singular, nullptr, &report) == MTFR_INVALID_INPUT);
  CHECK(std::string(mtfr_last_error_kind()) == "Singular");
}
