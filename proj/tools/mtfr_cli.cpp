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
// Command-line front end over the C library. Exit codes follow the library status codes.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mtfr/mtfr.h"

namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;

struct Failure {
  int status;
  std::string message;
};

struct CString {
  char* p = nullptr;
  ~CString() { mtfr_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};
using Matrix = Handle<mtfr_matrix, mtfr_matrix_free>;
using Cert = Handle<mtfr_certificate, mtfr_certificate_free>;
using Field = Handle<mtfr_field, mtfr_field_free>;

void check(int status) {
  if (status != MTFR_OK) throw Failure{status, mtfr_last_error()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{MTFR_INVALID_INPUT, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Output {
  std::string dir;
  std::string format = "bin";

  // Temp file plus rename so readers never see a partial file.
  void write(const std::string& name, const std::string& content) const {
    fs::create_directories(dir);
    fs::path target = fs::path(dir) / name;
    fs::path tmp = target;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << content;
      if (!out) throw Failure{MTFR_INVALID_INPUT, "cannot write '" + tmp.string() + "'"};
    }
    fs::rename(tmp, target);
  }

  // Report goes to DIR/name when --out is set, else to stdout.
  void report(const std::string& name, const std::string& json) const {
    if (dir.empty())
      std::cout << json;
    else
      write(name, json);
  }
};

void print_warnings(const Json& j) {
  if (j.contains("warnings"))
    for (const auto& w : j["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
}

std::string sweep_csv(const Json& sweep) {
  std::ostringstream os;
  os.precision(17);
  os << "R,value,ratio\n";
  for (const auto& p : sweep["points"]) {
    os << p["R"].get<double>() << "," << p["value"].get<double>() << ",";
    if (!p["ratio"].is_null()) os << p["ratio"].get<double>();
    os << "\n";
  }
  return os.str();
}

void write_field(const Output& out, const std::string& stem, const mtfr_field* f) {
  if (out.format == "csv") {
    int dims = 0;
    check(mtfr_field_dims(f, &dims));
    CString csv;
    // 4-D fields are sliced through (t0, omega0).
    check(mtfr_field_csv(f, 0, dims / 2, &csv.p));
    out.write(stem + ".csv", csv.str());
  } else if (out.format == "json") {
    int dims = 0;
    std::size_t count = 0;
    check(mtfr_field_dims(f, &dims));
    check(mtfr_field_size(f, &count));
    Json j;
    j["axes"] = Json::array();
    for (int a = 0; a < dims; ++a) {
      std::size_t pts = 0;
      double ext = 0.0;
      check(mtfr_field_axis(f, a, &pts, &ext));
      j["axes"].push_back({{"points", pts}, {"extent", ext}});
    }
    std::vector<double> v(2 * count);
    check(mtfr_field_copy_values(f, v.data(), v.size()));
    std::vector<double> re(count), im(count);
    for (std::size_t i = 0; i < count; ++i) {
      re[i] = v[2 * i];
      im[i] = v[2 * i + 1];
    }
    j["re"] = re;
    j["im"] = im;
    out.write(stem + ".json", j.dump() + "\n");
  } else {
    fs::create_directories(out.dir);
    check(mtfr_field_write(f, (fs::path(out.dir) / (stem + ".bin")).c_str()));
  }
}

struct Globals {
  std::map<std::string, double> tol;
  std::uint64_t seed = 0;
  std::string grid;
  Output out;
};

std::unique_ptr<mtfr_options, void (*)(mtfr_options*)> make_options(const Globals& g) {
  std::unique_ptr<mtfr_options, void (*)(mtfr_options*)> o(mtfr_options_new(), mtfr_options_free);
  if (!o) throw Failure{MTFR_INTERNAL, "out of memory"};
  for (const auto& [name, v] : g.tol) check(mtfr_options_set_tolerance(o.get(), name.c_str(), v));
  check(mtfr_options_set_seed(o.get(), g.seed));
  return o;
}

void load_matrix(const std::string& path, const mtfr_options* o, Matrix& m) {
  check(mtfr_matrix_from_json(slurp(path).c_str(), o, &m.p));
}

void load_certificate(const std::string& path, Cert& c) {
  check(mtfr_certificate_from_json(slurp(path).c_str(), &c.p));
}

int cmd_factor(const Globals& g, const std::string& path) {
  auto o = make_options(g);
  Matrix m;
  load_matrix(path, o.get(), m);
  CString json;
  check(mtfr_factor(m.p, o.get(), &json.p));
  g.out.report("factor.json", json.str());
  return MTFR_OK;
}

int cmd_classify(const Globals& g, const std::string& path) {
  auto o = make_options(g);
  Matrix m;
  load_matrix(path, o.get(), m);
  Cert c;
  check(mtfr_certify(m.p, o.get(), &c.p));
  CString json;
  check(mtfr_certificate_to_json(c.p, &json.p));
  print_warnings(Json::parse(json.str()));
  g.out.report("certificate.json", json.str());
  return MTFR_OK;
}

int cmd_verify(const Globals& g, const std::string& cert_path, const std::vector<std::string>& fields, bool gaussians,
               std::size_t points, double radius) {
  auto o = make_options(g);
  Cert c;
  load_certificate(cert_path, c);
  CString report;
  int status;
  if (gaussians == !fields.empty()) throw Failure{MTFR_INVALID_INPUT, "pass exactly one of --gaussians or --fields"};
  if (gaussians) {
    status = mtfr_verify_gaussians(c.p, points, radius, o.get(), &report.p);
  } else {
    Field f, h;
    check(mtfr_field_read(fields[0].c_str(), &f.p));
    check(mtfr_field_read(fields[1].c_str(), &h.p));
    status = mtfr_verify_fields(c.p, f.p, h.p, points, o.get(), &report.p);
  }
  if (status != MTFR_OK && status != MTFR_VERIFICATION_FAILED) check(status);
  Json j = Json::parse(report.str());
  print_warnings(j);
  g.out.report("verify.json", report.str());
  if (status == MTFR_VERIFICATION_FAILED) {
    double err = j.contains("identity") ? j["identity"].value("max_error", 0.0) : j.value("max_error", 0.0);
    std::cerr << "FAIL: max relative error " << err << " exceeds " << j["tolerance"].get<double>()
              << "; worst point " << j.value("worst_point", Json()).dump() << "\n";
  }
  return status;
}

int cmd_check(const Globals& g, const std::string& kind, const std::string& params_path) {
  auto o = make_options(g);
  Json params;
  try {
    params = Json::parse(slurp(params_path));
  } catch (const Json::parse_error& e) {
    throw Failure{MTFR_INVALID_INPUT, std::string("parse error: ") + e.what()};
  }
  if (kind == "nazarov" && !g.grid.empty() && params.is_object() && !params.contains("grid")) {
    std::size_t pts[8];
    std::size_t count = 0;
    double extent = 0.0;
    check(mtfr_grid_parse(g.grid.c_str(), pts, 8, &count, &extent));
    params["grid"] = {{"points", pts[0]}, {"extent", extent}};
  }
  CString report;
  check(mtfr_check(kind.c_str(), params.dump().c_str(), o.get(), &report.p));
  Json j = Json::parse(report.str());
  g.out.report(kind + ".json", report.str());
  if (!g.out.dir.empty())
    for (const auto& s : j["sweeps"]) g.out.write(kind + "_" + s["label"].get<std::string>() + ".csv", sweep_csv(s));
  std::cerr << "verdict: " << j["verdict"].get<std::string>() << "\n";
  return MTFR_OK;
}

int cmd_counterexample(const Globals& g, const std::string& cert_path) {
  auto o = make_options(g);
  Cert c;
  load_certificate(cert_path, c);
  std::size_t pts[8];
  std::size_t count = 0;
  double extent = 0.0;
  check(mtfr_grid_parse(g.grid.empty() ? "256@16" : g.grid.c_str(), pts, 8, &count, &extent));
  for (std::size_t i = 1; i < count; ++i)
    if (pts[i] != pts[0]) throw Failure{MTFR_INVALID_INPUT, "counterexample grids use one point count for every axis"};
  Field f, h, tfr;
  CString report;
  int status = mtfr_counterexample(c.p, pts[0], extent, o.get(), &f.p, &h.p, &tfr.p, &report.p);
  if (status != MTFR_OK && status != MTFR_VERIFICATION_FAILED) check(status);
  Json j = Json::parse(report.str());
  print_warnings(j);
  if (!g.out.dir.empty()) {
    write_field(g.out, "f", f.p);
    write_field(g.out, "g", h.p);
    write_field(g.out, "tfr", tfr.p);
  }
  g.out.report("counterexample.json", report.str());
  std::cerr << "mass_outside: " << j["mass_outside"].get<double>() << "\n";
  if (status == MTFR_VERIFICATION_FAILED) std::cerr << "FAIL: " << mtfr_last_error() << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metaplectic time-frequency representation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mtfr_version()));
  Globals g;
  const char* tol_names[] = {"sympl", "unit",    "inv",        "recon",  "sym",   "blk",
                             "borderline", "rank", "cluster", "schur_cond", "verify"};
  for (const char* n : tol_names)
    app.add_option_function<double>(std::string("--tol-") + n, [&g, n](double v) { g.tol[n] = v; },
                                    std::string("override tolerance ") + n)
        ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--grid", g.grid, "grid as points[xpoints...]@extent, e.g. 256@16");
  app.add_option("--out", g.out.dir, "output directory (default: report on stdout)");
  app.add_option("--format", g.out.format, "field file format: bin (default), csv (1-D/2-D, or a central 2-D slice) or json")->check(CLI::IsMember({"json", "csv", "bin"}));
  // Globals may appear after the subcommand name too.
  app.fallthrough();

  std::string matrix_path, cert_path, kind, params_path;
  std::vector<std::string> field_paths;
  std::size_t points = 100;
  double radius = 3.0;
  std::uint64_t gauss_seed = 0;

  auto* factor = app.add_subcommand("factor", "pre-Iwasawa factors and generator word of a symplectic matrix");
  factor->add_option("matrix", matrix_path, "matrix JSON")->required();

  auto* classify = app.add_subcommand("classify", "classify a 4d x 4d symplectic matrix and emit its certificate");
  classify->add_option("matrix", matrix_path, "matrix JSON")->required();

  auto* verify = app.add_subcommand("verify", "check the reduction identity of an Alternative II certificate");
  verify->add_option("certificate", cert_path, "certificate JSON")->required();
  auto* gopt = verify->add_option("--gaussians", gauss_seed, "seed for random generalized Gaussians");
  auto* fopt = verify->add_option("--fields", field_paths, "window f and g field files")->expected(2);
  gopt->excludes(fopt);
  verify->add_option("--points,-m", points, "number of evaluation points");
  verify->add_option("--radius", radius, "radius of the sampling ball (Gaussian path)");

  auto* chk = app.add_subcommand("check", "uncertainty-principle diagnostics");
  chk->add_option("kind", kind, "beurling | hardy | gs | nazarov")
      ->required()
      ->check(CLI::IsMember({"beurling", "hardy", "gs", "nazarov"}));
  chk->add_option("--params", params_path, "parameter JSON file")->required();

  auto* cex = app.add_subcommand("counterexample", "compactly supported TFR for an Alternative I certificate");
  cex->add_option("certificate", cert_path, "certificate JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : MTFR_INVALID_INPUT;
  }

  try {
    if (*factor) return cmd_factor(g, matrix_path);
    if (*classify) return cmd_classify(g, matrix_path);
    if (*verify) {
      Globals vg = g;
      if (*gopt) vg.seed = gauss_seed;
      return cmd_verify(vg, cert_path, field_paths, static_cast<bool>(*gopt), points, radius);
    }
    if (*chk) return cmd_check(g, kind, params_path);
    if (*cex) return cmd_counterexample(g, cert_path);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.status;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return MTFR_INVALID_INPUT;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return MTFR_INTERNAL;
  }
  return MTFR_INTERNAL;
}
