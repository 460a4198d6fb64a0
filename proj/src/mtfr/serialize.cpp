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
#include "mtfr/serialize.hpp"

#include <cmath>
#include <sstream>

namespace mtfr {

namespace {

// Converts library exceptions thrown while reading JSON into InvalidInput.
template <typename F>
auto reading(const char* what, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorKind::InvalidInput, std::string("missing key '") + key + "'");
  return *it;
}

void reject_unknown(const Json& j, std::initializer_list<const char*> keys) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) throw Error(ErrorKind::InvalidInput, "unknown key '" + it.key() + "'");
  }
}

Json rows_json(const RMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (int k = 0; k < m.cols(); ++k) r.push_back(m(i, k));
    rows.push_back(std::move(r));
  }
  return rows;
}

RMat rows_from_json(const Json& rows) {
  if (!rows.is_array()) throw Error(ErrorKind::InvalidInput, "matrix rows must be an array");
  const int r = static_cast<int>(rows.size());
  if (r == 0) return RMat(0, 0);
  if (!rows[0].is_array()) throw Error(ErrorKind::InvalidInput, "matrix rows must be arrays");
  const int c = static_cast<int>(rows[0].size());
  RMat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != c)
      throw Error(ErrorKind::InvalidInput, "matrix rows differ in length");
    for (int k = 0; k < c; ++k) {
      if (!rows[i][k].is_number()) throw Error(ErrorKind::InvalidInput, "matrix entries must be numbers");
      m(i, k) = rows[i][k].get<double>();
    }
  }
  return m;
}

Json vec_json(const RVec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

RVec vec_from_json(const Json& a) {
  if (!a.is_array()) throw Error(ErrorKind::InvalidInput, "expected an array of numbers");
  RVec v(static_cast<int>(a.size()));
  for (int i = 0; i < v.size(); ++i) {
    if (!a[i].is_number()) throw Error(ErrorKind::InvalidInput, "expected an array of numbers");
    v(i) = a[i].get<double>();
  }
  return v;
}

double number(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) throw Error(ErrorKind::InvalidInput, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

int integer(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw Error(ErrorKind::InvalidInput, std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

Json nullable(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json mean_width_json(const MeanWidth& w) {
  return Json{{"value", w.value}, {"stderr", w.stderr_}, {"exact", w.exact}};
}

Json nc_json(const NcValue& v) {
  return Json{{"exponent", v.exponent},       {"log_nc", v.log_nc},
              {"volume_S", v.vol_s},          {"volume_T", v.vol_t},
              {"width_S", mean_width_json(v.width_s)}, {"width_T", mean_width_json(v.width_t)}};
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, std::string("JSON parse error: ") + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json real_matrix_to_json(const RMat& m) { return Json{{"n", m.rows()}, {"rows", rows_json(m)}}; }

RMat real_matrix_from_json(const Json& j) {
  return reading("matrix", [&] {
    RMat m = rows_from_json(field(j, "rows"));
    if (j.contains("n") && integer(j, "n") != m.rows())
      throw Error(ErrorKind::InvalidInput, "'n' does not match the row count");
    return m;
  });
}

Json symplectic_to_json(const SymplecticMatrix& m) { return Json{{"n", m.n()}, {"rows", rows_json(m.matrix())}}; }

SymplecticMatrix symplectic_from_json(const Json& j, const Tolerances& tol) {
  RMat m = reading("symplectic matrix", [&] {
    reject_unknown(j, {"n", "rows"});
    int n = integer(j, "n");
    RMat r = rows_from_json(field(j, "rows"));
    if (n < 1 || r.rows() != 2 * n || r.cols() != 2 * n)
      throw Error(ErrorKind::DimensionMismatch, "expected a " + std::to_string(2 * n) + " x " +
                                                    std::to_string(2 * n) + " matrix for n = " + std::to_string(n));
    return r;
  });
  return SymplecticMatrix(m, tol.sympl);
}

Json complex_matrix_to_json(const CMat& m) {
  return Json{{"n", m.rows()}, {"re", rows_json(m.real())}, {"im", rows_json(m.imag())}};
}

CMat complex_matrix_from_json(const Json& j) {
  return reading("complex matrix", [&] {
    RMat re = rows_from_json(field(j, "re")), im = rows_from_json(field(j, "im"));
    if (re.rows() != im.rows() || re.cols() != im.cols())
      throw Error(ErrorKind::InvalidInput, "real and imaginary parts differ in shape");
    if (j.contains("n") && integer(j, "n") != re.rows())
      throw Error(ErrorKind::InvalidInput, "'n' does not match the row count");
    CMat m(re.rows(), re.cols());
    m.real() = re;
    m.imag() = im;
    return m;
  });
}

Json complex_to_json(cd z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

cd complex_from_json(const Json& j) {
  return reading("complex number", [&] { return cd(number(j, "re"), number(j, "im")); });
}

Json letter_to_json(const Letter& l) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Chirp>) {
          return Json{{"kind", "chirp"}, {"Q", real_matrix_to_json(x.Q)}};
        } else if constexpr (std::is_same_v<T, Dilation>) {
          return Json{{"kind", "dilation"}, {"L", real_matrix_to_json(x.L)}};
        } else {
          return Json{{"kind", "pfourier"}, {"axes", x.axes}};
        }
      },
      l);
}

Letter letter_from_json(const Json& j, int n) {
  return reading("generator letter", [&]() -> Letter {
    const Json& kind = field(j, "kind");
    if (!kind.is_string()) throw Error(ErrorKind::InvalidInput, "letter kind must be a string");
    std::string k = kind.get<std::string>();
    if (k == "chirp") {
      RMat q = real_matrix_from_json(field(j, "Q"));
      if (q.rows() != n || q.cols() != n) throw Error(ErrorKind::DimensionMismatch, "chirp size");
      return chirp_letter(q);
    }
    if (k == "dilation") {
      RMat l = real_matrix_from_json(field(j, "L"));
      if (l.rows() != n || l.cols() != n) throw Error(ErrorKind::DimensionMismatch, "dilation size");
      return dilation_letter(l);
    }
    if (k == "pfourier") return pfourier_letter(n, field(j, "axes").get<std::vector<int>>());
    throw Error(ErrorKind::InvalidInput, "unknown letter kind '" + k + "'");
  });
}

Json word_to_json(const GeneratorWord& w) {
  Json a = Json::array();
  for (const Letter& l : w.letters) a.push_back(letter_to_json(l));
  return a;
}

GeneratorWord word_from_json(const Json& j, int n) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "a generator word must be an array");
  GeneratorWord w{n, {}};
  for (const Json& l : j) w.letters.push_back(letter_from_json(l, n));
  return w;
}

Json gaussian_to_json(const GeneralizedGaussian& g) {
  return Json{{"n", g.n()},
              {"M_re", rows_json(g.M.real())},
              {"M_im", rows_json(g.M.imag())},
              {"b_re", vec_json(g.b.real())},
              {"b_im", vec_json(g.b.imag())},
              {"logamp", g.logamp}};
}

GeneralizedGaussian gaussian_from_json(const Json& j) {
  return reading("Gaussian", [&] {
    reject_unknown(j, {"n", "M_re", "M_im", "b_re", "b_im", "logamp"});
    int n = integer(j, "n");
    RMat mr = rows_from_json(field(j, "M_re")), mi = rows_from_json(field(j, "M_im"));
    RVec br = vec_from_json(field(j, "b_re")), bi = vec_from_json(field(j, "b_im"));
    if (mr.rows() != n || mr.cols() != n || mi.rows() != n || mi.cols() != n || br.size() != n || bi.size() != n)
      throw Error(ErrorKind::DimensionMismatch, "Gaussian parameter sizes do not match n");
    CMat m(n, n);
    m.real() = mr;
    m.imag() = mi;
    CVec b(n);
    b.real() = br;
    b.imag() = bi;
    return make_gaussian(m, b, number(j, "logamp"));
  });
}

Json pre_iwasawa_to_json(const PreIwasawa& p) {
  return Json{{"Q", real_matrix_to_json(p.Q)}, {"L", real_matrix_to_json(p.L)}, {"U", complex_matrix_to_json(p.U)}};
}

PreIwasawa pre_iwasawa_from_json(const Json& j) {
  return reading("pre-Iwasawa factors", [&] {
    return PreIwasawa{real_matrix_from_json(field(j, "Q")), real_matrix_from_json(field(j, "L")),
                      complex_matrix_from_json(field(j, "U"))};
  });
}

Json certificate_to_json(const Certificate& c) {
  Json j;
  j["alternative"] = alternative_name(c.alternative);
  j["d"] = c.d;
  j["offdiag_norm"] = c.offdiag_norm;
  j["offdiag_relative"] = c.offdiag_relative;
  j["matrix"] = Json{{"n", c.matrix.rows() / 2}, {"rows", rows_json(c.matrix)}};
  Json in;
  in["pre_iwasawa"] = pre_iwasawa_to_json(c.pre);
  if (c.alternative == Alternative::I) {
    j["W"] = real_matrix_to_json(c.W);
    j["V1"] = complex_matrix_to_json(c.V1);
    j["V2"] = complex_matrix_to_json(c.V2);
  } else {
    j["tau"] = complex_to_json(c.tau);
    j["k"] = c.k;
    j["Omega"] = real_matrix_to_json(c.Omega);
    j["word_A"] = word_to_json(c.word_A);
    j["word_B"] = word_to_json(c.word_B);
    in["P"] = real_matrix_to_json(c.P);
    in["P11"] = real_matrix_to_json(c.P11);
    in["P12"] = real_matrix_to_json(c.P12);
    in["P22"] = real_matrix_to_json(c.P22);
    in["W1"] = real_matrix_to_json(c.W1);
    in["Gamma1"] = vec_json(c.gamma1);
    in["W2"] = real_matrix_to_json(c.W2);
    in["Pi"] = real_matrix_to_json(c.Pi);
    in["omega_condition"] = c.omega_condition;
    in["p22_sign"] = c.p22_sign;
  }
  j["intermediates"] = in;
  j["warnings"] = c.warnings;
  return j;
}

Certificate certificate_from_json(const Json& j) {
  return reading("certificate", [&] {
    Certificate c;
    const Json& alt = field(j, "alternative");
    if (alt == "I")
      c.alternative = Alternative::I;
    else if (alt == "II")
      c.alternative = Alternative::II;
    else
      throw Error(ErrorKind::InvalidInput, "alternative must be \"I\" or \"II\"");
    c.d = integer(j, "d");
    if (c.d < 1) throw Error(ErrorKind::InvalidInput, "d must be positive");
    c.offdiag_norm = number(j, "offdiag_norm");
    if (j.contains("offdiag_relative")) c.offdiag_relative = number(j, "offdiag_relative");
    c.matrix = rows_from_json(field(field(j, "matrix"), "rows"));
    if (c.matrix.rows() != 4 * c.d || c.matrix.cols() != 4 * c.d)
      throw Error(ErrorKind::DimensionMismatch, "certificate matrix must be 4d x 4d");
    if (!is_symplectic(c.matrix)) throw Error(ErrorKind::NotSymplectic, "certificate matrix is not symplectic");
    const Json& in = field(j, "intermediates");
    c.pre = pre_iwasawa_from_json(field(in, "pre_iwasawa"));
    if (c.alternative == Alternative::I) {
      c.W = real_matrix_from_json(field(j, "W"));
      c.V1 = complex_matrix_from_json(field(j, "V1"));
      c.V2 = complex_matrix_from_json(field(j, "V2"));
    } else {
      c.tau = complex_from_json(field(j, "tau"));
      c.k = integer(j, "k");
      if (c.k < 1 || c.k > c.d) throw Error(ErrorKind::InvalidInput, "k must lie in 1..d");
      c.Omega = real_matrix_from_json(field(j, "Omega"));
      if (c.Omega.rows() != 2 * c.d || c.Omega.cols() != 2 * c.d)
        throw Error(ErrorKind::DimensionMismatch, "Omega must be 2d x 2d");
      c.word_A = word_from_json(field(j, "word_A"), c.d);
      c.word_B = word_from_json(field(j, "word_B"), c.d);
      c.P = real_matrix_from_json(field(in, "P"));
      c.P11 = real_matrix_from_json(field(in, "P11"));
      c.P12 = real_matrix_from_json(field(in, "P12"));
      c.P22 = real_matrix_from_json(field(in, "P22"));
      c.W1 = real_matrix_from_json(field(in, "W1"));
      c.gamma1 = vec_from_json(field(in, "Gamma1"));
      c.W2 = real_matrix_from_json(field(in, "W2"));
      c.Pi = real_matrix_from_json(field(in, "Pi"));
      c.omega_condition = number(in, "omega_condition");
      c.p22_sign = integer(in, "p22_sign");
    }
    if (j.contains("warnings")) c.warnings = j["warnings"].get<std::vector<std::string>>();
    return c;
  });
}

Json identity_report_to_json(const IdentityReport& r) {
  return Json{{"max_error", nullable(r.max_error)}, {"worst_index", r.worst}, {"points", r.points}};
}

Json report_to_json(const UPReport& r) {
  Json j;
  j["condition"] = r.condition;
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = nullable(v);
  j["parameters"] = params;
  Json mats = Json::object();
  for (const auto& [k, m] : r.matrices) mats[k] = real_matrix_to_json(m);
  j["matrices"] = mats;
  Json sweeps = Json::array();
  for (const Sweep& s : r.sweeps) {
    Json pts = Json::array();
    for (const SweepPoint& p : s.points)
      pts.push_back(Json{{"R", p.radius}, {"value", nullable(p.value)}, {"ratio", nullable(p.ratio)}});
    sweeps.push_back(Json{{"label", s.label}, {"verdict", verdict_name(s.verdict)}, {"points", pts}});
  }
  j["sweeps"] = sweeps;
  j["verdict"] = verdict_name(r.verdict);
  j["rule"] = r.rule;
  j["notes"] = r.notes;
  return j;
}

std::string sweep_csv(const Sweep& s) {
  std::ostringstream out;
  out.precision(17);
  out << "R,value,ratio\n";
  for (const SweepPoint& p : s.points) {
    out << p.radius << ',' << p.value << ',';
    if (std::isfinite(p.ratio)) out << p.ratio;
    out << '\n';
  }
  return out.str();
}

Json hardy_fit_to_json(const HardyFit& f) {
  return Json{{"alpha", f.alpha},
              {"N", f.n},
              {"log_c", f.log_c},
              {"residual", f.residual},
              {"samples", f.samples},
              {"regressor", f.regressor == HardyRegressor::LogNorm ? "log_norm" : "log1p_norm"}};
}

Json shape_to_json(const Shape& s) {
  Json j{{"kind", s.kind == Shape::Kind::Box ? "box" : "ball"}, {"center", vec_json(s.center)}};
  if (s.kind == Shape::Kind::Box)
    j["half_widths"] = vec_json(s.half);
  else
    j["radius"] = s.half(0);
  if (!s.map.isIdentity(0.0)) j["map"] = real_matrix_to_json(s.map);
  return j;
}

Shape shape_from_json(const Json& j) {
  return reading("shape", [&] {
    reject_unknown(j, {"kind", "center", "half_widths", "radius", "map"});
    const Json& kind = field(j, "kind");
    RVec c = vec_from_json(field(j, "center"));
    Shape s;
    if (kind == "box")
      s = Shape::box(c, vec_from_json(field(j, "half_widths")));
    else if (kind == "ball")
      s = Shape::ball(c, number(j, "radius"));
    else
      throw Error(ErrorKind::UnsupportedShape, "shape kind must be \"box\" or \"ball\"");
    if (j.contains("map")) {
      RMat m = real_matrix_from_json(j["map"]);
      if (m.rows() != c.size() || m.cols() != c.size()) throw Error(ErrorKind::DimensionMismatch, "shape map size");
      s.map = m;
    }
    return s;
  });
}

Json nazarov_report_to_json(const NazarovReport& r) {
  return Json{{"lhs", r.lhs},
              {"rhs", nullable(r.rhs)},
              {"ratio", nullable(r.ratio)},
              {"complement_S", r.complement_s},
              {"complement_T", r.complement_t},
              {"C", r.c},
              {"C0", nullable(r.c0)},
              {"S_pulled", shape_to_json(r.s_pulled)},
              {"T_pulled", shape_to_json(r.t_pulled)},
              {"nc", nc_json(r.nc)}};
}

Json nazarov_stages_to_json(const NazarovStages& s) {
  return Json{{"stages", {s.stage[0], s.stage[1], s.stage[2]}},
              {"energies", {s.energy[0], s.energy[1], s.energy[2]}},
              {"max_discrepancy", s.max_discrepancy},
              {"log_nc_original", s.log_nc_original},
              {"log_nc_rotated", s.log_nc_rotated}};
}

Json cross_section_to_json(const CrossSectionReport& r) {
  Json v = Json::array();
  for (Verdict x : r.verdicts) v.push_back(verdict_name(x));
  return Json{{"slices", r.slices},
              {"passing", r.passing},
              {"fraction", r.fraction},
              {"exception_measure", r.exception_measure},
              {"verdicts", v},
              {"zero_slice", r.zero_slice}};
}

}  // namespace mtfr
