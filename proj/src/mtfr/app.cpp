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
#include "mtfr/app.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

namespace mtfr {

namespace {

void allow_keys(const Json& j, std::initializer_list<const char*> keys, const char* what) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, std::string(what) + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) throw Error(ErrorKind::InvalidInput, std::string("unknown key '") + it.key() + "' in " + what);
  }
}

const Json& require(const Json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorKind::InvalidInput, std::string("missing '") + key + "' in " + what);
  return *it;
}

double num_or(const Json& j, const char* key, double def) {
  auto it = j.find(key);
  if (it == j.end()) return def;
  if (!it->is_number()) throw Error(ErrorKind::InvalidInput, std::string("'") + key + "' must be a number");
  return it->get<double>();
}

std::vector<double> radii_or(const Json& j, const char* key, std::vector<double> def) {
  auto it = j.find(key);
  if (it == j.end()) return def;
  if (!it->is_array() || it->empty()) throw Error(ErrorKind::InvalidInput, std::string("'") + key + "' must be a nonempty array");
  std::vector<double> r;
  for (const Json& v : *it) {
    if (!v.is_number()) throw Error(ErrorKind::InvalidInput, std::string("'") + key + "' entries must be numbers");
    r.push_back(v.get<double>());
  }
  return r;
}

Json point_json(const RVec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

struct Source {
  LogEvaluator eval;
  int dim = 0;
  std::shared_ptr<SampledField> field;
};

Source make_source(const Json& s) {
  allow_keys(s, {"type", "d", "f", "g", "k", "certificate", "path"}, "source");
  const Json& type = require(s, "type", "source");
  Source src;
  if (type == "vpp") {
    int d = static_cast<int>(num_or(s, "d", 1));
    if (d < 1 || d > 4) throw Error(ErrorKind::InvalidInput, "vpp dimension must lie in 1..4");
    auto phi = GeneralizedGaussian::normalized(d);
    auto ker = std::make_shared<PartialStftKernel>(phi, phi, d);
    src.dim = 2 * d;
    src.eval = [ker](const RVec& l) { return ker->log_modulus(l); };
  } else if (type == "gaussians") {
    auto f = gaussian_from_json(require(s, "f", "source")), g = gaussian_from_json(require(s, "g", "source"));
    if (f.n() != g.n()) throw Error(ErrorKind::DimensionMismatch, "f and g differ in dimension");
    int k = static_cast<int>(num_or(s, "k", f.n()));
    auto ker = std::make_shared<PartialStftKernel>(f, g, k);
    src.dim = 2 * f.n();
    src.eval = [ker](const RVec& l) { return ker->log_modulus(l); };
  } else if (type == "certificate") {
    Certificate cert = certificate_from_json(require(s, "certificate", "source"));
    auto f = gaussian_from_json(require(s, "f", "source")), g = gaussian_from_json(require(s, "g", "source"));
    if (f.n() != cert.d || g.n() != cert.d) throw Error(ErrorKind::DimensionMismatch, "window dimension");
    auto w = std::make_shared<GeneralizedGaussian>(
        apply_word(tensor(f, conjugate(g)), certificate_matrix_word(cert)));
    src.dim = 2 * cert.d;
    src.eval = [w](const RVec& l) { return w->log_modulus(l); };
  } else if (type == "field") {
    const Json& p = require(s, "path", "source");
    if (!p.is_string()) throw Error(ErrorKind::InvalidInput, "'path' must be a string");
    src.field = std::make_shared<SampledField>(read_field(p.get<std::string>()));
    if (src.field->dims() % 2 != 0) throw Error(ErrorKind::DimensionMismatch, "field must live on R^{2d}");
    src.dim = src.field->dims();
    auto interp = std::make_shared<BandLimitedInterpolator>(*src.field);
    auto fld = src.field;
    src.eval = [interp, fld](const RVec& l) {
      for (int i = 0; i < l.size(); ++i) {
        const Axis& a = fld->axes()[i];
        if (l(i) < a.coord(0) || l(i) > a.coord(a.points - 1))
          throw Error(ErrorKind::RadiusExceedsGrid, "sample point lies outside the field grid");
      }
      return std::log(std::abs((*interp)(l)));
    };
  } else {
    throw Error(ErrorKind::InvalidInput, "source type must be vpp, gaussians, certificate or field");
  }
  return src;
}

RMat omega_or_identity(const Json& params, int dim) {
  if (!params.contains("Omega")) return RMat::Identity(dim, dim);
  RMat om = real_matrix_from_json(params["Omega"]);
  if (om.rows() != dim || om.cols() != dim) throw Error(ErrorKind::DimensionMismatch, "Omega size");
  return om;
}

Json check_beurling(const Json& p) {
  allow_keys(p, {"source", "Omega", "M", "N", "radii", "spacing", "growth_tol"}, "beurling parameters");
  Source src = make_source(require(p, "source", "beurling parameters"));
  RMat m = p.contains("M") ? real_matrix_from_json(p["M"]) : beurling_matrix(omega_or_identity(p, src.dim));
  if (m.rows() != src.dim || m.cols() != src.dim) throw Error(ErrorKind::DimensionMismatch, "M size");
  double n = num_or(p, "N", 0.0);
  auto radii = radii_or(p, "radii", {1, 2, 4, 8});
  VerdictRule rule;
  rule.growth_tol = num_or(p, "growth_tol", rule.growth_tol);
  Quadrature q{num_or(p, "spacing", 0.02)};
  UPReport r;
  if (src.field) {
    r.condition = "beurling";
    r.parameters = {{"N", n}};
    r.matrices = {{"M", m}};
    r.sweeps.push_back(
        make_sweep("beurling", radii, weighted_truncated_integrals(*src.field, WeightSpec::beurling(m, n), radii), rule));
    r.verdict = r.sweeps[0].verdict;
    r.rule = rule.describe();
    r.notes.push_back("grid sums over the field samples");
  } else {
    r = beurling_sweep(src.eval, src.dim, m, n, radii, q, rule);
  }
  return report_to_json(r);
}

Json check_hardy(const Json& p) {
  allow_keys(p, {"source", "Omega", "shells", "directions", "regressor"}, "hardy parameters");
  Source src = make_source(require(p, "source", "hardy parameters"));
  HardyOptions opt;
  opt.shells = radii_or(p, "shells", opt.shells);
  opt.directions = static_cast<int>(num_or(p, "directions", opt.directions));
  if (p.contains("regressor")) {
    if (p["regressor"] == "log_norm")
      opt.regressor = HardyRegressor::LogNorm;
    else if (p["regressor"] == "log1p_norm")
      opt.regressor = HardyRegressor::Log1pNorm;
    else
      throw Error(ErrorKind::InvalidInput, "regressor must be log_norm or log1p_norm");
  }
  RMat om = omega_or_identity(p, src.dim);
  HardyFit fit = hardy_fit(src.eval, om, opt);
  UPReport r;
  r.condition = "hardy";
  r.parameters = {{"alpha_hat", fit.alpha}, {"N_hat", fit.n}, {"log_c", fit.log_c}, {"residual", fit.residual}};
  r.matrices = {{"Omega", om}};
  r.verdict = Verdict::Inconclusive;
  r.rule = "least squares of log|W| on (1, r(l), -pi |Omega^{-1} l|^2 / 2); no convergence verdict";
  r.notes.push_back(fit.alpha > 1.0 ? "alpha_hat > 1: super-critical decay" : "alpha_hat <= 1");
  Json j = report_to_json(r);
  j["fit"] = hardy_fit_to_json(fit);
  return j;
}

Json check_gs(const Json& p) {
  allow_keys(p, {"source", "p", "alpha", "beta", "radii", "spacing"}, "gs parameters");
  Source src = make_source(require(p, "source", "gs parameters"));
  double pe = num_or(p, "p", 2.0), a = num_or(p, "alpha", 1.0), b = num_or(p, "beta", 1.0);
  auto radii = radii_or(p, "radii", {1, 2, 3, 4});
  if (!src.field) return report_to_json(gelfand_shilov_sweep(src.eval, src.dim / 2, pe, a, b, radii, Quadrature{num_or(p, "spacing", 0.02)}));
  if (!(pe > 1.0)) throw Error(ErrorKind::InvalidInput, "p must lie in (1, inf)");
  double qe = pe / (pe - 1.0);
  VerdictRule rule;
  UPReport r;
  r.condition = "gelfand_shilov";
  r.parameters = {{"p", pe}, {"q", qe}, {"alpha", a}, {"beta", b}};
  r.sweeps.push_back(make_sweep("x", radii, weighted_truncated_integrals(*src.field, WeightSpec::gelfand_shilov(pe, a, true), radii), rule));
  r.sweeps.push_back(make_sweep("omega", radii, weighted_truncated_integrals(*src.field, WeightSpec::gelfand_shilov(qe, b, false), radii), rule));
  bool div = r.sweeps[0].verdict == Verdict::DivergentLooking || r.sweeps[1].verdict == Verdict::DivergentLooking;
  bool conv = r.sweeps[0].verdict == Verdict::ConvergentLooking && r.sweeps[1].verdict == Verdict::ConvergentLooking;
  r.verdict = div ? Verdict::DivergentLooking : conv ? Verdict::ConvergentLooking : Verdict::Inconclusive;
  r.rule = rule.describe() + "; overall divergent-looking if either weight diverges";
  return report_to_json(r);
}

Json check_nazarov(const Json& p) {
  allow_keys(p, {"f", "A1", "A2", "S", "T", "C", "grid", "mc_samples"}, "nazarov parameters");
  SymplecticMatrix a1 = symplectic_from_json(require(p, "A1", "nazarov parameters"));
  SymplecticMatrix a2 = symplectic_from_json(require(p, "A2", "nazarov parameters"));
  const int d = a1.n();
  if (a2.n() != d) throw Error(ErrorKind::DimensionMismatch, "A1 and A2 differ in size");
  GeneralizedGaussian f = p.contains("f") ? gaussian_from_json(p["f"]) : GeneralizedGaussian::normalized(d);
  if (f.n() != d) throw Error(ErrorKind::DimensionMismatch, "f dimension");
  Shape s = shape_from_json(require(p, "S", "nazarov parameters"));
  Shape t = shape_from_json(require(p, "T", "nazarov parameters"));
  double c = num_or(p, "C", 1.0);
  auto mc = static_cast<std::size_t>(num_or(p, "mc_samples", 1e6));
  std::size_t pts = 256;
  double ext = 16.0;
  if (p.contains("grid")) {
    allow_keys(p["grid"], {"points", "extent"}, "grid");
    pts = static_cast<std::size_t>(num_or(p["grid"], "points", 256));
    ext = num_or(p["grid"], "extent", 16.0);
  }
  PreIwasawa p1 = pre_iwasawa(a1), p2 = pre_iwasawa(a2);
  RMat im_u = CMat(p2.U * p1.U.adjoint()).imag();
  if (sigma_min(im_u) <= Tolerances{}.inv * std::max(1.0, sigma_max(im_u)))
    throw Error(ErrorKind::Singular, "Im(U2 U1^*) is not invertible; the Nazarov-type bound does not apply");
  auto axes = uniform_axes(d, pts, ext);
  SampledField f1 = sample(apply_word(f, factor_to_word(a1)), axes);
  SampledField f2 = sample(apply_word(f, factor_to_word(a2)), axes);
  NazarovReport nr = nazarov_bound(f1, f2, s, t, p1.L, p2.L, im_u, c, mc);
  UPReport r;
  r.condition = "nazarov";
  r.parameters = {{"C", c}, {"C0", nr.c0}, {"lhs", nr.lhs}, {"rhs", nr.rhs}, {"ratio", nr.ratio}};
  r.matrices = {{"L1", p1.L}, {"L2", p2.L}, {"ImU", im_u}};
  r.verdict = Verdict::Inconclusive;
  r.rule = "reports both sides; C is a free parameter and C0 the smallest value making the bound hold here";
  Json j = report_to_json(r);
  j["bound"] = nazarov_report_to_json(nr);
  try {
    j["stages"] = nazarov_stages_to_json(nazarov_stages(a1, a2, f, s, t, c, std::min<std::size_t>(mc, 200000)));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnsupportedShape && e.kind() != ErrorKind::GridTooLarge) throw;
    j["notes"].push_back(std::string("change-of-variables stages skipped: ") + e.what());
  }
  return j;
}

}  // namespace

std::vector<Axis> GridSpec::axes(int dims) const {
  if (points.size() != 1 && static_cast<int>(points.size()) != dims)
    throw Error(ErrorKind::DimensionMismatch, "grid spec lists " + std::to_string(points.size()) + " axes, need " +
                                                  std::to_string(dims));
  std::vector<Axis> a;
  for (int i = 0; i < dims; ++i) a.push_back(Axis{points.size() == 1 ? points[0] : points[i], extent});
  return a;
}

GridSpec parse_grid_spec(const std::string& spec) {
  auto at = spec.find('@');
  if (at == std::string::npos) throw Error(ErrorKind::InvalidInput, "grid spec must look like 256@16 or 256x256@16");
  GridSpec g;
  std::string counts = spec.substr(0, at);
  const std::string times = "\xC3\x97";  // multiplication sign
  for (std::size_t pos; (pos = counts.find(times)) != std::string::npos;) counts.replace(pos, times.size(), "x");
  std::size_t start = 0;
  try {
    while (true) {
      std::size_t x = counts.find('x', start);
      std::string tok = counts.substr(start, x == std::string::npos ? std::string::npos : x - start);
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size() || v <= 0) throw Error(ErrorKind::InvalidInput, "bad point count '" + tok + "'");
      g.points.push_back(static_cast<std::size_t>(v));
      if (x == std::string::npos) break;
      start = x + 1;
    }
    std::string ext = spec.substr(at + 1);
    std::size_t used = 0;
    g.extent = std::stod(ext, &used);
    if (used != ext.size() || !(g.extent > 0.0)) throw Error(ErrorKind::InvalidInput, "bad extent '" + ext + "'");
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidInput, "cannot parse grid spec '" + spec + "'");
  }
  return g;
}

Json run_factor(const SymplecticMatrix& m, const RunOptions& opt) {
  PreIwasawa pre = pre_iwasawa(m, opt.tol);
  FactorOptions fo;
  fo.tau_scan = opt.tau_scan;
  GeneratorWord w = factor_to_word(m, fo, opt.tol);
  const double scale = m.matrix().norm();
  Json j;
  j["n"] = m.n();
  j["pre_iwasawa"] = pre_iwasawa_to_json(pre);
  j["word"] = word_to_json(w);
  j["reconstruction_error"] = (pre.reconstruct() - m.matrix()).norm() / scale;
  j["word_error"] = (w.matrix() - m.matrix()).norm() / scale;
  j["symplectic_residual"] = symplectic_residual(m.matrix());
  return j;
}

VerifyResult run_verify_gaussians(const Certificate& cert, std::size_t points, double radius, const RunOptions& opt) {
  if (cert.alternative != Alternative::II) throw Error(ErrorKind::WrongAlternative, "verification needs an Alternative II certificate");
  if (points == 0) throw Error(ErrorKind::InvalidInput, "no evaluation points requested");
  Rng rng(opt.seed);
  GeneralizedGaussian f = random_gaussian(cert.d, rng), g = random_gaussian(cert.d, rng);
  auto pts = random_ball_points(2 * cert.d, points, radius, rng);
  auto lhs = tfr_log_moduli(cert, f, g, pts), rhs = reduced_log_moduli(cert, f, g, pts);
  IdentityReport rep = compare_log_moduli(lhs, rhs, 1e-300);
  VerifyResult out;
  out.pass = rep.max_error <= opt.tol.verify;
  Json& j = out.report;
  j["mode"] = "gaussians";
  j["seed"] = opt.seed;
  j["radius"] = radius;
  j["identity"] = identity_report_to_json(rep);
  j["worst_point"] = point_json(pts[rep.worst]);
  j["worst_log_lhs"] = lhs[rep.worst];
  j["worst_log_rhs"] = rhs[rep.worst];
  j["tolerance"] = opt.tol.verify;
  j["pass"] = out.pass;
  j["f"] = gaussian_to_json(f);
  j["g"] = gaussian_to_json(g);
  return out;
}

VerifyResult run_verify_fields(const Certificate& cert, const SampledField& f, const SampledField& g,
                               std::size_t points, const RunOptions& opt) {
  if (cert.alternative != Alternative::II) throw Error(ErrorKind::WrongAlternative, "verification needs an Alternative II certificate");
  if (points == 0) throw Error(ErrorKind::InvalidInput, "no evaluation points requested");
  if (f.dims() != cert.d || g.dims() != cert.d) throw Error(ErrorKind::DimensionMismatch, "field dimension");
  GridDiagnostics diag;
  SampledField lhs = tfr_grid(certificate_matrix_word(cert), f, g, {}, &diag);
  double peak = 0.0;
  for (const cd& z : lhs.values()) peak = std::max(peak, std::abs(z));
  const double floor = 1e-3 * peak;
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if (std::abs(lhs[i]) >= floor && floor > 0.0) candidates.push_back(i);
  Rng rng(opt.seed);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  if (candidates.size() > points) candidates.resize(points);
  std::sort(candidates.begin(), candidates.end());
  std::vector<RVec> pts;
  for (std::size_t i : candidates) pts.push_back(lhs.coords(i));
  auto rhs = reduced_moduli_grid(cert, f, g, pts, &diag);
  double worst = 0.0;
  std::size_t worst_i = 0, outside = 0, used = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::isnan(rhs[i])) {
      ++outside;
      continue;
    }
    ++used;
    double a = std::abs(lhs[candidates[i]]);
    double e = std::abs(a - rhs[i]) / std::max(a, floor);
    if (e > worst) {
      worst = e;
      worst_i = i;
    }
  }
  if (used == 0) worst = std::numeric_limits<double>::infinity();
  VerifyResult out;
  out.pass = worst <= opt.tol.verify;
  Json& j = out.report;
  j["mode"] = "fields";
  j["seed"] = opt.seed;
  j["points_used"] = used;
  j["points_outside_stft_grid"] = outside;
  j["max_error"] = std::isfinite(worst) ? Json(worst) : Json(nullptr);
  if (used > 0) j["worst_point"] = point_json(pts[worst_i]);
  j["floor"] = floor;
  j["tolerance"] = opt.tol.verify;
  j["pass"] = out.pass;
  j["warnings"] = diag.warnings;
  return out;
}

CounterexampleResult run_counterexample(const Certificate& cert, const Axis& axis, const RunOptions&) {
  if (cert.alternative != Alternative::I) throw Error(ErrorKind::WrongAlternative, "counterexample needs an Alternative I certificate");
  GridDiagnostics diag;
  if (axis.points < 128) diag.warn("coarse grid (" + std::to_string(axis.points) + " points per axis): expect resolution loss");
  const double h = 3.0 * axis.extent / 16.0;
  RVec lo = RVec::Constant(cert.d, -h), hi = RVec::Constant(cert.d, h);
  CounterexampleResult r;
  r.ce = counterexample_alt1(cert, lo, hi, axis, &diag);
  r.tfr = tfr_grid(certificate_matrix_word(cert), r.ce.f, r.ce.g, {}, &diag);
  r.mass_outside = mass_outside(r.tfr, r.ce.predicted);
  SampledField f0 = bump_field(std::vector<Axis>(cert.d, axis), lo, hi);
  Json& j = r.report;
  j["mass_outside"] = r.mass_outside;
  j["threshold"] = 1e-4;
  j["pass"] = r.mass_outside <= 1e-4;
  j["bump_box"] = Json{{"lo", point_json(lo)}, {"hi", point_json(hi)}};
  j["predicted_map"] = real_matrix_to_json(RMat(cert.pre.L * cert.W));
  j["norm_f0"] = l2_norm(f0);
  j["norm_f"] = l2_norm(r.ce.f);
  j["norm_g"] = l2_norm(r.ce.g);
  j["grid"] = Json{{"points", axis.points}, {"extent", axis.extent}};
  j["warnings"] = diag.warnings;
  return r;
}

Json run_check(const std::string& kind, const Json& params, const RunOptions&) {
  if (kind == "beurling") return check_beurling(params);
  if (kind == "hardy") return check_hardy(params);
  if (kind == "gs") return check_gs(params);
  if (kind == "nazarov") return check_nazarov(params);
  throw Error(ErrorKind::InvalidInput, "unknown check kind '" + kind + "'");
}

}  // namespace mtfr
