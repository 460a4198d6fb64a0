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
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mtfr/certify.hpp"
#include "mtfr/gaussian.hpp"
#include "mtfr/grid.hpp"

namespace mtfr {

// log |W(lambda)|; -inf for exact zeros.
using LogEvaluator = std::function<double(const RVec&)>;

enum class Verdict { ConvergentLooking, DivergentLooking, Inconclusive };

const char* verdict_name(Verdict v);

struct VerdictRule {
  double growth_tol = 0.2;       // divergent: last three ratios >= 1 + growth_tol
  double convergence_tol = 0.05;  // convergent: last three ratios <= 1 + convergence_tol
  std::string describe() const;
};

struct SweepPoint {
  double radius = 0.0;
  double value = 0.0;
  double ratio = 0.0;  // value / previous value; NaN for the first point or a zero predecessor
};

struct Sweep {
  std::string label;
  std::vector<SweepPoint> points;
  Verdict verdict = Verdict::Inconclusive;
};

Sweep make_sweep(std::string label, const std::vector<double>& radii, const std::vector<double>& values,
                 const VerdictRule& rule);
Verdict judge(const std::vector<double>& values, const VerdictRule& rule);

struct UPReport {
  std::string condition;  // beurling | hardy | gelfand_shilov | nazarov
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<std::pair<std::string, RMat>> matrices;
  std::vector<Sweep> sweeps;
  Verdict verdict = Verdict::Inconclusive;
  std::string rule;
  std::vector<std::string> notes;
};

// Midpoint-rule settings for integrals over balls in R^dim.
struct Quadrature {
  double spacing = 0.02;
};

// Omega^{-t} (1/2) ((0, I), (I, 0)) Omega^{-1}.
RMat beurling_matrix(const RMat& omega);

// Truncated integrals of |W| e^{pi |l.M l|} / (1 + |l|)^N over |l| <= R, one per radius.
std::vector<double> beurling_integrals(const LogEvaluator& w, int dim, const RMat& m, double n,
                                       const std::vector<double>& radii, const Quadrature& q = {});
UPReport beurling_sweep(const LogEvaluator& w, int dim, const RMat& m, double n, const std::vector<double>& radii,
                        const Quadrature& q = {}, const VerdictRule& rule = {});

enum class HardyRegressor { LogNorm, Log1pNorm };

struct HardyFit {
  double alpha = 0.0;
  double n = 0.0;
  double log_c = 0.0;
  double residual = 0.0;  // root mean square of the log-domain residual
  std::size_t samples = 0;
  HardyRegressor regressor = HardyRegressor::LogNorm;
};

struct HardyOptions {
  std::vector<double> shells{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
  int directions = 64;
  std::uint64_t seed = 0;
  HardyRegressor regressor = HardyRegressor::LogNorm;
  double floor = 1e-300;
};

// Least squares log|W| = log c + N r(l) - alpha pi |Omega^{-1} l|^2 / 2 with r = log|l| or log(1 + |l|).
HardyFit hardy_fit(const LogEvaluator& w, const RMat& omega, const HardyOptions& opt = {});

// Weights e^{(pi/p) alpha^p |x|_p^p} and e^{(pi/q) beta^q |w|_q^q}, 1/p + 1/q = 1.
UPReport gelfand_shilov_sweep(const LogEvaluator& w, int d, double p, double alpha, double beta,
                              const std::vector<double>& radii, const Quadrature& q = {},
                              const VerdictRule& rule = {});

// { center + map y : y in base } with base the box [-half, half] or the ball of radius half(0).
struct Shape {
  enum class Kind { Box, Ball };
  Kind kind = Kind::Box;
  RVec center;
  RVec half;
  RMat map;

  static Shape box(const RVec& center, const RVec& half_widths);
  static Shape ball(const RVec& center, double radius);
  int dim() const { return static_cast<int>(center.size()); }
  // Image under x -> g x.
  Shape transformed(const RMat& g) const;
  bool contains(const RVec& x) const;
};

double volume(const Shape& s);

struct MeanWidth {
  double value = 0.0;
  double stderr_ = 0.0;
  bool exact = false;
};

// Exact for d = 1 and for balls under conformal maps; Monte Carlo over directions otherwise.
MeanWidth mean_width(const Shape& s, std::size_t samples = 1000000, std::uint64_t seed = 1);

struct NcValue {
  double exponent = 0.0;  // min(|S||T|, |S|^{1/d} w(T), |T|^{1/d} w(S))
  double log_nc = 0.0;    // log C + C exponent
  double vol_s = 0.0, vol_t = 0.0;
  MeanWidth width_s, width_t;
};

NcValue nazarov_constant(const Shape& s, const Shape& t, double c, std::size_t mc_samples = 1000000);

struct NazarovReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // rhs / lhs
  double complement_s = 0.0;
  double complement_t = 0.0;
  double c = 1.0;
  double c0 = 0.0;  // smallest C with rhs >= lhs on this instance
  Shape s_pulled, t_pulled;
  NcValue nc;
};

// f1 = A1 f and f2 = A2 f sampled; sets L1^{-1} S and Im(U)^{-1} L2^{-1} T enter the constant.
// Throws Singular when Im U is not invertible.
NazarovReport nazarov_bound(const SampledField& f1, const SampledField& f2, const Shape& s, const Shape& t,
                            const RMat& l1, const RMat& l2, const RMat& im_u, double c = 1.0,
                            std::size_t mc_samples = 1000000);

// Integral of |h|^2 over a shape by tensor Gauss-Legendre (boxes) or polar rules (balls, d <= 2).
double region_energy(const GeneralizedGaussian& h, const Shape& s, int panels = 8, int order = 24);

struct NazarovStages {
  // Complement sums after each change of variables: (A1 f, A2 f) on (S, T); (g, R_U g) on
  // (L1^{-1} S, L2^{-1} T); (Bg, F Bg) on (W2 L1^{-1} S, Im(Sigma)^{-1} W1^t L2^{-1} T).
  double stage[3] = {0, 0, 0};
  double max_discrepancy = 0.0;  // relative
  double log_nc_original = 0.0;
  double log_nc_rotated = 0.0;
  double energy[3] = {0, 0, 0};
};

NazarovStages nazarov_stages(const SymplecticMatrix& a1, const SymplecticMatrix& a2, const GeneralizedGaussian& f,
                             const Shape& s, const Shape& t, double c = 1.0, std::size_t mc_samples = 200000);

struct CrossSectionReport {
  std::size_t slices = 0;
  std::size_t passing = 0;
  double fraction = 0.0;
  double exception_measure = 0.0;  // total (x2, w2) area of slices failing the condition
  std::vector<Verdict> verdicts;   // row-major over (x2, w2)
  std::vector<bool> zero_slice;
};

// Applies a Beurling condition with the 2k x 2k matrix m and exponent n to each (x2, w2) slice of a
// field on axes (x1, x2, w1, w2). A slice passes when it vanishes or its sweep looks convergent.
CrossSectionReport cross_section_sweep(const SampledField& v, int k, const RMat& m, double n,
                                       const std::vector<double>& radii, const VerdictRule& rule = {},
                                       double zero_tol = 1e-12);

}  // namespace mtfr
