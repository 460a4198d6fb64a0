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

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "mtfr/gaussian.hpp"
#include "mtfr/symplectic.hpp"

namespace mtfr {

// Centered axis: t_j = -extent/2 + j * extent / points.
struct Axis {
  std::size_t points = 0;
  double extent = 0.0;

  double spacing() const { return extent / static_cast<double>(points); }
  double coord(std::size_t j) const { return -0.5 * extent + static_cast<double>(j) * spacing(); }
  bool operator==(const Axis& o) const { return points == o.points && extent == o.extent; }
};

std::vector<Axis> uniform_axes(int n, std::size_t points, double extent);

struct GridConfig {
  std::size_t max_elements = std::size_t(1) << 26;
};

struct GridDiagnostics {
  std::vector<std::string> warnings;
  void warn(const std::string& w);
};

// Complex samples on a product of centered axes, row-major (last axis fastest).
class SampledField {
 public:
  SampledField() = default;
  // Zero-filled; each axis needs a power-of-two point count >= 8 and positive extent.
  explicit SampledField(std::vector<Axis> axes, const GridConfig& cfg = {});

  int dims() const { return static_cast<int>(axes_.size()); }
  const std::vector<Axis>& axes() const { return axes_; }
  std::vector<std::size_t> shape() const;
  std::size_t size() const { return values_.size(); }
  std::size_t stride(int axis) const { return strides_[axis]; }
  std::vector<cd>& values() { return values_; }
  const std::vector<cd>& values() const { return values_; }
  cd& operator[](std::size_t i) { return values_[i]; }
  cd operator[](std::size_t i) const { return values_[i]; }

  void set_axis(int axis, Axis a);
  std::vector<std::size_t> unravel(std::size_t flat) const;
  RVec coords(std::size_t flat) const;
  double cell_volume() const;

 private:
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::vector<cd> values_;
};

SampledField sample(const GeneralizedGaussian& g, const std::vector<Axis>& axes);
SampledField sample_function(const std::vector<Axis>& axes, const std::function<cd(const RVec&)>& fn);

// Continuous Fourier transform along the given axes; each transformed axis moves to its dual grid
// (points N, extent N / T).
SampledField fourier_grid(SampledField f, const std::vector<int>& axes, bool inverse = false);
SampledField chirp_grid(SampledField f, const RMat& q, GridDiagnostics* diag = nullptr);
// n = 1: any nonzero L. n >= 2: L must be a permutation times a diagonal, else UnsupportedDilation.
SampledField dilation_grid(SampledField f, const RMat& l);

SampledField apply_letter_grid(SampledField f, const Letter& letter, GridDiagnostics* diag = nullptr);
SampledField apply_word_grid(SampledField f, const GeneratorWord& w, GridDiagnostics* diag = nullptr);

// Output subsampling: x1 and x2 axes keep every x_stride-th sample, w2 every omega2_stride-th.
struct StftSampling {
  std::size_t x_stride = 1;
  std::size_t omega2_stride = 1;
};

// V^k_g f on axes (x1, x2, w1, w2); the w1 axes live on the dual grid.
SampledField partial_stft_grid(const SampledField& f, const SampledField& g, int k, const StftSampling& s = {},
                               const GridConfig& cfg = {});

// Samples of f (x) conj(g) on the concatenated grid.
SampledField tensor_conj(const SampledField& f, const SampledField& g, const GridConfig& cfg = {});

SampledField tfr_grid(const GeneratorWord& w, const SampledField& f, const SampledField& g, const GridConfig& cfg = {},
                      GridDiagnostics* diag = nullptr);

double l2_norm(const SampledField& f);
cd inner_product(const SampledField& a, const SampledField& b);

struct WeightSpec {
  enum class Kind { Beurling, Gaussian, GelfandShilov };
  Kind kind = Kind::Beurling;
  RMat matrix;          // Beurling: M; Gaussian: Omega^{-1}
  double param = 0.0;   // Beurling: N; Gaussian: alpha; GelfandShilov: alpha or beta
  double p = 2.0;       // GelfandShilov exponent
  bool first_half = true;  // GelfandShilov: weight on x (first d) or omega (last d)

  // e^{pi |l.M l|} / (1 + |l|)^N
  static WeightSpec beurling(const RMat& m, double n);
  // e^{pi alpha |Omega^{-1} l|^2 / 2}
  static WeightSpec gaussian(const RMat& omega, double alpha);
  // e^{(pi/p) a^p |x|_p^p} on x or omega
  static WeightSpec gelfand_shilov(double p, double a, bool on_x);

  double log_weight(const RVec& lambda) const;
};

// Midpoint sums of |field| * weight over |l| <= R; one value per radius.
std::vector<double> weighted_truncated_integrals(const SampledField& f, const WeightSpec& w,
                                                 const std::vector<double>& radii);
double weighted_truncated_integral(const SampledField& f, const WeightSpec& w, double radius);

// { l : lo <= inverse_map (l - center) <= hi }.
struct Region {
  RMat inverse_map;
  RVec center;
  RVec lo, hi;

  static Region box(const RVec& lo, const RVec& hi);
  // Image of the box [lo, hi] under l = map y.
  static Region linear_image(const RMat& map, const RVec& lo, const RVec& hi);
  bool contains(const RVec& l) const;
};

double mass_outside(const SampledField& f, const Region& r);

// Time-frequency shift rho(x, w) f(t) = e^{-pi i x w} e^{2 pi i w t} f(t - x); x must be a grid multiple.
SampledField time_frequency_shift(const SampledField& f, double x, double w);

// min_c |rho(M l) f - c A rho(l) A^{-1} f| / |f| on a 1-D grid.
double intertwining_check(const GeneratorWord& w, const RVec& lambda, const GeneralizedGaussian& f, const Axis& axis,
                          GridDiagnostics* diag = nullptr);

// Trigonometric interpolant of a field, evaluated at arbitrary points inside the grid box.
class BandLimitedInterpolator {
 public:
  explicit BandLimitedInterpolator(const SampledField& f);
  cd operator()(const RVec& point) const;

 private:
  std::vector<Axis> axes_;
  std::vector<cd> coeffs_;
};

}  // namespace mtfr
