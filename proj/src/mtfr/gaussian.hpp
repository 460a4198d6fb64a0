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

#include "mtfr/random.hpp"
#include "mtfr/symplectic.hpp"

namespace mtfr {

// G(x) = exp(-pi x^t M x + 2 pi b^t x + logamp); the global phase is not tracked.
struct GeneralizedGaussian {
  CMat M;  // complex symmetric, Re M positive definite
  CVec b;
  double logamp = 0.0;

  int n() const { return static_cast<int>(M.rows()); }

  // exp(-pi |x|^2).
  static GeneralizedGaussian standard(int n);
  // Standard Gaussian scaled to unit L2 norm.
  static GeneralizedGaussian normalized(int n);

  cd value(const RVec& x) const;
  double log_modulus(const RVec& x) const;
  double modulus(const RVec& x) const;
  double log_l2_norm() const;
  double l2_norm() const;
  double log_l1_norm() const;
};

// Validating constructor: symmetrizes M within tol.sym, requires Re M positive definite.
GeneralizedGaussian make_gaussian(const CMat& m, const CVec& b, double logamp, const Tolerances& tol = {});

GeneralizedGaussian apply_chirp(const GeneralizedGaussian& g, const RMat& q);
GeneralizedGaussian apply_dilation(const GeneralizedGaussian& g, const RMat& l);
GeneralizedGaussian apply_partial_fourier(const GeneralizedGaussian& g, const std::vector<int>& axes,
                                          double max_condition = Tolerances{}.schur_cond);
GeneralizedGaussian apply_letter(const GeneralizedGaussian& g, const Letter& letter);
GeneralizedGaussian apply_word(const GeneralizedGaussian& g, const GeneratorWord& w);
GeneralizedGaussian tensor(const GeneralizedGaussian& a, const GeneralizedGaussian& b);
GeneralizedGaussian conjugate(const GeneralizedGaussian& g);

// Closed-form |V^k_g f| with V^k_g f(x1, x2, w1, w2) = int f(t, x2) conj(g(t - x1, -w2)) e^{-2 pi i t w1} dt.
class PartialStftKernel {
 public:
  PartialStftKernel(const GeneralizedGaussian& f, const GeneralizedGaussian& g, int k);
  int d() const { return d_; }
  int k() const { return k_; }
  double log_modulus(const RVec& x, const RVec& omega) const;
  // lambda = (x, omega) in R^{2d}.
  double log_modulus(const RVec& lambda) const;

 private:
  int d_, k_;
  CMat mf12_, mf22_, g11_, g12_, g22_;
  CVec bf1_, bf2_, bg1_, bg2_;
  CMat ainv_;
  double const_log_ = 0.0;
};

double partial_stft_point(const GeneralizedGaussian& f, const GeneralizedGaussian& g, int k, const RVec& x,
                          const RVec& omega);

// Well-conditioned random Gaussian: Re M eigenvalues in [0.5, 2], |Im M| and |b| moderate.
GeneralizedGaussian random_gaussian(int n, Rng& rng);

}  // namespace mtfr
