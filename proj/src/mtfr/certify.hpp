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

#include <optional>
#include <string>
#include <vector>

#include "mtfr/gaussian.hpp"
#include "mtfr/grid.hpp"
#include "mtfr/symplectic.hpp"
#include "mtfr/unitary_factor.hpp"

namespace mtfr {

enum class Alternative { I, II };

const char* alternative_name(Alternative a);

struct Classification {
  Alternative alternative = Alternative::II;
  BlockDiagTest test;
  PreIwasawa pre;
};

// Input must be in Sp(4d); decides on U^t U being d x d block-diagonal.
Classification classify(const SymplecticMatrix& bold, const Tolerances& tol = {});

struct Alt1Decomposition {
  RMat W;  // real orthogonal 2d x 2d
  CMat V1, V2;
};

// U = W diag(V1, V2). Throws NotBlockDiagonal, or RealnessFailure if W is not real within tol.recon.
Alt1Decomposition alt1_decompose(const CMat& u, int d, const Tolerances& tol = {});

struct CertifyOptions {
  Tolerances tol;
  FactorOptions factor;
  // Sign of P22 in the chirp letter of word_B; only -1 verifies.
  int p22_sign = -1;
};

struct Certificate {
  Alternative alternative = Alternative::II;
  int d = 0;
  RMat matrix;  // the certified element of Sp(4d)
  double offdiag_norm = 0.0;
  double offdiag_relative = 0.0;
  PreIwasawa pre;

  // Alternative I.
  RMat W;
  CMat V1, V2;

  // Alternative II.
  int k = 0;
  cd tau = 1.0;
  RMat P, P11, P12, P22;
  RMat W1, W2;
  RVec gamma1;  // leading k singular values of P12
  RMat Pi;
  RMat Omega;
  double omega_condition = 0.0;
  GeneratorWord word_A, word_B;
  int p22_sign = -1;

  std::vector<std::string> warnings;
};

// Alternative II data. Throws WrongAlternative for block-diagonal U^t U and RankZero if P12 vanishes.
Certificate alt2_certificate(const SymplecticMatrix& bold, const CertifyOptions& opt = {});
Certificate certify(const SymplecticMatrix& bold, const CertifyOptions& opt = {});

struct IdentityReport {
  double max_error = 0.0;
  std::size_t worst = 0;  // index of the worst point
  std::size_t points = 0;
};

// Relative error |a - b| / max(a, floor) from log-moduli.
double log_relative_error(double log_a, double log_b, double floor);
IdentityReport compare_log_moduli(const std::vector<double>& lhs, const std::vector<double>& rhs, double floor);

// Word of the certified matrix, used for the left-hand side.
GeneratorWord certificate_matrix_word(const Certificate& cert);

// log |W_A(f, g)(lambda)| via the Gaussian oracle.
std::vector<double> tfr_log_moduli(const Certificate& cert, const GeneralizedGaussian& f, const GeneralizedGaussian& g,
                                   const std::vector<RVec>& points);
// log( |det Omega|^{-1/2} |V^k_{Bg} A f(Omega^{-1} lambda)| ) via the Gaussian oracle.
std::vector<double> reduced_log_moduli(const Certificate& cert, const GeneralizedGaussian& f,
                                       const GeneralizedGaussian& g, const std::vector<RVec>& points);
IdentityReport verify_identity(const Certificate& cert, const GeneralizedGaussian& f, const GeneralizedGaussian& g,
                               const std::vector<RVec>& points, double floor = 1e-300);

// Right-hand side on the grid: word_A f and word_B g sampled, partial STFT, interpolated at Omega^{-1} lambda.
// Points whose preimage leaves the STFT box get NaN.
std::vector<double> reduced_moduli_grid(const Certificate& cert, const SampledField& f, const SampledField& g,
                                        const std::vector<RVec>& points, GridDiagnostics* diag = nullptr);

// Uniform points in the ball of radius r in R^dim.
std::vector<RVec> random_ball_points(int dim, std::size_t count, double radius, Rng& rng);

struct Counterexample {
  SampledField f, g;
  Region predicted;
  RVec bump_lo, bump_hi;
};

// Smooth bump exp(-1/(1-u^2)) per axis on the box [lo, hi].
SampledField bump_field(const std::vector<Axis>& axes, const RVec& lo, const RVec& hi);

// f = R_{V1}^{-1} f0 and g = R_{conj V2}^{-1} g0 for bumps f0, g0 on [lo, hi]^d; the TFR of (f, g)
// is supported in L W ([lo, hi]^d x [lo, hi]^d).
Counterexample counterexample_alt1(const Certificate& cert, const RVec& lo, const RVec& hi, const Axis& axis,
                                   GridDiagnostics* diag = nullptr);

struct QuadraticReduction {
  CMat V;
  bool real = false;  // the obstructed case
  std::string note;
};

// V = conj(V2) V1^*.
QuadraticReduction quadratic_reduce(const CMat& v1, const CMat& v2, const Tolerances& tol = {});

struct PairReduction {
  int k = 0;
  RMat Omega;  // diag(W2^t, W1 B)
  RMat B, C;   // diagonal
  RMat W1, W2;
  CVec sigma;  // sorted diagonal of the ODO factorization
  GeneratorWord word_B;  // Chirp(C) Dilation(W2)
};

// Throws RealMatrix when |Im V| <= tol.rank.
PairReduction pair_to_partial(const CMat& v, const Tolerances& tol = {});

// Compares |f(x)| |R_V f(w)| with |det Omega|^{-1/2} (|Bf| (x) |F_k Bf|)(Omega^{-1} lambda).
IdentityReport verify_pair_identity(const CMat& v, const PairReduction& red, const GeneralizedGaussian& f,
                                    const std::vector<RVec>& points, double floor = 1e-300);

}  // namespace mtfr
