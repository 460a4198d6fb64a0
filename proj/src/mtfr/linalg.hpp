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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "mtfr/error.hpp"

namespace mtfr {

using cd = std::complex<double>;
using RMat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Numerical tolerances shared by every module.
struct Tolerances {
  double sympl = 1e-10;   // relative to max(1, |M|_F^2)
  double unit = 1e-10;
  double inv = 1e-8;      // sigma_min threshold relative to |.|_2
  double recon = 1e-9;
  double sym = 1e-12;     // symmetrize below, reject above
  double blk = 1e-8;      // relative off-diagonal block norm
  double borderline = 1e-6;
  double rank = 1e-8;     // relative to sigma_max
  double cluster = 1e-8;  // eigenvalue clustering
  double schur_cond = 1e12;
  double verify = 1e-6;
};

// Standard symplectic form J = ((0, I), (-I, 0)) of size 2n.
RMat standard_j(int n);

double sigma_min(const RMat& m);
double sigma_max(const RMat& m);
double sigma_min(const CMat& m);

// Square root of a symmetric positive definite matrix.
RMat spd_sqrt(const RMat& m);

// Symmetrizes m if its relative asymmetry is below tol, throws NonSymmetric otherwise.
RMat checked_symmetrize(const RMat& m, double tol, const char* what);
CMat checked_symmetrize(const CMat& m, double tol, const char* what);

double asymmetry(const RMat& m);
double asymmetry(const CMat& m);

// Throws Singular when sigma_min(m) <= tol * |m|_2.
void require_invertible(const RMat& m, double tol, const char* what);

bool is_unitary(const CMat& u, double tol);
bool is_orthogonal(const RMat& w, double tol);

// Closest orthogonal matrix in Frobenius norm.
RMat polar_orthogonal(const RMat& m);

RMat block_diag(const RMat& a, const RMat& b);
CMat block_diag(const CMat& a, const CMat& b);

// Nodes and weights of n-point Gauss-Legendre quadrature on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace mtfr
