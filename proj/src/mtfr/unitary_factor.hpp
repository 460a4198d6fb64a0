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

#include "mtfr/linalg.hpp"

namespace mtfr {

struct BlockDiagTest {
  bool block_diagonal = false;
  double offdiag_norm = 0.0;  // sqrt(|S12|_F^2 + |S21|_F^2), S = U^t U
  double relative = 0.0;      // offdiag_norm / |S|_F
};

BlockDiagTest block_diag_test(const CMat& u, int d, double tol = Tolerances{}.blk);

// S = O diag(s) O^t for a symmetric unitary S, O real orthogonal.
struct JointDiagonalization {
  RMat O;
  CVec s;
};

JointDiagonalization joint_diagonalize(const CMat& s, const Tolerances& tol = {});

// U = W1 diag(sigma) W2 with W1, W2 real orthogonal and |sigma_j| = 1.
struct ODOFactorization {
  RMat W1;
  CVec sigma;
  RMat W2;

  CMat reconstruct() const;
};

ODOFactorization odo_svd(const CMat& u, const Tolerances& tol = {});

// V unitary with V^t V = S.
CMat takagi_symmetric_unitary(const CMat& s, const Tolerances& tol = {});

// sorted = left * diag(sigma) * right, left = signs * permutation, right = permutation^t.
struct SortedDiagonal {
  RMat left;
  RMat right;
  CVec sorted;
  int k = 0;  // number of entries with positive imaginary part
};

SortedDiagonal sort_by_imag(const CVec& sigma, double tol = Tolerances{}.rank);

}  // namespace mtfr
