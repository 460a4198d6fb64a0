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
#include "mtfr/unitary_factor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mtfr {

BlockDiagTest block_diag_test(const CMat& u, int d, double tol) {
  if (u.rows() != u.cols() || u.rows() != 2 * d || d < 1)
    throw Error(ErrorKind::DimensionMismatch, "block test needs a 2d x 2d matrix");
  CMat s = u.transpose() * u;
  BlockDiagTest r;
  r.offdiag_norm = std::sqrt(s.topRightCorner(d, d).squaredNorm() + s.bottomLeftCorner(d, d).squaredNorm());
  double total = s.norm();
  r.relative = total > 0 ? r.offdiag_norm / total : 0.0;
  r.block_diagonal = r.relative <= tol;
  return r;
}

JointDiagonalization joint_diagonalize(const CMat& s, const Tolerances& tol) {
  int n = static_cast<int>(s.rows());
  if (s.cols() != n) throw Error(ErrorKind::DimensionMismatch, "joint diagonalization");
  if (asymmetry(s) > std::max(tol.sym, 1e-10)) throw Error(ErrorKind::NonSymmetric, "S is not symmetric");
  if (!is_unitary(s, std::max(tol.unit, 1e-9))) throw Error(ErrorKind::NonUnitary, "S is not unitary");
  RMat x = 0.5 * (s.real() + s.real().transpose());
  RMat y = 0.5 * (s.imag() + s.imag().transpose());

  Eigen::SelfAdjointEigenSolver<RMat> ex(x);
  if (ex.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "eigensolver failed on Re S");
  RMat o = ex.eigenvectors();
  const RVec& ev = ex.eigenvalues();

  // Within each cluster of equal Re S eigenvalues, diagonalize Im S.
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && ev(end) - ev(end - 1) <= tol.cluster) ++end;
    int m = end - start;
    if (m > 1) {
      RMat basis = o.middleCols(start, m);
      RMat yc = basis.transpose() * y * basis;
      Eigen::SelfAdjointEigenSolver<RMat> ey(0.5 * (yc + yc.transpose()));
      if (ey.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "eigensolver failed on Im S block");
      o.middleCols(start, m) = basis * ey.eigenvectors();
    }
    start = end;
  }

  CMat dcm = o.transpose().cast<cd>() * s * o.cast<cd>();
  JointDiagonalization out{o, dcm.diagonal()};
  double off = (dcm - CMat(out.s.asDiagonal())).norm();
  if (off > 1e-8) throw Error(ErrorKind::NumericalFailure, "joint diagonalization stalled (residual " + std::to_string(off) + ")");
  for (int j = 0; j < n; ++j) out.s(j) /= std::abs(out.s(j));
  return out;
}

CMat ODOFactorization::reconstruct() const { return W1.cast<cd>() * sigma.asDiagonal() * W2.cast<cd>(); }

ODOFactorization odo_svd(const CMat& u, const Tolerances& tol) {
  int n = static_cast<int>(u.rows());
  if (!is_unitary(u, std::max(tol.unit, 1e-9))) throw Error(ErrorKind::NonUnitary, "odo_svd input");
  CMat s = u.transpose() * u;
  s = (0.5 * (s + s.transpose())).eval();
  JointDiagonalization jd = joint_diagonalize(s, tol);

  ODOFactorization f;
  f.W2 = jd.O.transpose();
  f.sigma = jd.s.cwiseSqrt();
  CMat w1 = u * jd.O.cast<cd>();
  for (int j = 0; j < n; ++j) w1.col(j) /= f.sigma(j);

  // Each column is real up to a unit phase; move that phase into sigma.
  for (int j = 0; j < n; ++j) {
    cd sq = w1.col(j).cwiseProduct(w1.col(j)).sum();
    if (std::abs(sq) < 1e-300) continue;
    cd ph = std::polar(1.0, 0.5 * std::arg(sq));
    w1.col(j) /= ph;
    f.sigma(j) *= ph;
  }
  if (w1.imag().norm() > 1e-6) throw Error(ErrorKind::NumericalFailure, "W1 is not real after phase repair");
  f.W1 = polar_orthogonal(w1.real());
  CMat core = f.W1.transpose().cast<cd>() * u * f.W2.transpose().cast<cd>();
  for (int j = 0; j < n; ++j) f.sigma(j) = core(j, j) / std::abs(core(j, j));

  double err = (f.reconstruct() - u).norm();
  if (!(err <= tol.recon)) throw Error(ErrorKind::NumericalFailure, "odo_svd reconstruction error " + std::to_string(err));
  return f;
}

CMat takagi_symmetric_unitary(const CMat& s, const Tolerances& tol) {
  JointDiagonalization jd = joint_diagonalize(s, tol);
  CMat v = jd.s.cwiseSqrt().asDiagonal() * jd.O.transpose().cast<cd>();
  double err = (v.transpose() * v - s).norm();
  if (!(err <= tol.recon)) throw Error(ErrorKind::NumericalFailure, "Takagi reconstruction error " + std::to_string(err));
  return v;
}

SortedDiagonal sort_by_imag(const CVec& sigma, double tol) {
  int n = static_cast<int>(sigma.size());
  RVec sign = RVec::Ones(n);
  CVec flipped = sigma;
  for (int j = 0; j < n; ++j) {
    cd v = sigma(j);
    bool flip = v.imag() < -tol || (std::abs(v.imag()) <= tol && v.real() < 0);
    if (flip) {
      sign(j) = -1.0;
      flipped(j) = -v;
    }
    if (std::abs(flipped(j).imag()) <= tol && std::abs(flipped(j) - cd(1.0)) > 1e-6)
      throw Error(ErrorKind::TrailingNotReal, "real diagonal entry is not +-1");
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto positive = [&](int j) { return flipped(j).imag() > tol; };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    bool pa = positive(a), pb = positive(b);
    if (pa != pb) return pa;
    if (!pa) return false;
    if (flipped(a).imag() != flipped(b).imag()) return flipped(a).imag() > flipped(b).imag();
    return flipped(a).real() > flipped(b).real();
  });

  SortedDiagonal out;
  out.sorted.resize(n);
  RMat perm = RMat::Zero(n, n);
  RVec new_sign(n);
  for (int i = 0; i < n; ++i) {
    perm(i, order[i]) = 1.0;
    new_sign(i) = sign(order[i]);
    out.sorted(i) = flipped(order[i]);
    if (positive(order[i])) ++out.k;
  }
  out.left = new_sign.asDiagonal() * perm;
  out.right = perm.transpose();
  return out;
}

}  // namespace mtfr
