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
#include "mtfr/linalg.hpp"

#include <cmath>

namespace mtfr {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonSymmetric: return "NonSymmetric";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NonUnitary: return "NonUnitary";
    case ErrorKind::NotSymplectic: return "NotSymplectic";
    case ErrorKind::NotFree: return "NotFree";
    case ErrorKind::NoTauFound: return "NoTauFound";
    case ErrorKind::NotBlockDiagonal: return "NotBlockDiagonal";
    case ErrorKind::RealMatrix: return "RealMatrix";
    case ErrorKind::UnsupportedDilation: return "UnsupportedDilation";
    case ErrorKind::UnsupportedShape: return "UnsupportedShape";
    case ErrorKind::GridTooLarge: return "GridTooLarge";
    case ErrorKind::RadiusExceedsGrid: return "RadiusExceedsGrid";
    case ErrorKind::OffGridPoint: return "OffGridPoint";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::WrongAlternative: return "WrongAlternative";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::RealnessFailure: return "RealnessFailure";
    case ErrorKind::TrailingNotReal: return "TrailingNotReal";
    case ErrorKind::RankZero: return "RankZero";
  }
  return "Unknown";
}

bool is_internal(ErrorKind kind) {
  return kind == ErrorKind::NumericalFailure || kind == ErrorKind::RealnessFailure ||
         kind == ErrorKind::TrailingNotReal || kind == ErrorKind::RankZero;
}

RMat standard_j(int n) {
  RMat j = RMat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -RMat::Identity(n, n);
  return j;
}

double sigma_min(const RMat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<RMat> svd(m);
  return svd.singularValues().minCoeff();
}

double sigma_max(const RMat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<RMat> svd(m);
  return svd.singularValues().maxCoeff();
}

double sigma_min(const CMat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues().minCoeff();
}

RMat spd_sqrt(const RMat& m) {
  Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (m + m.transpose()));
  if (es.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "eigensolver failed");
  RVec ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0) throw Error(ErrorKind::Singular, "matrix is not positive definite");
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

double asymmetry(const RMat& m) {
  double scale = std::max(1.0, m.norm());
  return (m - m.transpose()).norm() / scale;
}

double asymmetry(const CMat& m) {
  double scale = std::max(1.0, m.norm());
  return (m - m.transpose()).norm() / scale;
}

RMat checked_symmetrize(const RMat& m, double tol, const char* what) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, std::string(what) + " is not square");
  double a = asymmetry(m);
  if (a > tol) throw Error(ErrorKind::NonSymmetric, std::string(what) + " asymmetry " + std::to_string(a));
  return 0.5 * (m + m.transpose());
}

CMat checked_symmetrize(const CMat& m, double tol, const char* what) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, std::string(what) + " is not square");
  double a = asymmetry(m);
  if (a > tol) throw Error(ErrorKind::NonSymmetric, std::string(what) + " asymmetry " + std::to_string(a));
  return 0.5 * (m + m.transpose());
}

void require_invertible(const RMat& m, double tol, const char* what) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, std::string(what) + " is not square");
  Eigen::JacobiSVD<RMat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return;
  if (!(s.minCoeff() > tol * s.maxCoeff()))
    throw Error(ErrorKind::Singular, std::string(what) + " is singular (sigma_min " + std::to_string(s.minCoeff()) + ")");
}

bool is_unitary(const CMat& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - CMat::Identity(u.rows(), u.cols())).norm() <= tol * std::max(1.0, std::sqrt(double(u.rows())));
}

bool is_orthogonal(const RMat& w, double tol) {
  if (w.rows() != w.cols()) return false;
  return (w.transpose() * w - RMat::Identity(w.rows(), w.cols())).norm() <= tol;
}

RMat polar_orthogonal(const RMat& m) {
  Eigen::JacobiSVD<RMat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

RMat block_diag(const RMat& a, const RMat& b) {
  RMat out = RMat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CMat block_diag(const CMat& a, const CMat& b) {
  CMat out = CMat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  // Golub-Welsch: eigenvalues of the Jacobi matrix.
  RMat jac = RMat::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    double b = i / std::sqrt(4.0 * i * i - 1.0);
    jac(i, i - 1) = b;
    jac(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(jac);
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = es.eigenvalues()(i);
    double v = es.eigenvectors()(0, i);
    weights[i] = 2.0 * v * v;
  }
}

}  // namespace mtfr
