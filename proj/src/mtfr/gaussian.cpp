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
#include "mtfr/gaussian.hpp"

#include <cmath>

namespace mtfr {

namespace {

double log_abs_det(const CMat& m) {
  Eigen::PartialPivLU<CMat> lu(m);
  const CMat& r = lu.matrixLU();
  double s = 0.0;
  for (int i = 0; i < r.rows(); ++i) s += std::log(std::abs(r(i, i)));
  return s;
}

double log_det_spd(const RMat& m) {
  Eigen::LLT<RMat> llt(m);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "Re M is not positive definite");
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i) s += 2.0 * std::log(llt.matrixL()(i, i));
  return s;
}

CMat sym(const CMat& m) { return 0.5 * (m + m.transpose()); }

void require_dim(const GeneralizedGaussian& g, long n, const char* what) {
  if (g.n() != n) throw Error(ErrorKind::DimensionMismatch, what);
}

}  // namespace

GeneralizedGaussian GeneralizedGaussian::standard(int n) {
  return GeneralizedGaussian{CMat::Identity(n, n), CVec::Zero(n), 0.0};
}

GeneralizedGaussian GeneralizedGaussian::normalized(int n) {
  return GeneralizedGaussian{CMat::Identity(n, n), CVec::Zero(n), 0.25 * n * std::log(2.0)};
}

cd GeneralizedGaussian::value(const RVec& x) const {
  CVec xc = x.cast<cd>();
  cd e = -kPi * (xc.transpose() * M * xc)(0, 0) + 2.0 * kPi * (b.transpose() * xc)(0, 0) + logamp;
  return std::exp(e);
}

double GeneralizedGaussian::log_modulus(const RVec& x) const {
  RMat mr = M.real();
  return -kPi * x.dot(mr * x) + 2.0 * kPi * b.real().dot(x) + logamp;
}

double GeneralizedGaussian::modulus(const RVec& x) const { return std::exp(log_modulus(x)); }

double GeneralizedGaussian::log_l2_norm() const {
  RMat x = M.real();
  RVec br = b.real();
  double q = br.dot(x.ldlt().solve(br));
  return 0.5 * (-0.5 * log_det_spd(2.0 * x) + 2.0 * kPi * q + 2.0 * logamp);
}

double GeneralizedGaussian::l2_norm() const { return std::exp(log_l2_norm()); }

double GeneralizedGaussian::log_l1_norm() const {
  RMat x = M.real();
  RVec br = b.real();
  double q = br.dot(x.ldlt().solve(br));
  return -0.5 * log_det_spd(x) + kPi * q + logamp;
}

GeneralizedGaussian make_gaussian(const CMat& m, const CVec& b, double logamp, const Tolerances& tol) {
  CMat ms = checked_symmetrize(m, tol.sym, "Gaussian M");
  if (b.size() != ms.rows()) throw Error(ErrorKind::DimensionMismatch, "Gaussian b");
  Eigen::SelfAdjointEigenSolver<RMat> es(RMat(ms.real()));
  if (ms.rows() > 0 && !(es.eigenvalues().minCoeff() > 0.0))
    throw Error(ErrorKind::InvalidInput, "Re M is not positive definite");
  if (!std::isfinite(logamp)) throw Error(ErrorKind::InvalidInput, "logamp is not finite");
  return GeneralizedGaussian{ms, b, logamp};
}

GeneralizedGaussian apply_chirp(const GeneralizedGaussian& g, const RMat& q) {
  require_dim(g, q.rows(), "chirp dimension");
  GeneralizedGaussian out = g;
  out.M = sym(g.M - cd(0, 1) * q.cast<cd>());
  return out;
}

GeneralizedGaussian apply_dilation(const GeneralizedGaussian& g, const RMat& l) {
  require_dim(g, l.rows(), "dilation dimension");
  require_invertible(l, Tolerances{}.inv, "dilation L");
  Eigen::PartialPivLU<RMat> lu(l);
  CMat linv = lu.inverse().cast<cd>();
  GeneralizedGaussian out;
  out.M = sym(linv.transpose() * g.M * linv);
  out.b = linv.transpose() * g.b;
  out.logamp = g.logamp - 0.5 * std::log(std::abs(lu.determinant()));
  return out;
}

GeneralizedGaussian apply_partial_fourier(const GeneralizedGaussian& g, const std::vector<int>& axes,
                                          double max_condition) {
  const int n = g.n();
  std::vector<int> s = axes, r;
  std::vector<bool> in(n, false);
  for (int a : s) {
    if (a < 0 || a >= n) throw Error(ErrorKind::DimensionMismatch, "partial Fourier axis");
    in[a] = true;
  }
  for (int j = 0; j < n; ++j)
    if (!in[j]) r.push_back(j);
  const int ks = static_cast<int>(s.size()), kr = static_cast<int>(r.size());

  CMat mss(ks, ks), msr(ks, kr), mrr(kr, kr);
  CVec bs(ks), br(kr);
  for (int i = 0; i < ks; ++i) {
    bs(i) = g.b(s[i]);
    for (int j = 0; j < ks; ++j) mss(i, j) = g.M(s[i], s[j]);
    for (int j = 0; j < kr; ++j) msr(i, j) = g.M(s[i], r[j]);
  }
  for (int i = 0; i < kr; ++i) {
    br(i) = g.b(r[i]);
    for (int j = 0; j < kr; ++j) mrr(i, j) = g.M(r[i], r[j]);
  }

  Eigen::JacobiSVD<CMat> svd(mss);
  double cond = svd.singularValues().maxCoeff() / svd.singularValues().minCoeff();
  if (!(cond <= max_condition)) throw Error(ErrorKind::NumericalFailure, "Schur block condition " + std::to_string(cond));
  Eigen::PartialPivLU<CMat> lu(mss);
  CMat kinv = lu.inverse();
  kinv = sym(kinv);

  const cd i1(0, 1);
  CMat nss = kinv;
  CMat nsr = -i1 * kinv * msr;
  CMat nrr = sym(mrr - msr.transpose() * kinv * msr);
  CVec nbs = -i1 * kinv * bs;
  CVec nbr = br - msr.transpose() * kinv * bs;

  GeneralizedGaussian out;
  out.M.resize(n, n);
  out.b.resize(n);
  for (int i = 0; i < ks; ++i) {
    out.b(s[i]) = nbs(i);
    for (int j = 0; j < ks; ++j) out.M(s[i], s[j]) = nss(i, j);
    for (int j = 0; j < kr; ++j) {
      out.M(s[i], r[j]) = nsr(i, j);
      out.M(r[j], s[i]) = nsr(i, j);
    }
  }
  for (int i = 0; i < kr; ++i) {
    out.b(r[i]) = nbr(i);
    for (int j = 0; j < kr; ++j) out.M(r[i], r[j]) = nrr(i, j);
  }
  cd completed = kPi * (bs.transpose() * kinv * bs)(0, 0);
  out.logamp = g.logamp + completed.real() - 0.5 * log_abs_det(mss);
  return out;
}

GeneralizedGaussian apply_letter(const GeneralizedGaussian& g, const Letter& letter) {
  if (const auto* c = std::get_if<Chirp>(&letter)) return apply_chirp(g, c->Q);
  if (const auto* d = std::get_if<Dilation>(&letter)) return apply_dilation(g, d->L);
  return apply_partial_fourier(g, std::get<PartialFourier>(letter).axes);
}

GeneralizedGaussian apply_word(const GeneralizedGaussian& g, const GeneratorWord& w) {
  require_dim(g, w.n, "word dimension");
  GeneralizedGaussian out = g;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out = apply_letter(out, *it);
  return out;
}

GeneralizedGaussian tensor(const GeneralizedGaussian& a, const GeneralizedGaussian& b) {
  GeneralizedGaussian out;
  out.M = block_diag(a.M, b.M);
  out.b.resize(a.n() + b.n());
  out.b << a.b, b.b;
  out.logamp = a.logamp + b.logamp;
  return out;
}

GeneralizedGaussian conjugate(const GeneralizedGaussian& g) {
  return GeneralizedGaussian{g.M.conjugate(), g.b.conjugate(), g.logamp};
}

PartialStftKernel::PartialStftKernel(const GeneralizedGaussian& f, const GeneralizedGaussian& g, int k)
    : d_(f.n()), k_(k) {
  if (g.n() != d_) throw Error(ErrorKind::DimensionMismatch, "partial STFT windows");
  if (k < 1 || k > d_) throw Error(ErrorKind::InvalidInput, "partial STFT needs 1 <= k <= d");
  const int r = d_ - k;
  CMat gb = g.M.conjugate();
  CMat a = f.M.topLeftCorner(k, k) + gb.topLeftCorner(k, k);
  mf12_ = f.M.topRightCorner(k, r);
  mf22_ = f.M.bottomRightCorner(r, r);
  g11_ = gb.topLeftCorner(k, k);
  g12_ = gb.topRightCorner(k, r);
  g22_ = gb.bottomRightCorner(r, r);
  bf1_ = f.b.head(k);
  bf2_ = f.b.tail(r);
  bg1_ = g.b.head(k).conjugate();
  bg2_ = g.b.tail(r).conjugate();
  Eigen::JacobiSVD<CMat> svd(a);
  double cond = svd.singularValues().maxCoeff() / svd.singularValues().minCoeff();
  if (!(cond <= Tolerances{}.schur_cond)) throw Error(ErrorKind::NumericalFailure, "partial STFT quadratic form is ill-conditioned");
  ainv_ = a.inverse();
  const_log_ = -0.5 * log_abs_det(a) + f.logamp + g.logamp;
}

double PartialStftKernel::log_modulus(const RVec& x, const RVec& omega) const {
  const int k = k_, r = d_ - k_;
  CVec x1 = x.head(k).cast<cd>(), x2 = x.tail(r).cast<cd>();
  CVec w1 = omega.head(k).cast<cd>(), y2 = -omega.tail(r).cast<cd>();
  const cd i1(0, 1);
  CVec v = bf1_ - mf12_ * x2 + g11_ * x1 - g12_ * y2 + bg1_ - i1 * w1;
  cd c = -kPi * (x2.transpose() * mf22_ * x2)(0, 0) + 2.0 * kPi * (bf2_.transpose() * x2)(0, 0);
  c += -kPi * ((x1.transpose() * g11_ * x1)(0, 0) - 2.0 * (x1.transpose() * g12_ * y2)(0, 0) +
               (y2.transpose() * g22_ * y2)(0, 0));
  c += 2.0 * kPi * (-(bg1_.transpose() * x1)(0, 0) + (bg2_.transpose() * y2)(0, 0));
  cd e = kPi * (v.transpose() * ainv_ * v)(0, 0) + c;
  return e.real() + const_log_;
}

double PartialStftKernel::log_modulus(const RVec& lambda) const {
  return log_modulus(RVec(lambda.head(d_)), RVec(lambda.tail(d_)));
}

double partial_stft_point(const GeneralizedGaussian& f, const GeneralizedGaussian& g, int k, const RVec& x,
                          const RVec& omega) {
  return std::exp(PartialStftKernel(f, g, k).log_modulus(x, omega));
}

GeneralizedGaussian random_gaussian(int n, Rng& rng) {
  RMat re = random_spd(n, rng, 0.5, 2.0);
  RMat im = random_symmetric(n, rng, 0.5);
  CMat m(n, n);
  m.real() = re;
  m.imag() = im;
  RMat br = random_real(n, 1, rng, -0.3, 0.3), bi = random_real(n, 1, rng, -0.3, 0.3);
  CVec b(n);
  b.real() = br.col(0);
  b.imag() = bi.col(0);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  return GeneralizedGaussian{m, b, u(rng)};
}

}  // namespace mtfr
