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
#include "mtfr/certify.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace mtfr {

namespace {

RMat permutation_swap(int d, int k) {
  std::vector<int> idx(2 * d);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < k; ++i) std::swap(idx[i], idx[d + i]);
  RMat p = RMat::Zero(2 * d, 2 * d);
  for (int i = 0; i < 2 * d; ++i) p(i, idx[i]) = 1.0;
  return p;
}

double log_abs_det(const RMat& m) {
  Eigen::PartialPivLU<RMat> lu(m);
  return lu.matrixLU().diagonal().array().abs().log().sum();
}

void add_borderline_warning(const BlockDiagTest& t, const Tolerances& tol, std::vector<std::string>& warnings) {
  if (t.relative >= tol.blk && t.relative <= tol.borderline)
    warnings.push_back("BorderlineWarning: relative off-diagonal norm " + std::to_string(t.relative) +
                       " lies in [" + std::to_string(tol.blk) + ", " + std::to_string(tol.borderline) + "]");
}

}  // namespace

const char* alternative_name(Alternative a) { return a == Alternative::I ? "I" : "II"; }

Classification classify(const SymplecticMatrix& bold, const Tolerances& tol) {
  if (bold.n() % 2 != 0)
    throw Error(ErrorKind::InvalidInput, "half-dimension " + std::to_string(bold.n()) + " is odd; expected Sp(4d)");
  Classification c;
  c.pre = pre_iwasawa(bold, tol);
  c.test = block_diag_test(c.pre.U, bold.n() / 2, tol.blk);
  c.alternative = c.test.block_diagonal ? Alternative::I : Alternative::II;
  return c;
}

Alt1Decomposition alt1_decompose(const CMat& u, int d, const Tolerances& tol) {
  BlockDiagTest t = block_diag_test(u, d, tol.blk);
  if (!t.block_diagonal)
    throw Error(ErrorKind::NotBlockDiagonal, "U^t U off-diagonal norm " + std::to_string(t.offdiag_norm));
  CMat s = u.transpose() * u;
  Alt1Decomposition out;
  out.V1 = takagi_symmetric_unitary(s.topLeftCorner(d, d), tol);
  out.V2 = takagi_symmetric_unitary(s.bottomRightCorner(d, d), tol);
  CMat w = u * block_diag(CMat(out.V1.adjoint()), CMat(out.V2.adjoint()));
  if (w.imag().norm() > tol.recon * std::sqrt(2.0 * d))
    throw Error(ErrorKind::RealnessFailure, "W has imaginary part " + std::to_string(w.imag().norm()));
  out.W = w.real();
  CMat back = out.W.cast<cd>() * block_diag(out.V1, out.V2);
  if (!is_orthogonal(out.W, tol.recon) || (back - u).norm() > tol.recon * std::sqrt(2.0 * d))
    throw Error(ErrorKind::RealnessFailure, "U = W diag(V1, V2) reconstruction failed");
  return out;
}

Certificate alt2_certificate(const SymplecticMatrix& bold, const CertifyOptions& opt) {
  const Tolerances& tol = opt.tol;
  Classification cls = classify(bold, tol);
  if (cls.alternative != Alternative::II)
    throw Error(ErrorKind::WrongAlternative, "U^t U is block-diagonal; no Alternative II certificate exists");
  const int d = bold.n() / 2;
  Certificate c;
  c.alternative = Alternative::II;
  c.d = d;
  c.matrix = bold.matrix();
  c.offdiag_norm = cls.test.offdiag_norm;
  c.offdiag_relative = cls.test.relative;
  c.pre = cls.pre;
  c.p22_sign = opt.p22_sign;
  add_borderline_warning(cls.test, tol, c.warnings);

  c.tau = opt.factor.tau ? *opt.factor.tau : select_tau(c.pre.U, opt.factor.tau_scan, tol);
  CMat ut = c.tau * c.pre.U;
  RMat at = ut.real(), bt = ut.imag();
  if (sigma_min(bt) <= tol.inv * sigma_max(bt))
    throw Error(ErrorKind::NotFree, "Im(tau U) is singular for the chosen tau");
  RMat p = bt.partialPivLu().solve(at);
  if (asymmetry(p) > 1e-8) throw Error(ErrorKind::NumericalFailure, "B^-1 A is not symmetric");
  c.P = (0.5 * (p + p.transpose())).eval();
  c.P11 = c.P.topLeftCorner(d, d);
  c.P12 = c.P.topRightCorner(d, d);
  c.P22 = c.P.bottomRightCorner(d, d);

  Eigen::JacobiSVD<RMat> svd(c.P12, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RVec gam = svd.singularValues();
  const double gmax = gam.size() ? gam(0) : 0.0;
  c.k = 0;
  for (int i = 0; i < gam.size(); ++i)
    if (gmax > 0.0 && gam(i) > tol.rank * gmax) ++c.k;
  if (c.k == 0) throw Error(ErrorKind::RankZero, "P12 vanishes; the input was misclassified");
  c.W1 = svd.matrixU();
  c.W2 = svd.matrixV();
  c.gamma1 = gam.head(c.k);
  c.Pi = permutation_swap(d, c.k);

  RVec scale = RVec::Ones(2 * d);
  scale.head(c.k) = c.gamma1;
  c.Omega = c.pre.L * bt * block_diag(c.W1, c.W2) * scale.asDiagonal() * c.Pi;
  Eigen::JacobiSVD<RMat> osvd(c.Omega);
  const RVec& os = osvd.singularValues();
  if (os(os.size() - 1) <= tol.inv * os(0)) throw Error(ErrorKind::NumericalFailure, "Omega is singular");
  c.omega_condition = os(0) / os(os.size() - 1);

  RVec dil = RVec::Ones(d);
  dil.head(c.k) = c.gamma1;
  GeneratorWord wa{d, {}};
  wa.letters.push_back(Dilation{RMat(dil.asDiagonal())});
  if (c.k < d) {
    std::vector<int> rest(d - c.k);
    std::iota(rest.begin(), rest.end(), c.k);
    wa.letters.push_back(PartialFourier{rest});
  }
  wa.letters.push_back(Dilation{RMat(c.W1.transpose())});
  wa.letters.push_back(Chirp{c.P11});
  wa.append(scalar_rotation_word(std::conj(c.tau), d, tol));
  c.word_A = simplify(wa);

  std::vector<int> all(d);
  std::iota(all.begin(), all.end(), 0);
  GeneratorWord wb{d, {}};
  wb.letters.push_back(PartialFourier{all});
  wb.letters.push_back(Dilation{RMat(c.W2.transpose())});
  wb.letters.push_back(Chirp{RMat(static_cast<double>(opt.p22_sign) * c.P22)});
  wb.append(scalar_rotation_word(c.tau, d, tol));
  c.word_B = simplify(wb);
  return c;
}

Certificate certify(const SymplecticMatrix& bold, const CertifyOptions& opt) {
  Classification cls = classify(bold, opt.tol);
  if (cls.alternative == Alternative::II) return alt2_certificate(bold, opt);
  Certificate c;
  c.alternative = Alternative::I;
  c.d = bold.n() / 2;
  c.matrix = bold.matrix();
  c.offdiag_norm = cls.test.offdiag_norm;
  c.offdiag_relative = cls.test.relative;
  c.pre = cls.pre;
  Alt1Decomposition a = alt1_decompose(cls.pre.U, c.d, opt.tol);
  c.W = a.W;
  c.V1 = a.V1;
  c.V2 = a.V2;
  add_borderline_warning(cls.test, opt.tol, c.warnings);
  return c;
}

double log_relative_error(double log_a, double log_b, double floor) {
  constexpr double ninf = -std::numeric_limits<double>::infinity();
  if (log_a == ninf && log_b == ninf) return 0.0;
  if (log_a >= std::log(floor)) return std::abs(std::expm1(log_b - log_a));
  return std::abs(std::exp(log_a) - std::exp(log_b)) / floor;
}

IdentityReport compare_log_moduli(const std::vector<double>& lhs, const std::vector<double>& rhs, double floor) {
  if (lhs.size() != rhs.size()) throw Error(ErrorKind::DimensionMismatch, "sample counts differ");
  IdentityReport r;
  r.points = lhs.size();
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    double e = log_relative_error(lhs[i], rhs[i], floor);
    if (std::isnan(e)) e = std::numeric_limits<double>::infinity();
    if (e > r.max_error) {
      r.max_error = e;
      r.worst = i;
    }
  }
  return r;
}

GeneratorWord certificate_matrix_word(const Certificate& cert) {
  return factor_to_word(SymplecticMatrix::trusted(cert.matrix));
}

std::vector<double> tfr_log_moduli(const Certificate& cert, const GeneralizedGaussian& f, const GeneralizedGaussian& g,
                                   const std::vector<RVec>& points) {
  if (f.n() != cert.d || g.n() != cert.d) throw Error(ErrorKind::DimensionMismatch, "window dimension");
  GeneralizedGaussian w = apply_word(tensor(f, conjugate(g)), certificate_matrix_word(cert));
  std::vector<double> out;
  out.reserve(points.size());
  for (const RVec& l : points) out.push_back(w.log_modulus(l));
  return out;
}

std::vector<double> reduced_log_moduli(const Certificate& cert, const GeneralizedGaussian& f,
                                       const GeneralizedGaussian& g, const std::vector<RVec>& points) {
  if (cert.alternative != Alternative::II) throw Error(ErrorKind::WrongAlternative, "identity needs Alternative II");
  if (f.n() != cert.d || g.n() != cert.d) throw Error(ErrorKind::DimensionMismatch, "window dimension");
  PartialStftKernel ker(apply_word(f, cert.word_A), apply_word(g, cert.word_B), cert.k);
  Eigen::PartialPivLU<RMat> lu(cert.Omega);
  const double shift = -0.5 * log_abs_det(cert.Omega);
  std::vector<double> out;
  out.reserve(points.size());
  for (const RVec& l : points) {
    if (l.size() != 2 * cert.d) throw Error(ErrorKind::DimensionMismatch, "point dimension");
    out.push_back(shift + ker.log_modulus(RVec(lu.solve(l))));
  }
  return out;
}

IdentityReport verify_identity(const Certificate& cert, const GeneralizedGaussian& f, const GeneralizedGaussian& g,
                               const std::vector<RVec>& points, double floor) {
  return compare_log_moduli(tfr_log_moduli(cert, f, g, points), reduced_log_moduli(cert, f, g, points), floor);
}

std::vector<double> reduced_moduli_grid(const Certificate& cert, const SampledField& f, const SampledField& g,
                                        const std::vector<RVec>& points, GridDiagnostics* diag) {
  if (cert.alternative != Alternative::II) throw Error(ErrorKind::WrongAlternative, "identity needs Alternative II");
  if (f.dims() != cert.d || g.dims() != cert.d) throw Error(ErrorKind::DimensionMismatch, "field dimension");
  SampledField v = partial_stft_grid(apply_word_grid(f, cert.word_A, diag), apply_word_grid(g, cert.word_B, diag),
                                     cert.k);
  BandLimitedInterpolator interp(v);
  Eigen::PartialPivLU<RMat> lu(cert.Omega);
  const double scale = std::exp(-0.5 * log_abs_det(cert.Omega));
  std::vector<double> out;
  out.reserve(points.size());
  for (const RVec& l : points) {
    RVec mu = lu.solve(l);
    bool inside = true;
    for (int i = 0; i < v.dims(); ++i) {
      const Axis& a = v.axes()[i];
      if (mu(i) < a.coord(0) || mu(i) > a.coord(a.points - 1)) inside = false;
    }
    out.push_back(inside ? scale * std::abs(interp(mu)) : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

std::vector<RVec> random_ball_points(int dim, std::size_t count, double radius, Rng& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif;
  std::vector<RVec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    RVec v(dim);
    for (int j = 0; j < dim; ++j) v(j) = normal(rng);
    double n = v.norm();
    if (n == 0.0) {
      v.setZero();
    } else {
      v *= radius * std::pow(unif(rng), 1.0 / dim) / n;
    }
    out.push_back(v);
  }
  return out;
}

SampledField bump_field(const std::vector<Axis>& axes, const RVec& lo, const RVec& hi) {
  if (lo.size() != static_cast<int>(axes.size()) || hi.size() != lo.size())
    throw Error(ErrorKind::DimensionMismatch, "bump box dimension");
  for (int i = 0; i < lo.size(); ++i)
    if (!(hi(i) > lo(i))) throw Error(ErrorKind::InvalidInput, "empty bump box");
  return sample_function(axes, [&](const RVec& t) {
    double v = 1.0;
    for (int i = 0; i < t.size(); ++i) {
      double u = (2.0 * t(i) - lo(i) - hi(i)) / (hi(i) - lo(i));
      if (std::abs(u) >= 1.0) return cd(0.0);
      v *= std::exp(-1.0 / (1.0 - u * u));
    }
    return cd(v);
  });
}

Counterexample counterexample_alt1(const Certificate& cert, const RVec& lo, const RVec& hi, const Axis& axis,
                                   GridDiagnostics* diag) {
  if (cert.alternative != Alternative::I) throw Error(ErrorKind::WrongAlternative, "counterexample needs Alternative I");
  const int d = cert.d;
  std::vector<Axis> axes(d, axis);
  Counterexample out;
  out.bump_lo = lo;
  out.bump_hi = hi;
  SampledField f0 = bump_field(axes, lo, hi);
  out.f = apply_word_grid(f0, rotation_word(cert.V1.adjoint()), diag);
  out.g = apply_word_grid(f0, rotation_word(cert.V2.transpose()), diag);
  RVec lo2(2 * d), hi2(2 * d);
  lo2 << lo, lo;
  hi2 << hi, hi;
  out.predicted = Region::linear_image(cert.pre.L * cert.W, lo2, hi2);
  return out;
}

QuadraticReduction quadratic_reduce(const CMat& v1, const CMat& v2, const Tolerances& tol) {
  if (v1.rows() != v2.rows() || v1.rows() != v1.cols() || v2.rows() != v2.cols())
    throw Error(ErrorKind::DimensionMismatch, "V1 and V2 must be square of equal size");
  QuadraticReduction r;
  r.V = v2.conjugate() * v1.adjoint();
  r.real = r.V.imag().norm() <= tol.rank * std::max(1.0, r.V.norm());
  r.note = r.real ? "V is real: the pair reduction is obstructed" : "V is not real: pair reduction applies";
  return r;
}

PairReduction pair_to_partial(const CMat& v, const Tolerances& tol) {
  if (v.imag().norm() <= tol.rank * std::max(1.0, v.norm()))
    throw Error(ErrorKind::RealMatrix, "V is real; no partial reduction exists");
  const int d = static_cast<int>(v.rows());
  ODOFactorization odo = odo_svd(v, tol);
  SortedDiagonal s = sort_by_imag(odo.sigma, tol.rank);
  PairReduction r;
  r.k = s.k;
  r.sigma = s.sorted;
  r.W1 = odo.W1 * s.left.transpose();
  r.W2 = s.right.transpose() * odo.W2;
  r.B = RMat::Identity(d, d);
  r.C = RMat::Zero(d, d);
  for (int n = 0; n < r.k; ++n) {
    r.B(n, n) = s.sorted(n).imag();
    r.C(n, n) = s.sorted(n).real() / s.sorted(n).imag();
  }
  r.Omega = block_diag(RMat(r.W2.transpose()), RMat(r.W1 * r.B));
  r.word_B = simplify(GeneratorWord{d, {Chirp{r.C}, Dilation{r.W2}}});
  return r;
}

IdentityReport verify_pair_identity(const CMat& v, const PairReduction& red, const GeneralizedGaussian& f,
                                    const std::vector<RVec>& points, double floor) {
  const int d = f.n();
  if (v.rows() != d || red.Omega.rows() != 2 * d) throw Error(ErrorKind::DimensionMismatch, "pair dimension");
  GeneralizedGaussian rv = apply_word(f, rotation_word(v));
  GeneralizedGaussian bf = apply_word(f, red.word_B);
  std::vector<int> first(red.k);
  std::iota(first.begin(), first.end(), 0);
  GeneralizedGaussian fbf = apply_partial_fourier(bf, first);
  Eigen::PartialPivLU<RMat> lu(red.Omega);
  const double shift = -0.5 * log_abs_det(red.Omega);
  std::vector<double> lhs, rhs;
  for (const RVec& l : points) {
    if (l.size() != 2 * d) throw Error(ErrorKind::DimensionMismatch, "point dimension");
    lhs.push_back(f.log_modulus(l.head(d)) + rv.log_modulus(l.tail(d)));
    RVec mu = lu.solve(l);
    rhs.push_back(shift + bf.log_modulus(mu.head(d)) + fbf.log_modulus(mu.tail(d)));
  }
  return compare_log_moduli(lhs, rhs, floor);
}

}  // namespace mtfr
