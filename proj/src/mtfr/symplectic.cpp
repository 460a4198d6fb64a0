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
#include "mtfr/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "mtfr/random.hpp"

namespace mtfr {

double symplectic_residual(const RMat& m) {
  int n = static_cast<int>(m.rows() / 2);
  RMat j = standard_j(n);
  double scale = std::max(1.0, m.squaredNorm());
  return (m.transpose() * j * m - j).norm() / scale;
}

bool is_symplectic(const RMat& m, double tol) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) return false;
  return symplectic_residual(m) <= tol;
}

SymplecticMatrix::SymplecticMatrix(RMat m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() % 2 != 0 || m_.rows() == 0)
    throw Error(ErrorKind::DimensionMismatch, "symplectic matrix must be 2n x 2n with n >= 1");
  double r = symplectic_residual(m_);
  if (!(r <= tol)) {
    std::ostringstream os;
    os.precision(3);
    os << "residual " << std::scientific << r << " exceeds " << tol;
    throw Error(ErrorKind::NotSymplectic, os.str());
  }
}

SymplecticMatrix SymplecticMatrix::trusted(RMat m) { return SymplecticMatrix(std::move(m), TrustedTag{}); }

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& o) const {
  if (o.n() != n()) throw Error(ErrorKind::DimensionMismatch, "symplectic product");
  return trusted(m_ * o.m_);
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  RMat j = standard_j(n());
  return trusted(-j * m_.transpose() * j);
}

SymplecticMatrix make_chirp(const RMat& q, const Tolerances& tol) {
  RMat qs = checked_symmetrize(q, tol.sym, "chirp Q");
  int n = static_cast<int>(qs.rows());
  RMat m = RMat::Identity(2 * n, 2 * n);
  m.bottomLeftCorner(n, n) = qs;
  return SymplecticMatrix::trusted(std::move(m));
}

SymplecticMatrix make_dilation(const RMat& l, const Tolerances& tol) {
  require_invertible(l, tol.inv, "dilation L");
  int n = static_cast<int>(l.rows());
  RMat m = RMat::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = l;
  m.bottomRightCorner(n, n) = l.inverse().transpose();
  return SymplecticMatrix::trusted(std::move(m));
}

SymplecticMatrix make_rotation(const CMat& u, const Tolerances& tol) {
  if (!is_unitary(u, tol.unit)) throw Error(ErrorKind::NonUnitary, "rotation U is not unitary");
  int n = static_cast<int>(u.rows());
  RMat a = u.real(), b = u.imag();
  RMat m(2 * n, 2 * n);
  m << a, b, -b, a;
  return SymplecticMatrix::trusted(std::move(m));
}

SymplecticMatrix make_partial_fourier(int n, const std::vector<int>& axes) {
  return SymplecticMatrix::trusted(letter_matrix(pfourier_letter(n, axes), n));
}

Letter chirp_letter(const RMat& q, double sym_tol) { return Chirp{checked_symmetrize(q, sym_tol, "chirp Q")}; }

Letter dilation_letter(const RMat& l, double inv_tol) {
  require_invertible(l, inv_tol, "dilation L");
  return Dilation{l};
}

Letter pfourier_letter(int n, std::vector<int> axes) {
  std::sort(axes.begin(), axes.end());
  axes.erase(std::unique(axes.begin(), axes.end()), axes.end());
  if (axes.empty()) throw Error(ErrorKind::InvalidInput, "partial Fourier axis set is empty");
  if (axes.front() < 0 || axes.back() >= n) throw Error(ErrorKind::DimensionMismatch, "partial Fourier axis out of range");
  return PartialFourier{std::move(axes)};
}

RMat letter_matrix(const Letter& letter, int n) {
  RMat m = RMat::Identity(2 * n, 2 * n);
  if (const auto* c = std::get_if<Chirp>(&letter)) {
    if (c->Q.rows() != n) throw Error(ErrorKind::DimensionMismatch, "chirp size");
    m.bottomLeftCorner(n, n) = c->Q;
  } else if (const auto* d = std::get_if<Dilation>(&letter)) {
    if (d->L.rows() != n) throw Error(ErrorKind::DimensionMismatch, "dilation size");
    m.topLeftCorner(n, n) = d->L;
    m.bottomRightCorner(n, n) = d->L.inverse().transpose();
  } else {
    const auto& p = std::get<PartialFourier>(letter);
    for (int j : p.axes) {
      if (j < 0 || j >= n) throw Error(ErrorKind::DimensionMismatch, "partial Fourier axis");
      m(j, j) = 0.0;
      m(n + j, n + j) = 0.0;
      m(j, n + j) = 1.0;
      m(n + j, j) = -1.0;
    }
  }
  return m;
}

RMat GeneratorWord::matrix() const {
  RMat m = RMat::Identity(2 * n, 2 * n);
  for (const auto& l : letters) m = m * letter_matrix(l, n);
  return m;
}

void GeneratorWord::append(const GeneratorWord& other) {
  if (other.n != n) throw Error(ErrorKind::DimensionMismatch, "word concatenation");
  letters.insert(letters.end(), other.letters.begin(), other.letters.end());
}

GeneratorWord inverse_word(const GeneratorWord& w) {
  GeneratorWord out{w.n, {}};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (const auto* c = std::get_if<Chirp>(&*it)) {
      out.letters.push_back(Chirp{-c->Q});
    } else if (const auto* d = std::get_if<Dilation>(&*it)) {
      out.letters.push_back(Dilation{d->L.inverse()});
    } else {
      for (int r = 0; r < 3; ++r) out.letters.push_back(*it);
    }
  }
  return out;
}

GeneratorWord simplify(const GeneratorWord& w, double eps) {
  GeneratorWord out{w.n, {}};
  for (const auto& l : w.letters) {
    if (const auto* c = std::get_if<Chirp>(&l)) {
      if (c->Q.norm() <= eps) continue;
    } else if (const auto* d = std::get_if<Dilation>(&l)) {
      if ((d->L - RMat::Identity(w.n, w.n)).norm() <= eps) continue;
    }
    out.letters.push_back(l);
  }
  return out;
}

RMat PreIwasawa::reconstruct() const {
  return (make_chirp(Q).matrix() * make_dilation(L).matrix()) * make_rotation(U).matrix();
}

PreIwasawa pre_iwasawa(const SymplecticMatrix& m, const Tolerances& tol) {
  RMat a = m.A(), b = m.B(), c = m.C(), d = m.D();
  RMat g = a * a.transpose() + b * b.transpose();
  g = (0.5 * (g + g.transpose())).eval();
  PreIwasawa out;
  out.L = spd_sqrt(g);
  out.L = (0.5 * (out.L + out.L.transpose())).eval();
  RMat q = (c * a.transpose() + d * b.transpose()) * g.inverse();
  out.Q = 0.5 * (q + q.transpose());
  CMat ab(a.rows(), a.cols());
  ab.real() = a;
  ab.imag() = b;
  out.U = out.L.inverse().cast<cd>() * ab;
  if (!is_unitary(out.U, std::max(tol.unit, 1e-8)))
    throw Error(ErrorKind::NumericalFailure, "pre-Iwasawa U is not unitary");
  return out;
}

namespace {

// Symmetrizes a chirp block that is symmetric in exact arithmetic.
RMat derived_symmetric(const RMat& m, const char* what) {
  if (asymmetry(m) > 1e-8) throw Error(ErrorKind::NumericalFailure, std::string(what) + " is not symmetric");
  return 0.5 * (m + m.transpose());
}

}  // namespace

GeneratorWord free_factorize(const CMat& u, const Tolerances& tol) {
  if (!is_unitary(u, std::max(tol.unit, 1e-9))) throw Error(ErrorKind::NonUnitary, "free factorization input");
  int n = static_cast<int>(u.rows());
  RMat a = u.real(), b = u.imag();
  double smin = sigma_min(b);
  if (!(smin > tol.inv)) throw Error(ErrorKind::NotFree, "imaginary part is singular (sigma_min " + std::to_string(smin) + ")");
  RMat binv = b.inverse();
  GeneratorWord w{n, {}};
  w.letters.push_back(Chirp{derived_symmetric(a * binv, "A B^-1")});
  w.letters.push_back(Dilation{b});
  std::vector<int> all(n);
  for (int j = 0; j < n; ++j) all[j] = j;
  w.letters.push_back(PartialFourier{all});
  w.letters.push_back(Chirp{derived_symmetric(binv * a, "B^-1 A")});
  return w;
}

cd select_tau(const CMat& u, int m, const Tolerances& tol) {
  for (int attempt = 0; attempt < 2; ++attempt, m *= 2) {
    cd best = 1.0;
    double best_s = -1.0;
    for (int j = 0; j < m; ++j) {
      cd tau = std::polar(1.0, kPi * j / m);
      double s = sigma_min(RMat((tau * u).imag()));
      if (s > best_s) {
        best_s = s;
        best = tau;
      }
    }
    if (best_s > tol.inv) return best;
  }
  throw Error(ErrorKind::NoTauFound, "no scanned tau gives an invertible imaginary part");
}

GeneratorWord scalar_rotation_word(cd c, int n, const Tolerances& tol) {
  RMat id = RMat::Identity(n, n);
  if (std::abs(c.imag()) <= 1e-15) {
    return GeneratorWord{n, {Dilation{(c.real() < 0 ? -1.0 : 1.0) * id}}};
  }
  if (std::abs(c.imag()) >= std::sqrt(0.5)) return free_factorize(c * CMat::Identity(n, n), tol);
  GeneratorWord w = free_factorize(cd(0, 1) * CMat::Identity(n, n), tol);
  w.append(free_factorize(cd(0, -1) * c * CMat::Identity(n, n), tol));
  return w;
}

GeneratorWord rotation_word(const CMat& u, const FactorOptions& opt, const Tolerances& tol) {
  int n = static_cast<int>(u.rows());
  if (u.imag().norm() <= 1e-13) {
    RMat w = u.real();
    return GeneratorWord{n, {Dilation{w}}};
  }
  cd tau = opt.tau ? *opt.tau : select_tau(u, opt.tau_scan, tol);
  GeneratorWord w = free_factorize(tau * u, tol);
  w.append(scalar_rotation_word(std::conj(tau), n, tol));
  return w;
}

GeneratorWord factor_to_word(const SymplecticMatrix& m, const FactorOptions& opt, const Tolerances& tol) {
  PreIwasawa p = pre_iwasawa(m, tol);
  GeneratorWord w{m.n(), {Chirp{p.Q}, Dilation{p.L}}};
  w.append(rotation_word(p.U, opt, tol));
  return simplify(w);
}

GeneratorWord random_word(int n, int word_length, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  GeneratorWord w{n, {}};
  for (int i = 0; i < word_length; ++i) {
    double r = u01(rng);
    if (r < 1.0 / 3.0) {
      std::vector<int> axes;
      while (axes.empty())
        for (int j = 0; j < n; ++j)
          if (u01(rng) < 0.5) axes.push_back(j);
      w.letters.push_back(PartialFourier{axes});
    } else if (r < 2.0 / 3.0) {
      w.letters.push_back(Chirp{random_symmetric(n, rng, 1.0)});
    } else {
      RMat x = random_real(n, n, rng, -0.5, 0.5);
      w.letters.push_back(Dilation{x.exp()});
    }
  }
  return w;
}

SymplecticMatrix random_symplectic(int n, int word_length, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "n must be >= 1");
  return SymplecticMatrix::trusted(random_word(n, word_length, seed).matrix());
}

SymplecticMatrix random_symplectic_factored(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "n must be >= 1");
  Rng rng(seed);
  RMat q = random_symmetric(n, rng);
  RMat l = random_spd(n, rng, 0.5, 2.0);
  CMat u = random_unitary(n, rng);
  return make_chirp(q) * make_dilation(l) * make_rotation(u);
}

}  // namespace mtfr
