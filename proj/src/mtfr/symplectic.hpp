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

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "mtfr/linalg.hpp"

namespace mtfr {

// |M^t J M - J|_F / max(1, |M|_F^2).
double symplectic_residual(const RMat& m);
bool is_symplectic(const RMat& m, double tol = Tolerances{}.sympl);

// Real 2n x 2n matrix satisfying M^t J M = J, blocks ((A, B), (C, D)).
class SymplecticMatrix {
 public:
  // Throws NotSymplectic (with the residual in the message) or DimensionMismatch.
  explicit SymplecticMatrix(RMat m, double tol = Tolerances{}.sympl);

  // Skips validation; caller guarantees the relation.
  static SymplecticMatrix trusted(RMat m);

  int n() const { return static_cast<int>(m_.rows() / 2); }
  const RMat& matrix() const { return m_; }
  RMat A() const { return m_.topLeftCorner(n(), n()); }
  RMat B() const { return m_.topRightCorner(n(), n()); }
  RMat C() const { return m_.bottomLeftCorner(n(), n()); }
  RMat D() const { return m_.bottomRightCorner(n(), n()); }

  SymplecticMatrix operator*(const SymplecticMatrix& o) const;
  // M^{-1} = -J M^t J.
  SymplecticMatrix inverse() const;

 private:
  struct TrustedTag {};
  SymplecticMatrix(RMat m, TrustedTag) : m_(std::move(m)) {}
  RMat m_;
};

SymplecticMatrix make_chirp(const RMat& q, const Tolerances& tol = {});
SymplecticMatrix make_dilation(const RMat& l, const Tolerances& tol = {});
SymplecticMatrix make_rotation(const CMat& u, const Tolerances& tol = {});
SymplecticMatrix make_partial_fourier(int n, const std::vector<int>& axes);

struct Chirp {
  RMat Q;  // exactly symmetric
};
struct Dilation {
  RMat L;
};
struct PartialFourier {
  std::vector<int> axes;  // 0-based, sorted, unique, nonempty
};
using Letter = std::variant<Chirp, Dilation, PartialFourier>;

// Validating letter constructors.
Letter chirp_letter(const RMat& q, double sym_tol = Tolerances{}.sym);
Letter dilation_letter(const RMat& l, double inv_tol = Tolerances{}.inv);
Letter pfourier_letter(int n, std::vector<int> axes);

RMat letter_matrix(const Letter& letter, int n);

// Letters [L1, ..., Lk] denote the product L1 ... Lk; as an operator Lk acts first.
struct GeneratorWord {
  int n = 0;
  std::vector<Letter> letters;

  RMat matrix() const;
  void append(const GeneratorWord& other);
};

// Word of the inverse matrix; inverse partial Fourier letters are spelled as three forward ones.
GeneratorWord inverse_word(const GeneratorWord& w);

// Drops chirps with |Q|_F <= eps and dilations with |L - I|_F <= eps.
GeneratorWord simplify(const GeneratorWord& w, double eps = 1e-13);

struct PreIwasawa {
  RMat Q;  // symmetric
  RMat L;  // symmetric positive definite
  CMat U;  // unitary

  RMat reconstruct() const;
};

PreIwasawa pre_iwasawa(const SymplecticMatrix& m, const Tolerances& tol = {});

// Word [Chirp(A B^-1), Dilation(B), PartialFourier(all), Chirp(B^-1 A)] for R_U, U = A + iB.
GeneratorWord free_factorize(const CMat& u, const Tolerances& tol = {});

// tau = exp(i pi j / m) maximizing sigma_min(Im(tau U)); first maximizer wins.
cd select_tau(const CMat& u, int m = 64, const Tolerances& tol = {});

struct FactorOptions {
  int tau_scan = 64;
  std::optional<cd> tau;  // overrides the scan when set
};

// Word for R_U: a dilation when U is real, otherwise R_{tau U} R_{conj(tau) I}.
GeneratorWord rotation_word(const CMat& u, const FactorOptions& opt = {}, const Tolerances& tol = {});

// Word for scalar rotations c I of size n; Dilation(+-I) when c is real. When |Im c| < 1/sqrt 2 the word is
// R_{iI} R_{-icI}, keeping every chirp within |Q| <= 1 and every dilation above 1/sqrt 2.
GeneratorWord scalar_rotation_word(cd c, int n, const Tolerances& tol = {});

GeneratorWord factor_to_word(const SymplecticMatrix& m, const FactorOptions& opt = {}, const Tolerances& tol = {});

// Product of word_length random generators drawn from a generator seeded with seed.
GeneratorWord random_word(int n, int word_length, std::uint64_t seed);
SymplecticMatrix random_symplectic(int n, int word_length, std::uint64_t seed);
// V_Q D_L R_U with random symmetric Q, L with spectrum in [0.5, 2] and Haar-distributed U.
SymplecticMatrix random_symplectic_factored(int n, std::uint64_t seed);

}  // namespace mtfr
