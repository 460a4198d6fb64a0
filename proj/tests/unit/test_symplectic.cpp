#include <cmath>

#include "doctest.h"
#include "mtfr/random.hpp"
#include "mtfr/symplectic.hpp"

using namespace mtfr;

namespace {

RMat mat2(double a, double b, double c, double d) {
  RMat m(2, 2);
  m << a, b, c, d;
  return m;
}

CMat cmat2(const double* re, const double* im) {
  CMat m(2, 2);
  for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = cd(re[i], im[i]);
  return m;
}

}  // namespace

TEST_CASE("chirp generator") {
  CHECK(make_chirp(RMat::Zero(1, 1)).matrix().isApprox(RMat::Identity(2, 2)));
  RMat m = make_chirp(RMat::Identity(2, 2)).matrix();
  CHECK(m.bottomLeftCorner(2, 2).isApprox(RMat::Identity(2, 2)));
  CHECK(is_symplectic(m, 1e-14));
  CHECK_THROWS_AS(make_chirp(mat2(0, 1, 0, 0)), Error);

  Rng rng(3);
  RMat q1 = random_symmetric(3, rng), q2 = random_symmetric(3, rng);
  CHECK((make_chirp(q1) * make_chirp(q2)).matrix().isApprox(make_chirp(q1 + q2).matrix(), 1e-14));
}

TEST_CASE("dilation generator") {
  RMat d = make_dilation(RMat::Constant(1, 1, 2.0)).matrix();
  CHECK(d.isApprox(mat2(2, 0, 0, 0.5)));
  CHECK_THROWS_AS(make_dilation(RMat::Zero(2, 2)), Error);
  Rng rng(4);
  RMat l1 = random_real(3, 3, rng) + 2 * RMat::Identity(3, 3), l2 = random_real(3, 3, rng) + 2 * RMat::Identity(3, 3);
  CHECK((make_dilation(l1) * make_dilation(l2)).matrix().isApprox(make_dilation(l1 * l2).matrix(), 1e-13));
}

TEST_CASE("rotation generator") {
  CHECK(make_rotation(CMat::Identity(2, 2)).matrix().isApprox(RMat::Identity(4, 4)));
  CHECK(make_rotation(CMat::Constant(1, 1, cd(0, 1))).matrix().isApprox(standard_j(1)));
  Rng rng(5);
  RMat w = random_orthogonal(3, rng);
  CHECK(make_rotation(w.cast<cd>()).matrix().isApprox(make_dilation(w).matrix(), 1e-14));
  CHECK_THROWS_AS(make_rotation(2.0 * CMat::Identity(2, 2)), Error);

  CMat u = random_unitary(3, rng), v = random_unitary(3, rng);
  CHECK((make_rotation(u) * make_rotation(v)).matrix().isApprox(make_rotation(u * v).matrix(), 1e-13));
  RMat r = make_rotation(u).matrix();
  CHECK((r.transpose() * r).isApprox(RMat::Identity(6, 6), 1e-13));
}

TEST_CASE("orthogonal factors pass through rotations") {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    RMat w = random_orthogonal(3, rng), v = random_orthogonal(3, rng);
    CMat u = random_unitary(3, rng);
    RMat lhs = make_rotation(w.cast<cd>() * u * v.cast<cd>()).matrix();
    RMat rhs = (make_dilation(w) * make_rotation(u) * make_dilation(v)).matrix();
    CHECK((lhs - rhs).norm() <= 1e-12);
  }
}

TEST_CASE("symplectic validation") {
  CHECK_THROWS_AS(SymplecticMatrix(mat2(1, 1, 0, 2)), Error);
  CHECK_THROWS_AS(SymplecticMatrix(RMat::Identity(3, 3)), Error);
  SymplecticMatrix m(mat2(0, 2, -0.5, 2));
  CHECK(m.n() == 1);
  CHECK((m * m.inverse()).matrix().isApprox(RMat::Identity(2, 2)));
  CHECK(std::abs(m.matrix().determinant() - 1.0) < 1e-14);
}

TEST_CASE("pre-Iwasawa small cases") {
  auto p = pre_iwasawa(SymplecticMatrix(RMat::Identity(2, 2)));
  CHECK(p.Q.norm() < 1e-15);
  CHECK(p.L.isApprox(RMat::Identity(1, 1)));
  CHECK(p.U.isApprox(CMat::Identity(1, 1)));

  p = pre_iwasawa(SymplecticMatrix(standard_j(1)));
  CHECK(p.Q.norm() < 1e-15);
  CHECK(p.L.isApprox(RMat::Identity(1, 1)));
  CHECK(std::abs(p.U(0, 0) - cd(0, 1)) < 1e-15);
  CHECK((p.reconstruct() - standard_j(1)).norm() < 1e-15);

  // V_1 D_2 J = ((0, 2), (-1/2, 2)): hand-derived factors Q = 1, L = 2, U = i.
  p = pre_iwasawa(SymplecticMatrix(mat2(0, 2, -0.5, 2)));
  CHECK(p.Q(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.L(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(p.U(0, 0) - cd(0, 1)) < 1e-15);
}

TEST_CASE("pre-Iwasawa against scipy reference") {
  // M = V_Q0 D_L0 R_U0 with non-symmetric L0; reference factors from tests/oracles/oracles.py.
  const double u0re[] = {0.89684513267628785, -0.19891202796973059, 0.18920110584031136, 0.93083336012925533};
  const double u0im[] = {0.3853290691543963, 0.087317361323091175, 0.10673920558192979, -0.29386891501317702};
  const double lref[] = {1.2642938837114743, -0.039509183865983545, -0.039509183865983531, 0.76055178942018375};
  const double ure[] = {0.90695629328278038, 0.13514634847442891, -0.13250861304498249, 0.94220603038538209};
  const double uim[] = {0.39847119511722007, -0.019658413736681101, -0.033052325266301537, -0.30593595337718421};
  RMat q0 = mat2(0.3, -0.2, -0.2, 0.5), l0 = mat2(1.2, 0.4, -0.3, 0.7);
  CMat u0 = cmat2(u0re, u0im);
  SymplecticMatrix m(make_chirp(q0).matrix() * make_dilation(l0).matrix() * make_rotation(u0, {1e-14}).matrix());
  auto p = pre_iwasawa(m);
  CHECK((p.Q - q0).norm() < 1e-14);
  CHECK((p.L - mat2(lref[0], lref[1], lref[2], lref[3])).norm() < 1e-14);
  CHECK((p.U - cmat2(ure, uim)).norm() < 1e-14);
}

TEST_CASE("pre-Iwasawa uniqueness under the canonical constraint") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + trial % 4;
    RMat q = random_symmetric(n, rng), l = random_spd(n, rng, 0.3, 3.0);
    CMat u = random_unitary(n, rng);
    SymplecticMatrix m = make_chirp(q) * make_dilation(l) * make_rotation(u);
    auto p = pre_iwasawa(m);
    CHECK((p.Q - q).norm() <= 1e-9);
    CHECK((p.L - l).norm() <= 1e-9);
    CHECK((p.U - u).norm() <= 1e-9);
  }
}

TEST_CASE("pre-Iwasawa round trip on random words") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    int n = 1 + seed % 4;
    SymplecticMatrix m = random_symplectic(n, 6, seed);
    auto p = pre_iwasawa(m);
    CHECK((p.reconstruct() - m.matrix()).norm() <= 1e-10 * m.matrix().norm());
    CHECK(asymmetry(p.L) == 0.0);
    CHECK(Eigen::SelfAdjointEigenSolver<RMat>(p.L).eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("free factorization") {
  auto w = free_factorize(CMat::Identity(1, 1) * cd(0, 1));
  REQUIRE(w.letters.size() == 4);
  CHECK(std::get<Chirp>(w.letters[0]).Q.norm() == 0.0);
  CHECK(std::get<Dilation>(w.letters[1]).L.isApprox(RMat::Identity(1, 1)));
  CHECK(std::get<PartialFourier>(w.letters[2]).axes == std::vector<int>{0});
  CHECK(w.matrix().isApprox(standard_j(1)));

  const double s = 1.0 / std::sqrt(2.0);
  w = free_factorize(CMat::Constant(1, 1, cd(s, s)));
  CHECK(std::get<Chirp>(w.letters[0]).Q(0, 0) == doctest::Approx(1.0));
  CHECK(std::get<Dilation>(w.letters[1]).L(0, 0) == doctest::Approx(s));
  CHECK(std::get<Chirp>(w.letters[3]).Q(0, 0) == doctest::Approx(1.0));
  CHECK((w.matrix() - make_rotation(CMat::Constant(1, 1, cd(s, s))).matrix()).norm() < 1e-15);

  CHECK_THROWS_AS(free_factorize(CMat::Identity(2, 2)), Error);

  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    CMat u = random_unitary(1 + trial % 5, rng);
    RMat b = u.imag(), a = u.real();
    CHECK(asymmetry(RMat(a * b.inverse())) <= 1e-10);
    CHECK(asymmetry(RMat(b.inverse() * a)) <= 1e-10);
    if (sigma_min(b) < 1e-3) continue;
    CHECK((free_factorize(u).matrix() - make_rotation(u).matrix()).norm() <= 1e-9);
  }
}

TEST_CASE("tau selection") {
  CHECK(std::abs(select_tau(CMat::Identity(2, 2)) - cd(0, 1)) < 1e-15);
  CHECK(std::abs(select_tau(cd(0, 1) * CMat::Identity(2, 2)) - cd(1, 0)) < 1e-15);
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    CMat u = random_unitary(3, rng);
    cd tau = select_tau(u);
    std::vector<double> scan;
    for (int j = 0; j < 64; ++j) scan.push_back(sigma_min(RMat((std::polar(1.0, kPi * j / 64) * u).imag())));
    std::sort(scan.begin(), scan.end());
    double got = sigma_min(RMat((tau * u).imag()));
    CHECK(got >= scan[32]);
    CHECK(got == doctest::Approx(scan.back()));
  }
}

TEST_CASE("factor_to_word") {
  CHECK(factor_to_word(SymplecticMatrix(RMat::Identity(4, 4))).letters.empty());
  RMat q(2, 2);
  q << 0.4, -0.1, -0.1, 0.2;
  auto w = factor_to_word(make_chirp(q));
  REQUIRE(w.letters.size() == 1);
  CHECK((std::get<Chirp>(w.letters[0]).Q - q).norm() < 1e-15);

  for (std::uint64_t seed = 100; seed < 250; ++seed) {
    int n = 1 + seed % 4;
    SymplecticMatrix m = random_symplectic(n, 5, seed);
    GeneratorWord word = factor_to_word(m);
    CHECK((word.matrix() - m.matrix()).norm() <= 1e-9);
    CHECK(is_symplectic(word.matrix()));
    for (const auto& l : word.letters)
      if (const auto* c = std::get_if<Chirp>(&l)) CHECK(asymmetry(c->Q) <= 1e-12);
  }
}

TEST_CASE("scalar rotation words stay well conditioned") {
  for (int j = 0; j < 72; ++j) {
    cd c = std::polar(1.0, kPi * j / 36.0);
    GeneratorWord w = scalar_rotation_word(c, 2);
    CHECK((w.matrix() - make_rotation(c * CMat::Identity(2, 2)).matrix()).norm() <= 1e-12);
    for (const auto& l : w.letters) {
      if (const auto* q = std::get_if<Chirp>(&l)) CHECK(q->Q.cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
      if (const auto* d = std::get_if<Dilation>(&l)) CHECK(sigma_min(d->L) >= std::sqrt(0.5) - 1e-12);
    }
  }
}

TEST_CASE("inverse words") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorWord w = random_word(2, 6, seed);
    CHECK((inverse_word(w).matrix() * w.matrix() - RMat::Identity(4, 4)).norm() <= 1e-10);
  }
}

TEST_CASE("random_symplectic") {
  CHECK(random_symplectic(2, 0, 1).matrix().isApprox(RMat::Identity(4, 4)));
  CHECK(random_symplectic(3, 7, 42).matrix() == random_symplectic(3, 7, 42).matrix());
  for (std::uint64_t seed = 0; seed < 100; ++seed) CHECK(is_symplectic(random_symplectic(2, 8, seed).matrix(), 1e-11));
}
