#include <cmath>

#include "doctest.h"
#include "mtfr/random.hpp"
#include "mtfr/unitary_factor.hpp"

using namespace mtfr;

namespace {
const cd I1(0, 1);
}

TEST_CASE("block diagonality of U^t U") {
  CMat u = CMat::Zero(2, 2);
  u(0, 0) = I1;
  u(1, 1) = 1.0;
  auto r = block_diag_test(u, 1);
  CHECK(r.block_diagonal);
  CHECK(r.offdiag_norm == 0.0);

  CMat v(2, 2);
  v << 1.0, I1, I1, 1.0;
  v /= std::sqrt(2.0);
  r = block_diag_test(v, 1);
  CHECK_FALSE(r.block_diagonal);
  CHECK(r.offdiag_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  Rng rng(1);
  CHECK(block_diag_test(random_orthogonal(4, rng).cast<cd>(), 2).block_diagonal);
  CHECK_THROWS_AS(block_diag_test(CMat::Identity(3, 3), 1), Error);
}

TEST_CASE("commuting parts of a symmetric unitary") {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    CMat u = random_unitary(1 + trial % 8, rng);
    CMat s = u.transpose() * u;
    RMat x = s.real(), y = s.imag();
    CHECK((x * y - y * x).norm() <= 1e-10);
    CHECK((x * x + y * y - RMat::Identity(x.rows(), x.cols())).norm() <= 1e-10);
  }
}

TEST_CASE("ODO factorization small cases") {
  Rng rng(3);
  RMat w = random_orthogonal(3, rng);
  auto f = odo_svd(w.cast<cd>());
  CHECK((f.reconstruct() - w.cast<cd>()).norm() <= 1e-14);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(std::abs(f.sigma(j).real()) - 1.0) <= 1e-14);

  CMat d = CMat::Zero(2, 2);
  d(0, 0) = std::polar(1.0, 0.3);
  d(1, 1) = std::polar(1.0, -1.2);
  f = odo_svd(d);
  CHECK((f.reconstruct() - d).norm() <= 1e-14);
}

TEST_CASE("ODO factorization of random unitaries") {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + trial % 8;
    CMat u = random_unitary(n, rng);
    auto f = odo_svd(u);
    CHECK((f.reconstruct() - u).norm() <= 1e-9);
    CHECK(is_orthogonal(f.W1, 1e-10));
    CHECK(is_orthogonal(f.W2, 1e-10));
    for (int j = 0; j < n; ++j) CHECK(std::abs(std::abs(f.sigma(j)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("ODO factorization with repeated eigenvalues") {
  Rng rng(5);
  // U = W1 diag(s, s, t) W2 has a two-dimensional eigenspace of U^t U.
  RMat w1 = random_orthogonal(3, rng), w2 = random_orthogonal(3, rng);
  CVec s(3);
  s << std::polar(1.0, 0.4), std::polar(1.0, 0.4), std::polar(1.0, 1.1);
  CMat u = w1.cast<cd>() * s.asDiagonal() * w2.cast<cd>();
  auto f = odo_svd(u);
  CHECK((f.reconstruct() - u).norm() <= 1e-9);
  CHECK(is_orthogonal(f.W1, 1e-10));
}

TEST_CASE("sorted diagonal against eigenvalue reference") {
  // Reference sigma from the eigenvalues of U^t U (tests/oracles/oracles.py).
  const double re[] = {0.7037358283610915,   -0.12493912931462245, 0.21022818110549174,
                       0.069701166521757507, 0.78084614673634567,  0.081398684557551754,
                       -0.30372078023689747, 0.089031985593924556, 0.83333907211609182};
  const double im[] = {0.62007614346273132,  0.23186700189578596, 0.081813687463374238,
                       0.11924708459510994,  -0.35566532910239612, 0.48793196570306691,
                       -0.094535855857328918, 0.43183640622422342, 0.099766097923364938};
  const cd expect[] = {cd(0.73647867389795207, 0.67646076227192564), cd(-0.75134437198195847, 0.65991032321902354),
                       cd(0.92949572733038921, 0.36883287932958297)};
  CMat u(3, 3);
  for (int i = 0; i < 9; ++i) u(i / 3, i % 3) = cd(re[i], im[i]);
  auto f = odo_svd(u, Tolerances{.unit = 1e-14});
  auto s = sort_by_imag(f.sigma);
  CHECK(s.k == 3);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(s.sorted(j) - expect[j]) <= 1e-12);
}

TEST_CASE("Takagi factorization") {
  CHECK(std::abs(takagi_symmetric_unitary(CMat::Constant(1, 1, 1.0))(0, 0) - cd(1.0)) < 1e-15);
  CHECK(std::abs(takagi_symmetric_unitary(CMat::Constant(1, 1, -1.0))(0, 0) - I1) < 1e-15);
  CHECK_THROWS_AS(takagi_symmetric_unitary(CMat::Identity(2, 2) * 2.0), Error);
  CMat ns(2, 2);
  ns << 0.0, 1.0, I1, 0.0;
  CHECK_THROWS_AS(takagi_symmetric_unitary(ns), Error);

  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    CMat x = random_unitary(1 + trial % 6, rng);
    CMat s = x.transpose() * x;
    CMat v = takagi_symmetric_unitary(s);
    CHECK((v.transpose() * v - s).norm() <= 1e-9);
    CHECK(is_unitary(v, 1e-10));
  }
}

TEST_CASE("sort_by_imag") {
  CVec s(2);
  s << I1, 1.0;
  auto r = sort_by_imag(s);
  CHECK(r.k == 1);
  CHECK(std::abs(r.sorted(0) - I1) < 1e-15);

  s << 1.0, I1;
  r = sort_by_imag(s);
  CHECK(r.k == 1);
  CHECK(std::abs(r.sorted(0) - I1) < 1e-15);
  CHECK(std::abs(r.sorted(1) - 1.0) < 1e-15);

  s << -1.0, std::polar(1.0, kPi / 4);
  r = sort_by_imag(s);
  CHECK(r.k == 1);
  CHECK(std::abs(r.sorted(0) - std::polar(1.0, kPi / 4)) < 1e-15);
  CHECK(std::abs(r.sorted(1) - 1.0) < 1e-15);
  CMat back = r.left.cast<cd>() * s.asDiagonal() * r.right.cast<cd>();
  CHECK((back - CMat(r.sorted.asDiagonal())).norm() < 1e-15);

  s << std::polar(1.0, -0.3), std::polar(1.0, 2.0);
  r = sort_by_imag(s);
  CHECK(r.k == 2);
  CHECK(r.sorted(0).imag() >= r.sorted(1).imag());
  back = r.left.cast<cd>() * s.asDiagonal() * r.right.cast<cd>();
  CHECK((back - CMat(r.sorted.asDiagonal())).norm() < 1e-15);

  s << 0.5, 1.0;
  CHECK_THROWS_AS(sort_by_imag(s), Error);
}
