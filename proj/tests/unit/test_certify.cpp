#include <cmath>

#include "doctest.h"
#include "mtfr/certify.hpp"

using namespace mtfr;

namespace {

const cd I1(0, 1);

SymplecticMatrix bold_rotation(const CMat& u) { return make_rotation(u); }

CMat example_u() {
  CMat u(2, 2);
  u << 1.0, I1, I1, 1.0;
  return u / std::sqrt(2.0);
}

// V_Q D_L R_{W0 diag(V1, V2)}: Alternative I by construction.
SymplecticMatrix random_alt1(int d, Rng& rng, CMat* u_out = nullptr) {
  CMat u = random_orthogonal(2 * d, rng).cast<cd>() * block_diag(random_unitary(d, rng), random_unitary(d, rng));
  if (u_out) *u_out = u;
  return make_chirp(random_symmetric(2 * d, rng)) * make_dilation(random_spd(2 * d, rng, 0.5, 2.0)) * make_rotation(u);
}

}  // namespace

TEST_CASE("classification examples") {
  auto c1 = classify(bold_rotation(I1 * CMat::Identity(2, 2)));
  CHECK(c1.alternative == Alternative::I);
  CHECK(c1.test.offdiag_norm <= 1e-14);
  auto c2 = classify(bold_rotation(example_u()));
  CHECK(c2.alternative == Alternative::II);
  CHECK(c2.test.offdiag_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(classify(random_symplectic(3, 4, 1)), Error);
}

TEST_CASE("classification ignores chirp and dilation factors") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    SymplecticMatrix bold = (i % 2) ? random_alt1(1 + i % 2, rng) : random_symplectic(2 + 2 * (i % 3 == 0), 5, i);
    auto base = classify(bold).alternative;
    int n = bold.n();
    SymplecticMatrix moved = make_chirp(random_symmetric(n, rng)) *
                             make_dilation(random_real(n, n, rng) + 2.0 * RMat::Identity(n, n)) * bold;
    CHECK(classify(moved).alternative == base);
  }
}

TEST_CASE("Alternative I decomposition") {
  Rng rng(12);
  CMat v1 = random_unitary(2, rng), v2 = random_unitary(2, rng);
  auto a = alt1_decompose(block_diag(v1, v2), 2);
  CHECK((a.W.cast<cd>() * block_diag(a.V1, a.V2) - block_diag(v1, v2)).norm() <= 1e-12);

  CMat u = CMat::Identity(2, 2);
  u(0, 0) = I1;
  auto s = alt1_decompose(u, 1);
  CHECK(std::abs((a.V1.transpose() * a.V1 - v1.transpose() * v1).norm()) <= 1e-12);
  CHECK(std::abs(s.V1(0, 0) * s.V1(0, 0) + 1.0) <= 1e-14);
  CHECK(is_orthogonal(s.W, 1e-14));

  for (int i = 0; i < 60; ++i) {
    int d = 1 + i % 3;
    CMat uu;
    random_alt1(d, rng, &uu);
    auto r = alt1_decompose(uu, d);
    CHECK((r.W.cast<cd>() * block_diag(r.V1, r.V2) - uu).norm() <= 1e-9);
    CHECK(is_orthogonal(r.W, 1e-10));
  }
  CHECK_THROWS_AS(alt1_decompose(example_u(), 1), Error);
}

TEST_CASE("Alternative II certificate structure") {
  auto c = certify(bold_rotation(example_u()));
  CHECK(c.alternative == Alternative::II);
  CHECK(c.k == 1);
  CHECK(is_symplectic(c.word_A.matrix()));
  CHECK(is_symplectic(c.word_B.matrix()));
  CHECK_THROWS_AS(alt2_certificate(bold_rotation(I1 * CMat::Identity(2, 2))), Error);

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    int n = seed % 4 == 0 ? 4 : 2;
    auto cert = certify(random_symplectic_factored(n, seed));
    REQUIRE(cert.alternative == Alternative::II);
    CHECK(asymmetry(cert.P) == 0.0);
    RMat raw = cert.pre.U.imag();
    CMat ut = cert.tau * cert.pre.U;
    RMat praw = ut.imag().partialPivLu().solve(RMat(ut.real()));
    CHECK((praw - praw.transpose()).norm() <= 1e-10 * std::max(1.0, praw.norm()));
    CHECK(cert.k >= 1);
    CHECK(cert.k <= cert.d);
    CHECK(cert.word_A.letters.size() <= 12);
    CHECK(cert.word_B.letters.size() <= 12);
    CHECK(is_symplectic(cert.word_A.matrix(), 1e-9));
    CHECK(is_symplectic(cert.word_B.matrix(), 1e-9));
    RVec sc = RVec::Ones(2 * cert.d);
    sc.head(cert.k) = cert.gamma1;
    RMat omega = cert.pre.L * ut.imag() * block_diag(cert.W1, cert.W2) * sc.asDiagonal() * cert.Pi;
    CHECK((omega - cert.Omega).norm() <= 1e-12 * omega.norm());
    (void)raw;
  }
}

TEST_CASE("reduction identity on Gaussians") {
  Rng rng(13);
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    int d = seed % 3 == 0 ? 2 : 1;
    auto cert = certify(random_symplectic_factored(2 * d, 1000 + seed));
    auto f = random_gaussian(d, rng), g = random_gaussian(d, rng);
    auto pts = random_ball_points(2 * d, 100, 4.0, rng);
    worst = std::max(worst, verify_identity(cert, f, g, pts).max_error);
  }
  CHECK(worst <= 1e-8);

  auto cert = certify(bold_rotation(example_u()));
  auto phi = GeneralizedGaussian::standard(1);
  auto pts = random_ball_points(2, 100, 4.0, rng);
  CHECK(verify_identity(cert, phi, phi, pts).max_error <= 1e-8);

  // Both sides scale together when f is scaled down.
  auto tiny = phi;
  tiny.logamp = -60.0;
  CHECK(verify_identity(cert, tiny, phi, pts).max_error <= 1e-8);
  auto l1 = tfr_log_moduli(cert, tiny, phi, pts), l0 = tfr_log_moduli(cert, phi, phi, pts);
  CHECK(l1[3] - l0[3] == doctest::Approx(-60.0).epsilon(1e-12));
}

TEST_CASE("the opposite P22 sign and a perturbed Omega both fail") {
  Rng rng(14);
  auto bold = random_symplectic_factored(2, 77);
  CertifyOptions plus;
  plus.p22_sign = 1;
  auto good = certify(bold), bad = certify(bold, plus);
  auto f = random_gaussian(1, rng), g = random_gaussian(1, rng);
  auto pts = random_ball_points(2, 100, 3.0, rng);
  CHECK(verify_identity(good, f, g, pts).max_error <= 1e-8);
  CHECK(verify_identity(bad, f, g, pts).max_error > 1e-3);
  auto corrupt = good;
  corrupt.Omega(0, 0) += 1e-2;
  CHECK(verify_identity(corrupt, f, g, pts).max_error > 1e-6);
}

TEST_CASE("identity checked on the grid") {
  Rng rng(15);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 40 && checked < 3; ++seed) {
    auto cert = certify(random_symplectic_factored(2, 500 + seed));
    auto f = random_gaussian(1, rng), g = random_gaussian(1, rng);
    const Axis ax{256, 16.0};
    GridDiagnostics diag;
    auto pts = random_ball_points(2, 200, 2.0, rng);
    std::vector<double> grid;
    try {
      grid = reduced_moduli_grid(cert, sample(f, {ax}), sample(g, {ax}), pts, &diag);
    } catch (const Error&) {
      continue;
    }
    if (!diag.warnings.empty()) continue;
    auto lhs = tfr_log_moduli(cert, f, g, pts);
    double peak = 0.0;
    for (double v : lhs) peak = std::max(peak, std::exp(v));
    double err = 0.0;
    bool all_inside = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (std::isnan(grid[i])) {
        all_inside = false;
        continue;
      }
      err = std::max(err, std::abs(std::exp(lhs[i]) - grid[i]) / std::max(std::exp(lhs[i]), 1e-3 * peak));
    }
    if (!all_inside) continue;
    CHECK(err <= 1e-5);
    ++checked;
  }
  CHECK(checked >= 1);
}

TEST_CASE("quadratic reduction") {
  Rng rng(16);
  CMat v1 = random_unitary(2, rng);
  auto r = quadratic_reduce(v1, v1.conjugate());
  CHECK(r.real);
  auto s = quadratic_reduce(CMat::Identity(2, 2), -I1 * CMat::Identity(2, 2));
  CHECK(!s.real);
  CHECK((s.V - I1 * CMat::Identity(2, 2)).norm() <= 1e-15);
  for (int i = 0; i < 20; ++i) {
    auto q = quadratic_reduce(random_unitary(3, rng), random_unitary(3, rng));
    CHECK((q.V.adjoint() * q.V - CMat::Identity(3, 3)).norm() <= 1e-12);
    CHECK(is_symplectic(make_rotation(q.V).matrix()));
  }
}

TEST_CASE("pair to partial reduction") {
  auto r = pair_to_partial(I1 * CMat::Identity(1, 1));
  CHECK(r.k == 1);
  CHECK(r.B(0, 0) == doctest::Approx(1.0));
  CHECK(std::abs(r.C(0, 0)) <= 1e-15);
  CHECK((r.Omega.cwiseAbs() - RMat::Identity(2, 2)).norm() <= 1e-15);

  auto e = pair_to_partial(CMat::Constant(1, 1, std::polar(1.0, kPi / 4)));
  CHECK(e.C(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.B(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

  CHECK_THROWS_AS(pair_to_partial(CMat::Identity(2, 2)), Error);

  Rng rng(17);
  auto phi = GeneralizedGaussian::normalized(1);
  auto pts = random_ball_points(2, 100, 3.0, rng);
  CHECK(verify_pair_identity(I1 * CMat::Identity(1, 1), r, phi, pts).max_error <= 1e-12);
  for (int i = 0; i < 60; ++i) {
    int d = 1 + i % 3;
    CMat v = random_unitary(d, rng);
    if (i % 5 == 0 && d > 1) {
      CMat w = CMat::Identity(d, d);
      w(0, 0) = I1;
      RMat o = random_orthogonal(d, rng);
      v = o.cast<cd>() * w * random_orthogonal(d, rng).cast<cd>();
    }
    auto red = pair_to_partial(v);
    auto f = random_gaussian(d, rng);
    auto p = random_ball_points(2 * d, 100, 3.0, rng);
    CHECK(verify_pair_identity(v, red, f, p).max_error <= 1e-8);
    if (i % 5 == 0 && d > 1) CHECK(red.k == 1);
    auto f2 = f;
    f2.logamp += std::log(3.0);
    CHECK(verify_pair_identity(v, red, f2, p).max_error <= 1e-8);
  }
}

TEST_CASE("Alternative I counterexample") {
  const Axis ax{256, 16.0};
  RVec lo(1), hi(1);
  lo << -3.0;
  hi << 3.0;

  auto id = certify(SymplecticMatrix(RMat::Identity(4, 4)));
  REQUIRE(id.alternative == Alternative::I);
  auto ce0 = counterexample_alt1(id, lo, hi, ax);
  SampledField f0 = bump_field({ax}, lo, hi);
  double diff = 0.0;
  for (std::size_t i = 0; i < f0.size(); ++i) diff = std::max(diff, std::abs(std::abs(ce0.f[i]) - std::abs(f0[i])));
  CHECK(diff <= 1e-12);

  auto cert = certify(bold_rotation(I1 * CMat::Identity(2, 2)));
  REQUIRE(cert.alternative == Alternative::I);
  auto ce = counterexample_alt1(cert, lo, hi, ax);
  CHECK(l2_norm(ce.f) >= 0.9 * l2_norm(f0));
  CHECK(l2_norm(ce.g) >= 0.9 * l2_norm(f0));
  SampledField t = tfr_grid(certificate_matrix_word(cert), ce.f, ce.g);
  CHECK(mass_outside(t, ce.predicted) <= 1e-6);
  CHECK_THROWS_AS(counterexample_alt1(certify(bold_rotation(example_u())), lo, hi, ax), Error);
}
