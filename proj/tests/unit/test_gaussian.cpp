#include <cmath>

#include "doctest.h"
#include "mtfr/gaussian.hpp"

using namespace mtfr;

namespace {

const cd I1(0, 1);

RVec vec(std::initializer_list<double> v) {
  RVec r(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) r(i++) = x;
  return r;
}

RVec random_point(int n, Rng& rng, double scale) {
  return random_real(n, 1, rng, -scale, scale).col(0);
}

// Reference Gaussians of tests/oracles/oracles.py.
GeneralizedGaussian oracle_f() {
  CMat m(2, 2);
  m << cd(1, 0.3), cd(0.2, -0.1), cd(0.2, -0.1), cd(0.8, 0.2);
  CVec b(2);
  b << cd(0.1, 0.05), cd(-0.2, 0.1);
  return make_gaussian(m, b, 0.1);
}

GeneralizedGaussian oracle_g() {
  CMat m(2, 2);
  m << cd(0.9, -0.2), cd(-0.15, 0.05), cd(-0.15, 0.05), cd(1.3, 0.1);
  CVec b(2);
  b << cd(-0.05, 0.1), cd(0.15, -0.02);
  return make_gaussian(m, b, -0.2);
}

}  // namespace

TEST_CASE("construction checks") {
  CMat bad = CMat::Identity(2, 2);
  bad(0, 1) = 0.5;
  CHECK_THROWS_AS(make_gaussian(bad, CVec::Zero(2), 0.0), Error);
  CHECK_THROWS_AS(make_gaussian(-CMat::Identity(2, 2), CVec::Zero(2), 0.0), Error);
  CHECK(GeneralizedGaussian::normalized(3).l2_norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("chirp action") {
  auto g = GeneralizedGaussian::standard(2);
  auto c = apply_chirp(g, RMat::Zero(2, 2));
  CHECK(c.M == g.M);
  c = apply_chirp(g, RMat::Identity(2, 2));
  CHECK((c.M - (CMat::Identity(2, 2) - I1 * CMat::Identity(2, 2))).norm() == 0.0);
  Rng rng(1);
  auto h = random_gaussian(3, rng);
  auto hc = apply_chirp(h, random_symmetric(3, rng));
  for (int i = 0; i < 20; ++i) {
    RVec x = random_point(3, rng, 2.0);
    CHECK(std::abs(h.modulus(x) - hc.modulus(x)) <= 1e-14 * std::max(1.0, h.modulus(x)));
  }
}

TEST_CASE("dilation action") {
  auto g = GeneralizedGaussian::standard(1);
  auto d = apply_dilation(g, RMat::Constant(1, 1, 2.0));
  CHECK(d.M(0, 0).real() == doctest::Approx(0.25));
  CHECK(d.logamp == doctest::Approx(-0.5 * std::log(2.0)));
  CHECK_THROWS_AS(apply_dilation(g, RMat::Zero(1, 1)), Error);
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    auto h = random_gaussian(3, rng);
    RMat l = random_real(3, 3, rng) + 1.5 * RMat::Identity(3, 3);
    CHECK(apply_dilation(h, l).log_l2_norm() == doctest::Approx(h.log_l2_norm()).epsilon(1e-12));
    RVec x = random_point(3, rng, 1.0);
    CHECK(apply_dilation(h, l).modulus(l * x) ==
          doctest::Approx(h.modulus(x) / std::sqrt(std::abs(l.determinant()))).epsilon(1e-12));
  }
}

TEST_CASE("partial Fourier action") {
  auto g = GeneralizedGaussian::standard(3);
  for (std::vector<int> s : {std::vector<int>{0}, {1, 2}, {0, 1, 2}}) {
    auto f = apply_partial_fourier(g, s);
    CHECK((f.M - g.M).norm() <= 1e-15);
    CHECK(f.b.norm() == 0.0);
    CHECK(std::abs(f.logamp) <= 1e-15);
  }
  const double a = 2.5;
  GeneralizedGaussian s{a * CMat::Identity(2, 2), CVec::Zero(2), 0.3};
  auto f = apply_partial_fourier(s, {0, 1});
  CHECK((f.M - CMat::Identity(2, 2) / a).norm() <= 1e-15);
  CHECK(f.logamp == doctest::Approx(0.3 - std::log(a)));

  // Axis-0 transform of a 2-D Gaussian against adaptive quadrature (tests/oracles/oracles.py).
  auto pf = apply_partial_fourier(oracle_f(), {0});
  CHECK(pf.log_modulus(vec({0.0, 0.0})) == doctest::Approx(0.10871862443762026).epsilon(1e-13));
  CHECK(pf.log_modulus(vec({0.7, -0.4})) == doctest::Approx(-1.3146246012952085).epsilon(1e-13));
  CHECK(pf.log_modulus(vec({-1.1, 0.9})) == doctest::Approx(-7.6730352004552493).epsilon(1e-13));

  GeneralizedGaussian ill{CMat::Identity(2, 2), CVec::Zero(2), 0.0};
  ill.M(0, 0) = 1e-14;
  ill.M(1, 1) = 10.0;
  CHECK_THROWS_AS(apply_partial_fourier(ill, {0, 1}), Error);
}

TEST_CASE("Fourier squared is parity") {
  Rng rng(3);
  auto g = random_gaussian(3, rng);
  auto f2 = apply_partial_fourier(apply_partial_fourier(g, {0, 2}), {0, 2});
  for (int i = 0; i < 20; ++i) {
    RVec x = random_point(3, rng, 1.5), y = x;
    y(0) = -y(0);
    y(2) = -y(2);
    CHECK(f2.log_modulus(x) == doctest::Approx(g.log_modulus(y)).epsilon(1e-11));
  }
}

TEST_CASE("word action") {
  Rng rng(4);
  auto g = random_gaussian(2, rng);
  auto same = apply_word(g, GeneratorWord{2, {}});
  CHECK(same.M == g.M);
  auto j = apply_word(GeneralizedGaussian::standard(1), free_factorize(CMat::Constant(1, 1, I1)));
  CHECK(j.log_modulus(vec({0.7})) == doctest::Approx(-kPi * 0.49).epsilon(1e-14));

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    int n = 1 + seed % 3;
    SymplecticMatrix m = random_symplectic(n, 6, seed);
    auto h = random_gaussian(n, rng);
    GeneratorWord w1 = factor_to_word(m);
    FactorOptions other;
    other.tau = std::polar(1.0, 0.37);
    GeneratorWord w2 = factor_to_word(m, other);
    auto a = apply_word(h, w1), b = apply_word(h, w2);
    CHECK(a.log_l2_norm() == doctest::Approx(h.log_l2_norm()).epsilon(1e-10));
    for (int i = 0; i < 50; ++i) {
      RVec x = random_point(n, rng, 2.0);
      CHECK(std::abs(std::expm1(a.log_modulus(x) - b.log_modulus(x))) <= 1e-9);
    }
  }
}

TEST_CASE("tensor and conjugate") {
  auto t = tensor(GeneralizedGaussian::standard(1), GeneralizedGaussian::standard(1));
  CHECK((t.M - CMat::Identity(2, 2)).norm() == 0.0);
  Rng rng(5);
  auto g1 = random_gaussian(2, rng), g2 = random_gaussian(1, rng);
  CHECK(conjugate(conjugate(g1)).M == g1.M);
  auto g12 = tensor(g1, g2);
  for (int i = 0; i < 20; ++i) {
    RVec x = random_point(2, rng, 1.0), y = random_point(1, rng, 1.0);
    RVec xy(3);
    xy << x, y;
    CHECK(std::abs(g12.value(xy) - g1.value(x) * g2.value(y)) <= 1e-14);
  }
}

TEST_CASE("partial STFT closed form") {
  auto phi = GeneralizedGaussian::normalized(1);
  Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    RVec x = random_point(1, rng, 3.0), w = random_point(1, rng, 3.0);
    double expect = std::exp(-kPi * (x.squaredNorm() + w.squaredNorm()) / 2.0);
    CHECK(partial_stft_point(phi, phi, 1, x, w) == doctest::Approx(expect).epsilon(1e-13));
  }

  // d = 2, k = 1 against adaptive quadrature (tests/oracles/oracles.py).
  auto f = oracle_f(), g = oracle_g();
  CHECK(partial_stft_point(f, g, 1, vec({0, 0}), vec({0, 0})) == doctest::Approx(0.64422869069657063).epsilon(1e-13));
  CHECK(partial_stft_point(f, g, 1, vec({0.5, -0.3}), vec({0.8, 0.2})) ==
        doctest::Approx(0.14005074122429551).epsilon(1e-13));
  CHECK(partial_stft_point(f, g, 1, vec({-0.9, 0.4}), vec({-0.6, -0.7})) ==
        doctest::Approx(0.012275634815511204).epsilon(1e-12));

  // Cauchy-Schwarz at the origin of the (x1, w1) plane.
  for (int i = 0; i < 20; ++i) {
    auto a = random_gaussian(2, rng), b = random_gaussian(2, rng);
    RVec x2 = random_point(1, rng, 1.0), w2 = random_point(1, rng, 1.0);
    RVec x(2), w(2);
    x << 0.0, x2;
    w << 0.0, w2;
    CHECK(partial_stft_point(a, b, 1, x, w) <= a.l2_norm() * b.l2_norm() * 1e3);
    CHECK(partial_stft_point(a, a, 2, RVec::Zero(2), RVec::Zero(2)) ==
          doctest::Approx(a.l2_norm() * a.l2_norm()).epsilon(1e-12));
  }
  CHECK_THROWS_AS(PartialStftKernel(f, g, 0), Error);
}

TEST_CASE("chirp covariance of the STFT") {
  // |V_{Vg} Vf (x, w)| = |V_g f (x, w - Q x)| for V the chirp with parameter Q.
  Rng rng(7);
  for (int i = 0; i < 10; ++i) {
    auto f = random_gaussian(1, rng), g = random_gaussian(1, rng);
    RMat q = random_symmetric(1, rng, 1.0);
    PartialStftKernel plain(f, g, 1), chirped(apply_chirp(f, q), apply_chirp(g, q), 1);
    for (int j = 0; j < 10; ++j) {
      RVec x = random_point(1, rng, 2.0), w = random_point(1, rng, 2.0);
      RVec w2 = w - q * x;
      CHECK(chirped.log_modulus(x, w) == doctest::Approx(plain.log_modulus(x, w2)).epsilon(1e-11));
    }
  }
}
