#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "mtfr/field_io.hpp"
#include "mtfr/serialize.hpp"

using namespace mtfr;

TEST_CASE("matrix round trips") {
  Rng rng(1);
  RMat m = random_real(3, 3, rng);
  CHECK(real_matrix_from_json(parse_json(dump_json(real_matrix_to_json(m)))) == m);
  CMat c = random_unitary(2, rng);
  CHECK(complex_matrix_from_json(parse_json(dump_json(complex_matrix_to_json(c)))) == c);
  SymplecticMatrix s = random_symplectic(2, 5, 3);
  CHECK(symplectic_from_json(parse_json(dump_json(symplectic_to_json(s)))).matrix() == s.matrix());

  CHECK_THROWS_AS(parse_json("{\"n\": 1, \"rows\": [[1, 0], [0"), Error);
  CHECK_THROWS_AS(symplectic_from_json(parse_json(R"({"n": 1, "rows": [[1, 1], [1, 1]]})")), Error);
  CHECK_THROWS_AS(symplectic_from_json(parse_json(R"({"n": 2, "rows": [[1, 0], [0, 1]]})")), Error);
  CHECK_THROWS_AS(symplectic_from_json(parse_json(R"({"n": 1, "rows": [[1, 0], [0, 1]], "x": 0})")), Error);
  CHECK_THROWS_AS(real_matrix_from_json(parse_json(R"({"rows": [[1, "a"]]})")), Error);
  try {
    symplectic_from_json(parse_json(R"({"n": 1, "rows": [[1, 1], [1, 1]]})"));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSymplectic);
  }
}

TEST_CASE("words and Gaussians") {
  GeneratorWord w = random_word(3, 8, 5);
  GeneratorWord back = word_from_json(parse_json(dump_json(word_to_json(w))), 3);
  CHECK(back.letters.size() == w.letters.size());
  CHECK((back.matrix() - w.matrix()).norm() == 0.0);
  CHECK_THROWS_AS(word_from_json(parse_json(R"([{"kind": "shear"}])"), 1), Error);
  CHECK_THROWS_AS(word_from_json(parse_json(R"([{"kind": "chirp", "Q": {"rows": [[1, 2], [3, 4]]}}])"), 2), Error);

  Rng rng(2);
  auto g = random_gaussian(2, rng);
  auto h = gaussian_from_json(parse_json(dump_json(gaussian_to_json(g))));
  CHECK(h.M == g.M);
  CHECK(h.b == g.b);
  CHECK(h.logamp == g.logamp);
}

TEST_CASE("certificate round trip and determinism") {
  auto c2 = certify(random_symplectic_factored(4, 9));
  std::string t = dump_json(certificate_to_json(c2));
  auto back = certificate_from_json(parse_json(t));
  CHECK(dump_json(certificate_to_json(back)) == t);
  CHECK(dump_json(certificate_to_json(certify(random_symplectic_factored(4, 9)))) == t);
  CHECK(back.Omega == c2.Omega);
  CHECK(back.k == c2.k);
  CHECK((back.word_A.matrix() - c2.word_A.matrix()).norm() == 0.0);

  CMat u = CMat::Identity(2, 2) * cd(0, 1);
  auto c1 = certify(make_rotation(u));
  auto b1 = certificate_from_json(parse_json(dump_json(certificate_to_json(c1))));
  CHECK(b1.alternative == Alternative::I);
  CHECK(b1.V1 == c1.V1);

  auto j = certificate_to_json(c2);
  j["k"] = 7;
  CHECK_THROWS_AS(certificate_from_json(j), Error);
}

TEST_CASE("reports") {
  UPReport r;
  r.condition = "beurling";
  r.parameters = {{"N", 0.0}};
  r.sweeps.push_back(make_sweep("beurling", {1, 2}, {1.0, 2.5}, VerdictRule{}));
  Json j = report_to_json(r);
  CHECK(j["sweeps"][0]["points"][0]["ratio"].is_null());
  CHECK(j["sweeps"][0]["points"][1]["ratio"] == 2.5);
  CHECK(sweep_csv(r.sweeps[0]) == "R,value,ratio\n1,1,\n2,2.5,2.5\n");

  RVec c(2), h(2);
  c << 0.5, -1.0;
  h << 1.0, 2.0;
  Shape s = shape_from_json(shape_to_json(Shape::box(c, h)));
  CHECK(s.half == h);
  CHECK_THROWS_AS(shape_from_json(parse_json(R"({"kind": "torus", "center": [0]})")), Error);
}

TEST_CASE("field files") {
  Rng rng(3);
  SampledField f = sample(random_gaussian(2, rng), uniform_axes(2, 16, 4.0));
  std::string bytes = encode_field(f);
  CHECK(bytes.substr(0, 4) == "MTFR");
  CHECK(bytes.size() == 12 + 2 * 16 + 16 * 256);
  SampledField g = decode_field(bytes);
  CHECK(g.axes() == f.axes());
  CHECK(g.values() == f.values());

  auto dir = std::filesystem::temp_directory_path() / "mtfr_test_fields";
  std::filesystem::create_directories(dir);
  std::string path = (dir / "f.bin").string();
  write_field(path, f);
  CHECK(read_field(path).values() == f.values());
  CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == 1);
  std::filesystem::remove_all(dir);

  CHECK_THROWS_AS(decode_field("MTFX"), Error);
  CHECK_THROWS_AS(decode_field(bytes.substr(0, bytes.size() - 8)), Error);

  SampledField s = field_slice(f, 1, 0, {3, 5});
  CHECK(s[2 * 16 + 7] == f[7 * 16 + 2]);
  std::string csv = field_csv(SampledField(std::vector<Axis>{Axis{8, 2.0}}));
  CHECK(csv.rfind("t0,re,im,abs\n-1,0,0,0\n", 0) == 0);
}
