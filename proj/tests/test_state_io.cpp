#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "qcoh/convex_roof.hpp"
#include "qcoh/state_io.hpp"

using namespace qcoh;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_state(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parsed: " << text);
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("the three state forms") {
  const auto e = parse_state(R"({"dim": 2, "entries": [[0.5,0],[0.3,0],[0.3,0],[0.5,0]]})");
  CHECK(e.density(0, 1).real() == doctest::Approx(0.3));
  CHECK_FALSE(e.pure.has_value());

  const auto a = parse_state(R"({"dim": 2, "amplitudes": [[0.6,0],[0,0.8]]})");
  REQUIRE(a.pure.has_value());
  CHECK(a.pure->amplitudes()(1).imag() == doctest::Approx(0.8));
  CHECK(a.density(0, 1).imag() == doctest::Approx(-0.48));

  const auto b = parse_state(R"({"bloch": [0.6, 0, 0]})");
  CHECK(b.density(0, 1).real() == doctest::Approx(0.3));
}

TEST_CASE("rejections carry the violated invariant") {
  CHECK(code_of(R"({"dim": 2, "entries": [[0.5,0],[0.3,0],[0.2,0],[0.5,0]]})") == ErrorCode::NotHermitian);
  CHECK(code_of(R"({"dim": 2, "entries": [[0.6,0],[0,0],[0,0],[0.6,0]]})") == ErrorCode::TraceNotOne);
  CHECK(code_of(R"({"dim": 2, "entries": [[1.2,0],[0,0],[0,0],[-0.2,0]]})") == ErrorCode::NotPSD);
  CHECK(code_of(R"({"dim": 2, "amplitudes": [[1,0],[1,0]]})") == ErrorCode::NotNormalized);
  CHECK(code_of(R"({"bloch": [1, 1, 0]})") == ErrorCode::NotPSD);
  CHECK(code_of(R"({"dim": 3, "bloch": [0, 0, 0]})") == ErrorCode::DimensionNot2);
  CHECK(code_of(R"({"dim": 2, "entries": [[1,0]]})") == ErrorCode::ParseError);
  CHECK(code_of(R"({"dim": 2})") == ErrorCode::ParseError);
  CHECK(code_of(R"({"dim": 2, "bloch": [0,0,1], "amplitudes": [[1,0],[0,0]]})") == ErrorCode::ParseError);
  CHECK(code_of("not json") == ErrorCode::ParseError);
}

TEST_CASE("tolerance override") {
  const std::string slightly_off = R"({"dim": 2, "entries": [[0.5000001,0],[0,0],[0,0],[0.5,0]]})";
  CHECK(code_of(slightly_off) == ErrorCode::TraceNotOne);
  CHECK_NOTHROW(parse_state(slightly_off, 1e-6));
}

TEST_CASE("serializers round-trip through the parser") {
  const auto rho = random_density(3, 2, 4);
  const auto back = parse_state(density_to_json(rho));
  CHECK((back.density.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-15);

  const auto psi = haar_random_pure(4, 2);
  const auto pback = parse_state(pure_to_json(psi));
  REQUIRE(pback.pure.has_value());
  CHECK((pback.pure->amplitudes() - psi.amplitudes()).norm() < 1e-15);

  const auto dec = eigen_decomposition(rho);
  const auto j = nlohmann::json::parse(decomposition_to_json(dec));
  CHECK(j["dim"] == 3);
  CHECK(j["elements"].size() == dec.elements.size());
  for (const auto& el : j["elements"]) CHECK_NOTHROW(parse_state(el["state"].dump()));
}

TEST_CASE("files") {
  const std::string path = "qcoh_state_io_test.json";
  {
    std::ofstream os(path);
    os << R"({"dim": 2, "bloch": [0, 0, 1]})";
  }
  CHECK(load_state(path).density(0, 0).real() == doctest::Approx(1.0));
  std::remove(path.c_str());
  try {
    load_state("/nonexistent/state.json");
    FAIL("loaded a missing file");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}
