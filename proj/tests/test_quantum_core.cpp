#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "qcoh/quantum_core.hpp"
#include "qcoh/random.hpp"

using namespace qcoh;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::InvalidArgument;
}

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("validate_density accepts a valid qubit") {
  const auto rho = validate_density(mat2(0.5, 0.3, 0.3, 0.5));
  CHECK(rho.dim() == 2);
  CHECK(rho(0, 1).real() == doctest::Approx(0.3));
}

TEST_CASE("validate_density rejection reasons") {
  CHECK(code_of([] { validate_density(mat2(0.5, 0.3, 0.2, 0.5)); }) == ErrorCode::NotHermitian);
  CHECK(code_of([] { validate_density(mat2(0.6, 0.0, 0.0, 0.6)); }) == ErrorCode::TraceNotOne);
  CHECK(code_of([] { validate_density(mat2(1.2, 0.0, 0.0, -0.2)); }) == ErrorCode::NotPSD);
  CHECK(code_of([] { validate_density(CMatrix::Zero(2, 3)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("validate_density tolerance is honoured") {
  CHECK_NOTHROW(validate_density(mat2(0.5 + 5e-11, 0.0, 0.0, 0.5)));
  CHECK_THROWS_AS(validate_density(mat2(0.5 + 1e-8, 0.0, 0.0, 0.5)), Error);
  CHECK_NOTHROW(validate_density(mat2(0.5 + 1e-8, 0.0, 0.0, 0.5), 1e-6));
}

TEST_CASE("pure states") {
  CVector a(2);
  a << 0.6, Complex(0.0, 0.8);
  const auto psi = PureState::from_amplitudes(a);
  const auto p = psi.probabilities();
  CHECK(p[0] == doctest::Approx(0.36));
  CHECK(p[1] == doctest::Approx(0.64));
  CHECK(von_neumann_entropy(psi.projector()) < 1e-9);

  CVector bad(2);
  bad << 1.0, 1.0;
  CHECK(code_of([&] { PureState::from_amplitudes(bad); }) == ErrorCode::NotNormalized);

  const auto plus = PureState::maximally_coherent(4);
  for (double v : plus.probabilities()) CHECK(v == doctest::Approx(0.25));
}

TEST_CASE("entropy examples") {
  CHECK(von_neumann_entropy(PureState::maximally_coherent(2).projector()) < 1e-12);
  const double half[2] = {0.5, 0.5};
  CHECK(von_neumann_entropy(incoherent_state(half)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(binary_entropy(0.8) == doctest::Approx(0.7219280948873623).epsilon(1e-12));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
}

TEST_CASE("dephase is idempotent, trace preserving and raises entropy") {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const std::size_t d = 2 + s % 5;
    const auto rho = random_density(d, 1 + s % d, mix_seed(101, s));
    const auto once = dephase(rho);
    const auto twice = dephase(once);
    REQUIRE((once.matrix() - twice.matrix()).cwiseAbs().maxCoeff() < 1e-15);
    REQUIRE(std::abs(once.matrix().trace().real() - 1.0) < 1e-12);
    REQUIRE(von_neumann_entropy(once) >= von_neumann_entropy(rho) - 1e-12);
    const double a = shannon_entropy(diagonal_probabilities(rho));
    REQUIRE(std::abs(a - von_neumann_entropy(once)) < 1e-12);
    REQUIRE(std::abs(von_neumann_entropy(rho) - oracle::von_neumann(rho.matrix())) < 1e-12);
  }
}

TEST_CASE("clamping keeps tiny negative eigenvalues out of the entropy") {
  CMatrix m = mat2(1.0 + 5e-11, 0.0, 0.0, -5e-11);
  const auto rho = validate_density(m);
  const auto ev = clamped_eigenvalues(rho);
  CHECK(ev.minCoeff() >= 0.0);
  CHECK(std::isfinite(von_neumann_entropy(rho)));
}

TEST_CASE("bloch conversions") {
  const auto plus = bloch_to_density({1.0, 0.0, 0.0});
  CHECK(std::abs(plus(0, 1) - Complex(0.5, 0.0)) < 1e-15);
  CHECK(code_of([] { bloch_to_density({1.0, 1.0, 0.0}); }) == ErrorCode::NotPSD);
  CHECK(code_of([] { density_to_bloch(random_density(3, 3, 1)); }) == ErrorCode::DimensionNot2);

  Engine eng(77);
  std::normal_distribution<double> g;
  for (int s = 0; s < 1000; ++s) {
    BlochVector n{g(eng), g(eng), g(eng)};
    const double scale = uniform01(eng) / n.norm();
    n = {n.x * scale, n.y * scale, n.z * scale};
    const auto back = density_to_bloch(bloch_to_density(n));
    REQUIRE(std::abs(back.x - n.x) < 1e-12);
    REQUIRE(std::abs(back.y - n.y) < 1e-12);
    REQUIRE(std::abs(back.z - n.z) < 1e-12);
  }
}

TEST_CASE("random generators are deterministic and well formed") {
  const auto a = random_density(2, 2, 7);
  const auto b = random_density(2, 2, 7);
  CHECK((a.matrix() - b.matrix()).norm() == 0.0);
  CHECK(von_neumann_entropy(random_density(4, 1, 3)) <= 1e-9);

  const auto r3 = random_density(3, 3, 5);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(r3.matrix());
  CHECK(es.eigenvalues().minCoeff() > 0.0);

  const CMatrix u = haar_random_unitary(5, 9);
  CHECK((u.adjoint() * u - CMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(haar_random_pure(6, 3).amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(random_density(3, 4, 1), Error);
}

TEST_CASE("tensor product and mixtures") {
  const auto a = random_density(2, 2, 1);
  const auto b = random_density(3, 2, 2);
  const auto ab = tensor_product(a, b);
  CHECK(ab.dim() == 6);
  CHECK((ab.matrix() - oracle::kron(a.matrix(), b.matrix())).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(von_neumann_entropy(ab) ==
        doctest::Approx(von_neumann_entropy(a) + von_neumann_entropy(b)).epsilon(1e-10));

  const double w[2] = {0.25, 0.75};
  const DensityMatrix states[2] = {PureState::basis(2, 0).projector(), PureState::basis(2, 1).projector()};
  const auto m = mix(w, states);
  CHECK(m(0, 0).real() == doctest::Approx(0.25));
  CHECK(m(1, 1).real() == doctest::Approx(0.75));
  const DensityMatrix wrong[2] = {states[0], random_density(3, 1, 1)};
  CHECK(code_of([&] { mix(w, wrong); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("probability vectors reject bad input") {
  CHECK(code_of([] { ProbabilityVector({0.5, 0.6}); }) == ErrorCode::NotNormalized);
  CHECK(code_of([] { ProbabilityVector({1.5, -0.5}); }) == ErrorCode::InvalidArgument);
  CHECK(shannon_entropy(ProbabilityVector({0.25, 0.25, 0.25, 0.25})) == doctest::Approx(2.0));
}
