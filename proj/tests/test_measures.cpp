#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/random.hpp"

using namespace qcoh;

TEST_CASE("relative entropy of coherence examples") {
  CHECK(c_rel_ent(PureState::maximally_coherent(2).projector()).value == doctest::Approx(1.0).epsilon(1e-12));
  const double p[3] = {0.2, 0.5, 0.3};
  CHECK(c_rel_ent(incoherent_state(p)).value == doctest::Approx(0.0));
  CMatrix m(2, 2);
  m << 0.5, 0.3, 0.3, 0.5;
  CHECK(c_rel_ent(validate_density(m)).value == doctest::Approx(1.0 - oracle::h2(0.8)).epsilon(1e-12));
}

TEST_CASE("closed form matches brute-force minimum over diagonal states") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto rho = random_density(2, 1 + s % 2, mix_seed(3, s));
    const double grid = oracle::rel_ent_qubit_grid(rho.matrix(), 1e-3);
    const double closed = c_rel_ent(rho).value;
    REQUIRE(closed <= grid + 1e-12);
    // The grid minimum overshoots by KL(p || q) for the nearest grid point q,
    // about (step/2)^2 / (2 ln2 p (1-p)).
    const double p = rho(0, 0).real();
    REQUIRE(grid - closed < 0.25e-6 / (std::log(2.0) * p * (1.0 - p)) + 1e-12);
  }
}

TEST_CASE("l1 coherence examples") {
  for (std::size_t d = 2; d <= 6; ++d) {
    CHECK(c_l1(PureState::maximally_coherent(d).projector()).value == doctest::Approx(double(d - 1)).epsilon(1e-12));
  }
  const auto rho = bloch_to_density({0.3, -0.4, 0.2});
  CHECK(c_l1(rho).value == doctest::Approx(0.5).epsilon(1e-12));
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto r = random_density(2 + s % 5, 2, s);
    REQUIRE(std::abs(c_l1(r).value - oracle::l1(r.matrix())) < 1e-12);
  }
}

TEST_CASE("pure-state randomness examples") {
  CHECK(r_pure(PureState::basis(3, 1)).value == 0.0);
  for (std::size_t d = 2; d <= 6; ++d) {
    CHECK(r_pure(PureState::maximally_coherent(d)).value == doctest::Approx(std::log2(double(d))).epsilon(1e-12));
  }
  CVector a(2);
  a << std::sqrt(0.9), std::sqrt(0.1);
  CHECK(r_pure(PureState::from_amplitudes(a)).value == doctest::Approx(0.4689955935892812).epsilon(1e-12));
}

TEST_CASE("pure-state randomness equals relative entropy and is additive") {
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto psi = haar_random_pure(2 + s % 5, mix_seed(11, s));
    REQUIRE(std::abs(r_pure(psi).value - c_rel_ent(psi.projector()).value) < 1e-12);
    const auto phi = haar_random_pure(2 + s % 3, mix_seed(12, s));
    CVector prod(psi.dim() * phi.dim());
    for (std::size_t i = 0; i < psi.dim(); ++i)
      for (std::size_t j = 0; j < phi.dim(); ++j) prod(Eigen::Index(i * phi.dim() + j)) = psi[i] * phi[j];
    const double joint = r_pure(PureState::normalized(prod)).value;
    REQUIRE(std::abs(joint - r_pure(psi).value - r_pure(phi).value) < 1e-12);
  }
}

TEST_CASE("concurrence examples and agreement of both routes") {
  CHECK(coherence_concurrence_qubit(PureState::maximally_coherent(2).projector()) == doctest::Approx(1.0).epsilon(1e-10));
  const double p[2] = {0.7, 0.3};
  CHECK(coherence_concurrence_qubit(incoherent_state(p)) == doctest::Approx(0.0));
  CHECK(coherence_concurrence_qubit(bloch_to_density({0.6, 0.0, 0.0})) == doctest::Approx(0.6).epsilon(1e-10));
  CHECK_THROWS_AS(coherence_concurrence_qubit(random_density(3, 2, 1)), Error);

  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto rho = random_density(2, 1 + s % 2, mix_seed(21, s));
    const double eig = coherence_concurrence_qubit(rho);
    REQUIRE(std::abs(eig - coherence_concurrence_bloch(rho)) < 1e-10);
    REQUIRE(std::abs(eig - c_l1(rho).value) < 1e-10);
  }
}

TEST_CASE("analytic qubit randomness") {
  CHECK(r_qubit_analytic(PureState::maximally_coherent(2).projector()).value == doctest::Approx(1.0).epsilon(1e-10));
  const double p[2] = {0.4, 0.6};
  CHECK(r_qubit_analytic(incoherent_state(p)).value == doctest::Approx(0.0));
  CHECK(r_qubit_analytic(bloch_to_density({0.6, 0.0, 0.0})).value == doctest::Approx(oracle::h2(0.9)).epsilon(1e-10));
  CHECK(r_from_concurrence(1.0) == doctest::Approx(1.0));
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto rho = random_density(2, 2, mix_seed(31, s));
    REQUIRE(std::abs(r_qubit_analytic(rho).value - oracle::qubit_roof(rho.matrix())) < 1e-10);
  }
}

TEST_CASE("measures stay within their bounds") {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const std::size_t d = 2 + s % 5;
    const auto rho = random_density(d, 1 + s % d, mix_seed(41, s));
    const double cap = std::log2(double(d)) + 1e-9;
    const double re = c_rel_ent(rho).value;
    REQUIRE(re >= -1e-9);
    REQUIRE(re <= cap);
    REQUIRE(c_l1(rho).value <= double(d - 1) + 1e-9);
  }
}
