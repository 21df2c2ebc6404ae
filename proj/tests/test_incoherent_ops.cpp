#include <doctest.h>

#include <cmath>

#include "qcoh/incoherent_ops.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/random.hpp"

using namespace qcoh;

namespace {

KrausSet single(const CMatrix& k) {
  KrausSet ks;
  ks.operators.push_back(k);
  return ks;
}

double max_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Off-diagonal magnitude of K delta K^dag for every basis projector delta,
// a direct reading of "maps incoherent states to incoherent states".
double worst_incoherent_leak(const KrausSet& ks) {
  const auto d = Eigen::Index(ks.dim());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    CMatrix delta = CMatrix::Zero(d, d);
    delta(i, i) = 1.0;
    for (const auto& k : ks.operators) {
      CMatrix out = k * delta * k.adjoint();
      out.diagonal().setZero();
      worst = std::max(worst, out.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("incoherence checker examples") {
  CHECK(is_incoherent_kraus_set(dephasing_kraus(3)));
  CMatrix perm = CMatrix::Zero(3, 3);
  perm(1, 0) = perm(2, 1) = perm(0, 2) = 1.0;
  CHECK(is_incoherent_kraus_set(single(perm)));
  CMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  CHECK_FALSE(is_incoherent_kraus_set(single(h / std::sqrt(2.0))));
  CHECK_FALSE(is_incoherent_kraus_set(single(0.5 * CMatrix::Identity(2, 2))));  // not trace preserving

  KrausSet mixed;
  mixed.operators = {CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)};
  CHECK_THROWS_AS(is_incoherent_kraus_set(mixed), Error);
}

TEST_CASE("random incoherent Kraus sets") {
  const auto one = random_incoherent_kraus(2, 1, 5);
  CHECK(is_incoherent_kraus_set(one));
  const auto a = random_incoherent_kraus(3, 4, 1);
  const auto b = random_incoherent_kraus(3, 4, 1);
  REQUIRE(a.operators.size() == b.operators.size());
  for (std::size_t n = 0; n < a.operators.size(); ++n) CHECK(max_diff(a.operators[n], b.operators[n]) == 0.0);

  for (std::uint64_t s = 0; s < 300; ++s) {
    const std::size_t d = 2 + s % 5;
    const std::size_t n_ops = 1 + s % 4;
    for (const auto& ks : {random_incoherent_kraus(d, n_ops, s), random_incoherent_kraus_merging(d, n_ops, s)}) {
      REQUIRE(is_incoherent_kraus_set(ks));
      REQUIRE(ks.completeness_deviation() < 1e-10);
      REQUIRE(worst_incoherent_leak(ks) < 1e-12);
      std::vector<double> p(d);
      Engine eng(s);
      double sum = 0.0;
      for (auto& v : p) sum += (v = uniform01(eng));
      for (auto& v : p) v /= sum;
      REQUIRE(c_l1(apply_channel(incoherent_state(p), ks)).value < 1e-10);
    }
  }
}

TEST_CASE("merging family really merges populations") {
  // At least one seed must send two basis states to the same row of a single operator.
  bool merged = false;
  for (std::uint64_t s = 0; s < 20 && !merged; ++s) {
    const auto ks = random_incoherent_kraus_merging(3, 2, s);
    for (const auto& k : ks.operators) {
      for (Eigen::Index i = 0; i < k.rows(); ++i) {
        int hits = 0;
        for (Eigen::Index j = 0; j < k.cols(); ++j) hits += std::abs(k(i, j)) > 1e-12;
        merged = merged || hits > 1;
      }
    }
  }
  CHECK(merged);
}

TEST_CASE("channel application examples") {
  const auto rho = random_density(3, 2, 12);
  CHECK(max_diff(apply_channel(rho, dephasing_kraus(3)).matrix(), dephase(rho).matrix()) < 1e-15);
  CHECK(max_diff(apply_channel(rho, identity_kraus(3)).matrix(), rho.matrix()) < 1e-15);
  CHECK_THROWS_AS(apply_channel(rho, dephasing_kraus(2)), Error);

  const auto plus = PureState::maximally_coherent(2).projector();
  const auto outs = apply_selective(plus, dephasing_kraus(2));
  REQUIRE(outs.size() == 2);
  for (std::size_t n = 0; n < 2; ++n) {
    CHECK(outs[n].probability == doctest::Approx(0.5));
    CHECK(outs[n].state(n, n).real() == doctest::Approx(1.0));
  }
  const auto zero = PureState::basis(2, 0).projector();
  CHECK(apply_selective(zero, dephasing_kraus(2)).size() == 1);
}

TEST_CASE("selective outcomes average to the channel output") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const std::size_t d = 2 + s % 5;
    const auto rho = random_density(d, 1 + s % d, mix_seed(7, s));
    const auto ks = (s % 2) ? random_incoherent_kraus(d, 3, s) : random_incoherent_kraus_merging(d, 3, s);
    const auto outs = apply_selective(rho, ks);
    CMatrix avg = CMatrix::Zero(Eigen::Index(d), Eigen::Index(d));
    double total = 0.0;
    for (const auto& o : outs) {
      avg += o.probability * o.state.matrix();
      total += o.probability;
    }
    REQUIRE(std::abs(total - 1.0) < 1e-9);
    REQUIRE(max_diff(avg, apply_channel(rho, ks).matrix()) < 1e-9);
  }
}

TEST_CASE("partition projectors") {
  CHECK(max_diff(projection_partition_kraus(3, {{0}, {1}, {2}}).operators[1], dephasing_kraus(3).operators[1]) == 0.0);
  const auto whole = projection_partition_kraus(3, {{0, 1, 2}});
  REQUIRE(whole.operators.size() == 1);
  CHECK(max_diff(whole.operators[0], CMatrix::Identity(3, 3)) == 0.0);

  const auto halves = projection_partition_kraus(4, {{0, 1}, {2, 3}});
  CHECK(is_incoherent_kraus_set(halves));
  const auto outs = apply_selective(PureState::maximally_coherent(4).projector(), halves);
  REQUIRE(outs.size() == 2);
  for (const auto& o : outs) {
    CHECK(o.probability == doctest::Approx(0.5));
    CHECK(c_l1(o.state).value == doctest::Approx(1.0));  // a maximally coherent pair
  }

  for (const auto& bad : std::vector<std::vector<std::vector<std::size_t>>>{{{0, 1}, {1, 2}}, {{0}, {2}}, {{0, 1, 2, 3}}}) {
    try {
      projection_partition_kraus(3, bad);
      FAIL("accepted an invalid partition");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotAPartition);
    }
  }
}
