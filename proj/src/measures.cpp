#include "qcoh/measures.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qcoh {

std::string_view measure_name(MeasureId id) noexcept {
  switch (id) {
    case MeasureId::RelEnt: return "rel_ent";
    case MeasureId::L1: return "l1";
    case MeasureId::RoofRandomness: return "roof";
    case MeasureId::QubitAnalytic: return "qubit_analytic";
  }
  return "unknown";
}

namespace {

void require_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw Error(ErrorCode::DimensionNot2, "dimension is " + std::to_string(rho.dim()));
}

}  // namespace

MeasureValue c_rel_ent(const DensityMatrix& rho) {
  const double v = von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho);
  return {std::max(0.0, v), MeasureId::RelEnt};
}

MeasureValue c_l1(const DensityMatrix& rho) {
  const CMatrix& m = rho.matrix();
  double s = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) s += std::abs(m(i, j));
    }
  }
  return {s, MeasureId::L1};
}

MeasureValue r_pure(const PureState& psi) {
  const auto p = psi.probabilities();
  return {shannon_entropy(p), MeasureId::RoofRandomness};
}

double coherence_concurrence_qubit(const DensityMatrix& rho) {
  require_qubit(rho);
  CMatrix sx(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  const CMatrix& r = rho.matrix();
  const CMatrix m = r * sx * r.conjugate() * sx;
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  // M is similar to a PSD matrix, so its spectrum is real and nonnegative up
  // to rounding. Only the larger eigenvalue is taken from the solver: the
  // smaller one is roundoff-dominated near rank one, and its square root would
  // amplify that to ~1e-8. It follows instead from eta1 * eta2 = det M = |det rho|^2.
  const double eta1 = std::max({0.0, es.eigenvalues()(0).real(), es.eigenvalues()(1).real()});
  if (eta1 == 0.0) return 0.0;
  const double det = std::abs((r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0)).real());
  const double root1 = std::sqrt(eta1);
  return std::abs(root1 - det / root1);
}

double coherence_concurrence_bloch(const DensityMatrix& rho) {
  const BlochVector n = density_to_bloch(rho);
  return std::hypot(n.x, n.y);
}

double r_from_concurrence(double concurrence) {
  const double c = std::clamp(concurrence, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

MeasureValue r_qubit_analytic(const DensityMatrix& rho) {
  return {r_from_concurrence(coherence_concurrence_qubit(rho)), MeasureId::QubitAnalytic};
}

}  // namespace qcoh
