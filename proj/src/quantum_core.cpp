#include "qcoh/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qcoh/random.hpp"

namespace qcoh {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::DimensionNot2: return "DimensionNot2";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NotAPartition: return "NotAPartition";
    case ErrorCode::NonExactMeasure: return "NonExactMeasure";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::RateOutOfRange: return "RateOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

constexpr double kClampFloor = -1e-10;

std::string magnitude(const char* what, double value) {
  std::ostringstream os;
  os.precision(6);
  os << what << " = " << value;
  return os.str();
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

CMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Engine& eng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(eng);
      const double im = normal(eng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

DensityMatrix DensityMatrix::from_trusted(CMatrix m) {
  CMatrix h = 0.5 * (m + m.adjoint());
  const double tr = h.trace().real();
  if (tr > 0.0) h /= tr;
  return DensityMatrix(std::move(h));
}

DensityMatrix validate_density(const CMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) throw Error(ErrorCode::NotHermitian, magnitude("max |rho_ij - conj(rho_ji)|", herm));
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > tol) throw Error(ErrorCode::TraceNotOne, magnitude("trace", tr.real()));
  CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  if (lo < -tol) throw Error(ErrorCode::NotPSD, magnitude("smallest eigenvalue", lo));
  return DensityMatrix(std::move(h));
}

PureState PureState::from_amplitudes(const CVector& a, double tol) {
  if (a.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty amplitude vector");
  const double n2 = a.squaredNorm();
  if (std::abs(n2 - 1.0) > tol) throw Error(ErrorCode::NotNormalized, magnitude("sum |a_i|^2", n2));
  return PureState(a / std::sqrt(n2));
}

PureState PureState::normalized(const CVector& a) {
  const double n = a.norm();
  if (!(n > 0.0)) throw Error(ErrorCode::NotNormalized, "zero vector");
  return PureState(a / n);
}

PureState PureState::basis(std::size_t d, std::size_t i) {
  if (i >= d) throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  CVector a = CVector::Zero(static_cast<Eigen::Index>(d));
  a(static_cast<Eigen::Index>(i)) = 1.0;
  return PureState(std::move(a));
}

PureState PureState::maximally_coherent(std::size_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  return PureState(CVector::Constant(static_cast<Eigen::Index>(d), 1.0 / std::sqrt(double(d))));
}

DensityMatrix PureState::projector() const {
  return DensityMatrix::from_trusted(a_ * a_.adjoint());
}

std::vector<double> PureState::probabilities() const {
  std::vector<double> p(dim());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm((*this)[i]);
  return p;
}

ProbabilityVector::ProbabilityVector(std::vector<double> p, double tol) : p_(std::move(p)) {
  if (p_.empty()) throw Error(ErrorCode::InvalidArgument, "empty probability vector");
  for (double v : p_) {
    if (!(v >= 0.0)) throw Error(ErrorCode::InvalidArgument, magnitude("negative probability", v));
  }
  const double s = std::accumulate(p_.begin(), p_.end(), 0.0);
  if (std::abs(s - 1.0) > tol) throw Error(ErrorCode::NotNormalized, magnitude("sum p_i", s));
}

double BlochVector::norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }

DensityMatrix dephase(const DensityMatrix& rho) {
  CMatrix d = CMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  d.diagonal() = rho.matrix().diagonal().real().cast<Complex>();
  return DensityMatrix::from_trusted(std::move(d));
}

RVector clamped_eigenvalues(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  RVector ev = es.eigenvalues();
  for (auto& v : ev) {
    if (v < 0.0 && v >= kClampFloor) v = 0.0;
  }
  return ev;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const RVector ev = clamped_eigenvalues(rho);
  double s = 0.0;
  for (double v : ev) s -= xlog2x(v);
  return s;
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) h -= xlog2x(v);
  return h;
}

double shannon_entropy(const ProbabilityVector& p) { return shannon_entropy(p.values()); }

double binary_entropy(double p) {
  const double q[2] = {p, 1.0 - p};
  return shannon_entropy(std::span<const double>(q, 2));
}

ProbabilityVector diagonal_probabilities(const DensityMatrix& rho) {
  std::vector<double> p(rho.dim());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::max(0.0, rho(i, i).real());
  return ProbabilityVector(std::move(p), kDefaultTolerance);
}

DensityMatrix bloch_to_density(const BlochVector& n) {
  if (n.norm() > 1.0 + kDefaultTolerance) {
    throw Error(ErrorCode::NotPSD, magnitude("Bloch vector norm", n.norm()));
  }
  CMatrix m(2, 2);
  m << Complex(0.5 * (1.0 + n.z), 0.0), Complex(0.5 * n.x, -0.5 * n.y),
       Complex(0.5 * n.x, 0.5 * n.y), Complex(0.5 * (1.0 - n.z), 0.0);
  return DensityMatrix::from_trusted(std::move(m));
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw Error(ErrorCode::DimensionNot2, "dimension is " + std::to_string(rho.dim()));
  }
  const Complex off = rho(0, 1);
  return {2.0 * off.real(), -2.0 * off.imag(), (rho(0, 0) - rho(1, 1)).real()};
}

PureState haar_random_pure(std::size_t d, std::uint64_t seed) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  Engine eng(seed);
  return PureState::normalized(gaussian_matrix(d, 1, eng).col(0));
}

DensityMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed) {
  if (rank < 1 || rank > d) throw Error(ErrorCode::InvalidArgument, "rank must lie in [1, d]");
  Engine eng(seed);
  const CMatrix g = gaussian_matrix(d, rank, eng);
  return DensityMatrix::from_trusted(g * g.adjoint());
}

CMatrix haar_random_unitary(std::size_t d, std::uint64_t seed) {
  Engine eng(seed);
  const CMatrix g = gaussian_matrix(d, d, eng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex rjj = r(j, j);
    const double a = std::abs(rjj);
    if (a > 0.0) q.col(j) *= rjj / a;
  }
  return q;
}

DensityMatrix incoherent_state(std::span<const double> populations) {
  ProbabilityVector p(std::vector<double>(populations.begin(), populations.end()), kDefaultTolerance);
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) m(Eigen::Index(i), Eigen::Index(i)) = p[i];
  return DensityMatrix::from_trusted(std::move(m));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  const Eigen::Index da = a.matrix().rows();
  const Eigen::Index db = b.matrix().rows();
  CMatrix k(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) k.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
  }
  return DensityMatrix::from_trusted(std::move(k));
}

DensityMatrix mix(std::span<const double> weights, std::span<const DensityMatrix> states) {
  if (weights.size() != states.size() || states.empty()) {
    throw Error(ErrorCode::InvalidArgument, "weights and states must be nonempty and of equal length");
  }
  ProbabilityVector q(std::vector<double>(weights.begin(), weights.end()), kDefaultTolerance);
  const auto d = states.front().matrix().rows();
  CMatrix acc = CMatrix::Zero(d, d);
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (states[k].matrix().rows() != d) throw Error(ErrorCode::DimensionMismatch, "ensemble members differ in dimension");
    acc += q[k] * states[k].matrix();
  }
  return DensityMatrix::from_trusted(std::move(acc));
}

}  // namespace qcoh
