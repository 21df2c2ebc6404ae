#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qcoh/errors.hpp"

namespace qcoh {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-12;

/// Hermitian, unit-trace, positive semidefinite d x d matrix.
///
/// Instances are only produced by validate_density() or by library routines
/// whose output is a density matrix by construction, so holders may rely on
/// the invariants without re-checking.
class DensityMatrix {
 public:
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& matrix() const noexcept { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  // Hermitizes and renormalizes the trace of a matrix that is a density matrix
  // up to rounding (channel outputs, mixtures, tensor products). No checks.
  static DensityMatrix from_trusted(CMatrix m);

 private:
  explicit DensityMatrix(CMatrix m) : m_(std::move(m)) {}
  friend DensityMatrix validate_density(const CMatrix& m, double tol);

  CMatrix m_;
};

/// Unit-norm amplitude vector in the computational basis.
class PureState {
 public:
  std::size_t dim() const noexcept { return static_cast<std::size_t>(a_.size()); }
  const CVector& amplitudes() const noexcept { return a_; }
  Complex operator[](std::size_t i) const { return a_(static_cast<Eigen::Index>(i)); }

  // Rejects vectors whose squared norm is off by more than tol, then
  // normalizes exactly.
  static PureState from_amplitudes(const CVector& a, double tol = kNormTolerance);
  // Normalizes any nonzero vector.
  static PureState normalized(const CVector& a);
  static PureState basis(std::size_t d, std::size_t i);
  /// Equal superposition of all d basis states.
  static PureState maximally_coherent(std::size_t d);

  DensityMatrix projector() const;
  std::vector<double> probabilities() const;

 private:
  explicit PureState(CVector a) : a_(std::move(a)) {}
  CVector a_;
};

/// Nonnegative weights summing to one.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> p, double tol = kNormTolerance);
  std::span<const double> values() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }

 private:
  std::vector<double> p_;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const noexcept;
};

DensityMatrix validate_density(const CMatrix& m, double tol = kDefaultTolerance);

DensityMatrix dephase(const DensityMatrix& rho);

/// Eigenvalues in ascending order, with values in [-1e-10, 0) clamped to zero.
RVector clamped_eigenvalues(const DensityMatrix& rho);

// Entropies are in bits throughout.
double von_neumann_entropy(const DensityMatrix& rho);
double shannon_entropy(const ProbabilityVector& p);
double shannon_entropy(std::span<const double> p);
double binary_entropy(double p);
ProbabilityVector diagonal_probabilities(const DensityMatrix& rho);

DensityMatrix bloch_to_density(const BlochVector& n);
BlochVector density_to_bloch(const DensityMatrix& rho);

/// Normalized standard complex Gaussian vector.
PureState haar_random_pure(std::size_t d, std::uint64_t seed);
/// Normalized G G^dagger for a d x rank complex Gaussian G.
DensityMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed);
/// Haar-distributed d x d unitary (QR of a Ginibre matrix with phase fix).
CMatrix haar_random_unitary(std::size_t d, std::uint64_t seed);

DensityMatrix incoherent_state(std::span<const double> populations);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix mix(std::span<const double> weights, std::span<const DensityMatrix> states);

}  // namespace qcoh
