#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qcoh/quantum_core.hpp"

namespace qcoh {

/// Eigenvalues below this are treated as outside the support of rho.
inline constexpr double kRankThreshold = 1e-10;

/// Weighted pure-state ensemble whose mixture is a target density matrix.
struct Decomposition {
  struct Element {
    double weight;
    PureState state;
  };
  std::vector<Element> elements;
  std::size_t target_dim = 0;

  CMatrix mixture() const;
};

struct RoofConfig {
  /// Number of ensemble members m; 0 selects rank(rho)^2.
  std::size_t ensemble_size = 0;
  std::size_t restarts = 16;
  std::size_t max_iterations = 2000;
  double tolerance = 1e-8;
  std::uint64_t seed = 0;
};

struct RoofResult {
  double value = 0.0;
  Decomposition best_decomposition;
  bool converged = false;
  std::size_t restarts_used = 0;
  std::size_t best_restart = 0;
  /// Final objective of every restart, in restart order.
  std::vector<double> restart_values;
};

/// Support of rho: eigenvalues above kRankThreshold and their eigenvectors.
struct Support {
  RVector eigenvalues;
  CMatrix eigenvectors;  // d x r
  std::size_t rank() const { return static_cast<std::size_t>(eigenvalues.size()); }
};

Support support_of(const DensityMatrix& rho);

/// Ensemble psi_e ~ sum_j W_ej sqrt(lambda_j) |v_j> for an m x r isometry W.
Decomposition decomposition_from_isometry(const DensityMatrix& rho, const CMatrix& w);

/// The eigendecomposition viewed as an ensemble.
Decomposition eigen_decomposition(const DensityMatrix& rho);

/// Average pure-state randomness sum_e p_e r_pure(psi_e).
double roof_objective(const Decomposition& decomp);

RoofResult optimize_roof(const DensityMatrix& rho, const RoofConfig& config = {});

/// Exhaustive minimum over a grid_n^3 grid of 2x2 mixing unitaries applied to
/// the eigendecomposition of a qubit state.
double brute_force_roof_qubit(const DensityMatrix& rho, std::size_t grid_n);

}  // namespace qcoh
