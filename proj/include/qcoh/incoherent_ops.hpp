#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qcoh/quantum_core.hpp"

namespace qcoh {

inline constexpr double kStructuralZero = 1e-12;
inline constexpr double kOutcomeFloor = 1e-12;

struct KrausSet {
  std::vector<CMatrix> operators;

  /// Common dimension; throws DimensionMismatch if operators are not all
  /// square of one size.
  std::size_t dim() const;
  /// max |sum_n K_n^dagger K_n - I|.
  double completeness_deviation() const;
};

struct SelectiveOutcome {
  std::size_t index;  // position of the Kraus operator in the set
  double probability;
  DensityMatrix state;
};

/// Trace preserving and every column of every operator has at most one
/// entry above 1e-12 in magnitude.
bool is_incoherent_kraus_set(const KrausSet& ks, double tol = kDefaultTolerance);

/// Each operator is a column-weighted permutation; weights are normalized
/// column by column so the set is exactly trace preserving.
KrausSet random_incoherent_kraus(std::size_t d, std::size_t n_ops, std::uint64_t seed);

/// Broader family: operators may send several columns to one row. The set is
/// scaled to sum_n K^dagger K <= I and completed with rank-one maps
/// |k><v| onto basis states.
KrausSet random_incoherent_kraus_merging(std::size_t d, std::size_t n_ops, std::uint64_t seed);

KrausSet dephasing_kraus(std::size_t d);
KrausSet identity_kraus(std::size_t d);

/// One projector per block of a partition of {0, ..., d-1}.
KrausSet projection_partition_kraus(std::size_t d, const std::vector<std::vector<std::size_t>>& partition);

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& ks);
std::vector<SelectiveOutcome> apply_selective(const DensityMatrix& rho, const KrausSet& ks);

}  // namespace qcoh
