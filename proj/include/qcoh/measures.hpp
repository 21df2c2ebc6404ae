#pragma once

#include <string_view>

#include "qcoh/quantum_core.hpp"

namespace qcoh {

enum class MeasureId { RelEnt, L1, RoofRandomness, QubitAnalytic };

std::string_view measure_name(MeasureId id) noexcept;

struct MeasureValue {
  double value = 0.0;
  MeasureId measure = MeasureId::RelEnt;
};

/// Relative entropy of coherence, S(dephase(rho)) - S(rho), in bits.
MeasureValue c_rel_ent(const DensityMatrix& rho);

/// Sum of off-diagonal magnitudes.
MeasureValue c_l1(const DensityMatrix& rho);

/// Shannon entropy of the computational-basis outcome distribution.
MeasureValue r_pure(const PureState& psi);

/// |sqrt(eta_1) - sqrt(eta_2)| for the eigenvalues of rho sx conj(rho) sx.
double coherence_concurrence_qubit(const DensityMatrix& rho);

/// sqrt(nx^2 + ny^2); second route to the same quantity.
double coherence_concurrence_bloch(const DensityMatrix& rho);

/// Closed-form qubit randomness H((1 + sqrt(1 - C^2)) / 2).
MeasureValue r_qubit_analytic(const DensityMatrix& rho);

double r_from_concurrence(double concurrence);

}  // namespace qcoh
