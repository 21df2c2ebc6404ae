#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qcoh/convex_roof.hpp"
#include "qcoh/quantum_core.hpp"

namespace qcoh {

/// Outcome k of the subspace measurement on N copies: the subspace spanned by
/// basis strings with k ones, of dimension C(N, k).
struct GroupOutcome {
  std::size_t k = 0;
  double probability = 0.0;
  double log2_dim = 0.0;
};

/// p_k = C(N,k) p0^(N-k) (1-p0)^k for k = 0..N, evaluated through log-gamma.
std::vector<GroupOutcome> binomial_outcome_distribution(std::size_t n, double p0);

/// log2 C(n, k), snapped to the nearest integer when within 1e-12 of it.
double log2_binomial(std::size_t n, std::size_t k);

struct DistillationReport {
  std::size_t n = 0;  // copies per group
  std::size_t m = 0;  // groups
  double input_randomness = 0.0;  // r_pure of the input copy
  std::vector<GroupOutcome> outcomes;  // one per group, in group order
  double total_log2_dim = 0.0;
  std::size_t extracted = 0;  // r, copies of the two-dimensional maximally coherent state
  double yield = 0.0;         // r / (N M)
  double loss_actual = 0.0;
  double loss_bound = 0.0;
};

struct LossLedger {
  double loss_actual;
  double loss_bound;
  bool within_bound;
};

/// Bookkeeping for a given sequence of measured group outcomes.
DistillationReport distillation_report_from_outcomes(const PureState& psi, std::size_t n,
                                                      const std::vector<std::size_t>& ks);

/// Samples one subspace outcome per group by inverse CDF; never materializes
/// state vectors.
DistillationReport distill_simulate(const PureState& psi, std::size_t n, std::size_t m, std::uint64_t seed);

/// loss_actual = N M r_pure(psi) - r and loss_bound = M log2 N + 1.
LossLedger coherence_loss_ledger(const DistillationReport& report);

inline constexpr std::size_t kDefaultMaxAmplitudes = std::size_t{1} << 20;

struct ExactOutcome {
  std::size_t k = 0;
  double probability = 0.0;          // || P_k psi^{(x)N} ||^2
  double binomial_probability = 0.0;  // closed form, for comparison
  /// Post-measurement amplitudes on the subspace basis strings, in
  /// increasing order of the basis index. Empty when probability is zero.
  std::vector<Complex> amplitudes;
  /// max | |a| - 1/sqrt(C(N,k)) | over the support.
  double max_magnitude_deviation = 0.0;
};

struct ExactRun {
  std::size_t n = 0;
  std::vector<Complex> tensor_power;  // 2^N amplitudes, qubit 0 most significant
  /// max deviation of tensor_power from the closed-form product amplitudes.
  double tensor_power_deviation = 0.0;
  std::vector<ExactOutcome> outcomes;  // k = 0..N

  /// max_k |probability - binomial_probability|.
  double max_probability_deviation() const;
  /// Every populated outcome is maximally coherent on its subspace.
  bool all_outcomes_flat(double tol = 1e-10) const;
};

/// State-vector simulation of the subspace measurement on N copies of a
/// qubit state. Throws TooLarge when 2^N exceeds max_amplitudes.
ExactRun distill_exact(const PureState& psi, std::size_t n, std::size_t max_amplitudes = kDefaultMaxAmplitudes);

/// Shot counts per outcome k drawn from the state-vector probabilities.
std::vector<std::size_t> sample_exact_outcomes(const ExactRun& run, std::size_t shots, std::uint64_t seed);

/// distill_simulate, with group outcomes drawn from an exact state-vector run.
DistillationReport distill_exact_report(const PureState& psi, std::size_t n, std::size_t m, std::uint64_t seed,
                                        std::size_t max_amplitudes = kDefaultMaxAmplitudes);

/// Partition of the 2^N basis strings by number of ones.
std::vector<std::vector<std::size_t>> hamming_weight_partition(std::size_t n);

/// Per-copy roof value of rho^{(x)copies}, copies in {1, 2}, d^copies <= 16.
double regularized_roof_estimate(const DensityMatrix& rho, std::size_t copies, const RoofConfig& config = {});

}  // namespace qcoh
