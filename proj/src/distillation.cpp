#include "qcoh/distillation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "qcoh/measures.hpp"
#include "qcoh/random.hpp"

namespace qcoh {

namespace {

void require_qubit(const PureState& psi) {
  if (psi.dim() != 2) throw Error(ErrorCode::DimensionNot2, "distillation takes a qubit state, got dimension " + std::to_string(psi.dim()));
}

Complex int_pow(Complex base, std::size_t e) {
  Complex out(1.0, 0.0);
  for (; e > 0; --e) out *= base;
  return out;
}

std::size_t sample_index(const std::vector<double>& probabilities, double u) {
  double cdf = 0.0;
  std::size_t last = 0;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    if (probabilities[k] <= 0.0) continue;
    last = k;
    cdf += probabilities[k];
    if (u < cdf) return k;
  }
  return last;
}

}  // namespace

double log2_binomial(std::size_t n, std::size_t k) {
  if (k > n) throw Error(ErrorCode::InvalidArgument, "k exceeds n");
  const double v = (std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) - std::lgamma(double(n - k) + 1.0)) /
                   std::numbers::ln2;
  const double nearest = std::round(v);
  return std::abs(v - nearest) <= 1e-12 * std::max(1.0, v) ? nearest : v;
}

std::vector<GroupOutcome> binomial_outcome_distribution(std::size_t n, double p0) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw Error(ErrorCode::InvalidArgument, "p0 must lie in [0, 1]");
  std::vector<GroupOutcome> out(n + 1);
  const double log_p0 = std::log(p0);
  const double log_p1 = std::log1p(-p0);
  for (std::size_t k = 0; k <= n; ++k) {
    out[k].k = k;
    out[k].log2_dim = log2_binomial(n, k);
    const std::size_t zeros = n - k;
    if ((zeros > 0 && p0 == 0.0) || (k > 0 && p0 == 1.0)) {
      out[k].probability = 0.0;
      continue;
    }
    double log_p = out[k].log2_dim * std::numbers::ln2;
    if (zeros > 0) log_p += double(zeros) * log_p0;
    if (k > 0) log_p += double(k) * log_p1;
    out[k].probability = std::exp(log_p);
  }
  return out;
}

DistillationReport distillation_report_from_outcomes(const PureState& psi, std::size_t n,
                                                      const std::vector<std::size_t>& ks) {
  require_qubit(psi);
  if (n < 1 || ks.empty()) throw Error(ErrorCode::InvalidArgument, "need N >= 1 and at least one group");
  const auto dist = binomial_outcome_distribution(n, std::norm(psi[0]));
  DistillationReport rep;
  rep.n = n;
  rep.m = ks.size();
  rep.input_randomness = r_pure(psi).value;
  for (std::size_t k : ks) {
    if (k > n) throw Error(ErrorCode::InvalidArgument, "outcome index exceeds N");
    rep.outcomes.push_back(dist[k]);
    rep.total_log2_dim += dist[k].log2_dim;
  }
  // Largest r with 2^r <= D; the remainder log2 D - r is discarded.
  rep.extracted = std::size_t(std::floor(rep.total_log2_dim + 1e-9));
  const double copies = double(n) * double(rep.m);
  rep.yield = double(rep.extracted) / copies;
  const auto ledger = coherence_loss_ledger(rep);
  rep.loss_actual = ledger.loss_actual;
  rep.loss_bound = ledger.loss_bound;
  return rep;
}

DistillationReport distill_simulate(const PureState& psi, std::size_t n, std::size_t m, std::uint64_t seed) {
  require_qubit(psi);
  if (n < 1 || m < 1) throw Error(ErrorCode::InvalidArgument, "need N >= 1 and M >= 1");
  const auto dist = binomial_outcome_distribution(n, std::norm(psi[0]));
  std::vector<double> probs;
  for (const auto& o : dist) probs.push_back(o.probability);
  std::vector<std::size_t> ks(m);
  for (std::size_t j = 0; j < m; ++j) {
    Engine eng(mix_seed(seed, j));
    ks[j] = sample_index(probs, uniform01(eng));
  }
  return distillation_report_from_outcomes(psi, n, ks);
}

LossLedger coherence_loss_ledger(const DistillationReport& report) {
  const double actual = double(report.n) * double(report.m) * report.input_randomness - double(report.extracted);
  const double bound = double(report.m) * std::log2(double(report.n)) + 1.0;
  return {actual, bound, actual <= bound + 1e-9};
}

double ExactRun::max_probability_deviation() const {
  double worst = 0.0;
  for (const auto& o : outcomes) worst = std::max(worst, std::abs(o.probability - o.binomial_probability));
  return worst;
}

bool ExactRun::all_outcomes_flat(double tol) const {
  return std::all_of(outcomes.begin(), outcomes.end(),
                     [tol](const ExactOutcome& o) { return o.max_magnitude_deviation <= tol; });
}

ExactRun distill_exact(const PureState& psi, std::size_t n, std::size_t max_amplitudes) {
  require_qubit(psi);
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
  if (n >= 63 || (std::size_t{1} << n) > max_amplitudes) {
    throw Error(ErrorCode::TooLarge, "2^" + std::to_string(n) + " amplitudes exceed the bound of " + std::to_string(max_amplitudes));
  }
  const std::size_t size = std::size_t{1} << n;
  const Complex alpha = psi[0];
  const Complex beta = psi[1];

  ExactRun run;
  run.n = n;
  run.tensor_power.reserve(size);
  run.tensor_power.push_back(1.0);
  for (std::size_t copy = 0; copy < n; ++copy) {
    std::vector<Complex> next(run.tensor_power.size() * 2);
    for (std::size_t i = 0; i < run.tensor_power.size(); ++i) {
      next[2 * i] = run.tensor_power[i] * alpha;
      next[2 * i + 1] = run.tensor_power[i] * beta;
    }
    run.tensor_power = std::move(next);
  }
  for (std::size_t b = 0; b < size; ++b) {
    const auto ones = std::size_t(std::popcount(b));
    const Complex expected = int_pow(alpha, n - ones) * int_pow(beta, ones);
    run.tensor_power_deviation = std::max(run.tensor_power_deviation, std::abs(run.tensor_power[b] - expected));
  }

  const auto dist = binomial_outcome_distribution(n, std::norm(alpha));
  run.outcomes.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    run.outcomes[k].k = k;
    run.outcomes[k].binomial_probability = dist[k].probability;
  }
  // Project onto each Hamming-weight subspace.
  std::vector<std::vector<Complex>> projected(n + 1);
  for (std::size_t b = 0; b < size; ++b) projected[std::size_t(std::popcount(b))].push_back(run.tensor_power[b]);
  for (std::size_t k = 0; k <= n; ++k) {
    auto& o = run.outcomes[k];
    double norm2 = 0.0;
    for (const auto& a : projected[k]) norm2 += std::norm(a);
    o.probability = norm2;
    if (norm2 == 0.0) continue;
    const double scale = 1.0 / std::sqrt(norm2);
    const double flat = 1.0 / std::sqrt(double(projected[k].size()));
    o.amplitudes.reserve(projected[k].size());
    for (const auto& a : projected[k]) {
      o.amplitudes.push_back(a * scale);
      o.max_magnitude_deviation = std::max(o.max_magnitude_deviation, std::abs(std::abs(a * scale) - flat));
    }
  }
  return run;
}

std::vector<std::size_t> sample_exact_outcomes(const ExactRun& run, std::size_t shots, std::uint64_t seed) {
  std::vector<double> probs;
  for (const auto& o : run.outcomes) probs.push_back(o.probability);
  std::vector<std::size_t> counts(run.outcomes.size(), 0);
  Engine eng(seed);
  for (std::size_t s = 0; s < shots; ++s) ++counts[sample_index(probs, uniform01(eng))];
  return counts;
}

DistillationReport distill_exact_report(const PureState& psi, std::size_t n, std::size_t m, std::uint64_t seed,
                                        std::size_t max_amplitudes) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "M must be >= 1");
  const ExactRun run = distill_exact(psi, n, max_amplitudes);
  std::vector<double> probs;
  for (const auto& o : run.outcomes) probs.push_back(o.probability);
  std::vector<std::size_t> ks(m);
  for (std::size_t j = 0; j < m; ++j) {
    Engine eng(mix_seed(seed, j));
    ks[j] = sample_index(probs, uniform01(eng));
  }
  return distillation_report_from_outcomes(psi, n, ks);
}

std::vector<std::vector<std::size_t>> hamming_weight_partition(std::size_t n) {
  if (n >= 63) throw Error(ErrorCode::TooLarge, "N too large for an explicit partition");
  std::vector<std::vector<std::size_t>> blocks(n + 1);
  for (std::size_t b = 0; b < (std::size_t{1} << n); ++b) blocks[std::size_t(std::popcount(b))].push_back(b);
  return blocks;
}

double regularized_roof_estimate(const DensityMatrix& rho, std::size_t copies, const RoofConfig& config) {
  if (copies != 1 && copies != 2) throw Error(ErrorCode::InvalidArgument, "copies must be 1 or 2");
  const std::size_t d = rho.dim();
  const std::size_t total = copies == 1 ? d : d * d;
  if (total > 16) throw Error(ErrorCode::TooLarge, "d^copies = " + std::to_string(total) + " exceeds 16");
  const DensityMatrix joint = copies == 1 ? rho : tensor_product(rho, rho);
  return optimize_roof(joint, config).value / double(copies);
}

}  // namespace qcoh
