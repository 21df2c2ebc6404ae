// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qcoh/convex_roof.hpp"
#include "qcoh/distillation.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/properties.hpp"
#include "qcoh/random.hpp"
#include "qcoh/rng_pipeline.hpp"

using namespace qcoh;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0 when the criterion has no runtime limit
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

PureState qubit(double p0) {
  CVector a(2);
  a << std::sqrt(p0), std::sqrt(1.0 - p0);
  return PureState::from_amplitudes(a);
}

Outcome qubit_roof_agreement() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto rho = random_density(2, 2, mix_seed(1001, s));
    RoofConfig cfg;
    cfg.seed = s;
    worst = std::max(worst, std::abs(optimize_roof(rho, cfg).value - r_qubit_analytic(rho).value));
  }
  return {worst <= 1e-6, fmt("max |optimizer - analytic| = %.2e over 200 states", worst)};
}

Outcome brute_force_oracle() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto rho = random_density(2, 2, mix_seed(1002, s));
    worst = std::max(worst, std::abs(brute_force_roof_qubit(rho, 128) - r_qubit_analytic(rho).value));
  }
  return {worst <= 1e-3, fmt("max |grid(128) - analytic| = %.2e over 50 states", worst)};
}

Outcome concurrence_consistency() {
  double routes = 0.0, l1 = 0.0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto rho = random_density(2, 1 + s % 2, mix_seed(1003, s));
    const double c = coherence_concurrence_qubit(rho);
    routes = std::max(routes, std::abs(c - coherence_concurrence_bloch(rho)));
    l1 = std::max(l1, std::abs(c - c_l1(rho).value));
  }
  return {routes <= 1e-10 && l1 <= 1e-10, fmt("eigen vs Bloch %.2e, l1 vs concurrence %.2e", routes, l1)};
}

Outcome pure_state_identity() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto psi = haar_random_pure(2 + s % 5, mix_seed(1004, s));
    worst = std::max(worst, std::abs(r_pure(psi).value - c_rel_ent(psi.projector()).value));
  }
  return {worst <= 1e-12, fmt("max |r_pure - c_rel_ent| = %.2e over 500 states, d=2..6", worst)};
}

Outcome property_suite() {
  PropertySuiteConfig cfg;
  cfg.samples = 1000;
  cfg.max_dim = 6;
  cfg.seed = 1005;
  const auto reports = run_property_suite(cfg);
  std::size_t failed = 0;
  double worst = -1e300;
  std::ostringstream names;
  for (const auto& r : reports) {
    worst = std::max(worst, r.worst_slack);
    if (!r.passed) {
      ++failed;
      names << ' ' << property_name(r.property) << '/' << measure_name(r.measure);
    }
  }
  return {failed == 0, fmt("%zu reports, %zu failed, worst slack %.2e", reports.size(), failed, worst) + names.str()};
}

Outcome distillation_yield() {
  const auto psi = qubit(0.8);
  const double target = binary_entropy(0.8);
  double yield_sum = 0.0, worst_yield_gap = 0.0;
  std::size_t loss_violations = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rep = distill_simulate(psi, 50, 200, mix_seed(1006, s));
    yield_sum += rep.yield;
    worst_yield_gap = std::max(worst_yield_gap, std::abs(rep.yield - target));
    if (!coherence_loss_ledger(rep).within_bound) ++loss_violations;
  }
  const double mean = yield_sum / 20.0;
  const bool yield_ok = worst_yield_gap <= 0.02;
  return {yield_ok && loss_violations == 0,
          fmt("mean yield %.4f vs H(0.8) %.4f (worst gap %.4f, limit 0.02); loss bound violations %zu/20", mean,
              target, worst_yield_gap, loss_violations)};
}

Outcome exact_protocol() {
  const auto run = distill_exact(PureState::maximally_coherent(2), 4);
  const std::size_t shots = 10000;
  const auto counts = sample_exact_outcomes(run, shots, 1007);
  const double p = 6.0 / 16.0;
  const double sigma = std::sqrt(shots * p * (1.0 - p));
  const double dev = std::abs(double(counts[2]) - shots * p);
  const auto& k2 = run.outcomes[2];
  double amp = 0.0;
  for (const auto& a : k2.amplitudes) amp = std::max(amp, std::abs(std::abs(a) - 1.0 / std::sqrt(6.0)));
  const bool ok = dev <= 3.0 * sigma && k2.amplitudes.size() == 6 && amp <= 1e-10;
  return {ok, fmt("k=2 count %zu (expected %.0f, 3 sigma %.1f); %zu amplitudes, max dev %.2e", counts[2], shots * p,
                  3.0 * sigma, k2.amplitudes.size(), amp)};
}

Outcome regularized_estimate() {
  double mixed_excess = -1e300, pure_gap = 0.0;
  std::vector<DensityMatrix> mixed{bloch_to_density({0.6, 0.0, 0.0})};
  for (std::uint64_t s = 0; s < 3; ++s) mixed.push_back(random_density(2, 2, mix_seed(1008, s)));
  RoofConfig cfg;
  cfg.seed = 1008;
  for (const auto& rho : mixed) {
    mixed_excess = std::max(mixed_excess, regularized_roof_estimate(rho, 2, cfg) - r_qubit_analytic(rho).value);
  }
  for (std::uint64_t s = 0; s < 3; ++s) {
    const auto psi = haar_random_pure(2, mix_seed(1009, s));
    pure_gap = std::max(pure_gap, std::abs(regularized_roof_estimate(psi.projector(), 2, cfg) - r_pure(psi).value));
  }
  return {mixed_excess <= 1e-6 && pure_gap <= 1e-6,
          fmt("max (two-copy - analytic) = %.2e on 4 mixed; max pure gap %.2e on 3 pure", mixed_excess, pure_gap)};
}

Outcome pipeline_equivalence() {
  const auto c = pipeline_compare(qubit(0.8), 200, 50, 1010);
  const bool ok = c.lengths_agree && std::abs(c.extract_monobit_z) < 3.0;
  return {ok, fmt("path A %zu bits, path B %zu bits, relative gap %.4f (limit 0.05); monobit z %.2f", c.extract_bits,
                  c.distill_bits, c.relative_gap, c.extract_monobit_z)};
}

Outcome bounds() {
  double below = 0.0, above = -1e300, l1_above = -1e300;
  auto track = [&](double v, std::size_t d) {
    below = std::min(below, v);
    above = std::max(above, v - std::log2(double(d)));
  };
  RoofConfig cfg;
  cfg.restarts = 4;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t d = 2 + s % 5;
    const std::size_t rank = 1 + s % std::min<std::size_t>(d, 3);
    const auto rho = random_density(d, rank, mix_seed(1011, s));
    track(c_rel_ent(rho).value, d);
    const double l1 = c_l1(rho).value;
    below = std::min(below, l1);
    l1_above = std::max(l1_above, l1 - double(d - 1));
    cfg.seed = s;
    track(evaluate_measure(MeasureId::RoofRandomness, rho, cfg), d);
    if (d == 2) track(r_qubit_analytic(rho).value, d);
    track(r_pure(haar_random_pure(d, mix_seed(1012, s))).value, d);
  }
  double max_coherent = 0.0;
  for (std::size_t d = 2; d <= 6; ++d) {
    const auto psi = PureState::maximally_coherent(d);
    const double target = std::log2(double(d));
    max_coherent = std::max(max_coherent, std::abs(r_pure(psi).value - target));
    max_coherent = std::max(max_coherent, std::abs(optimize_roof(psi.projector()).value - target));
  }
  const bool ok = below >= -1e-9 && above <= 1e-9 && l1_above <= 1e-9 && max_coherent <= 1e-9;
  return {ok, fmt("min %.2e, max excess over log2 d %.2e, l1 excess over d-1 %.2e, |R(Psi_d) - log2 d| %.2e", below,
                  above, l1_above, max_coherent)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "qubit roof agreement", 60.0, qubit_roof_agreement},
      {2, "brute-force oracle", 0.0, brute_force_oracle},
      {3, "concurrence consistency", 0.0, concurrence_consistency},
      {4, "pure-state identity", 0.0, pure_state_identity},
      {5, "property suite", 120.0, property_suite},
      {6, "distillation yield", 10.0, distillation_yield},
      {7, "exact protocol check", 0.0, exact_protocol},
      {8, "regularized estimate", 0.0, regularized_estimate},
      {9, "pipeline equivalence", 30.0, pipeline_equivalence},
      {10, "bounds", 0.0, bounds},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_s == 0.0 || secs <= c.budget_s;
    const bool passed = o.passed && in_time;
    failures += passed ? 0 : 1;
    std::string timing = fmt("%.2f s", secs);
    if (c.budget_s > 0.0) timing += fmt(" of %.0f s", c.budget_s);
    std::printf("%s  [%2d] %-24s %s (%s)\n", passed ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
