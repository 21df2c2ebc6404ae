#include "qcoh/properties.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcoh/random.hpp"

namespace qcoh {

std::string_view property_name(PropertyId id) noexcept {
  switch (id) {
    case PropertyId::C1: return "C1";
    case PropertyId::C1Strict: return "C1'";
    case PropertyId::C2a: return "C2a";
    case PropertyId::C2b: return "C2b";
    case PropertyId::C3: return "C3";
  }
  return "unknown";
}

bool is_exact_measure(MeasureId id, std::size_t d) noexcept {
  switch (id) {
    case MeasureId::RelEnt:
    case MeasureId::L1: return true;
    case MeasureId::QubitAnalytic:
    case MeasureId::RoofRandomness: return d == 2;
  }
  return false;
}

double evaluate_measure(MeasureId id, const DensityMatrix& rho, const RoofConfig& roof) {
  switch (id) {
    case MeasureId::RelEnt: return c_rel_ent(rho).value;
    case MeasureId::L1: return c_l1(rho).value;
    case MeasureId::QubitAnalytic: return r_qubit_analytic(rho).value;
    case MeasureId::RoofRandomness:
      if (rho.dim() == 2) return r_qubit_analytic(rho).value;
      return optimize_roof(rho, roof).value;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown measure");
}

namespace {

void require_exact(MeasureId id, std::size_t d) {
  if (!is_exact_measure(id, d)) {
    throw Error(ErrorCode::NonExactMeasure, std::string(measure_name(id)) + " is not exact at dimension " + std::to_string(d));
  }
}

// Folds one observation into a report: keeps the maximum slack and the
// witness of the first case that exceeded the threshold.
void record(PropertyReport& rep, double slack, double threshold, const std::string& where) {
  ++rep.cases;
  if (rep.cases == 1 || slack > rep.worst_slack) rep.worst_slack = slack;
  if (slack > threshold && rep.passed) {
    rep.passed = false;
    std::ostringstream os;
    os.precision(17);
    os << where << " slack=" << slack;
    rep.witness = os.str();
  }
}

std::vector<double> random_populations(std::size_t d, Engine& eng, bool allow_zeros) {
  std::vector<double> p(d);
  double total = 0.0;
  for (auto& v : p) {
    v = -std::log(1.0 - uniform01(eng));
    if (allow_zeros && uniform01(eng) < 0.25) v = 0.0;
    total += v;
  }
  if (total == 0.0) {
    p[0] = 1.0;
    return p;
  }
  for (auto& v : p) v /= total;
  return p;
}

std::size_t dim_for(std::size_t sample, std::size_t max_dim, bool qubit_only) {
  if (qubit_only || max_dim <= 2) return 2;
  return 2 + sample % (max_dim - 1);
}

bool qubit_only(MeasureId id) { return id == MeasureId::QubitAnalytic || id == MeasureId::RoofRandomness; }

// Random states of every rank, including ones with very little coherence
// (mixtures of a diagonal state with a small admixture).
DensityMatrix sample_state(std::size_t d, std::uint64_t seed) {
  Engine eng(seed);
  const auto rank = 1 + std::min(d - 1, std::size_t(uniform01(eng) * double(d)));
  const DensityMatrix base = random_density(d, rank, mix_seed(seed, 1));
  if (uniform01(eng) < 0.8) return base;
  const double eps = std::pow(10.0, -3.0 * uniform01(eng));
  const auto pops = random_populations(d, eng, false);
  const DensityMatrix parts[2] = {incoherent_state(pops), base};
  const double w[2] = {1.0 - eps, eps};
  return mix(w, parts);
}

KrausSet sample_channel(std::size_t d, std::uint64_t seed) {
  Engine eng(seed);
  const auto n_ops = 1 + std::size_t(uniform01(eng) * 4.0);
  if (seed % 2 == 0) return random_incoherent_kraus(d, n_ops, mix_seed(seed, 2));
  return random_incoherent_kraus_merging(d, n_ops, mix_seed(seed, 2));
}

std::string where(std::size_t d, std::uint64_t seed) {
  return "dim=" + std::to_string(d) + " seed=" + std::to_string(seed);
}

}  // namespace

MonotonicityReport check_monotonicity(MeasureId id, const DensityMatrix& rho, const KrausSet& ks) {
  require_exact(id, rho.dim());
  if (ks.dim() != rho.dim()) throw Error(ErrorCode::DimensionMismatch, "channel and state dimensions differ");
  if (!is_incoherent_kraus_set(ks)) throw Error(ErrorCode::InvalidArgument, "Kraus set is not incoherent");

  const double before = evaluate_measure(id, rho);
  MonotonicityReport rep;
  rep.c2a.property = PropertyId::C2a;
  rep.c2b.property = PropertyId::C2b;
  rep.c2a.measure = rep.c2b.measure = id;

  const double after = evaluate_measure(id, apply_channel(rho, ks));
  record(rep.c2a, after - before, kExactSlack, "channel output");

  double average = 0.0;
  for (const auto& o : apply_selective(rho, ks)) average += o.probability * evaluate_measure(id, o.state);
  record(rep.c2b, average - before, kExactSlack, "selective average");
  return rep;
}

PropertyReport check_convexity(MeasureId id, const std::vector<std::pair<double, DensityMatrix>>& ensemble) {
  if (ensemble.empty()) throw Error(ErrorCode::InvalidArgument, "empty ensemble");
  std::vector<double> w;
  std::vector<DensityMatrix> states;
  for (const auto& [q, s] : ensemble) {
    w.push_back(q);
    states.push_back(s);
  }
  const DensityMatrix mixed = mix(w, states);
  const std::size_t d = mixed.dim();
  const double threshold = is_exact_measure(id, d) ? kExactSlack : kRoofSlack;

  double average = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k) average += w[k] * evaluate_measure(id, states[k]);
  PropertyReport rep;
  rep.property = PropertyId::C3;
  rep.measure = id;
  record(rep, evaluate_measure(id, mixed) - average, threshold, "mixture");
  return rep;
}

namespace {

PropertyReport make_report(PropertyId property, MeasureId measure) {
  PropertyReport r;
  r.property = property;
  r.measure = measure;
  return r;
}

}  // namespace

std::vector<PropertyReport> run_property_suite(const PropertySuiteConfig& config) {
  if (config.max_dim < 2) throw Error(ErrorCode::InvalidArgument, "max_dim must be >= 2");
  std::vector<PropertyReport> reports;
  for (const MeasureId id : config.measures) {
    const bool qubits = qubit_only(id);

    PropertyReport c1 = make_report(PropertyId::C1, id);
    for (std::size_t s = 0; s < config.samples; ++s) {
      const std::uint64_t seed = mix_seed(config.seed, 0x100000 + s);
      const std::size_t d = dim_for(s, config.max_dim, qubits);
      Engine eng(seed);
      const DensityMatrix delta = incoherent_state(random_populations(d, eng, true));
      record(c1, std::abs(evaluate_measure(id, delta)), kExactSlack, where(d, seed));
    }
    reports.push_back(c1);

    if (qubits) {
      // Nonzero coherence must show up as randomness above 1e-6.
      PropertyReport strict = make_report(PropertyId::C1Strict, id);
      for (std::size_t s = 0; s < config.samples; ++s) {
        const std::uint64_t seed = mix_seed(config.seed, 0x200000 + s);
        const DensityMatrix rho = sample_state(2, seed);
        if (c_l1(rho).value <= 1e-3) continue;
        record(strict, 1e-6 - evaluate_measure(id, rho), 0.0, where(2, seed));
      }
      reports.push_back(strict);
    }

    PropertyReport c2a = make_report(PropertyId::C2a, id);
    PropertyReport c2b = make_report(PropertyId::C2b, id);
    for (std::size_t s = 0; s < config.samples; ++s) {
      const std::uint64_t seed = mix_seed(config.seed, 0x300000 + s);
      const std::size_t d = dim_for(s, config.max_dim, qubits);
      const auto mono = check_monotonicity(id, sample_state(d, seed), sample_channel(d, mix_seed(seed, 3)));
      record(c2a, mono.c2a.worst_slack, kExactSlack, where(d, seed));
      record(c2b, mono.c2b.worst_slack, kExactSlack, where(d, seed));
    }
    reports.push_back(c2a);
    reports.push_back(c2b);

    PropertyReport c3 = make_report(PropertyId::C3, id);
    for (std::size_t s = 0; s < config.samples; ++s) {
      const std::uint64_t seed = mix_seed(config.seed, 0x400000 + s);
      const std::size_t d = dim_for(s, config.max_dim, qubits);
      Engine eng(seed);
      const std::size_t members = 2 + s % 2;
      const auto weights = random_populations(members, eng, false);
      std::vector<std::pair<double, DensityMatrix>> ensemble;
      for (std::size_t k = 0; k < members; ++k) ensemble.emplace_back(weights[k], sample_state(d, mix_seed(seed, 10 + k)));
      const auto rep = check_convexity(id, ensemble);
      record(c3, rep.worst_slack, kExactSlack, where(d, seed));
    }
    reports.push_back(c3);
  }
  return reports;
}

}  // namespace qcoh
