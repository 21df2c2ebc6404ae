#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcoh/convex_roof.hpp"
#include "qcoh/incoherent_ops.hpp"
#include "qcoh/measures.hpp"

namespace qcoh {

enum class PropertyId { C1, C1Strict, C2a, C2b, C3 };

std::string_view property_name(PropertyId id) noexcept;

inline constexpr double kExactSlack = 1e-9;
inline constexpr double kRoofSlack = 1e-6;

struct PropertyReport {
  PropertyId property = PropertyId::C1;
  MeasureId measure = MeasureId::RelEnt;
  bool passed = true;
  /// Largest observed violation margin; nonpositive means the inequality held
  /// with room to spare. Recorded on pass as well.
  double worst_slack = 0.0;
  std::size_t cases = 0;
  /// Description of the worst case when the property failed.
  std::string witness;
};

/// Evaluates a measure. RoofRandomness uses the closed form on qubits and the
/// optimizer otherwise.
double evaluate_measure(MeasureId id, const DensityMatrix& rho, const RoofConfig& roof = {});

/// Whether evaluate_measure(id, .) is exact for states of dimension d.
bool is_exact_measure(MeasureId id, std::size_t d) noexcept;

struct MonotonicityReport {
  PropertyReport c2a;
  PropertyReport c2b;
  bool passed() const { return c2a.passed && c2b.passed; }
};

MonotonicityReport check_monotonicity(MeasureId id, const DensityMatrix& rho, const KrausSet& ks);

PropertyReport check_convexity(MeasureId id, const std::vector<std::pair<double, DensityMatrix>>& ensemble);

struct PropertySuiteConfig {
  std::size_t max_dim = 6;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::vector<MeasureId> measures{MeasureId::RelEnt, MeasureId::L1, MeasureId::QubitAnalytic};
};

/// Seeded sweep of every property for every requested measure. Sweeps over
/// dimension cycle through 2..max_dim; QubitAnalytic and the roof measure
/// only see qubits. C1' is checked for the roof family only.
std::vector<PropertyReport> run_property_suite(const PropertySuiteConfig& config);

}  // namespace qcoh
