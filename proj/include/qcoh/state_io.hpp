#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "qcoh/convex_roof.hpp"
#include "qcoh/quantum_core.hpp"

namespace qcoh {

/// A parsed state file. Pure states keep their amplitudes; `density` is
/// always populated.
struct StateRecord {
  DensityMatrix density;
  std::optional<PureState> pure;
};

// State files are JSON objects in one of three forms:
//   {"dim": d, "entries": [[re, im], ...]}     d*d pairs, row-major
//   {"dim": d, "amplitudes": [[re, im], ...]}  d pairs
//   {"bloch": [nx, ny, nz]}                    qubit; "dim", if present, must be 2
StateRecord parse_state(const std::string& text, double tol = kDefaultTolerance);
StateRecord load_state(const std::filesystem::path& path, double tol = kDefaultTolerance);

std::string density_to_json(const DensityMatrix& rho);
std::string pure_to_json(const PureState& psi);
std::string decomposition_to_json(const Decomposition& decomp);

}  // namespace qcoh
