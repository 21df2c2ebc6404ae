#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qcoh/quantum_core.hpp"

namespace qcoh {

struct OutcomeStream {
  std::vector<std::uint32_t> symbols;
  std::size_t source_dim = 2;
  std::uint64_t seed = 0;
};

struct ExtractionReport {
  std::size_t input_length = 0;
  std::size_t output_length = 0;
  double target_rate = 0.0;
  double monobit_z = 0.0;
};

struct ExtractionResult {
  OutcomeStream bits;
  ExtractionReport report;
};

enum class EntropyKind { Shannon, Min };

/// i.i.d. computational-basis measurement outcomes of psi.
OutcomeStream sample_measurement(const PureState& psi, std::size_t n, std::uint64_t seed);

/// Plug-in Shannon entropy of the symbol frequencies, bits per symbol.
double empirical_entropy(const OutcomeStream& stream);

/// -log2 max_i p_i.
double min_entropy(std::span<const double> p);

/// (#ones - #zeros) / sqrt(n).
double monobit_z(std::span<const std::uint32_t> bits);

/// Multiplies the input bits by a seeded random Toeplitz matrix over GF(2);
/// output length is floor(input_length * rate).
ExtractionResult toeplitz_extract(const OutcomeStream& bits, double rate, std::uint64_t seed);

/// Same product computed entry by entry; reference for the packed kernel.
std::vector<std::uint32_t> toeplitz_extract_naive(std::span<const std::uint32_t> bits, std::size_t out_len,
                                                  std::uint64_t seed);

struct PipelineOptions {
  double margin = 0.02;
  EntropyKind entropy = EntropyKind::Shannon;
};

struct PipelineComparison {
  std::size_t input_symbols = 0;
  double target_entropy = 0.0;  // per symbol, of the chosen kind
  double extraction_rate = 0.0;
  std::size_t extract_bits = 0;   // path A: measure, then hash
  double extract_monobit_z = 0.0;
  std::size_t distill_bits = 0;   // path B: distill, then measure
  double distill_monobit_z = 0.0;
  double relative_gap = 0.0;      // |A - B| / max(A, B)
  bool lengths_agree = true;      // relative_gap <= 0.05 (or both zero)
};

PipelineComparison pipeline_compare(const PureState& psi, std::size_t n_groups, std::size_t group_n, std::uint64_t seed,
                                    const PipelineOptions& options = {});

/// Text form: header line "# dim=<d> seed=<s>", then one symbol per line.
void write_stream(std::ostream& os, const OutcomeStream& stream);
OutcomeStream read_stream(std::istream& is);

}  // namespace qcoh
