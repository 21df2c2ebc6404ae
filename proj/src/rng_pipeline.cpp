#include "qcoh/rng_pipeline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "qcoh/distillation.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/random.hpp"

namespace qcoh {

namespace {

using Word = std::uint64_t;

std::vector<Word> random_words(std::size_t nbits, std::uint64_t seed) {
  Engine eng(seed);
  std::vector<Word> words((nbits + 63) / 64 + 1, 0);
  for (std::size_t w = 0; w * 64 < nbits; ++w) words[w] = eng();
  if (nbits % 64) words[nbits / 64] &= (Word{1} << (nbits % 64)) - 1;
  return words;
}

bool bit_at(const std::vector<Word>& words, std::size_t i) { return (words[i / 64] >> (i % 64)) & 1u; }

// 64 bits of `words` starting at bit offset `pos`.
Word window(const std::vector<Word>& words, std::size_t pos) {
  const std::size_t q = pos / 64;
  const unsigned s = unsigned(pos % 64);
  if (s == 0) return words[q];
  const Word hi = q + 1 < words.size() ? words[q + 1] : 0;
  return (words[q] >> s) | (hi << (64 - s));
}

void require_binary(const OutcomeStream& s) {
  if (s.source_dim != 2) throw Error(ErrorCode::DimensionMismatch, "extractor takes a binary stream");
  for (auto v : s.symbols) {
    if (v > 1) throw Error(ErrorCode::InvalidArgument, "symbol out of range in binary stream");
  }
}

}  // namespace

OutcomeStream sample_measurement(const PureState& psi, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  const auto p = psi.probabilities();
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cdf[i] = acc;
    if (p[i] > 0.0) last = i;
  }
  OutcomeStream out{std::vector<std::uint32_t>(n), psi.dim(), seed};
  Engine eng(seed);
  for (auto& sym : out.symbols) {
    const double u = uniform01(eng);
    std::size_t i = 0;
    while (i < last && (p[i] <= 0.0 || u >= cdf[i])) ++i;
    sym = std::uint32_t(i);
  }
  return out;
}

double empirical_entropy(const OutcomeStream& stream) {
  if (stream.symbols.empty()) throw Error(ErrorCode::InvalidArgument, "empty stream");
  std::vector<std::size_t> counts(stream.source_dim, 0);
  for (auto s : stream.symbols) {
    if (s >= stream.source_dim) throw Error(ErrorCode::InvalidArgument, "symbol exceeds source dimension");
    ++counts[s];
  }
  std::vector<double> freq;
  for (auto c : counts) freq.push_back(double(c) / double(stream.symbols.size()));
  return shannon_entropy(freq);
}

double min_entropy(std::span<const double> p) {
  if (p.empty()) throw Error(ErrorCode::InvalidArgument, "empty distribution");
  return -std::log2(*std::max_element(p.begin(), p.end()));
}

double monobit_z(std::span<const std::uint32_t> bits) {
  if (bits.empty()) return 0.0;
  const auto ones = double(std::count(bits.begin(), bits.end(), 1u));
  const auto n = double(bits.size());
  return (2.0 * ones - n) / std::sqrt(n);
}

// Toeplitz entry T(i, j) = t[i - j + n - 1] for a seed-derived string t of
// length out_len + n - 1. Reversing the input turns each output bit into a
// parity over a contiguous window of t.
ExtractionResult toeplitz_extract(const OutcomeStream& bits, double rate, std::uint64_t seed) {
  require_binary(bits);
  if (!(rate > 0.0 && rate <= 1.0)) throw Error(ErrorCode::RateOutOfRange, "rate = " + std::to_string(rate));
  const std::size_t n = bits.symbols.size();
  const auto out_len = std::size_t(std::floor(double(n) * rate));

  ExtractionResult res;
  res.bits.source_dim = 2;
  res.bits.seed = seed;
  res.bits.symbols.resize(out_len);
  if (out_len > 0) {
    const auto t = random_words(out_len + n - 1, seed);
    std::vector<Word> reversed((n + 63) / 64, 0);
    for (std::size_t k = 0; k < n; ++k) {
      if (bits.symbols[n - 1 - k]) reversed[k / 64] |= Word{1} << (k % 64);
    }
    for (std::size_t i = 0; i < out_len; ++i) {
      Word acc = 0;
      for (std::size_t w = 0; w < reversed.size(); ++w) acc ^= window(t, i + 64 * w) & reversed[w];
      res.bits.symbols[i] = std::uint32_t(std::popcount(acc) & 1);
    }
  }
  res.report = {n, out_len, rate, monobit_z(res.bits.symbols)};
  return res;
}

std::vector<std::uint32_t> toeplitz_extract_naive(std::span<const std::uint32_t> bits, std::size_t out_len,
                                                  std::uint64_t seed) {
  const std::size_t n = bits.size();
  std::vector<std::uint32_t> out(out_len, 0);
  if (out_len == 0 || n == 0) return out;
  const auto t = random_words(out_len + n - 1, seed);
  for (std::size_t i = 0; i < out_len; ++i) {
    std::uint32_t acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc ^= std::uint32_t(bit_at(t, i + n - 1 - j)) & bits[j];
    out[i] = acc;
  }
  return out;
}

PipelineComparison pipeline_compare(const PureState& psi, std::size_t n_groups, std::size_t group_n, std::uint64_t seed,
                                    const PipelineOptions& options) {
  if (psi.dim() != 2) throw Error(ErrorCode::DimensionNot2, "pipeline takes a qubit state");
  if (n_groups < 1 || group_n < 1) throw Error(ErrorCode::InvalidArgument, "need at least one group of one copy");
  PipelineComparison cmp;
  cmp.input_symbols = n_groups * group_n;
  const auto p = psi.probabilities();
  cmp.target_entropy = options.entropy == EntropyKind::Shannon ? r_pure(psi).value : min_entropy(p);
  cmp.extraction_rate = std::min(1.0, cmp.target_entropy - options.margin);

  const OutcomeStream raw = sample_measurement(psi, cmp.input_symbols, mix_seed(seed, 1));
  if (cmp.extraction_rate > 0.0) {
    const auto extracted = toeplitz_extract(raw, cmp.extraction_rate, mix_seed(seed, 2));
    cmp.extract_bits = extracted.report.output_length;
    cmp.extract_monobit_z = extracted.report.monobit_z;
  }

  const auto report = distill_simulate(psi, group_n, n_groups, mix_seed(seed, 3));
  cmp.distill_bits = report.extracted;
  if (cmp.distill_bits > 0) {
    // Measuring r copies of the two-dimensional maximally coherent state.
    const auto bits = sample_measurement(PureState::maximally_coherent(2), cmp.distill_bits, mix_seed(seed, 4));
    cmp.distill_monobit_z = monobit_z(bits.symbols);
  }

  const double a = double(cmp.extract_bits);
  const double b = double(cmp.distill_bits);
  const double top = std::max(a, b);
  cmp.relative_gap = top > 0.0 ? std::abs(a - b) / top : 0.0;
  cmp.lengths_agree = cmp.relative_gap <= 0.05;
  return cmp;
}

void write_stream(std::ostream& os, const OutcomeStream& stream) {
  os << "# dim=" << stream.source_dim << " seed=" << stream.seed << '\n';
  for (auto s : stream.symbols) os << s << '\n';
}

OutcomeStream read_stream(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw Error(ErrorCode::ParseError, "missing stream header");
  OutcomeStream out;
  {
    std::istringstream hs(header);
    std::string hash, dim_field, seed_field;
    hs >> hash >> dim_field >> seed_field;
    if (hash != "#" || dim_field.rfind("dim=", 0) != 0 || seed_field.rfind("seed=", 0) != 0) {
      throw Error(ErrorCode::ParseError, "bad stream header: " + header);
    }
    try {
      out.source_dim = std::stoull(dim_field.substr(4));
      out.seed = std::stoull(seed_field.substr(5));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad stream header: " + header);
    }
    if (out.source_dim < 1) throw Error(ErrorCode::ParseError, "stream dimension must be positive");
  }
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(line, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != line.size() || v >= out.source_dim) {
      throw Error(ErrorCode::ParseError, "bad symbol on line " + std::to_string(lineno));
    }
    out.symbols.push_back(std::uint32_t(v));
  }
  return out;
}

}  // namespace qcoh
