#include "qcoh/qcoh.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <string>

#include "qcoh/convex_roof.hpp"
#include "qcoh/distillation.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/properties.hpp"
#include "qcoh/rng_pipeline.hpp"
#include "qcoh/state_io.hpp"

struct qcoh_state {
  qcoh::StateRecord record;
};

struct qcoh_roof_result {
  qcoh::RoofResult result;
};

struct qcoh_property_suite {
  std::vector<qcoh::PropertyReport> reports;
  std::vector<std::string> names;
};

struct qcoh_distill_report {
  qcoh::DistillationReport report;
  bool exact = false;
  double probability_deviation = 0.0;
  double flatness_deviation = 0.0;
};

struct qcoh_stream {
  qcoh::OutcomeStream stream;
};

namespace {

thread_local std::string g_last_error;

qcoh_status to_status(qcoh::ErrorCode code) {
  using qcoh::ErrorCode;
  switch (code) {
    case ErrorCode::NotHermitian: return QCOH_ERR_NOT_HERMITIAN;
    case ErrorCode::TraceNotOne: return QCOH_ERR_TRACE_NOT_ONE;
    case ErrorCode::NotPSD: return QCOH_ERR_NOT_PSD;
    case ErrorCode::NotNormalized: return QCOH_ERR_NOT_NORMALIZED;
    case ErrorCode::DimensionNot2: return QCOH_ERR_DIMENSION_NOT_2;
    case ErrorCode::DimensionMismatch: return QCOH_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NotIsometry: return QCOH_ERR_NOT_ISOMETRY;
    case ErrorCode::RankMismatch: return QCOH_ERR_RANK_MISMATCH;
    case ErrorCode::NotAPartition: return QCOH_ERR_NOT_A_PARTITION;
    case ErrorCode::NonExactMeasure: return QCOH_ERR_NON_EXACT_MEASURE;
    case ErrorCode::TooLarge: return QCOH_ERR_TOO_LARGE;
    case ErrorCode::RateOutOfRange: return QCOH_ERR_RATE_OUT_OF_RANGE;
    case ErrorCode::InvalidArgument: return QCOH_ERR_INVALID_ARGUMENT;
    case ErrorCode::ParseError: return QCOH_ERR_PARSE;
    case ErrorCode::IoError: return QCOH_ERR_IO;
  }
  return QCOH_ERR_INTERNAL;
}

qcoh_status fail(qcoh_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
qcoh_status guarded(F&& body) {
  try {
    body();
    return QCOH_OK;
  } catch (const qcoh::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QCOH_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QCOH_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QCOH_ERR_INTERNAL, "unknown exception");
  }
}

#define QCOH_REQUIRE(ptr)                                                   \
  do {                                                                      \
    if ((ptr) == nullptr) return fail(QCOH_ERR_NULL_POINTER, #ptr " is null"); \
  } while (0)

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qcoh::RoofConfig to_config(const qcoh_roof_config* c) {
  qcoh::RoofConfig cfg;
  if (c != nullptr) {
    cfg.ensemble_size = c->ensemble_size;
    cfg.restarts = c->restarts;
    cfg.max_iterations = c->max_iterations;
    cfg.tolerance = c->tolerance;
    cfg.seed = c->seed;
  }
  return cfg;
}

const qcoh::PureState& require_pure(const qcoh_state* s) {
  if (!s->record.pure) throw qcoh::Error(qcoh::ErrorCode::InvalidArgument, "operation needs a pure state given by amplitudes");
  return *s->record.pure;
}

qcoh::CVector complex_vector(std::size_t n, const double* re_im) {
  qcoh::CVector v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v(Eigen::Index(i)) = qcoh::Complex(re_im[2 * i], re_im[2 * i + 1]);
  return v;
}

qcoh_state* wrap(qcoh::StateRecord rec) { return new qcoh_state{std::move(rec)}; }

}  // namespace

extern "C" {

const char* qcoh_status_name(qcoh_status status) {
  switch (status) {
    case QCOH_OK: return "Ok";
    case QCOH_ERR_NOT_HERMITIAN: return "NotHermitian";
    case QCOH_ERR_TRACE_NOT_ONE: return "TraceNotOne";
    case QCOH_ERR_NOT_PSD: return "NotPSD";
    case QCOH_ERR_NOT_NORMALIZED: return "NotNormalized";
    case QCOH_ERR_DIMENSION_NOT_2: return "DimensionNot2";
    case QCOH_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case QCOH_ERR_NOT_ISOMETRY: return "NotIsometry";
    case QCOH_ERR_RANK_MISMATCH: return "RankMismatch";
    case QCOH_ERR_NOT_A_PARTITION: return "NotAPartition";
    case QCOH_ERR_NON_EXACT_MEASURE: return "NonExactMeasure";
    case QCOH_ERR_TOO_LARGE: return "TooLarge";
    case QCOH_ERR_RATE_OUT_OF_RANGE: return "RateOutOfRange";
    case QCOH_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case QCOH_ERR_PARSE: return "ParseError";
    case QCOH_ERR_IO: return "IoError";
    case QCOH_ERR_NULL_POINTER: return "NullPointer";
    case QCOH_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* qcoh_last_error(void) { return g_last_error.c_str(); }
const char* qcoh_version(void) { return "0.1.0"; }
void qcoh_string_free(char* s) { std::free(s); }

/* states */

qcoh_status qcoh_state_from_entries(size_t dim, const double* re_im, double tol, qcoh_state** out) {
  QCOH_REQUIRE(re_im);
  QCOH_REQUIRE(out);
  return guarded([&] {
    if (dim == 0) throw qcoh::Error(qcoh::ErrorCode::InvalidArgument, "dim must be positive");
    qcoh::CMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        const std::size_t at = 2 * (i * dim + j);
        m(Eigen::Index(i), Eigen::Index(j)) = qcoh::Complex(re_im[at], re_im[at + 1]);
      }
    }
    *out = wrap({qcoh::validate_density(m, tol), std::nullopt});
  });
}

qcoh_status qcoh_state_from_amplitudes(size_t dim, const double* re_im, double tol, qcoh_state** out) {
  QCOH_REQUIRE(re_im);
  QCOH_REQUIRE(out);
  return guarded([&] {
    auto psi = qcoh::PureState::from_amplitudes(complex_vector(dim, re_im), tol);
    *out = wrap({psi.projector(), psi});
  });
}

qcoh_status qcoh_state_from_bloch(double nx, double ny, double nz, qcoh_state** out) {
  QCOH_REQUIRE(out);
  return guarded([&] { *out = wrap({qcoh::bloch_to_density({nx, ny, nz}), std::nullopt}); });
}

qcoh_status qcoh_state_load(const char* path, double tol, qcoh_state** out) {
  QCOH_REQUIRE(path);
  QCOH_REQUIRE(out);
  return guarded([&] { *out = wrap(qcoh::load_state(path, tol)); });
}

qcoh_status qcoh_state_random(size_t dim, size_t rank, uint64_t seed, qcoh_state** out) {
  QCOH_REQUIRE(out);
  return guarded([&] { *out = wrap({qcoh::random_density(dim, rank, seed), std::nullopt}); });
}

void qcoh_state_free(qcoh_state* state) { delete state; }

size_t qcoh_state_dim(const qcoh_state* state) { return state ? state->record.density.dim() : 0; }

int qcoh_state_is_pure(const qcoh_state* state) { return state && state->record.pure ? 1 : 0; }

qcoh_status qcoh_state_entries(const qcoh_state* state, double* re_im_out) {
  QCOH_REQUIRE(state);
  QCOH_REQUIRE(re_im_out);
  const auto& rho = state->record.density;
  const std::size_t d = rho.dim();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      re_im_out[2 * (i * d + j)] = rho(i, j).real();
      re_im_out[2 * (i * d + j) + 1] = rho(i, j).imag();
    }
  }
  return QCOH_OK;
}

qcoh_status qcoh_state_bloch(const qcoh_state* state, double out[3]) {
  QCOH_REQUIRE(state);
  QCOH_REQUIRE(out);
  return guarded([&] {
    const auto n = qcoh::density_to_bloch(state->record.density);
    out[0] = n.x;
    out[1] = n.y;
    out[2] = n.z;
  });
}

qcoh_status qcoh_state_to_json(const qcoh_state* state, char** json_out) {
  QCOH_REQUIRE(state);
  QCOH_REQUIRE(json_out);
  return guarded([&] {
    *json_out = dup_string(state->record.pure ? qcoh::pure_to_json(*state->record.pure)
                                              : qcoh::density_to_json(state->record.density));
  });
}

/* measures */

const char* qcoh_measure_name(qcoh_measure measure) {
  switch (measure) {
    case QCOH_MEASURE_REL_ENT: return "rel_ent";
    case QCOH_MEASURE_L1: return "l1";
    case QCOH_MEASURE_ROOF: return "roof";
    case QCOH_MEASURE_QUBIT_ANALYTIC: return "qubit_analytic";
  }
  return "unknown";
}

qcoh_status qcoh_measure_value(const qcoh_state* state, qcoh_measure measure, double* out) {
  QCOH_REQUIRE(state);
  QCOH_REQUIRE(out);
  return guarded([&] {
    if (measure < QCOH_MEASURE_REL_ENT || measure > QCOH_MEASURE_QUBIT_ANALYTIC) {
      throw qcoh::Error(qcoh::ErrorCode::InvalidArgument, "unknown measure");
    }
    *out = qcoh::evaluate_measure(static_cast<qcoh::MeasureId>(measure), state->record.density);
  });
}

qcoh_status qcoh_von_neumann_entropy(const qcoh_state* state, double* out) {
  QCOH_REQUIRE(state);
  QCOH_REQUIRE(out);
  return guarded([&] { *out = qcoh::von_neumann_entropy(state->record.density); });
}

qcoh_status qcoh_diagonal_entropy(const qcoh_state* state, double* out) {
  QCOH_REQUIRE(state);
  QCOH_REQUIRE(out);
  return guarded([&] {
    *out = state->record.pure ? qcoh::r_pure(*state->record.pure).value
                              : qcoh::shannon_entropy(qcoh::diagonal_probabilities(state->record.density));
  });
}

qcoh_status qcoh_concurrence(const qcoh_state* state, double* via_eigenvalues, double* via_bloch) {
  QCOH_REQUIRE(state);
  return guarded([&] {
    const double a = qcoh::coherence_concurrence_qubit(state->record.density);
    const double b = qcoh::coherence_concurrence_bloch(state->record.density);
    if (via_eigenvalues) *via_eigenvalues = a;
    if (via_bloch) *via_bloch = b;
  });
}

/* convex roof */

void qcoh_roof_config_default(qcoh_roof_config* config) {
  if (config == nullptr) return;
  const qcoh::RoofConfig d;
  *config = {d.ensemble_size, d.restarts, d.max_iterations, d.tolerance, d.seed};
}

qcoh_status qcoh_roof_optimize(const qcoh_state* state, const qcoh_roof_config* config, qcoh_roof_result** out) {
  QCOH_REQUIRE(state);
  QCOH_REQUIRE(out);
  return guarded([&] {
    auto res = std::make_unique<qcoh_roof_result>();
    res->result = qcoh::optimize_roof(state->record.density, to_config(config));
    *out = res.release();
  });
}

double qcoh_roof_value(const qcoh_roof_result* result) { return result ? result->result.value : 0.0; }
int qcoh_roof_converged(const qcoh_roof_result* result) { return result && result->result.converged ? 1 : 0; }
size_t qcoh_roof_restarts_used(const qcoh_roof_result* result) { return result ? result->result.restarts_used : 0; }
size_t qcoh_roof_element_count(const qcoh_roof_result* result) {
  return result ? result->result.best_decomposition.elements.size() : 0;
}

qcoh_status qcoh_roof_element(const qcoh_roof_result* result, size_t index, double* weight, double* amplitudes_re_im) {
  QCOH_REQUIRE(result);
  const auto& els = result->result.best_decomposition.elements;
  if (index >= els.size()) return fail(QCOH_ERR_INVALID_ARGUMENT, "element index out of range");
  if (weight) *weight = els[index].weight;
  if (amplitudes_re_im) {
    const auto& psi = els[index].state;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
      amplitudes_re_im[2 * i] = psi[i].real();
      amplitudes_re_im[2 * i + 1] = psi[i].imag();
    }
  }
  return QCOH_OK;
}

qcoh_status qcoh_roof_decomposition_json(const qcoh_roof_result* result, char** json_out) {
  QCOH_REQUIRE(result);
  QCOH_REQUIRE(json_out);
  return guarded([&] { *json_out = dup_string(qcoh::decomposition_to_json(result->result.best_decomposition)); });
}

void qcoh_roof_result_free(qcoh_roof_result* result) { delete result; }

qcoh_status qcoh_roof_brute_force_qubit(const qcoh_state* state, size_t grid_n, double* out) {
  QCOH_REQUIRE(state);
  QCOH_REQUIRE(out);
  return guarded([&] { *out = qcoh::brute_force_roof_qubit(state->record.density, grid_n); });
}

qcoh_status qcoh_regularized_roof(const qcoh_state* state, size_t copies, const qcoh_roof_config* config, double* out) {
  QCOH_REQUIRE(state);
  QCOH_REQUIRE(out);
  return guarded([&] { *out = qcoh::regularized_roof_estimate(state->record.density, copies, to_config(config)); });
}

/* property suite */

void qcoh_verify_config_default(qcoh_verify_config* config) {
  if (config == nullptr) return;
  const qcoh::PropertySuiteConfig d;
  unsigned mask = 0;
  for (auto id : d.measures) mask |= 1u << static_cast<unsigned>(id);
  *config = {d.max_dim, d.samples, d.seed, mask};
}

qcoh_status qcoh_verify_run(const qcoh_verify_config* config, qcoh_property_suite** out) {
  QCOH_REQUIRE(config);
  QCOH_REQUIRE(out);
  return guarded([&] {
    qcoh::PropertySuiteConfig cfg;
    cfg.max_dim = config->max_dim;
    cfg.samples = config->samples;
    cfg.seed = config->seed;
    cfg.measures.clear();
    for (unsigned id = 0; id <= static_cast<unsigned>(QCOH_MEASURE_QUBIT_ANALYTIC); ++id) {
      if (config->measure_mask & (1u << id)) cfg.measures.push_back(static_cast<qcoh::MeasureId>(id));
    }
    if (cfg.measures.empty()) throw qcoh::Error(qcoh::ErrorCode::InvalidArgument, "no measures selected");
    auto suite = std::make_unique<qcoh_property_suite>();
    suite->reports = qcoh::run_property_suite(cfg);
    for (const auto& r : suite->reports) suite->names.emplace_back(qcoh::property_name(r.property));
    *out = suite.release();
  });
}

size_t qcoh_property_suite_count(const qcoh_property_suite* suite) { return suite ? suite->reports.size() : 0; }

qcoh_status qcoh_property_suite_get(const qcoh_property_suite* suite, size_t index, qcoh_property_report* out) {
  QCOH_REQUIRE(suite);
  QCOH_REQUIRE(out);
  if (index >= suite->reports.size()) return fail(QCOH_ERR_INVALID_ARGUMENT, "report index out of range");
  const auto& r = suite->reports[index];
  *out = {suite->names[index].c_str(), static_cast<qcoh_measure>(r.measure), r.passed ? 1 : 0,
          r.worst_slack, r.cases, r.witness.c_str()};
  return QCOH_OK;
}

int qcoh_property_suite_passed(const qcoh_property_suite* suite) {
  if (suite == nullptr) return 0;
  for (const auto& r : suite->reports) {
    if (!r.passed) return 0;
  }
  return 1;
}

void qcoh_property_suite_free(qcoh_property_suite* suite) { delete suite; }

/* distillation */

qcoh_status qcoh_binomial_outcomes(size_t n, double p0, double* probabilities, double* log2_dims) {
  return guarded([&] {
    const auto dist = qcoh::binomial_outcome_distribution(n, p0);
    for (std::size_t k = 0; k < dist.size(); ++k) {
      if (probabilities) probabilities[k] = dist[k].probability;
      if (log2_dims) log2_dims[k] = dist[k].log2_dim;
    }
  });
}

qcoh_status qcoh_distill_simulate(const qcoh_state* psi, size_t n, size_t m, uint64_t seed, qcoh_distill_report** out) {
  QCOH_REQUIRE(psi);
  QCOH_REQUIRE(out);
  return guarded([&] {
    auto rep = std::make_unique<qcoh_distill_report>();
    rep->report = qcoh::distill_simulate(require_pure(psi), n, m, seed);
    *out = rep.release();
  });
}

qcoh_status qcoh_distill_exact(const qcoh_state* psi, size_t n, size_t m, uint64_t seed, qcoh_distill_report** out) {
  QCOH_REQUIRE(psi);
  QCOH_REQUIRE(out);
  return guarded([&] {
    const auto& pure = require_pure(psi);
    const auto run = qcoh::distill_exact(pure, n);
    auto rep = std::make_unique<qcoh_distill_report>();
    rep->report = qcoh::distill_exact_report(pure, n, m, seed);
    rep->exact = true;
    rep->probability_deviation = run.max_probability_deviation();
    for (const auto& o : run.outcomes) rep->flatness_deviation = std::max(rep->flatness_deviation, o.max_magnitude_deviation);
    *out = rep.release();
  });
}

qcoh_status qcoh_distill_summary_get(const qcoh_distill_report* report, qcoh_distill_summary* out) {
  QCOH_REQUIRE(report);
  QCOH_REQUIRE(out);
  const auto& r = report->report;
  const auto ledger = qcoh::coherence_loss_ledger(r);
  *out = {r.n, r.m, r.input_randomness, r.total_log2_dim, r.extracted, r.yield, ledger.loss_actual, ledger.loss_bound,
          ledger.within_bound ? 1 : 0, report->exact ? 1 : 0, report->probability_deviation, report->flatness_deviation};
  return QCOH_OK;
}

size_t qcoh_distill_group_count(const qcoh_distill_report* report) { return report ? report->report.outcomes.size() : 0; }

qcoh_status qcoh_distill_group(const qcoh_distill_report* report, size_t index, size_t* k, double* probability, double* log2_dim) {
  QCOH_REQUIRE(report);
  const auto& groups = report->report.outcomes;
  if (index >= groups.size()) return fail(QCOH_ERR_INVALID_ARGUMENT, "group index out of range");
  if (k) *k = groups[index].k;
  if (probability) *probability = groups[index].probability;
  if (log2_dim) *log2_dim = groups[index].log2_dim;
  return QCOH_OK;
}

void qcoh_distill_report_free(qcoh_distill_report* report) { delete report; }

/* randomness pipeline */

qcoh_status qcoh_sample_measurement(const qcoh_state* psi, size_t n, uint64_t seed, qcoh_stream** out) {
  QCOH_REQUIRE(psi);
  QCOH_REQUIRE(out);
  return guarded([&] { *out = new qcoh_stream{qcoh::sample_measurement(require_pure(psi), n, seed)}; });
}

qcoh_status qcoh_stream_read(const char* path, qcoh_stream** out) {
  QCOH_REQUIRE(path);
  QCOH_REQUIRE(out);
  return guarded([&] {
    if (std::strcmp(path, "-") == 0) {
      *out = new qcoh_stream{qcoh::read_stream(std::cin)};
      return;
    }
    std::ifstream in(path);
    if (!in) throw qcoh::Error(qcoh::ErrorCode::IoError, std::string("cannot open ") + path);
    *out = new qcoh_stream{qcoh::read_stream(in)};
  });
}

qcoh_status qcoh_stream_write(const qcoh_stream* stream, const char* path) {
  QCOH_REQUIRE(stream);
  QCOH_REQUIRE(path);
  return guarded([&] {
    if (std::strcmp(path, "-") == 0) {
      qcoh::write_stream(std::cout, stream->stream);
      std::cout.flush();
      return;
    }
    std::ofstream os(path);
    if (!os) throw qcoh::Error(qcoh::ErrorCode::IoError, std::string("cannot write ") + path);
    qcoh::write_stream(os, stream->stream);
    if (!os) throw qcoh::Error(qcoh::ErrorCode::IoError, std::string("write failed for ") + path);
  });
}

size_t qcoh_stream_length(const qcoh_stream* stream) { return stream ? stream->stream.symbols.size() : 0; }
size_t qcoh_stream_dim(const qcoh_stream* stream) { return stream ? stream->stream.source_dim : 0; }
uint64_t qcoh_stream_seed(const qcoh_stream* stream) { return stream ? stream->stream.seed : 0; }

qcoh_status qcoh_stream_symbols(const qcoh_stream* stream, uint32_t* out) {
  QCOH_REQUIRE(stream);
  QCOH_REQUIRE(out);
  std::copy(stream->stream.symbols.begin(), stream->stream.symbols.end(), out);
  return QCOH_OK;
}

qcoh_status qcoh_stream_entropy(const qcoh_stream* stream, double* out) {
  QCOH_REQUIRE(stream);
  QCOH_REQUIRE(out);
  return guarded([&] { *out = qcoh::empirical_entropy(stream->stream); });
}

qcoh_status qcoh_toeplitz_extract(const qcoh_stream* bits, double rate, uint64_t seed, qcoh_stream** out,
                                  qcoh_extraction_report* report) {
  QCOH_REQUIRE(bits);
  return guarded([&] {
    auto res = qcoh::toeplitz_extract(bits->stream, rate, seed);
    if (report) {
      *report = {res.report.input_length, res.report.output_length, res.report.target_rate, res.report.monobit_z};
    }
    if (out) *out = new qcoh_stream{std::move(res.bits)};
  });
}

void qcoh_stream_free(qcoh_stream* stream) { delete stream; }

void qcoh_pipeline_options_default(qcoh_pipeline_options* options) {
  if (options == nullptr) return;
  const qcoh::PipelineOptions d;
  *options = {d.margin, d.entropy == qcoh::EntropyKind::Min ? 1 : 0};
}

qcoh_status qcoh_pipeline_compare(const qcoh_state* psi, size_t n_groups, size_t group_n, uint64_t seed,
                                  const qcoh_pipeline_options* options, qcoh_pipeline_record* out) {
  QCOH_REQUIRE(psi);
  QCOH_REQUIRE(out);
  return guarded([&] {
    qcoh::PipelineOptions opts;
    if (options) {
      opts.margin = options->margin;
      opts.entropy = options->use_min_entropy ? qcoh::EntropyKind::Min : qcoh::EntropyKind::Shannon;
    }
    const auto c = qcoh::pipeline_compare(require_pure(psi), n_groups, group_n, seed, opts);
    *out = {c.input_symbols, c.target_entropy, c.extraction_rate, c.extract_bits, c.extract_monobit_z,
            c.distill_bits, c.distill_monobit_z, c.relative_gap, c.lengths_agree ? 1 : 0};
  });
}

}  // extern "C"
