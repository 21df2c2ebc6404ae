// Batch front end over the C API. Every subcommand prints JSON on stdout.
#include <cmath>
#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcoh/qcoh.h"

using nlohmann::json;

namespace {

struct Failure : std::runtime_error {
  int exit_code;
  Failure(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
};

void check(qcoh_status s) {
  if (s != QCOH_OK) throw Failure(2, qcoh_last_error());
}

struct StateDeleter {
  void operator()(qcoh_state* s) const { qcoh_state_free(s); }
};
using StatePtr = std::unique_ptr<qcoh_state, StateDeleter>;

struct StreamDeleter {
  void operator()(qcoh_stream* s) const { qcoh_stream_free(s); }
};
using StreamPtr = std::unique_ptr<qcoh_stream, StreamDeleter>;

std::string take_string(char* raw) {
  std::string out(raw);
  qcoh_string_free(raw);
  return out;
}

StatePtr load(const std::string& path, double tol) {
  qcoh_state* s = nullptr;
  check(qcoh_state_load(path.c_str(), tol, &s));
  return StatePtr(s);
}

StatePtr qubit_from_alpha_sq(double alpha_sq, double tol) {
  if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) throw Failure(2, "--alpha-sq must lie in [0, 1]");
  const double amps[4] = {std::sqrt(alpha_sq), 0.0, std::sqrt(1.0 - alpha_sq), 0.0};
  qcoh_state* s = nullptr;
  check(qcoh_state_from_amplitudes(2, amps, tol, &s));
  return StatePtr(s);
}

StatePtr state_source(const std::string& path, std::optional<double> alpha_sq, double tol) {
  if (alpha_sq && !path.empty()) throw Failure(2, "give either a state file or --alpha-sq, not both");
  if (alpha_sq) return qubit_from_alpha_sq(*alpha_sq, tol);
  if (path.empty()) throw Failure(2, "a state file or --alpha-sq is required");
  return load(path, tol);
}

template <class F>
double value_of(F&& call) {
  double v = 0.0;
  check(call(&v));
  return v;
}

json cmd_measures(const std::string& path, double tol) {
  auto st = load(path, tol);
  const qcoh_state* s = st.get();
  const size_t d = qcoh_state_dim(s);
  json out;
  out["dim"] = d;
  out["pure"] = qcoh_state_is_pure(s) != 0;
  auto measure = [s](qcoh_measure id) { return value_of([&](double* v) { return qcoh_measure_value(s, id, v); }); };
  out["rel_ent"] = measure(QCOH_MEASURE_REL_ENT);
  out["l1"] = measure(QCOH_MEASURE_L1);
  out["von_neumann_entropy"] = value_of([&](double* v) { return qcoh_von_neumann_entropy(s, v); });
  out["diagonal_entropy"] = value_of([&](double* v) { return qcoh_diagonal_entropy(s, v); });
  out["roof"] = measure(QCOH_MEASURE_ROOF);
  if (d == 2) {
    out["qubit_analytic"] = measure(QCOH_MEASURE_QUBIT_ANALYTIC);
    double via_eig = 0.0, via_bloch = 0.0;
    check(qcoh_concurrence(s, &via_eig, &via_bloch));
    out["concurrence"] = via_eig;
    out["concurrence_bloch"] = via_bloch;
    double n[3];
    check(qcoh_state_bloch(s, n));
    out["bloch"] = {n[0], n[1], n[2]};
  }
  return out;
}

struct RoofArgs {
  std::string path;
  size_t m = 0;
  size_t restarts = 0;
  size_t max_iter = 0;
  double tol = 0.0;
  uint64_t seed = 0;
  size_t copies = 1;
  size_t grid = 0;
};

json cmd_roof(const RoofArgs& a, double tol) {
  auto st = load(a.path, tol);
  qcoh_roof_config cfg;
  qcoh_roof_config_default(&cfg);
  cfg.ensemble_size = a.m;
  if (a.restarts) cfg.restarts = a.restarts;
  if (a.max_iter) cfg.max_iterations = a.max_iter;
  if (a.tol > 0.0) cfg.tolerance = a.tol;
  cfg.seed = a.seed;

  qcoh_roof_result* raw = nullptr;
  check(qcoh_roof_optimize(st.get(), &cfg, &raw));
  std::unique_ptr<qcoh_roof_result, void (*)(qcoh_roof_result*)> res(raw, qcoh_roof_result_free);

  char* dec = nullptr;
  check(qcoh_roof_decomposition_json(res.get(), &dec));
  json out;
  out["value"] = qcoh_roof_value(res.get());
  out["converged"] = qcoh_roof_converged(res.get()) != 0;
  out["restarts_used"] = qcoh_roof_restarts_used(res.get());
  out["decomposition"] = json::parse(take_string(dec));
  if (a.copies > 1) {
    double v = 0.0;
    check(qcoh_regularized_roof(st.get(), a.copies, &cfg, &v));
    out["regularized"] = {{"copies", a.copies}, {"value", v}};
  }
  if (a.grid > 0) {
    double v = 0.0;
    check(qcoh_roof_brute_force_qubit(st.get(), a.grid, &v));
    out["brute_force"] = {{"grid_n", a.grid}, {"value", v}};
  }
  return out;
}

unsigned measure_mask(const std::vector<std::string>& names) {
  unsigned mask = 0;
  for (const auto& n : names) {
    bool found = false;
    for (int id = QCOH_MEASURE_REL_ENT; id <= QCOH_MEASURE_QUBIT_ANALYTIC; ++id) {
      if (n == qcoh_measure_name(static_cast<qcoh_measure>(id))) {
        mask |= 1u << id;
        found = true;
      }
    }
    if (!found) throw Failure(2, "unknown measure: " + n);
  }
  return mask;
}

json cmd_verify(size_t dim, size_t samples, uint64_t seed, const std::vector<std::string>& measures, bool& all_passed) {
  qcoh_verify_config cfg;
  qcoh_verify_config_default(&cfg);
  if (dim) cfg.max_dim = dim;
  if (samples) cfg.samples = samples;
  cfg.seed = seed;
  if (!measures.empty()) cfg.measure_mask = measure_mask(measures);

  qcoh_property_suite* raw = nullptr;
  check(qcoh_verify_run(&cfg, &raw));
  std::unique_ptr<qcoh_property_suite, void (*)(qcoh_property_suite*)> suite(raw, qcoh_property_suite_free);

  json reports = json::array();
  for (size_t i = 0; i < qcoh_property_suite_count(suite.get()); ++i) {
    qcoh_property_report r;
    check(qcoh_property_suite_get(suite.get(), i, &r));
    json j = {{"property", r.property},
              {"measure", qcoh_measure_name(r.measure)},
              {"passed", r.passed != 0},
              {"worst_slack", r.worst_slack},
              {"cases", r.cases}};
    if (!r.passed) j["witness"] = r.witness;
    reports.push_back(std::move(j));
  }
  all_passed = qcoh_property_suite_passed(suite.get()) != 0;
  return {{"max_dim", cfg.max_dim}, {"samples", cfg.samples}, {"seed", seed}, {"passed", all_passed}, {"reports", reports}};
}

json cmd_distill(double alpha_sq, size_t n, size_t m, uint64_t seed, bool exact, bool groups, double tol) {
  auto st = qubit_from_alpha_sq(alpha_sq, tol);
  qcoh_distill_report* raw = nullptr;
  check(exact ? qcoh_distill_exact(st.get(), n, m, seed, &raw) : qcoh_distill_simulate(st.get(), n, m, seed, &raw));
  std::unique_ptr<qcoh_distill_report, void (*)(qcoh_distill_report*)> rep(raw, qcoh_distill_report_free);

  qcoh_distill_summary s;
  check(qcoh_distill_summary_get(rep.get(), &s));
  json out = {{"n", s.n},
              {"m", s.m},
              {"alpha_sq", alpha_sq},
              {"input_randomness", s.input_randomness},
              {"total_log2_dim", s.total_log2_dim},
              {"extracted", s.extracted},
              {"yield", s.yield},
              {"loss_actual", s.loss_actual},
              {"loss_bound", s.loss_bound},
              {"loss_within_bound", s.loss_within_bound != 0},
              {"mode", s.exact ? "exact" : "simulate"}};
  if (s.exact) {
    out["exact_probability_deviation"] = s.exact_probability_deviation;
    out["exact_flatness_deviation"] = s.exact_flatness_deviation;
  }
  if (groups) {
    json g = json::array();
    for (size_t i = 0; i < qcoh_distill_group_count(rep.get()); ++i) {
      size_t k = 0;
      double p = 0.0, l = 0.0;
      check(qcoh_distill_group(rep.get(), i, &k, &p, &l));
      g.push_back({{"k", k}, {"probability", p}, {"log2_dim", l}});
    }
    out["groups"] = std::move(g);
  }
  return out;
}

json cmd_sample(const std::string& path, size_t n, uint64_t seed, const std::string& out_path, double tol) {
  auto st = load(path, tol);
  qcoh_stream* raw = nullptr;
  check(qcoh_sample_measurement(st.get(), n, seed, &raw));
  StreamPtr stream(raw);
  check(qcoh_stream_write(stream.get(), out_path.c_str()));
  double h = 0.0;
  check(qcoh_stream_entropy(stream.get(), &h));
  return {{"out", out_path}, {"length", qcoh_stream_length(stream.get())}, {"dim", qcoh_stream_dim(stream.get())},
          {"seed", seed}, {"empirical_entropy", h}};
}

json cmd_extract(const std::string& in_path, double rate, uint64_t seed, const std::string& out_path) {
  qcoh_stream* raw = nullptr;
  check(qcoh_stream_read(in_path.c_str(), &raw));
  StreamPtr input(raw);
  qcoh_stream* out_raw = nullptr;
  qcoh_extraction_report rep;
  check(qcoh_toeplitz_extract(input.get(), rate, seed, &out_raw, &rep));
  StreamPtr output(out_raw);
  if (!out_path.empty()) check(qcoh_stream_write(output.get(), out_path.c_str()));
  return {{"input_length", rep.input_length}, {"output_length", rep.output_length}, {"rate", rep.target_rate},
          {"monobit_z", rep.monobit_z}};
}

json cmd_pipeline(const std::string& path, std::optional<double> alpha_sq, size_t n_groups, size_t group_n,
                  uint64_t seed, double margin, bool min_entropy, double tol) {
  auto st = state_source(path, alpha_sq, tol);
  qcoh_pipeline_options opts;
  qcoh_pipeline_options_default(&opts);
  if (margin >= 0.0) opts.margin = margin;
  opts.use_min_entropy = min_entropy ? 1 : 0;
  qcoh_pipeline_record r;
  check(qcoh_pipeline_compare(st.get(), n_groups, group_n, seed, &opts, &r));
  return {{"input_symbols", r.input_symbols},
          {"target_entropy", r.target_entropy},
          {"extraction_rate", r.extraction_rate},
          {"extract_bits", r.extract_bits},
          {"extract_monobit_z", r.extract_monobit_z},
          {"distill_bits", r.distill_bits},
          {"distill_monobit_z", r.distill_monobit_z},
          {"relative_gap", r.relative_gap},
          {"lengths_agree", r.lengths_agree != 0}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence and intrinsic randomness toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", qcoh_version());
  double tol = 1e-10;
  app.add_option("--tol", tol, "Validation tolerance for state files")->capture_default_str();
  int indent = 2;
  app.add_option("--indent", indent, "JSON indent, -1 for compact output")->capture_default_str();

  std::string state_path;
  auto* measures = app.add_subcommand("measures", "Report every applicable coherence measure for a state");
  measures->add_option("state", state_path, "State file (JSON)")->required();

  RoofArgs roof;
  auto* roof_cmd = app.add_subcommand("roof", "Optimize the convex-roof randomness of a state");
  roof_cmd->add_option("state", roof.path, "State file (JSON)")->required();
  roof_cmd->add_option("--m", roof.m, "Ensemble size, 0 selects rank^2");
  roof_cmd->add_option("--restarts", roof.restarts, "Number of optimizer restarts");
  roof_cmd->add_option("--max-iter", roof.max_iter, "Iteration cap per restart");
  roof_cmd->add_option("--roof-tol", roof.tol, "Gradient-norm stopping tolerance");
  roof_cmd->add_option("--seed", roof.seed, "Seed for the random restarts");
  roof_cmd->add_option("--copies", roof.copies, "Also report the per-copy value on this many copies (1 or 2)");
  roof_cmd->add_option("--grid", roof.grid, "Also report the qubit grid-search value with this resolution");

  size_t v_dim = 0, v_samples = 0;
  uint64_t v_seed = 0;
  std::vector<std::string> v_measures;
  auto* verify = app.add_subcommand("verify", "Run the randomized property suite");
  verify->add_option("--dim", v_dim, "Largest dimension sampled");
  verify->add_option("--samples", v_samples, "Samples per property");
  verify->add_option("--seed", v_seed, "Suite seed");
  verify->add_option("--measure", v_measures, "Measures to test: rel_ent, l1, roof, qubit_analytic");

  double alpha_sq = 0.8;
  size_t d_n = 50, d_m = 200;
  uint64_t d_seed = 0;
  bool d_exact = false, d_groups = false;
  auto* distill = app.add_subcommand("distill", "Simulate coherence distillation of a qubit pure state");
  distill->add_option("--alpha-sq", alpha_sq, "Population |a0|^2 of the input qubit")->capture_default_str();
  distill->add_option("--n", d_n, "Copies per group")->capture_default_str();
  distill->add_option("--m", d_m, "Number of groups")->capture_default_str();
  distill->add_option("--seed", d_seed, "Sampling seed");
  distill->add_flag("--exact", d_exact, "Build the state vector explicitly (n <= 20)");
  distill->add_flag("--groups", d_groups, "Include per-group outcomes");

  size_t s_n = 0;
  uint64_t s_seed = 0;
  std::string s_out = "-";
  auto* sample = app.add_subcommand("sample", "Measure a pure state in the computational basis");
  sample->add_option("state", state_path, "State file (JSON) holding amplitudes")->required();
  sample->add_option("--n", s_n, "Number of outcomes")->required();
  sample->add_option("--seed", s_seed, "Sampling seed");
  sample->add_option("--out", s_out, "Stream file, '-' for stdout")->capture_default_str();

  std::string e_in, e_out;
  double e_rate = 0.0;
  uint64_t e_seed = 0;
  auto* extract = app.add_subcommand("extract", "Toeplitz-hash a binary stream");
  extract->add_option("stream", e_in, "Input stream file, '-' for stdin")->required();
  extract->add_option("--rate", e_rate, "Output bits per input bit")->required();
  extract->add_option("--seed", e_seed, "Seed for the Toeplitz matrix");
  extract->add_option("--out", e_out, "Write the extracted stream here");

  std::optional<double> p_alpha;
  size_t p_groups = 200, p_group_n = 50;
  uint64_t p_seed = 0;
  double p_margin = -1.0;
  bool p_min = false;
  auto* pipeline = app.add_subcommand("pipeline", "Compare measure-then-extract against distill-then-measure");
  pipeline->add_option("state", state_path, "Qubit state file (JSON) holding amplitudes");
  pipeline->add_option("--alpha-sq", p_alpha, "Use sqrt(a)|0> + sqrt(1-a)|1> instead of a file");
  pipeline->add_option("--groups", p_groups, "Number of groups")->capture_default_str();
  pipeline->add_option("--group-n", p_group_n, "Copies per group")->capture_default_str();
  pipeline->add_option("--seed", p_seed, "Seed");
  pipeline->add_option("--margin", p_margin, "Rate margin below the entropy estimate");
  pipeline->add_flag("--min-entropy", p_min, "Size the extractor by min-entropy instead of Shannon entropy");

  CLI11_PARSE(app, argc, argv);

  try {
    json out;
    int code = 0;
    if (*measures) {
      out = cmd_measures(state_path, tol);
    } else if (*roof_cmd) {
      out = cmd_roof(roof, tol);
    } else if (*verify) {
      bool passed = true;
      out = cmd_verify(v_dim, v_samples, v_seed, v_measures, passed);
      code = passed ? 0 : 1;
    } else if (*distill) {
      out = cmd_distill(alpha_sq, d_n, d_m, d_seed, d_exact, d_groups, tol);
    } else if (*sample) {
      out = cmd_sample(state_path, s_n, s_seed, s_out, tol);
      if (s_out == "-") {
        std::cerr << out.dump(indent) << '\n';
        return 0;
      }
    } else if (*extract) {
      out = cmd_extract(e_in, e_rate, e_seed, e_out);
    } else if (*pipeline) {
      out = cmd_pipeline(state_path, p_alpha, p_groups, p_group_n, p_seed, p_margin, p_min, tol);
    }
    std::cout << out.dump(indent) << '\n';
    return code;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.what() << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
