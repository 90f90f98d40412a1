#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracbdf/stepper.hpp"

namespace fracbdf {

/// One convergence-study request: the cartesian product of alphas and orders,
/// each swept over the listed step counts against a refined reference.
struct ExperimentConfig {
  std::string case_id = "a";  // a | b | c | custom
  std::vector<double> alphas;
  std::vector<int> orders;        // BDF orders; ignored by the L1 scheme
  std::vector<long> step_counts;  // strictly increasing
  int subintervals = 100;
  Scheme scheme = Scheme::corrected;
  int ref_factor = 16;
  std::string format = "csv";  // csv | json
  std::string out_path;        // empty -> stdout
  bool override_stability = false;
  bool trace = false;
  bool check = false;
  bool check_reference = false;
  bool dump_weights = false;
  double final_time = 1.0;
  int threads = 0;  // 0 = hardware concurrency
};

struct ConvergenceRow {
  double alpha = 0;
  int k = 0;  // 0 labels the L1 scheme
  Scheme scheme = Scheme::corrected;
  std::vector<long> N;
  std::vector<double> error;
  std::vector<double> rate;  // rate[i] between N[i] and N[i+1]; NaN = undefined
  double theoretical_rate = 0;
  double reference_norm = 0;
  // Per-N error-vs-time profiles, recorded when tracing is on.
  std::vector<std::pair<long, std::vector<std::pair<double, double>>>> traces;
  std::vector<std::string> warnings;
};

struct ErrorReport {
  ExperimentConfig config;
  std::vector<ConvergenceRow> rows;
};

/// Built-in problem data sets:
///   a: v = x(1-x), f = 0                            (subdiffusion)
///   b: v = 0, f = cos(t)(1 + chi_(0,1/2)(x))        (subdiffusion)
///   c: v = x(1-x), u'(0) = sin(2 pi x),
///      f = e^t (1 + chi_(0,1/2)(x))                 (diffusion-wave)
///   custom: zero data, regime picked from alpha
ProblemSpec make_case(const std::string& case_id, double alpha);

ErrorReport run_convergence(const ExperimentConfig& config);

std::string report_csv(const ErrorReport& report);
std::string report_json(const ErrorReport& report);

struct FlipRun {
  long N = 0;
  double tau = 0;
  bool unstable = false;
  long unstable_step = -1;
  GridFunction final_profile;
};

/// Step-size flip experiment around the stability threshold.
struct FlipResult {
  double alpha = 0;
  int k = 0;
  int subintervals = 0;
  double final_time = 1;
  double numerical_radius = 0;
  std::optional<double> cfl_constant;
  std::optional<double> tau_threshold;
  std::vector<FlipRun> runs;
};

FlipResult run_stability_flip(double alpha, int k, int subintervals,
                              const std::vector<long>& step_counts,
                              double final_time = 1.0,
                              double instability_factor = 1e3);

std::string flip_csv(const FlipResult& result);
std::string flip_json(const FlipResult& result);

/// Correction coefficients as exact fractions (JSON) or decimals (CSV).
std::string coeffs_json(int k, Regime regime);
std::string coeffs_csv(int k, Regime regime);

/// (k, alpha, c(alpha, k)) sweep; the value column is empty where the
/// boundary curve never meets the negative real axis.
std::string cfl_sweep_csv(const std::vector<int>& orders,
                          const std::vector<double>& alphas);

std::string weights_csv(double alpha, int k, std::size_t count,
                        bool with_oracle = false);

/// Published reference results for the built-in cases, used by --check and
/// the acceptance suite.
struct BenchmarkSeries {
  char case_id = 'a';
  Scheme scheme = Scheme::corrected;
  int k = 0;  // 0 = L1 row
  double alpha = 0;
  int subintervals = 100;
  std::vector<long> N;
  std::vector<double> error;
  double headline_rate = 0;
};

const std::vector<BenchmarkSeries>& benchmark_series();
const BenchmarkSeries* find_benchmark(char case_id, Scheme scheme, int k,
                                      double alpha, int subintervals);

struct CheckOutcome {
  bool ok = true;
  std::vector<std::string> lines;
};

/// Compares a computed report against the published values: errors within 5%
/// relative, headline rate within +-0.1. Rows without published counterparts
/// are reported as skipped.
CheckOutcome check_report(const ErrorReport& report);

}  // namespace fracbdf
