#include "fracbdf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "fracbdf/cq_weights.hpp"
#include "fracbdf/errors.hpp"

namespace fracbdf {

namespace {

using nlohmann::json;

double chi_left_half(double x) { return (x > 0.0 && x < 0.5) ? 1.0 : 0.0; }

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::string sci3(double v) { return fmt("%.2e", v); }

double rate_between(double e0, double e1, long n0, long n1) {
  if (!(e0 > 0) || !(e1 > 0) || !std::isfinite(e0) || !std::isfinite(e1)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return std::log(e0 / e1) / std::log(static_cast<double>(n1) / n0);
}

int worker_count(int requested, std::size_t tasks) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) {
    n = 1;
  }
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), tasks));
}

void validate(const ExperimentConfig& config) {
  if (config.alphas.empty()) {
    throw std::invalid_argument("no fractional orders requested");
  }
  if (config.scheme != Scheme::l1 && config.orders.empty()) {
    throw std::invalid_argument("no BDF orders requested");
  }
  if (config.step_counts.empty()) {
    throw std::invalid_argument("no step counts requested");
  }
  for (std::size_t i = 0; i + 1 < config.step_counts.size(); ++i) {
    if (config.step_counts[i] >= config.step_counts[i + 1]) {
      throw std::invalid_argument("step counts must be strictly increasing");
    }
  }
  if (config.ref_factor < 1) {
    throw std::invalid_argument("reference refinement factor must be >= 1");
  }
  if (config.format != "csv" && config.format != "json") {
    throw std::invalid_argument("format must be csv or json");
  }
}

GridFunction difference(const GridFunction& a, const GridFunction& b) {
  GridFunction d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    d[i] = a[i] - b[i];
  }
  return d;
}

}  // namespace

ProblemSpec make_case(const std::string& case_id, double alpha) {
  ProblemSpec spec;
  spec.alpha = alpha;
  if (case_id == "a") {
    spec.regime = Regime::subdiffusion;
    spec.v = [](double x) { return x * (1.0 - x); };
  } else if (case_id == "b") {
    spec.regime = Regime::subdiffusion;
    spec.f = [](double x, double t) { return std::cos(t) * (1.0 + chi_left_half(x)); };
    // cos cycles through 0, -1, 0, +1 at t = 0.
    spec.f_derivs0 = {
        [](double) { return 0.0; },
        [](double x) { return -(1.0 + chi_left_half(x)); },
        [](double) { return 0.0; },
        [](double x) { return 1.0 + chi_left_half(x); },
    };
  } else if (case_id == "c") {
    spec.regime = Regime::diffusion_wave;
    spec.v = [](double x) { return x * (1.0 - x); };
    spec.initial_velocity = [](double x) { return std::sin(2.0 * std::numbers::pi * x); };
    spec.f = [](double x, double t) { return std::exp(t) * (1.0 + chi_left_half(x)); };
    spec.g = [](double x, double t) { return (std::exp(t) - 1.0) * (1.0 + chi_left_half(x)); };
    auto profile = [](double x) { return 1.0 + chi_left_half(x); };
    spec.f_derivs0 = {profile, profile, profile};
  } else if (case_id == "custom") {
    spec.regime = alpha > 1.0 ? Regime::diffusion_wave : Regime::subdiffusion;
  } else {
    throw std::invalid_argument("unknown case '" + case_id +
                                "' (expected a, b, c or custom)");
  }
  const bool wave = spec.regime == Regime::diffusion_wave;
  if (wave ? !(alpha > 1.0 && alpha < 2.0) : !(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha " + std::to_string(alpha) +
                                " is outside the admissible range of case " +
                                case_id);
  }
  return spec;
}

namespace {

ConvergenceRow run_one_sweep(const SpatialSystem& sys,
                             const ExperimentConfig& config, double alpha, int k) {
  ConvergenceRow row;
  row.alpha = alpha;
  row.k = config.scheme == Scheme::l1 ? 0 : k;
  row.scheme = config.scheme;
  row.N = config.step_counts;
  row.theoretical_rate = config.scheme == Scheme::corrected ? k : 1.0;

  ProblemSpec spec = make_case(config.case_id, alpha);
  spec.T = config.final_time;
  const long n_max = config.step_counts.back();
  const long n_ref = n_max * config.ref_factor;

  RunOptions ref_opt;
  ref_opt.scheme = Scheme::corrected;
  ref_opt.k = config.scheme == Scheme::l1 ? 3 : k;
  ref_opt.steps = n_ref;
  ref_opt.override_stability = config.override_stability;
  if (config.trace) {
    for (long n : config.step_counts) {
      if (n_ref % n != 0) {
        continue;
      }
      const long stride = n_ref / n;
      for (long m = 1; m <= n; ++m) {
        ref_opt.snapshot_steps.push_back(m * stride);
      }
    }
    std::sort(ref_opt.snapshot_steps.begin(), ref_opt.snapshot_steps.end());
    ref_opt.snapshot_steps.erase(std::unique(ref_opt.snapshot_steps.begin(),
                                             ref_opt.snapshot_steps.end()),
                                 ref_opt.snapshot_steps.end());
  }
  const RunResult ref = run_solver(sys, spec, ref_opt);
  if (ref.unstable) {
    row.warnings.push_back("reference run tripped the instability detector");
  }
  const double ref_norm = l2_norm(sys, ref.u_final);
  row.reference_norm = ref_norm;

  for (long n : config.step_counts) {
    RunOptions opt;
    opt.scheme = config.scheme;
    opt.k = k;
    opt.steps = n;
    opt.override_stability = config.override_stability;
    if (config.trace && n_ref % n == 0) {
      opt.snapshot_steps.resize(static_cast<std::size_t>(n));
      for (long m = 1; m <= n; ++m) {
        opt.snapshot_steps[static_cast<std::size_t>(m - 1)] = m;
      }
    }
    const RunResult run = run_solver(sys, spec, opt);
    if (run.unstable) {
      row.warnings.push_back("N=" + std::to_string(n) +
                             " tripped the instability detector at step " +
                             std::to_string(run.unstable_step));
    }
    const double abs_err = l2_norm(sys, difference(run.u_final, ref.u_final));
    row.error.push_back(ref_norm > 0 ? abs_err / ref_norm : abs_err);

    if (config.trace && n_ref % n == 0 && !run.unstable) {
      const long stride = n_ref / n;
      std::vector<std::pair<double, double>> profile;
      profile.reserve(static_cast<std::size_t>(n));
      for (long m = 1; m <= n; ++m) {
        const auto& u_m = run.snapshots[static_cast<std::size_t>(m - 1)];
        // Locate the aligned reference snapshot.
        const auto it = std::lower_bound(ref_opt.snapshot_steps.begin(),
                                         ref_opt.snapshot_steps.end(), m * stride);
        const std::size_t ref_idx =
            static_cast<std::size_t>(it - ref_opt.snapshot_steps.begin());
        const auto& u_ref = ref.snapshots[ref_idx];
        const double e = l2_norm(sys, difference(u_m, u_ref));
        const double t = static_cast<double>(m) / static_cast<double>(n) *
                         config.final_time;
        profile.emplace_back(t, ref_norm > 0 ? e / ref_norm : e);
      }
      row.traces.emplace_back(n, std::move(profile));
    }
  }

  for (std::size_t i = 0; i + 1 < row.error.size(); ++i) {
    row.rate.push_back(
        rate_between(row.error[i], row.error[i + 1], row.N[i], row.N[i + 1]));
  }

  if (config.check_reference) {
    RunOptions ref2_opt = ref_opt;
    ref2_opt.snapshot_steps.clear();
    ref2_opt.steps = n_ref * 2;
    const RunResult ref2 = run_solver(sys, spec, ref2_opt);
    const double drift = l2_norm(sys, difference(ref.u_final, ref2.u_final));
    double min_abs_err = std::numeric_limits<double>::infinity();
    for (double e : row.error) {
      const double abs_e = ref_norm > 0 ? e * ref_norm : e;
      if (abs_e > 0) {
        min_abs_err = std::min(min_abs_err, abs_e);
      }
    }
    if (std::isfinite(min_abs_err) && drift > 0.01 * min_abs_err) {
      row.warnings.push_back(
          "reference not converged: refining it again moves the result by " +
          sci3(drift) + " (more than 1% of the smallest measured error)");
    }
  }
  return row;
}

}  // namespace

ErrorReport run_convergence(const ExperimentConfig& config) {
  validate(config);
  ErrorReport report;
  report.config = config;

  const SpatialSystem sys = assemble(config.subintervals);
  const std::vector<int> orders =
      config.scheme == Scheme::l1 ? std::vector<int>{1} : config.orders;

  struct Task {
    double alpha;
    int k;
  };
  std::vector<Task> tasks;
  for (double a : config.alphas) {
    for (int k : orders) {
      tasks.push_back({a, k});
    }
  }
  report.rows.resize(tasks.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) {
        return;
      }
      try {
        report.rows[i] = run_one_sweep(sys, config, tasks[i].alpha, tasks[i].k);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
        }
        return;
      }
    }
  };

  const int threads = worker_count(config.threads, tasks.size());
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) {
      pool.emplace_back(work);
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
  return report;
}

std::string report_csv(const ErrorReport& report) {
  std::ostringstream out;
  const auto& c = report.config;
  out << "# fracbdf convergence report\n";
  out << "# case=" << c.case_id << " scheme=" << to_string(c.scheme)
      << " M=" << c.subintervals << " T=" << fmt("%g", c.final_time)
      << " ref_factor=" << c.ref_factor << "\n";
  out << "alpha,k,N,error,rate,theoretical_rate\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.N.size(); ++i) {
      out << fmt("%g", row.alpha) << "," << row.k << "," << row.N[i] << ","
          << sci3(row.error[i]) << ",";
      if (i > 0 && std::isfinite(row.rate[i - 1])) {
        out << fmt("%.2f", row.rate[i - 1]);
      }
      out << "," << fmt("%.2f", row.theoretical_rate) << "\n";
    }
  }
  bool have_traces = false;
  for (const auto& row : report.rows) {
    if (!row.traces.empty()) {
      have_traces = true;
    }
  }
  if (have_traces) {
    out << "# trace\n";
    out << "alpha,k,N,t,error\n";
    for (const auto& row : report.rows) {
      for (const auto& [n, profile] : row.traces) {
        for (const auto& [t, e] : profile) {
          out << fmt("%g", row.alpha) << "," << row.k << "," << n << ","
              << fmt("%.10g", t) << "," << sci3(e) << "\n";
        }
      }
    }
  }
  for (const auto& row : report.rows) {
    for (const auto& w : row.warnings) {
      out << "# warning alpha=" << fmt("%g", row.alpha) << " k=" << row.k << ": "
          << w << "\n";
    }
  }
  return out.str();
}

namespace {

json row_json(const ConvergenceRow& row) {
  json j;
  j["alpha"] = row.alpha;
  j["k"] = row.k;
  j["scheme"] = to_string(row.scheme);
  j["N"] = row.N;
  j["error"] = row.error;
  json rates = json::array();
  for (double r : row.rate) {
    if (std::isfinite(r)) {
      rates.push_back(r);
    } else {
      rates.push_back(nullptr);
    }
  }
  j["rate"] = rates;
  j["theoretical_rate"] = row.theoretical_rate;
  j["reference_norm"] = row.reference_norm;
  if (!row.warnings.empty()) {
    j["warnings"] = row.warnings;
  }
  if (!row.traces.empty()) {
    json traces = json::object();
    for (const auto& [n, profile] : row.traces) {
      json arr = json::array();
      for (const auto& [t, e] : profile) {
        arr.push_back({t, e});
      }
      traces[std::to_string(n)] = arr;
    }
    j["trace"] = traces;
  }
  return j;
}

}  // namespace

std::string report_json(const ErrorReport& report) {
  const auto& c = report.config;
  json j;
  j["config"] = {{"case", c.case_id},
                 {"scheme", to_string(c.scheme)},
                 {"M", c.subintervals},
                 {"T", c.final_time},
                 {"ref_factor", c.ref_factor}};
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back(row_json(row));
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

FlipResult run_stability_flip(double alpha, int k, int subintervals,
                              const std::vector<long>& step_counts,
                              double final_time, double instability_factor) {
  FlipResult result;
  result.alpha = alpha;
  result.k = k;
  result.subintervals = subintervals;
  result.final_time = final_time;

  const SpatialSystem sys = assemble(subintervals);
  result.numerical_radius = numerical_radius(sys);
  result.cfl_constant = cfl_constant(alpha, k);
  result.tau_threshold = tau_threshold(alpha, k, result.numerical_radius);

  for (long n : step_counts) {
    ProblemSpec spec = make_case("c", alpha);
    spec.T = final_time;
    RunOptions opt;
    opt.scheme = Scheme::corrected;
    opt.k = k;
    opt.steps = n;
    opt.override_stability = true;
    opt.instability_factor = instability_factor;
    const RunResult run = run_solver(sys, spec, opt);
    result.runs.push_back({n, run.tau, run.unstable, run.unstable_step,
                           run.u_final});
  }
  return result;
}

std::string flip_csv(const FlipResult& result) {
  std::ostringstream out;
  out << "# fracbdf stability flip\n";
  out << "# alpha=" << fmt("%g", result.alpha) << " k=" << result.k
      << " M=" << result.subintervals << " T=" << fmt("%g", result.final_time)
      << "\n";
  out << "# r(A)=" << fmt("%.6e", result.numerical_radius);
  if (result.cfl_constant) {
    out << " c(alpha,k)=" << fmt("%.6g", *result.cfl_constant);
  }
  if (result.tau_threshold) {
    out << " tau0=" << fmt("%.6e", *result.tau_threshold);
  }
  out << "\n";
  out << "N,tau,verdict,unstable_step\n";
  for (const auto& run : result.runs) {
    out << run.N << "," << fmt("%.6e", run.tau) << ","
        << (run.unstable ? "unstable" : "stable") << ",";
    if (run.unstable) {
      out << run.unstable_step;
    }
    out << "\n";
  }
  out << "# final profiles\n";
  out << "N,x,u\n";
  for (const auto& run : result.runs) {
    for (std::size_t i = 0; i < run.final_profile.size(); ++i) {
      const double x = static_cast<double>(i + 1) / result.subintervals;
      out << run.N << "," << fmt("%.10g", x) << ","
          << fmt("%.10e", run.final_profile[i]) << "\n";
    }
  }
  return out.str();
}

std::string flip_json(const FlipResult& result) {
  json j;
  j["alpha"] = result.alpha;
  j["k"] = result.k;
  j["M"] = result.subintervals;
  j["T"] = result.final_time;
  j["numerical_radius"] = result.numerical_radius;
  if (result.cfl_constant) {
    j["cfl_constant"] = *result.cfl_constant;
  }
  if (result.tau_threshold) {
    j["tau_threshold"] = *result.tau_threshold;
  }
  json runs = json::array();
  for (const auto& run : result.runs) {
    json r;
    r["N"] = run.N;
    r["tau"] = run.tau;
    r["verdict"] = run.unstable ? "unstable" : "stable";
    if (run.unstable) {
      r["unstable_step"] = run.unstable_step;
    }
    r["final_profile"] = run.final_profile;
    runs.push_back(r);
  }
  j["runs"] = runs;
  return j.dump(2) + "\n";
}

std::string coeffs_json(int k, Regime regime) {
  const CorrectionSet set = make_correction_set(k, regime);
  json j;
  j["k"] = k;
  j["regime"] = to_string(regime);
  json a = json::array();
  for (const auto& q : set.a) {
    a.push_back(to_fraction_string(q));
  }
  j["a"] = a;
  json b = json::array();
  for (const auto& row : set.b) {
    json r = json::array();
    for (const auto& q : row) {
      r.push_back(to_fraction_string(q));
    }
    b.push_back(r);
  }
  j["b"] = b;
  if (regime == Regime::diffusion_wave) {
    json c = json::array();
    for (const auto& q : set.c) {
      c.push_back(to_fraction_string(q));
    }
    j["c"] = c;
  }
  return j.dump(2) + "\n";
}

std::string coeffs_csv(int k, Regime regime) {
  const CorrectionSet set = make_correction_set(k, regime);
  std::ostringstream out;
  out << "# correction coefficients k=" << k << " regime=" << to_string(regime)
      << "\n";
  out << "family,ell,j,value\n";
  for (std::size_t j = 0; j < set.a.size(); ++j) {
    out << "a,," << (j + 1) << "," << fmt("%.17g", to_double(set.a[j])) << "\n";
  }
  for (std::size_t l = 0; l < set.b.size(); ++l) {
    for (std::size_t j = 0; j < set.b[l].size(); ++j) {
      out << "b," << (l + 1) << "," << (j + 1) << ","
          << fmt("%.17g", to_double(set.b[l][j])) << "\n";
    }
  }
  for (std::size_t j = 0; j < set.c.size(); ++j) {
    out << "c,," << (j + 1) << "," << fmt("%.17g", to_double(set.c[j])) << "\n";
  }
  return out.str();
}

std::string cfl_sweep_csv(const std::vector<int>& orders,
                          const std::vector<double>& alphas) {
  std::ostringstream out;
  out << "k,alpha,cfl_constant\n";
  for (int k : orders) {
    for (double a : alphas) {
      out << k << "," << fmt("%g", a) << ",";
      const auto c = cfl_constant(a, k);
      if (c) {
        out << fmt("%.10g", *c);
      }
      out << "\n";
    }
  }
  return out.str();
}

std::string weights_csv(double alpha, int k, std::size_t count, bool with_oracle) {
  const WeightTable table = cq_weights(alpha, k, count);
  WeightTable oracle;
  if (with_oracle) {
    oracle = cq_weights_fft_oracle(alpha, k, count);
  }
  std::ostringstream out;
  out << "# cq weights alpha=" << fmt("%g", alpha) << " k=" << k << "\n";
  out << "j,b" << (with_oracle ? ",b_fft" : "") << "\n";
  for (std::size_t j = 0; j < table.weights.size(); ++j) {
    out << j << "," << fmt("%.17g", table.weights[j]);
    if (with_oracle) {
      out << "," << fmt("%.17g", oracle.weights[j]);
    }
    out << "\n";
  }
  return out.str();
}

CheckOutcome check_report(const ErrorReport& report) {
  CheckOutcome outcome;
  const char case_id = report.config.case_id.empty() ? '?' : report.config.case_id[0];
  for (const auto& row : report.rows) {
    const BenchmarkSeries* bench = find_benchmark(
        case_id, row.scheme, row.k, row.alpha, report.config.subintervals);
    if (bench == nullptr) {
      outcome.lines.push_back("skip: no published values for alpha=" +
                              fmt("%g", row.alpha) + " k=" + std::to_string(row.k));
      continue;
    }
    for (std::size_t i = 0; i < row.N.size(); ++i) {
      const auto it = std::find(bench->N.begin(), bench->N.end(), row.N[i]);
      if (it == bench->N.end()) {
        continue;
      }
      const double expected =
          bench->error[static_cast<std::size_t>(it - bench->N.begin())];
      const double got = row.error[i];
      const double rel = std::abs(got - expected) / expected;
      const bool ok = rel <= 0.05;
      outcome.ok = outcome.ok && ok;
      outcome.lines.push_back(std::string(ok ? "ok  " : "FAIL") + " alpha=" +
                              fmt("%g", row.alpha) + " k=" + std::to_string(row.k) +
                              " N=" + std::to_string(row.N[i]) + " error=" +
                              sci3(got) + " expected=" + sci3(expected) +
                              " rel=" + fmt("%.3f", rel));
    }
    if (!row.rate.empty() && std::isfinite(row.rate.back())) {
      const double got = row.rate.back();
      const bool ok = std::abs(got - bench->headline_rate) <= 0.1;
      outcome.ok = outcome.ok && ok;
      outcome.lines.push_back(std::string(ok ? "ok  " : "FAIL") + " alpha=" +
                              fmt("%g", row.alpha) + " k=" + std::to_string(row.k) +
                              " rate=" + fmt("%.2f", got) + " expected=" +
                              fmt("%.2f", bench->headline_rate));
    }
  }
  return outcome;
}

}  // namespace fracbdf
