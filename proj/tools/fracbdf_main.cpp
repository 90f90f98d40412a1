// Command-line driver: convergence studies, stability-flip experiments,
// correction-coefficient dumps, CFL sweeps and weight tables.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "fracbdf/errors.hpp"
#include "fracbdf/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitStabilityRefused = 3;
constexpr int kExitCheckFailed = 4;

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out << text;
}

fracbdf::Scheme parse_scheme(const std::string& name) {
  if (name == "corrected") {
    return fracbdf::Scheme::corrected;
  }
  if (name == "uncorrected") {
    return fracbdf::Scheme::uncorrected;
  }
  if (name == "l1") {
    return fracbdf::Scheme::l1;
  }
  throw CLI::ValidationError("--scheme", "expected corrected, uncorrected or l1");
}

fracbdf::Regime parse_regime(const std::string& name) {
  if (name == "sub" || name == "subdiffusion") {
    return fracbdf::Regime::subdiffusion;
  }
  if (name == "wave" || name == "diffusion_wave") {
    return fracbdf::Regime::diffusion_wave;
  }
  throw CLI::ValidationError("--regime", "expected sub or wave");
}

std::string weight_dump_path(const std::string& out, double alpha, int k) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "weights.a%g_k%d.csv", alpha, k);
  if (out.empty()) {
    return buf;
  }
  return out + "." + buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convolution-quadrature BDF solver for time-fractional "
               "evolution problems"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");
  app.allow_config_extras(CLI::config_extras_mode::error);

  // converge
  auto* converge = app.add_subcommand(
      "converge", "Temporal convergence study against a refined reference");
  fracbdf::ExperimentConfig cfg;
  std::string scheme_name = "corrected";
  converge->add_option("--case", cfg.case_id, "Problem data: a, b, c or custom");
  converge->add_option("--alpha", cfg.alphas, "Fractional orders")
      ->delimiter(',')
      ->required();
  converge->add_option("--k", cfg.orders, "BDF orders")->delimiter(',');
  converge->add_option("--N", cfg.step_counts, "Step counts, increasing")
      ->delimiter(',')
      ->required();
  converge->add_option("--M", cfg.subintervals, "Spatial subintervals");
  converge->add_option("--scheme", scheme_name,
                       "corrected | uncorrected | l1");
  converge->add_option("--ref-factor", cfg.ref_factor,
                       "Reference refinement factor");
  converge->add_option("--format", cfg.format, "csv | json");
  converge->add_option("--out", cfg.out_path, "Output path (default stdout)");
  converge->add_option("-T,--final-time", cfg.final_time, "Final time");
  converge->add_option("--threads", cfg.threads, "Worker threads (0 = auto)");
  converge->add_flag("--override-stability", cfg.override_stability,
                     "Run diffusion-wave cases past the CFL threshold");
  converge->add_flag("--trace", cfg.trace, "Record error-vs-time profiles");
  converge->add_flag("--check", cfg.check,
                     "Compare against published values; exit 4 on mismatch");
  converge->add_flag("--check-reference", cfg.check_reference,
                     "Verify the reference by refining it once more");
  converge->add_flag("--dump-weights", cfg.dump_weights,
                     "Also write the weight tables used");

  // flip
  auto* flip = app.add_subcommand(
      "flip", "Stability flip experiment across the step-size threshold");
  double flip_alpha = 1.5;
  int flip_k = 5;
  int flip_m = 100;
  double flip_T = 1.0;
  std::vector<long> flip_n;
  std::string flip_format = "csv";
  std::string flip_out;
  flip->add_option("--alpha", flip_alpha, "Fractional order")->required();
  flip->add_option("--k", flip_k, "BDF order")->required();
  flip->add_option("--M", flip_m, "Spatial subintervals");
  flip->add_option("--N", flip_n, "Step counts")->delimiter(',')->required();
  flip->add_option("-T,--final-time", flip_T, "Final time");
  flip->add_option("--format", flip_format, "csv | json");
  flip->add_option("--out", flip_out, "Output path (default stdout)");

  // coeffs
  auto* coeffs = app.add_subcommand(
      "coeffs", "Correction coefficients as exact fractions or decimals");
  int coeffs_k = 4;
  std::string coeffs_regime = "sub";
  std::string coeffs_format = "json";
  std::string coeffs_out;
  coeffs->add_option("--k", coeffs_k, "BDF order")->required();
  coeffs->add_option("--regime", coeffs_regime, "sub | wave");
  coeffs->add_option("--format", coeffs_format, "json | csv");
  coeffs->add_option("--out", coeffs_out, "Output path (default stdout)");

  // cfl
  auto* cfl = app.add_subcommand("cfl", "CFL constant sweep c(alpha, k)");
  std::vector<int> cfl_k = {3, 4, 5, 6};
  std::vector<double> cfl_alphas;
  double cfl_min = 1.05, cfl_max = 1.99, cfl_step = 0.01;
  std::string cfl_out;
  cfl->add_option("--k", cfl_k, "BDF orders")->delimiter(',');
  cfl->add_option("--alpha", cfl_alphas, "Explicit alpha list")->delimiter(',');
  cfl->add_option("--alpha-min", cfl_min, "Sweep start");
  cfl->add_option("--alpha-max", cfl_max, "Sweep end");
  cfl->add_option("--alpha-step", cfl_step, "Sweep step");
  cfl->add_option("--out", cfl_out, "Output path (default stdout)");

  // weights
  auto* weights = app.add_subcommand("weights", "Convolution-quadrature weights");
  double w_alpha = 0.5;
  int w_k = 2;
  std::size_t w_count = 16;
  bool w_oracle = false;
  std::string w_out;
  weights->add_option("--alpha", w_alpha, "Fractional order")->required();
  weights->add_option("--k", w_k, "BDF order")->required();
  weights->add_option("--count", w_count, "Number of weights");
  weights->add_flag("--oracle", w_oracle, "Also emit the FFT oracle column");
  weights->add_option("--out", w_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (converge->parsed()) {
      cfg.scheme = parse_scheme(scheme_name);
      const auto report = fracbdf::run_convergence(cfg);
      emit(cfg.out_path, cfg.format == "json" ? fracbdf::report_json(report)
                                              : fracbdf::report_csv(report));
      if (cfg.dump_weights && cfg.scheme != fracbdf::Scheme::l1) {
        for (double a : cfg.alphas) {
          for (int k : cfg.orders) {
            const auto n_max = cfg.step_counts.back();
            emit(weight_dump_path(cfg.out_path, a, k),
                 fracbdf::weights_csv(a, k,
                                      static_cast<std::size_t>(n_max) + 1));
          }
        }
      }
      if (cfg.check) {
        const auto outcome = fracbdf::check_report(report);
        for (const auto& line : outcome.lines) {
          std::cerr << line << "\n";
        }
        if (!outcome.ok) {
          return kExitCheckFailed;
        }
      }
    } else if (flip->parsed()) {
      const auto result =
          fracbdf::run_stability_flip(flip_alpha, flip_k, flip_m, flip_n, flip_T);
      emit(flip_out, flip_format == "json" ? fracbdf::flip_json(result)
                                           : fracbdf::flip_csv(result));
    } else if (coeffs->parsed()) {
      const auto regime = parse_regime(coeffs_regime);
      emit(coeffs_out, coeffs_format == "csv"
                           ? fracbdf::coeffs_csv(coeffs_k, regime)
                           : fracbdf::coeffs_json(coeffs_k, regime));
    } else if (cfl->parsed()) {
      if (cfl_alphas.empty()) {
        for (double a = cfl_min; a <= cfl_max + 1e-12; a += cfl_step) {
          cfl_alphas.push_back(a);
        }
      }
      emit(cfl_out, fracbdf::cfl_sweep_csv(cfl_k, cfl_alphas));
    } else if (weights->parsed()) {
      emit(w_out, fracbdf::weights_csv(w_alpha, w_k, w_count, w_oracle));
    }
  } catch (const fracbdf::StabilityRefused& e) {
    std::cerr << "stability refusal: " << e.what()
              << " (pass --override-stability to run anyway)\n";
    return kExitStabilityRefused;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
