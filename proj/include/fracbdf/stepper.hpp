#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fracbdf/correction.hpp"
#include "fracbdf/fem1d.hpp"
#include "fracbdf/stability.hpp"

namespace fracbdf {

enum class Scheme { corrected, uncorrected, l1 };

std::string to_string(Scheme scheme);

/// Problem data for one evolution run on (0, 1) x (0, T].
///
/// Null callables stand for identically-zero data. For the diffusion-wave
/// regime the scheme consumes the time-antiderivative g of the source with
/// g(., 0) = 0; when g is not supplied it is computed from f by adaptive
/// Gauss-Kronrod quadrature in time (tolerance 1e-13). f_derivs0[m-1] is
/// d^m f / dt^m (., 0); orders the scheme needs but that are missing are a
/// configuration error unless fd_fallback_derivs enables the one-sided
/// finite-difference replacement.
struct ProblemSpec {
  Regime regime = Regime::subdiffusion;
  double alpha = 0.5;
  std::function<double(double)> v;
  std::function<double(double)> initial_velocity;  // diffusion-wave only
  std::function<double(double, double)> f;         // f(x, t)
  std::function<double(double, double)> g;         // optional antiderivative
  std::vector<std::function<double(double)>> f_derivs0;
  double T = 1.0;
};

struct RunOptions {
  int k = 2;
  long steps = 100;
  Scheme scheme = Scheme::corrected;
  bool override_stability = false;
  bool fd_fallback_derivs = false;
  /// Instability detector: a run is flagged once the nodal max norm exceeds
  /// instability_factor times its initial scale, or once the mesh-frequency
  /// oscillation amplitude max_i |U_{i-1} - 2 U_i + U_{i+1}| exceeds
  /// curvature_instability_factor times its initial scale. The second channel
  /// is what actually catches a CFL violation on short horizons: the unstable
  /// mode lives at the mesh frequency and its second difference outgrows the
  /// smooth background long before the max norm does.
  double instability_factor = 1e3;
  double curvature_instability_factor = 100.0;
  double cfl_safety = 1.0;
  std::vector<long> snapshot_steps;  // strictly increasing step indices
  /// Test hook: use these correction coefficients instead of deriving them.
  const CorrectionSet* corrections = nullptr;
};

struct RunResult {
  GridFunction u_final;  // solution at the last completed step
  double tau = 0;
  bool unstable = false;
  long unstable_step = -1;
  std::vector<GridFunction> snapshots;  // aligned with RunOptions::snapshot_steps
  StabilityReport stability;
};

/// One time-stepping run with full retained history. Internal state is kept
/// in extended precision; the double-precision views are for callers.
class SolverRun {
 public:
  SolverRun(const SpatialSystem& sys, const ProblemSpec& problem,
            const RunOptions& options);

  long steps() const { return total_steps_; }
  long current_step() const { return n_; }
  double tau() const { return static_cast<double>(tau_); }
  bool unstable() const { return unstable_; }
  long unstable_step() const { return unstable_step_; }
  const StabilityReport& stability() const { return stability_; }

  /// Advances one step; returns false once the instability detector trips.
  bool advance();

  /// Current solution U^n at the interior nodes.
  GridFunction solution() const;

  /// Exact internal history state W^j (U^j for the L1 scheme).
  std::vector<long double> history(long j) const;

  /// The discrete convolution sum_{j=1}^{n} b_j W^{n-j} exactly as the
  /// stepper accumulates it (ascending j, per-node extended accumulator).
  std::vector<long double> history_convolution(long n) const;

 private:
  void gate_stability(const RunOptions& options);
  void prepare_corrections(const RunOptions& options);
  void prepare_loads(const RunOptions& options);
  void ensure_g_load(long m);
  void convolve_into(long n, std::vector<long double>& acc) const;
  void step_cq();
  void step_l1();
  void observe_step();

  const SpatialSystem& sys_;
  const ProblemSpec& problem_;
  Scheme scheme_;
  int k_ = 0;
  long total_steps_ = 0;
  long n_ = 0;
  long double tau_ = 0;
  long double alpha_ = 0;
  int nodes_ = 0;

  std::vector<long double> mass_diag_, mass_off_;
  FactoredTridiagonal<long double> factored_;
  std::vector<long double> cq_weights_;   // tau-free coefficients of delta^alpha
  std::vector<long double> bdf_weights_;  // delta coefficients, diffusion-wave
  std::vector<long double> l1_weights_;

  std::vector<long double> v_nodes_, b_nodes_;
  std::vector<long double> neg_stiff_v_, neg_stiff_b_;
  std::vector<std::vector<long double>> f_deriv_loads_;  // index = derivative order
  std::vector<long double> a_coef_, c_coef_;
  std::vector<std::vector<long double>> b_coef_;

  std::vector<long double> history_;  // (steps+1) x nodes, row j = W^j (U^j for L1)
  std::vector<std::vector<long double>> g_ring_;
  std::vector<long> g_ring_step_;
  std::vector<double> g_quad_accum_;  // quadrature fallback state
  long g_quad_next_ = 1;

  long double solution_scale_ = 0;
  long double curvature_scale_ = 0;
  long double instability_factor_ = 1e3;
  long double curvature_factor_ = 100.0;
  bool unstable_ = false;
  long unstable_step_ = -1;
  StabilityReport stability_;

  mutable std::vector<long double> scratch_a_, scratch_b_;
};

RunResult run_solver(const SpatialSystem& sys, const ProblemSpec& problem,
                     const RunOptions& options);

/// One-sided finite-difference stencil on the uniform nodes 0, 1, ..., m-1
/// (m = derivative + accuracy_order points) approximating the derivative of
/// the given order at 0: f^(d)(0) ~= tau^{-d} sum_j w_j f(j tau).
std::vector<double> fd_stencil(int derivative, int accuracy_order);

}  // namespace fracbdf
