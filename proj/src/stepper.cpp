#include "fracbdf/stepper.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

#include "fracbdf/cq_weights.hpp"
#include "fracbdf/errors.hpp"

namespace fracbdf {

namespace {

using Real = long double;

std::vector<Real> to_real(const std::vector<double>& v) {
  return {v.begin(), v.end()};
}

std::vector<Real> load_of(const SpatialSystem& sys,
                          const std::function<double(double)>& f) {
  if (!f) {
    return std::vector<Real>(static_cast<std::size_t>(sys.interior_nodes()), 0.0L);
  }
  return to_real(project_load(sys, f));
}

void tridiag_apply(const std::vector<Real>& diag, const std::vector<Real>& off,
                   const std::vector<Real>& u, std::vector<Real>& out) {
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i) {
    Real acc = diag[i] * u[i];
    if (i > 0) {
      acc += off[i - 1] * u[i - 1];
    }
    if (i + 1 < n) {
      acc += off[i] * u[i + 1];
    }
    out[i] = acc;
  }
}

}  // namespace

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::corrected:
      return "corrected";
    case Scheme::uncorrected:
      return "uncorrected";
    case Scheme::l1:
      return "l1";
  }
  return "?";
}

std::vector<double> fd_stencil(int derivative, int accuracy_order) {
  if (derivative < 0 || accuracy_order < 1) {
    throw std::invalid_argument("fd_stencil: bad derivative or order");
  }
  const int n = derivative + accuracy_order;  // number of nodes 0..n-1
  const int m = derivative;
  // Fornberg's recursion for interpolatory differentiation weights at x = 0.
  std::vector<std::vector<double>> c(
      static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
  c[0][0] = 1.0;
  double c1 = 1.0;
  double c4 = 0.0;  // x_0 - 0
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = static_cast<double>(i);  // x_i - 0
    for (int j = 0; j < i; ++j) {
      const double c3 = static_cast<double>(i - j);  // x_i - x_j
      c2 *= c3;
      if (j == i - 1) {
        for (int s = mn; s >= 1; --s) {
          c[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] =
              c1 * (s * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(s - 1)] -
                    c5 * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(s)]) /
              c2;
        }
        c[static_cast<std::size_t>(i)][0] =
            -c1 * c5 * c[static_cast<std::size_t>(i - 1)][0] / c2;
      }
      for (int s = mn; s >= 1; --s) {
        c[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] =
            (c4 * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] -
             s * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(s - 1)]) /
            c3;
      }
      c[static_cast<std::size_t>(j)][0] *= c4 / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    w[static_cast<std::size_t>(j)] =
        c[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)];
  }
  return w;
}

SolverRun::SolverRun(const SpatialSystem& sys, const ProblemSpec& problem,
                     const RunOptions& options)
    : sys_(sys), problem_(problem), scheme_(options.scheme) {
  k_ = options.k;
  total_steps_ = options.steps;
  if (k_ < 1 || k_ > 6) {
    throw std::invalid_argument("BDF order must be in 1..6");
  }
  if (total_steps_ < 1) {
    throw std::invalid_argument("step count must be positive");
  }
  const bool wave = problem_.regime == Regime::diffusion_wave;
  if (wave && !(problem_.alpha > 1.0 && problem_.alpha < 2.0)) {
    throw std::invalid_argument("diffusion-wave runs need alpha in (1, 2)");
  }
  if (!wave && !(problem_.alpha > 0.0 && problem_.alpha < 1.0)) {
    throw std::invalid_argument("subdiffusion runs need alpha in (0, 1)");
  }
  if (scheme_ == Scheme::l1 && wave) {
    throw std::invalid_argument("the L1 scheme supports subdiffusion only");
  }

  nodes_ = sys.interior_nodes();
  tau_ = static_cast<Real>(problem.T) / static_cast<Real>(total_steps_);
  alpha_ = static_cast<Real>(problem.alpha);

  mass_diag_ = to_real(sys.mass_diag);
  mass_off_ = to_real(sys.mass_off);

  if (wave && scheme_ != Scheme::l1) {
    gate_stability(options);
  }

  Real sigma = 0;
  if (scheme_ == Scheme::l1) {
    const Real beta =
        std::pow(tau_, -alpha_) / std::tgamma(static_cast<Real>(2) - alpha_);
    sigma = beta;
    l1_weights_.resize(static_cast<std::size_t>(total_steps_) + 1);
    for (long m = 0; m <= total_steps_; ++m) {
      l1_weights_[static_cast<std::size_t>(m)] =
          std::pow(static_cast<Real>(m + 1), 1 - alpha_) -
          std::pow(static_cast<Real>(m), 1 - alpha_);
    }
  } else {
    const auto p = detail::bdf_zeta_coefficients_as<Real>(k_);
    cq_weights_ = detail::polynomial_power_series<Real>(
        p, alpha_, static_cast<std::size_t>(total_steps_) + 1);
    sigma = cq_weights_[0] * std::pow(tau_, -alpha_);
    if (wave) {
      bdf_weights_ = p;
    }
  }

  std::vector<Real> d(static_cast<std::size_t>(nodes_)),
      e(static_cast<std::size_t>(nodes_ > 0 ? nodes_ - 1 : 0));
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = sigma * mass_diag_[i] + static_cast<Real>(sys.stiff_diag[i]);
  }
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = sigma * mass_off_[i] + static_cast<Real>(sys.stiff_off[i]);
  }
  factored_ = FactoredTridiagonal<Real>(std::move(d), std::move(e));

  prepare_corrections(options);
  prepare_loads(options);

  history_.assign(
      (static_cast<std::size_t>(total_steps_) + 1) * static_cast<std::size_t>(nodes_),
      0.0L);
  if (scheme_ == Scheme::l1) {
    for (int i = 0; i < nodes_; ++i) {
      history_[static_cast<std::size_t>(i)] = v_nodes_[static_cast<std::size_t>(i)];
    }
  }
  instability_factor_ = options.instability_factor;
  curvature_factor_ = options.curvature_instability_factor;
  for (int i = 0; i < nodes_; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    solution_scale_ = std::max(solution_scale_, std::abs(v_nodes_[u]));
    const Real left = i > 0 ? v_nodes_[u - 1] : Real(0);
    const Real right = i + 1 < nodes_ ? v_nodes_[u + 1] : Real(0);
    curvature_scale_ =
        std::max(curvature_scale_, std::abs(left - 2 * v_nodes_[u] + right));
  }

  if (wave) {
    g_ring_.assign(static_cast<std::size_t>(k_) + 2,
                   std::vector<Real>(static_cast<std::size_t>(nodes_), 0.0L));
    g_ring_step_.assign(static_cast<std::size_t>(k_) + 2, -1);
    g_quad_accum_.assign(static_cast<std::size_t>(nodes_), 0.0);
    ensure_g_load(0);
  }

  scratch_a_.assign(static_cast<std::size_t>(nodes_), 0.0L);
  scratch_b_.assign(static_cast<std::size_t>(nodes_), 0.0L);
}

void SolverRun::gate_stability(const RunOptions& options) {
  const double rA = numerical_radius(sys_);
  auto [ok, report] = check_condition(problem_.alpha, k_, static_cast<double>(tau_),
                                      rA, options.cfl_safety);
  stability_ = report;
  if (!ok && !options.override_stability) {
    throw StabilityRefused(static_cast<double>(tau_),
                           report.tau_threshold.value_or(0.0));
  }
}

void SolverRun::prepare_corrections(const RunOptions& options) {
  if (scheme_ != Scheme::corrected) {
    return;
  }
  CorrectionSet derived;
  const CorrectionSet* set = options.corrections;
  if (set == nullptr) {
    derived = make_correction_set(k_, problem_.regime);
    set = &derived;
  }
  a_coef_.assign(set->a.size(), 0.0L);
  for (std::size_t i = 0; i < set->a.size(); ++i) {
    a_coef_[i] = set->a[i].convert_to<Real>();
  }
  c_coef_.assign(set->c.size(), 0.0L);
  for (std::size_t i = 0; i < set->c.size(); ++i) {
    c_coef_[i] = set->c[i].convert_to<Real>();
  }
  b_coef_.resize(set->b.size());
  for (std::size_t l = 0; l < set->b.size(); ++l) {
    b_coef_[l].assign(set->b[l].size(), 0.0L);
    for (std::size_t j = 0; j < set->b[l].size(); ++j) {
      b_coef_[l][j] = set->b[l][j].convert_to<Real>();
    }
  }
}

void SolverRun::prepare_loads(const RunOptions& options) {
  const bool wave = problem_.regime == Regime::diffusion_wave;
  v_nodes_.assign(static_cast<std::size_t>(nodes_), 0.0L);
  if (problem_.v) {
    v_nodes_ = to_real(interpolate(sys_, problem_.v));
  }
  b_nodes_.assign(static_cast<std::size_t>(nodes_), 0.0L);
  if (wave && problem_.initial_velocity) {
    b_nodes_ = to_real(interpolate(sys_, problem_.initial_velocity));
  }

  neg_stiff_v_.assign(static_cast<std::size_t>(nodes_), 0.0L);
  neg_stiff_b_.assign(static_cast<std::size_t>(nodes_), 0.0L);
  std::vector<double> tmp_in(static_cast<std::size_t>(nodes_)),
      tmp_out(static_cast<std::size_t>(nodes_));
  if (problem_.v) {
    for (int i = 0; i < nodes_; ++i) {
      tmp_in[static_cast<std::size_t>(i)] =
          static_cast<double>(v_nodes_[static_cast<std::size_t>(i)]);
    }
    apply_stiffness(sys_, tmp_in, tmp_out);
    for (int i = 0; i < nodes_; ++i) {
      neg_stiff_v_[static_cast<std::size_t>(i)] = -tmp_out[static_cast<std::size_t>(i)];
    }
  }
  if (wave && problem_.initial_velocity) {
    for (int i = 0; i < nodes_; ++i) {
      tmp_in[static_cast<std::size_t>(i)] =
          static_cast<double>(b_nodes_[static_cast<std::size_t>(i)]);
    }
    apply_stiffness(sys_, tmp_in, tmp_out);
    for (int i = 0; i < nodes_; ++i) {
      neg_stiff_b_[static_cast<std::size_t>(i)] = -tmp_out[static_cast<std::size_t>(i)];
    }
  }

  if (scheme_ != Scheme::corrected) {
    return;
  }
  // Loads of d^m f/dt^m (., 0): the subdiffusion corrections use m = 0..k-2,
  // the diffusion-wave ones m = 0..k-3.
  const int max_order = wave ? std::max(k_ - 3, 0) : std::max(k_ - 2, 0);
  f_deriv_loads_.assign(static_cast<std::size_t>(max_order) + 1,
                        std::vector<Real>(static_cast<std::size_t>(nodes_), 0.0L));
  if (!problem_.f) {
    return;
  }
  f_deriv_loads_[0] =
      load_of(sys_, [&](double x) { return problem_.f(x, 0.0); });
  const int supplied = static_cast<int>(problem_.f_derivs0.size());
  if (max_order >= 1 && supplied < max_order && !options.fd_fallback_derivs) {
    throw std::invalid_argument(
        "missing source time derivatives at t = 0: need orders 1.." +
        std::to_string(max_order) +
        " (supply them or enable the finite-difference fallback)");
  }
  for (int m = 1; m <= max_order; ++m) {
    if (m <= supplied && problem_.f_derivs0[static_cast<std::size_t>(m - 1)]) {
      f_deriv_loads_[static_cast<std::size_t>(m)] =
          load_of(sys_, problem_.f_derivs0[static_cast<std::size_t>(m - 1)]);
    } else {
      // One-sided finite difference of order k-m-1 applied to load vectors.
      const auto w = fd_stencil(m, std::max(k_ - m - 1, 1));
      std::vector<Real> acc(static_cast<std::size_t>(nodes_), 0.0L);
      for (std::size_t j = 0; j < w.size(); ++j) {
        const double t = static_cast<double>(j) * static_cast<double>(tau_);
        const auto fl = load_of(sys_, [&](double x) { return problem_.f(x, t); });
        for (int i = 0; i < nodes_; ++i) {
          acc[static_cast<std::size_t>(i)] +=
              static_cast<Real>(w[j]) * fl[static_cast<std::size_t>(i)];
        }
      }
      const Real scale = std::pow(tau_, static_cast<Real>(-m));
      for (auto& x : acc) {
        x *= scale;
      }
      f_deriv_loads_[static_cast<std::size_t>(m)] = std::move(acc);
    }
  }
}

void SolverRun::ensure_g_load(long m) {
  const std::size_t slot =
      static_cast<std::size_t>(m) % g_ring_.size();
  if (g_ring_step_[slot] == m) {
    return;
  }
  if (m == 0) {
    std::fill(g_ring_[slot].begin(), g_ring_[slot].end(), 0.0L);
    g_ring_step_[slot] = 0;
    return;
  }
  if (problem_.g) {
    const double t = static_cast<double>(m) * static_cast<double>(tau_);
    g_ring_[slot] = load_of(sys_, [&](double x) { return problem_.g(x, t); });
    g_ring_step_[slot] = m;
    return;
  }
  // Quadrature fallback: accumulate integral of the load of f over each step.
  using boost::math::quadrature::gauss_kronrod;
  while (g_quad_next_ <= m) {
    const long q = g_quad_next_;
    const double t0 = static_cast<double>(q - 1) * static_cast<double>(tau_);
    const double t1 = static_cast<double>(q) * static_cast<double>(tau_);
    if (problem_.f) {
      for (int i = 0; i < nodes_; ++i) {
        const auto integrand = [&](double t) {
          return load_entry(sys_, [&](double x) { return problem_.f(x, t); }, i);
        };
        g_quad_accum_[static_cast<std::size_t>(i)] +=
            gauss_kronrod<double, 15>::integrate(integrand, t0, t1, 12, 1e-13);
      }
    }
    const std::size_t qa = static_cast<std::size_t>(q) % g_ring_.size();
    g_ring_[qa] = to_real(g_quad_accum_);
    g_ring_step_[qa] = q;
    ++g_quad_next_;
  }
}

void SolverRun::convolve_into(long n, std::vector<long double>& acc) const {
  std::fill(acc.begin(), acc.end(), 0.0L);
  const std::size_t width = static_cast<std::size_t>(nodes_);
  for (long j = 1; j < n; ++j) {  // j = n multiplies W^0 = 0
    const Real w = cq_weights_[static_cast<std::size_t>(j)];
    const Real* row = history_.data() + static_cast<std::size_t>(n - j) * width;
    for (std::size_t i = 0; i < width; ++i) {
      acc[i] += w * row[i];
    }
  }
}

void SolverRun::step_cq() {
  const long n = n_ + 1;
  const std::size_t width = static_cast<std::size_t>(nodes_);
  const bool wave = problem_.regime == Regime::diffusion_wave;
  const Real t_n = static_cast<Real>(n) * tau_;
  const Real tau_malpha = std::pow(tau_, -alpha_);

  auto& conv = scratch_a_;
  convolve_into(n, conv);
  auto& rhs = scratch_b_;
  tridiag_apply(mass_diag_, mass_off_, conv, rhs);
  for (std::size_t i = 0; i < width; ++i) {
    rhs[i] = -tau_malpha * rhs[i] + neg_stiff_v_[i];
  }

  if (!wave) {
    if (problem_.f) {
      const double t = static_cast<double>(t_n);
      const auto fl = load_of(sys_, [&](double x) { return problem_.f(x, t); });
      for (std::size_t i = 0; i < width; ++i) {
        rhs[i] += fl[i];
      }
    }
    if (n <= k_ - 1 && scheme_ == Scheme::corrected) {
      const Real an =
          static_cast<std::size_t>(n) <= a_coef_.size() ? a_coef_[static_cast<std::size_t>(n - 1)] : 0.0L;
      if (an != 0.0L) {
        const auto& f0 = f_deriv_loads_[0];
        for (std::size_t i = 0; i < width; ++i) {
          rhs[i] += an * (neg_stiff_v_[i] + f0[i]);
        }
      }
      for (std::size_t l = 0; l < b_coef_.size(); ++l) {
        const Real bln = b_coef_[l][static_cast<std::size_t>(n - 1)];
        if (bln == 0.0L || f_deriv_loads_.size() <= l + 1) {
          continue;
        }
        const Real scale = bln * std::pow(tau_, static_cast<Real>(l + 1));
        const auto& fd = f_deriv_loads_[l + 1];
        for (std::size_t i = 0; i < width; ++i) {
          rhs[i] += scale * fd[i];
        }
      }
    }
  } else {
    for (std::size_t i = 0; i < width; ++i) {
      rhs[i] += t_n * neg_stiff_b_[i];
    }
    // Discrete derivative of the source antiderivative.
    ensure_g_load(n);
    const long top = std::min<long>(n, k_);
    for (long j = 0; j <= top; ++j) {
      const Real pj = bdf_weights_[static_cast<std::size_t>(j)];
      if (pj == 0.0L) {
        continue;
      }
      ensure_g_load(n - j);
      const auto& gl = g_ring_[static_cast<std::size_t>(n - j) % g_ring_.size()];
      const Real scale = pj / tau_;
      for (std::size_t i = 0; i < width; ++i) {
        rhs[i] += scale * gl[i];
      }
    }
    if (n <= k_ - 1 && scheme_ == Scheme::corrected) {
      const Real an =
          static_cast<std::size_t>(n) <= a_coef_.size() ? a_coef_[static_cast<std::size_t>(n - 1)] : 0.0L;
      if (an != 0.0L) {
        for (std::size_t i = 0; i < width; ++i) {
          rhs[i] += an * neg_stiff_v_[i];
        }
      }
      const Real cn =
          static_cast<std::size_t>(n) <= c_coef_.size() ? c_coef_[static_cast<std::size_t>(n - 1)] : 0.0L;
      if (cn != 0.0L) {
        const Real scale = cn * tau_;
        for (std::size_t i = 0; i < width; ++i) {
          rhs[i] += scale * neg_stiff_b_[i];
        }
      }
      for (std::size_t l = 0; l < b_coef_.size(); ++l) {
        const Real bln = b_coef_[l][static_cast<std::size_t>(n - 1)];
        if (bln == 0.0L || f_deriv_loads_.size() <= l) {
          continue;
        }
        const Real scale = bln * std::pow(tau_, static_cast<Real>(l));
        const auto& fd = f_deriv_loads_[l];
        for (std::size_t i = 0; i < width; ++i) {
          rhs[i] += scale * fd[i];
        }
      }
    }
  }

  Real* out = history_.data() + static_cast<std::size_t>(n) * width;
  factored_.solve(rhs, std::span<Real>(out, width));
  n_ = n;
}

void SolverRun::step_l1() {
  const long n = n_ + 1;
  const std::size_t width = static_cast<std::size_t>(nodes_);
  const Real beta =
      std::pow(tau_, -alpha_) / std::tgamma(static_cast<Real>(2) - alpha_);

  auto& acc = scratch_a_;
  std::fill(acc.begin(), acc.end(), 0.0L);
  for (long j = 1; j <= n - 1; ++j) {
    const Real w = l1_weights_[static_cast<std::size_t>(n - j - 1)] -
                   l1_weights_[static_cast<std::size_t>(n - j)];
    const Real* row = history_.data() + static_cast<std::size_t>(j) * width;
    for (std::size_t i = 0; i < width; ++i) {
      acc[i] += w * row[i];
    }
  }
  const Real w_hist = l1_weights_[static_cast<std::size_t>(n - 1)];
  for (std::size_t i = 0; i < width; ++i) {
    acc[i] += w_hist * v_nodes_[i];
  }

  auto& rhs = scratch_b_;
  tridiag_apply(mass_diag_, mass_off_, acc, rhs);
  for (std::size_t i = 0; i < width; ++i) {
    rhs[i] *= beta;
  }
  if (problem_.f) {
    const double t = static_cast<double>(n) * static_cast<double>(tau_);
    const auto fl = load_of(sys_, [&](double x) { return problem_.f(x, t); });
    for (std::size_t i = 0; i < width; ++i) {
      rhs[i] += fl[i];
    }
  }
  Real* out = history_.data() + static_cast<std::size_t>(n) * width;
  factored_.solve(rhs, std::span<Real>(out, width));
  n_ = n;
}

void SolverRun::observe_step() {
  const std::size_t width = static_cast<std::size_t>(nodes_);
  const Real* row = history_.data() + static_cast<std::size_t>(n_) * width;
  const bool wave = problem_.regime == Regime::diffusion_wave;
  const Real t_n = static_cast<Real>(n_) * tau_;
  scratch_a_.resize(width);
  auto& u = scratch_a_;
  for (std::size_t i = 0; i < width; ++i) {
    u[i] = row[i];
    if (scheme_ != Scheme::l1) {
      u[i] += v_nodes_[i];
      if (wave) {
        u[i] += t_n * b_nodes_[i];
      }
    }
  }
  Real maxu = 0;
  Real maxd2 = 0;  // undivided second difference, zero beyond the boundary
  for (std::size_t i = 0; i < width; ++i) {
    maxu = std::max(maxu, std::abs(u[i]));
    const Real left = i > 0 ? u[i - 1] : Real(0);
    const Real right = i + 1 < width ? u[i + 1] : Real(0);
    maxd2 = std::max(maxd2, std::abs(left - 2 * u[i] + right));
  }
  if (n_ == 1) {
    solution_scale_ = std::max(solution_scale_, maxu);
    curvature_scale_ = std::max(curvature_scale_, maxd2);
  }
  const bool norm_blowup =
      solution_scale_ > 0 && maxu > instability_factor_ * solution_scale_;
  const bool oscillation_blowup =
      curvature_scale_ > 0 && maxd2 > curvature_factor_ * curvature_scale_;
  if (norm_blowup || oscillation_blowup) {
    unstable_ = true;
    unstable_step_ = n_;
  }
}

bool SolverRun::advance() {
  if (unstable_ || n_ >= total_steps_) {
    return false;
  }
  if (scheme_ == Scheme::l1) {
    step_l1();
  } else {
    step_cq();
  }
  observe_step();
  return !unstable_;
}

GridFunction SolverRun::solution() const {
  const std::size_t width = static_cast<std::size_t>(nodes_);
  const Real* row = history_.data() + static_cast<std::size_t>(n_) * width;
  const bool wave = problem_.regime == Regime::diffusion_wave;
  const Real t_n = static_cast<Real>(n_) * tau_;
  GridFunction u(width);
  for (std::size_t i = 0; i < width; ++i) {
    Real x = row[i];
    if (scheme_ != Scheme::l1) {
      x += v_nodes_[i];
      if (wave) {
        x += t_n * b_nodes_[i];
      }
    }
    u[i] = static_cast<double>(x);
  }
  return u;
}

std::vector<long double> SolverRun::history(long j) const {
  if (j < 0 || j > n_) {
    throw std::out_of_range("history index outside completed steps");
  }
  const std::size_t width = static_cast<std::size_t>(nodes_);
  const Real* row = history_.data() + static_cast<std::size_t>(j) * width;
  return {row, row + width};
}

std::vector<long double> SolverRun::history_convolution(long n) const {
  if (scheme_ == Scheme::l1) {
    throw std::logic_error("history_convolution applies to the CQ schemes");
  }
  if (n < 1 || n > n_ + 1) {
    throw std::out_of_range("convolution index outside completed steps");
  }
  std::vector<long double> acc(static_cast<std::size_t>(nodes_), 0.0L);
  convolve_into(n, acc);
  return acc;
}

RunResult run_solver(const SpatialSystem& sys, const ProblemSpec& problem,
                     const RunOptions& options) {
  SolverRun run(sys, problem, options);
  RunResult result;
  result.tau = run.tau();
  result.stability = run.stability();
  result.snapshots.resize(options.snapshot_steps.size());
  std::size_t next_snap = 0;
  while (run.current_step() < options.steps) {
    const bool ok = run.advance();
    while (next_snap < options.snapshot_steps.size() &&
           options.snapshot_steps[next_snap] == run.current_step()) {
      result.snapshots[next_snap] = run.solution();
      ++next_snap;
    }
    if (!ok) {
      break;
    }
  }
  result.u_final = run.solution();
  result.unstable = run.unstable();
  result.unstable_step = run.unstable_step();
  return result;
}

}  // namespace fracbdf
