#include <cmath>

#include "fracbdf/harness.hpp"

namespace fracbdf {

namespace {

std::vector<BenchmarkSeries> build_tables() {
  std::vector<BenchmarkSeries> t;
  const std::vector<long> n5 = {50, 100, 200, 400, 800};
  const std::vector<long> n16 = {100, 200, 400, 800, 1600};

  auto add = [&t](char c, Scheme s, int k, double a, int m, std::vector<long> n,
                  std::vector<double> e, double rate) {
    t.push_back({c, s, k, a, m, std::move(n), std::move(e), rate});
  };

  // Case (a), corrected scheme, h = 1/100.
  add('a', Scheme::corrected, 2, 0.25, 100, n5,
      {5.66e-5, 1.39e-5, 3.46e-6, 8.64e-7, 2.16e-7}, 2.00);
  add('a', Scheme::corrected, 3, 0.25, 100, n5,
      {2.29e-6, 2.76e-7, 3.39e-8, 4.20e-9, 5.23e-10}, 3.01);
  add('a', Scheme::corrected, 4, 0.25, 100, n5,
      {1.42e-7, 8.33e-9, 5.04e-10, 3.10e-11, 1.91e-12}, 4.02);
  add('a', Scheme::corrected, 5, 0.25, 100, n5,
      {1.26e-8, 3.41e-10, 1.01e-11, 3.07e-13, 9.45e-15}, 5.03);
  add('a', Scheme::corrected, 6, 0.25, 100, n5,
      {1.09e-5, 1.60e-9, 2.55e-13, 3.82e-15, 5.83e-17}, 6.04);
  add('a', Scheme::corrected, 2, 0.5, 100, n5,
      {1.74e-4, 4.30e-5, 1.07e-5, 2.65e-6, 6.62e-7}, 2.00);
  add('a', Scheme::corrected, 3, 0.5, 100, n5,
      {7.73e-6, 9.29e-7, 1.14e-7, 1.41e-8, 1.76e-9}, 3.01);
  add('a', Scheme::corrected, 4, 0.5, 100, n5,
      {5.12e-7, 2.98e-8, 1.80e-9, 1.10e-10, 6.83e-12}, 4.02);
  add('a', Scheme::corrected, 5, 0.5, 100, n5,
      {4.75e-8, 1.27e-9, 3.76e-11, 1.14e-12, 3.52e-14}, 5.03);
  add('a', Scheme::corrected, 6, 0.5, 100, n5,
      {3.01e-5, 2.79e-9, 9.85e-13, 1.47e-14, 2.25e-16}, 6.05);
  add('a', Scheme::corrected, 2, 0.75, 100, n5,
      {4.84e-4, 1.19e-4, 2.93e-5, 7.30e-6, 1.82e-6}, 2.00);
  add('a', Scheme::corrected, 3, 0.75, 100, n5,
      {2.55e-5, 3.04e-6, 3.72e-7, 4.60e-8, 5.71e-9}, 3.01);
  add('a', Scheme::corrected, 4, 0.75, 100, n5,
      {1.94e-6, 1.11e-7, 6.68e-9, 4.09e-10, 2.53e-11}, 4.02);
  add('a', Scheme::corrected, 5, 0.75, 100, n5,
      {2.95e-7, 5.30e-9, 1.55e-10, 4.70e-12, 1.45e-13}, 5.03);
  add('a', Scheme::corrected, 6, 0.75, 100, n5,
      {1.67e-3, 3.01e-7, 4.53e-12, 6.61e-14, 1.01e-15}, 6.07);

  // Case (a), uncorrected scheme and the L1 baseline, alpha = 0.5.
  add('a', Scheme::uncorrected, 3, 0.5, 100, n5,
      {4.98e-3, 2.48e-3, 1.24e-3, 6.19e-4, 3.09e-4}, 1.00);
  add('a', Scheme::uncorrected, 4, 0.5, 100, n5,
      {4.97e-3, 2.48e-3, 1.24e-3, 6.19e-4, 3.09e-4}, 1.00);
  add('a', Scheme::uncorrected, 5, 0.5, 100, n5,
      {4.97e-3, 2.48e-3, 1.24e-3, 6.19e-4, 3.09e-4}, 1.00);
  add('a', Scheme::uncorrected, 6, 0.5, 100, n5,
      {4.94e-3, 2.48e-3, 1.24e-3, 6.19e-4, 3.09e-4}, 1.00);
  add('a', Scheme::l1, 0, 0.5, 100, n5,
      {5.10e-3, 2.52e-3, 1.25e-3, 6.24e-4, 3.11e-4}, 1.04);

  // Case (b), corrected scheme, h = 1/100.
  add('b', Scheme::corrected, 2, 0.25, 100, n5,
      {6.67e-6, 1.65e-6, 4.10e-7, 1.02e-7, 2.55e-8}, 2.00);
  add('b', Scheme::corrected, 3, 0.25, 100, n5,
      {2.68e-7, 3.20e-8, 3.91e-9, 4.83e-10, 6.00e-11}, 3.01);
  add('b', Scheme::corrected, 4, 0.25, 100, n5,
      {2.14e-8, 1.25e-9, 7.57e-11, 4.65e-12, 2.88e-13}, 4.02);
  add('b', Scheme::corrected, 5, 0.25, 100, n5,
      {1.90e-9, 5.11e-11, 1.51e-12, 4.61e-14, 1.42e-15}, 5.03);
  add('b', Scheme::corrected, 6, 0.25, 100, n5,
      {1.63e-6, 2.40e-10, 3.79e-14, 5.68e-16, 8.67e-18}, 6.05);
  add('b', Scheme::corrected, 2, 0.5, 100, n5,
      {1.76e-5, 4.35e-6, 1.08e-6, 2.70e-7, 6.62e-8}, 2.00);
  add('b', Scheme::corrected, 3, 0.5, 100, n5,
      {6.35e-7, 7.56e-8, 9.22e-9, 1.14e-9, 1.42e-10}, 3.01);
  add('b', Scheme::corrected, 4, 0.5, 100, n5,
      {5.23e-8, 3.03e-9, 1.83e-10, 1.12e-11, 6.95e-13}, 4.02);
  add('b', Scheme::corrected, 5, 0.5, 100, n5,
      {4.94e-9, 1.33e-10, 3.91e-12, 1.19e-13, 3.66e-15}, 5.03);
  add('b', Scheme::corrected, 6, 0.5, 100, n5,
      {3.14e-6, 2.91e-10, 1.02e-13, 1.52e-15, 2.32e-17}, 6.05);
  add('b', Scheme::corrected, 2, 0.75, 100, n5,
      {3.03e-5, 7.47e-6, 1.86e-6, 4.63e-7, 1.16e-7}, 2.00);
  add('b', Scheme::corrected, 3, 0.75, 100, n5,
      {1.10e-6, 1.31e-7, 1.59e-8, 1.96e-9, 2.43e-10}, 3.01);
  add('b', Scheme::corrected, 4, 0.75, 100, n5,
      {9.98e-8, 5.72e-9, 3.43e-10, 2.10e-11, 1.30e-12}, 4.02);
  add('b', Scheme::corrected, 5, 0.75, 100, n5,
      {1.57e-8, 2.81e-10, 8.24e-12, 2.50e-13, 7.68e-15}, 5.03);
  add('b', Scheme::corrected, 6, 0.75, 100, n5,
      {8.95e-5, 1.61e-8, 2.40e-13, 3.50e-15, 5.33e-17}, 6.07);

  // Case (c), corrected scheme, conditionally stable orders, h = 1/10.
  add('c', Scheme::corrected, 3, 1.95, 10, n16,
      {2.96e-5, 3.84e-6, 5.00e-7, 6.40e-8, 8.27e-9}, 2.96);
  add('c', Scheme::corrected, 4, 1.75, 10, n16,
      {2.08e-6, 1.43e-7, 9.29e-9, 5.92e-10, 3.74e-11}, 3.98);
  add('c', Scheme::corrected, 5, 1.5, 10, n16,
      {7.29e-8, 2.49e-10, 6.22e-12, 1.72e-13, 5.05e-15}, 5.14);
  add('c', Scheme::corrected, 6, 1.5, 10, n16,
      {5.67e-2, 2.56e-10, 6.88e-13, 1.05e-14, 1.62e-16}, 6.03);

  // Case (c), corrected scheme, unconditionally stable orders, h = 1/100.
  add('c', Scheme::corrected, 2, 1.25, 100, n16,
      {2.34e-5, 5.85e-6, 1.46e-6, 3.65e-7, 9.14e-8}, 2.00);
  add('c', Scheme::corrected, 2, 1.5, 100, n16,
      {6.87e-5, 1.69e-5, 4.18e-6, 1.04e-6, 2.59e-7}, 2.00);
  add('c', Scheme::corrected, 2, 1.75, 100, n16,
      {3.15e-4, 8.55e-5, 2.21e-5, 5.62e-6, 1.42e-6}, 1.98);
  add('c', Scheme::corrected, 3, 1.25, 100, n16,
      {1.54e-8, 1.66e-9, 3.20e-10, 4.80e-11, 6.33e-12}, 3.00);
  add('c', Scheme::corrected, 3, 1.5, 100, n16,
      {4.22e-6, 5.12e-7, 6.30e-8, 7.82e-9, 9.74e-10}, 3.00);
  add('c', Scheme::corrected, 3, 1.75, 100, n16,
      {5.27e-5, 6.43e-6, 7.93e-7, 9.78e-8, 1.15e-8}, 3.02);
  add('c', Scheme::corrected, 4, 1.25, 100, n16,
      {2.74e-8, 1.64e-9, 1.00e-10, 6.20e-12, 3.63e-13}, 4.00);
  add('c', Scheme::corrected, 4, 1.5, 100, n16,
      {1.88e-7, 1.27e-8, 8.22e-10, 5.19e-11, 3.07e-12}, 4.00);
  add('c', Scheme::corrected, 5, 1.1, 100, n16,
      {3.32e-10, 9.52e-12, 2.85e-13, 8.71e-15, 2.69e-16}, 5.00);
  add('c', Scheme::corrected, 5, 1.3, 100, n16,
      {2.38e-7, 1.28e-10, 1.08e-12, 3.40e-14, 1.06e-15}, 5.00);
  add('c', Scheme::corrected, 6, 1.05, 100, n16,
      {3.31e-5, 1.94e-7, 1.28e-10, 7.58e-17, 7.39e-19}, 6.68);

  return t;
}

}  // namespace

const std::vector<BenchmarkSeries>& benchmark_series() {
  static const std::vector<BenchmarkSeries> tables = build_tables();
  return tables;
}

const BenchmarkSeries* find_benchmark(char case_id, Scheme scheme, int k,
                                      double alpha, int subintervals) {
  for (const auto& row : benchmark_series()) {
    if (row.case_id == case_id && row.scheme == scheme && row.k == k &&
        row.subintervals == subintervals && std::abs(row.alpha - alpha) < 1e-12) {
      return &row;
    }
  }
  return nullptr;
}

}  // namespace fracbdf
