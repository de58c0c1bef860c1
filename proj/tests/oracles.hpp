#pragma once

// Reference computations used by the tests. None of these go through the
// library's own elimination or summation code.

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "mttdl/markov_core.hpp"
#include "mttdl/overhead.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<long double>>;

// Transient block of A(0) written out from the state diagram.
inline Matrix transient_block(const mttdl::FailureModel& model) {
  const int p = model.p();
  const int n = model.n();
  Matrix a(p + 1, std::vector<long double>(p + 1, 0.0L));
  for (int i = 0; i <= p; ++i) {
    long double out = static_cast<long double>(model.lambda(i)) * (n - i);
    if (i > 0) out += static_cast<long double>(i) * model.mu(i - 1);
    if (i < p) out += model.gamma(i);
    a[i][i] = out;
    if (i > 0) {
      a[i][i - 1] = -static_cast<long double>(model.lambda(i - 1)) * (n - i + 1);
      a[0][i] = -static_cast<long double>(i) * model.mu(i - 1);
    }
  }
  return a;
}

// Gaussian elimination with partial pivoting in long double.
inline std::vector<long double> lu_solve(Matrix a, std::vector<long double> b, long double* det = nullptr) {
  const std::size_t n = b.size();
  long double d = 1.0L;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(a[i][k]) > std::fabs(a[piv][k])) piv = i;
    }
    if (piv != k) {
      std::swap(a[piv], a[k]);
      std::swap(b[piv], b[k]);
      d = -d;
    }
    d *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const long double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<long double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    long double acc = b[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= a[k][j] * x[j];
    x[k] = acc / a[k][k];
  }
  if (det) *det = d;
  return x;
}

// Sum of expected sojourns: solve A x = e_0 and add up x.
inline double mttdl_dense(const mttdl::FailureModel& model) {
  const auto a = transient_block(model);
  std::vector<long double> e0(a.size(), 0.0L);
  e0[0] = 1.0L;
  long double total = 0.0L;
  for (long double v : lu_solve(a, e0)) total += v;
  return static_cast<double>(total);
}

inline double determinant_dense(const mttdl::FailureModel& model) {
  long double det = 0.0L;
  const auto a = transient_block(model);
  lu_solve(a, std::vector<long double>(a.size(), 1.0L), &det);
  return static_cast<double>(det);
}

// Single and double parity formulas written out by hand.
inline double mttdl_one_parity(double l0, double l1, double mu0, int m) {
  return (l0 * (m + 1) + l1 * m + mu0) / (l0 * l1 * m * (m + 1.0));
}

inline double mttdl_two_parity(double l0, double l1, double l2, double mu0, double mu1, int m) {
  return (2 * mu1 + l2 * m) * (l0 * (m + 2) + l1 * (m + 1) + mu0) /
             (l0 * l1 * l2 * m * (m + 1.0) * (m + 2.0)) +
         1.0 / (l2 * m);
}

// Averages the per-block read cost over every j-subset of the n blocks.
// Data blocks are 0..m-1; a failed data block k costs set_sizes[k] reads.
inline std::vector<double> overhead_by_enumeration(const mttdl::AccessPattern& pattern) {
  const int n = pattern.n;
  const int m = pattern.m;
  std::vector<long double> sum(n - m + 1, 0.0L);
  std::vector<std::uint64_t> count(n - m + 1, 0);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int j = std::popcount(mask);
    if (j > n - m) continue;
    long double cost = 0.0L;
    for (int k = 0; k < m; ++k) cost += (mask >> k & 1u) ? pattern.set_sizes[k] : 1;
    sum[j] += cost / m;
    ++count[j];
  }
  std::vector<double> out(n - m + 1);
  for (int j = 0; j <= n - m; ++j) out[j] = static_cast<double>(sum[j] / count[j]);
  return out;
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

// Random model: every rate log-uniform over [lo, hi].
inline mttdl::FailureModel random_model(std::mt19937_64& rng, int p, int m, double lo, double hi,
                                        bool with_gamma) {
  std::vector<double> lambda(p + 1), mu(p), gamma(p, 0.0);
  for (auto& x : lambda) x = log_uniform(rng, lo, hi);
  for (auto& x : mu) x = log_uniform(rng, lo, hi);
  if (with_gamma) {
    for (auto& x : gamma) x = log_uniform(rng, lo, hi);
  }
  return mttdl::FailureModel(m + p, m, lambda, mu, gamma);
}

inline double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace oracle
