#include "absorbing_chain.hpp"

#include <cassert>

namespace mttdl::detail {

double AbsorbingChain::exit_rate(std::size_t state) const {
  double total = absorption_[state];
  for (std::size_t j = 0; j < states_; ++j) {
    if (j != state) total += rate(state, j);
  }
  return total;
}

bool GthFactorization::factor(const AbsorbingChain& chain) {
  states_ = chain.states();
  const std::size_t n = states_;
  std::vector<double> r(n * n, 0.0);
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = chain.absorption(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) r[i * n + j] = chain.rate(i, j);
    }
  }

  pivots_.assign(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    double pivot = c[k];
    for (std::size_t j = 0; j < k; ++j) pivot += r[k * n + j];
    if (!(pivot > 0.0)) return false;
    pivots_[k] = pivot;

    for (std::size_t i = 0; i < k; ++i) {
      const double into_k = r[i * n + k];
      if (into_k == 0.0) continue;
      const double w = into_k / pivot;
      for (std::size_t j = 0; j < k; ++j) {
        if (j != i) r[i * n + j] += w * r[k * n + j];
      }
      c[i] += w * c[k];
    }
  }
  reduced_ = std::move(r);
  return true;
}

std::vector<double> GthFactorization::solve(std::span<const double> b) const {
  assert(b.size() == states_);
  const std::size_t n = states_;
  std::vector<double> rhs(b.begin(), b.end());
  for (std::size_t k = n; k-- > 1;) {
    for (std::size_t i = 0; i < k; ++i) {
      const double into_k = reduced_[i * n + k];
      if (into_k != 0.0) rhs[i] += into_k / pivots_[k] * rhs[k];
    }
  }
  std::vector<double> y(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = rhs[k];
    for (std::size_t j = 0; j < k; ++j) acc += reduced_[k * n + j] * y[j];
    y[k] = acc / pivots_[k];
  }
  return y;
}

double GthFactorization::determinant() const {
  double det = 1.0;
  for (double p : pivots_) det *= p;
  return det;
}

}  // namespace mttdl::detail
