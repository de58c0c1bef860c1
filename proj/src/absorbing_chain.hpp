#pragma once

// Internal: Gaussian elimination for absorbing continuous-time Markov chains
// in Grassmann-Taksar-Heyman form. Pivots are rebuilt as sums of the
// remaining non-negative outflow rates instead of being updated by
// subtraction, so every arithmetic step adds non-negative quantities.

#include <cstddef>
#include <span>
#include <vector>

namespace mttdl::detail {

class AbsorbingChain {
 public:
  explicit AbsorbingChain(std::size_t states)
      : states_(states), rates_(states * states, 0.0), absorption_(states, 0.0) {}

  std::size_t states() const noexcept { return states_; }

  /// Transition rate from state `from` to transient state `to` (from != to).
  double& rate(std::size_t from, std::size_t to) { return rates_[from * states_ + to]; }
  double rate(std::size_t from, std::size_t to) const { return rates_[from * states_ + to]; }

  /// Rate from `state` into the absorbing set.
  double& absorption(std::size_t state) { return absorption_[state]; }
  double absorption(std::size_t state) const { return absorption_[state]; }

  double exit_rate(std::size_t state) const;

 private:
  std::size_t states_;
  std::vector<double> rates_;
  std::vector<double> absorption_;
};

/// Factorization of -Q_T (Q_T the generator restricted to transient states),
/// eliminating states from the highest index down to 0.
class GthFactorization {
 public:
  /// Returns false if some pivot vanishes (no route to absorption).
  bool factor(const AbsorbingChain& chain);

  /// Solves (-Q_T) y = b; y_i is the expected reward accumulated before
  /// absorption when starting in state i and earning b_j per hour in state j.
  std::vector<double> solve(std::span<const double> b) const;

  /// det(-Q_T) as the product of the pivots.
  double determinant() const;

  const std::vector<double>& pivots() const noexcept { return pivots_; }

 private:
  std::size_t states_ = 0;
  std::vector<double> reduced_;  // row k holds rates to j < k at elimination time
  std::vector<double> pivots_;
};

}  // namespace mttdl::detail
