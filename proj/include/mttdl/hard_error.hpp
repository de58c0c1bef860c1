#pragma once

#include "mttdl/markov_core.hpp"

namespace mttdl {

/// Uncorrectable read errors. `ucer` is the error probability per unit read
/// and `device_capacity` the device size in that same unit (bytes or bits;
/// the caller keeps them consistent).
struct UcerSpec {
  double ucer;
  double device_capacity;

  void validate() const;
};

/// Probability that reading a whole device hits an uncorrectable error:
/// 1 - (1 - ucer)^capacity.
double eta(const UcerSpec& spec);

/// Probability that a rebuild reading m devices hits one: 1 - (1 - eta)^m.
double p_ucer(double eta, int m);

/// Splits the critical-mode failure transition (state m+1 -> m) so that a
/// fraction P_UCER of it goes straight to data loss:
///   lambda_{p-1} <- lambda_{p-1} (1 - P_UCER),
///   gamma_{p-1}  <- (m+1) lambda_{p-1} P_UCER   (a whole-state exit rate).
/// The model must not carry gamma already.
FailureModel apply_hard_error(const FailureModel& model, double eta);

}  // namespace mttdl
