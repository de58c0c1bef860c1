#pragma once

#include <cstdint>

#include "mttdl/markov_core.hpp"

namespace mttdl {

struct SimConfig {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::uint64_t max_events_per_trial = 1000000000;

  void validate() const;
  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

struct SimResult {
  double mean_hours;
  double stderr_hours;
  std::uint64_t trials_completed;
  std::uint64_t trials_truncated;

  friend bool operator==(const SimResult&, const SimResult&) = default;
};

/// Event-by-event simulation of the failure chain from the all-operational
/// state until loss. Trial t draws from its own stream seeded by (seed, t),
/// so the result depends only on (model, config).
SimResult simulate_mttdl(const FailureModel& model, const SimConfig& config);

/// Estimate tagged MonteCarlo with a 95% normal half-width.
MttdlEstimate to_estimate(const SimResult& result);

}  // namespace mttdl
