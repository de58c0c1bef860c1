#pragma once

#include <vector>

#include "mttdl/growth.hpp"
#include "mttdl/markov_core.hpp"

namespace mttdl {

enum class AllocationPolicy { Horizontal, Vertical };

/// z EPGs spread over z storage nodes. Horizontal keeps each EPG inside one
/// node; Vertical puts one disk of every EPG on every node (z = n).
struct AllocationScenario {
  int z;
  AllocationPolicy policy;
  double weibull_k;
  FailureModel epg_model;
  GrowthSpec growth;  // within-node dependence for the vertical node chain

  void validate() const;
};

/// Steady state of one node's birth-death chain over its z disks.
struct NodeSteadyState {
  std::vector<double> pi;     // pi[j] = pi_{z-j}: probability of j failed disks
  std::vector<double> theta;  // theta[j] = (z-j) pi_{z-j} / z, j = 0..z
  double theta_f;             // sum_i i pi_{z-i} / z

  int z() const noexcept { return static_cast<int>(pi.size()) - 1; }
};

/// System MTTDL when any of z EPGs with Weibull(k) lifetimes and equal means
/// `epg_mttdl` fails: epg_mttdl / z^{1/k}.
double horizontal_system_mttdl(double epg_mttdl, int z, double k);

/// Product-form stationary distribution of the node chain. lambda and mu have
/// length z: lambda[j] is the per-disk failure rate and mu[j] the repair rate
/// with j disks already failed.
NodeSteadyState node_steady_state_product_form(int z, const std::vector<double>& lambda,
                                               const std::vector<double>& mu);

/// Stationary distribution by direct elimination on the (z+1)-state generator.
NodeSteadyState node_steady_state_exact(int z, const std::vector<double>& lambda,
                                        const std::vector<double>& mu);

/// Exact solve for z <= 8, product form above.
NodeSteadyState node_steady_state(int z, const std::vector<double>& lambda,
                                  const std::vector<double>& mu);

/// sum_{j<z} lambda_j (z-j) pi_{z-j} / z.
double average_failure_rate(const NodeSteadyState& state, const std::vector<double>& lambda);

/// Per-EPG vertical MTTDL for a given per-disk failure probability rho and
/// averaged failure rate: sum_nu C(n,nu) rho^nu (1-rho)^{n-nu} MTTDL-bar_{p-nu}.
double vertical_mttdl_given(const FailureModel& epg_model, double lambda_avg, double rho);

/// Per-EPG MTTDL under vertical allocation.
double vertical_epg_mttdl(const AllocationScenario& scenario);

/// Whole-system MTTDL for the scenario's policy.
double system_mttdl(const AllocationScenario& scenario);

}  // namespace mttdl
