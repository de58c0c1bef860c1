#pragma once

#include <limits>
#include <vector>

namespace mttdl {

/// Failure-rate growth law. `r` is the conventional per-failure growth
/// factor (lambda_{i+1} = lambda_i (1 + r) while uncapped); lambda_max caps
/// the logistic curve and may be +infinity for pure exponential growth.
struct GrowthSpec {
  double lambda0;
  double r = 0.0;
  double lambda_max = std::numeric_limits<double>::infinity();

  void validate() const;
  friend bool operator==(const GrowthSpec&, const GrowthSpec&) = default;
};

/// lambda_i = lambda_0 e^{i r*} / (1 + (e^{i r*} - 1) lambda_0 / lambda_max),
/// r* = ln(1 + r).
double logistic_lambda(const GrowthSpec& spec, int i);

/// [lambda_0 .. lambda_p].
std::vector<double> build_lambda_vector(const GrowthSpec& spec, int p);

/// How a scalar repair rate mu is spread over the failure states.
///  Concurrent:  mu_{i-1} = mu, so state i repairs at i * mu.
///  Homogeneous: every degraded state repairs at mu (mu_{i-1} = mu / i).
enum class RepairPolicy { Concurrent, Homogeneous };

/// mu-vector of length p for a FailureModel.
std::vector<double> build_mu_vector(double mu, int p, RepairPolicy policy);

/// Per-state repair rates r_j (repair out of the (j+1)-failures state) turned
/// into FailureModel mu entries under `policy`.
std::vector<double> apply_repair_policy(const std::vector<double>& rates, RepairPolicy policy);

/// Repair rate derived from the average read overhead of a code relative to
/// an MDS code of the same length.
struct RepairSpec {
  double mu_nominal;
  double delta = 1.0;
  std::vector<double> overhead_mds;   // Phi^MDS_j, j = 0..
  std::vector<double> overhead_code;  // Phi^code_j, aligned with overhead_mds

  void validate() const;
};

/// mu_j = delta mu log((j+1) Phi^MDS_{j+1}) / log((j+1) Phi^code_{j+1}).
double repair_rate(const RepairSpec& spec, int j);

/// [repair_rate(spec, j)] for j = 0..p-1.
std::vector<double> build_repair_vector(const RepairSpec& spec, int p);

}  // namespace mttdl
