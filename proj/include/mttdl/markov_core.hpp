#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mttdl/error.hpp"

namespace mttdl {

/// Parameters of one erasure protection group (EPG): n disks of which m hold
/// data, protected by an (n, m) MDS code with p = n - m parities.
///
/// Index convention: lambda[i] and gamma[i] are the per-disk failure rate and
/// the direct-to-loss rate in force when exactly i disks have failed.
/// mu[i-1] is the repair rate out of the i-failures state; the transition to
/// the all-good state fires at i * mu[i-1] (concurrent maintenance).
/// All rates are per hour. Every lambda_i must be positive, except that a
/// state i < p with gamma_i > 0 may have lambda_i = 0.
class FailureModel {
 public:
  FailureModel(int n, int m, std::vector<double> lambda, std::vector<double> mu,
               std::vector<double> gamma);

  /// Model with gamma = 0.
  FailureModel(int n, int m, std::vector<double> lambda, std::vector<double> mu);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  int p() const noexcept { return n_ - m_; }

  const std::vector<double>& lambda() const noexcept { return lambda_; }
  const std::vector<double>& mu() const noexcept { return mu_; }
  const std::vector<double>& gamma() const noexcept { return gamma_; }

  double lambda(int i) const { return lambda_.at(static_cast<std::size_t>(i)); }
  double mu(int i) const { return mu_.at(static_cast<std::size_t>(i)); }
  double gamma(int i) const { return gamma_.at(static_cast<std::size_t>(i)); }

  /// Aggregate failure rate out of the i-failures state, lambda_i (n - i).
  double failure_flow(int i) const { return lambda(i) * (n_ - i); }
  /// Aggregate repair rate out of the i-failures state, i mu_{i-1} (0 for i = 0).
  double repair_flow(int i) const { return i == 0 ? 0.0 : i * mu(i - 1); }
  /// Direct-to-loss rate out of the i-failures state (0 for i = p).
  double error_flow(int i) const { return i == p() ? 0.0 : gamma(i); }

  bool has_gamma() const noexcept;
  bool all_failure_rates_positive() const noexcept;

  /// Same m and rates restricted to the first `parities` parity levels
  /// (n' = m + parities).
  FailureModel truncated(int parities) const;

  /// Every rate multiplied by `factor`.
  FailureModel scaled(double factor) const;

  friend bool operator==(const FailureModel&, const FailureModel&) = default;

 private:
  int n_;
  int m_;
  std::vector<double> lambda_;
  std::vector<double> mu_;
  std::vector<double> gamma_;
};

/// Dense (p+2) x (p+2) transform-domain matrix A(s); rows and columns are
/// ordered n, n-1, ..., m, F.
class TransitionMatrix {
 public:
  TransitionMatrix(std::size_t size, double s);

  std::size_t size() const noexcept { return size_; }
  double s() const noexcept { return s_; }

  double operator()(std::size_t row, std::size_t col) const { return entries_[row * size_ + col]; }
  double& operator()(std::size_t row, std::size_t col) { return entries_[row * size_ + col]; }

 private:
  std::size_t size_;
  double s_;
  std::vector<double> entries_;
};

enum class Method { ClosedForm, LinearSolve, Recursion, UpperBound, MonteCarlo };

std::string_view to_string(Method method);

/// hours > 0 for every estimate except a start that is already in F.
struct MttdlEstimate {
  double hours;
  Method method;
  std::optional<double> ci_halfwidth;  // MonteCarlo only

  static MttdlEstimate make(double hours, Method method,
                            std::optional<double> ci_halfwidth = std::nullopt);
};

/// Initial state probabilities [eps_{m+p}, ..., eps_m, eps_F].
class InitialDistribution {
 public:
  explicit InitialDistribution(std::vector<double> eps);

  /// All mass on the all-operational state.
  static InitialDistribution all_operational(int p);

  const std::vector<double>& eps() const noexcept { return eps_; }
  int p() const noexcept { return static_cast<int>(eps_.size()) - 2; }

  /// Probability of starting with l failed disks (0 <= l <= p).
  double failed(int l) const { return eps_.at(static_cast<std::size_t>(l)); }
  double lost() const { return eps_.back(); }

 private:
  std::vector<double> eps_;
};

TransitionMatrix build_transition_matrix(const FailureModel& model, double s);

/// Lambda_x^(p): entry j is lambda_j (n - j), plus j mu_{j-1} + gamma_j when
/// j >= x. Length p.
std::vector<double> lambda_array(const FailureModel& model, int x);

/// Result of solving A_{p+1}(0) x = N^(0) for the expected sojourn times.
struct LinearSolveDetail {
  std::vector<double> sojourn_hours;  // L_{P_{n-i}}(0), i = 0..p
  double mttdl_hours;
  double condition_estimate;  // 1-norm condition number of A_{p+1}(0)
};

LinearSolveDetail linear_solve_detail(const FailureModel& model);

MttdlEstimate mttdl_linear_solve(const FailureModel& model);
MttdlEstimate mttdl_closed_form(const FailureModel& model);

/// phi_p(0) from the gamma-aware recursion. `xi` supplies xi_1..xi_p
/// (xi[t-1] = xi_t); missing entries fall back to xi_1 = xi_2 = 0 and
/// xi_3 = gamma_0 mu_0. No value is assumed for t > 3.
double phi_recursive(const FailureModel& model, std::span<const double> xi = {});

/// phi_p*(0): the recursion with every xi_t set to zero.
double phi_star(const FailureModel& model);

/// phi_p(0) as the determinant of A_{p+1}(0), computed by elimination.
double phi_determinant(const FailureModel& model);

/// sum_{i=3}^p gamma_{i-1} xi_i prod_{j=i}^p (j mu_{j-1} + lambda_j (n-j)),
/// the gap phi - phi* for the given xi values (xi[t-1] = xi_t).
double phi_gap(const FailureModel& model, std::span<const double> xi);

MttdlEstimate mttdl_upper_bound(const FailureModel& model);

/// MTTDL_{p+1} from MTTDL_p for the same n with one data disk turned into a
/// parity disk. Both models must have gamma = 0 and share their rate prefix.
MttdlEstimate mttdl_recursive_step(const FailureModel& current_model,
                                   const MttdlEstimate& current,
                                   const FailureModel& model_next);

/// MTTDL of `model` reached by stepping the parity recursion up from the
/// single-parity configuration with the same n and rate prefix. gamma = 0.
MttdlEstimate mttdl_recursion_chain(const FailureModel& model);

/// Closed form when gamma = 0, linear solve otherwise.
MttdlEstimate mttdl_exact(const FailureModel& model);

MttdlEstimate mttdl_with_initial_distribution(const FailureModel& model,
                                              const InitialDistribution& eps);

}  // namespace mttdl
