#include "mttdl/allocation.hpp"

#include <algorithm>
#include <cmath>

#include "kahan.hpp"
#include "mttdl/error.hpp"

namespace mttdl {

namespace {

constexpr int kExactSteadyStateLimit = 8;

void check_node_rates(int z, const std::vector<double>& lambda, const std::vector<double>& mu) {
  if (z < 1) throw Error(ErrorCode::RateVectorMismatch, "node chain needs z >= 1");
  if (lambda.size() != static_cast<std::size_t>(z) || mu.size() != static_cast<std::size_t>(z)) {
    throw Error(ErrorCode::RateVectorMismatch, "node rate vectors must have length z");
  }
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    if (!(lambda[j] > 0.0) || !(mu[j] > 0.0) || !std::isfinite(lambda[j]) ||
        !std::isfinite(mu[j])) {
      throw Error(ErrorCode::RateVectorMismatch, "node rates must be positive and finite");
    }
  }
}

NodeSteadyState finish(std::vector<double> pi) {
  const int z = static_cast<int>(pi.size()) - 1;
  NodeSteadyState state;
  state.theta.assign(pi.size(), 0.0);
  KahanSum failed;
  for (int j = 0; j <= z; ++j) {
    state.theta[static_cast<std::size_t>(j)] = (z - j) * pi[static_cast<std::size_t>(j)] / z;
    failed.add(j * pi[static_cast<std::size_t>(j)] / z);
  }
  state.theta_f = failed.value();
  state.pi = std::move(pi);
  return state;
}

double log_binomial_pmf(int n, int k, double rho) {
  const double log_choose =
      std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return log_choose + k * std::log(rho) + (n - k) * std::log1p(-rho);
}

}  // namespace

void AllocationScenario::validate() const {
  if (z < 1) throw Error(ErrorCode::InvalidModel, "allocation: z must be >= 1");
  if (!(weibull_k > 0.0) || !std::isfinite(weibull_k)) {
    throw Error(ErrorCode::InvalidModel, "allocation: Weibull shape must be positive");
  }
  growth.validate();
  if (policy == AllocationPolicy::Vertical && z != epg_model.n()) {
    throw Error(ErrorCode::InvalidModel, "allocation: vertical placement needs z = n");
  }
}

double horizontal_system_mttdl(double epg_mttdl, int z, double k) {
  if (z < 1 || !(k > 0.0)) throw Error(ErrorCode::DomainError, "need z >= 1 and k > 0");
  // Equal Weibull scales fixed by the EPG mean; the minimum of z of them is
  // Weibull(k) again with scale multiplied by z^{1/k}.
  const double gamma_factor = std::tgamma(1.0 + 1.0 / k);
  const double omega = gamma_factor / epg_mttdl;
  const double omega_system = omega * std::pow(static_cast<double>(z), 1.0 / k);
  return gamma_factor / omega_system;
}

NodeSteadyState node_steady_state_product_form(int z, const std::vector<double>& lambda,
                                               const std::vector<double>& mu) {
  check_node_rates(z, lambda, mu);
  // Unnormalized log-weights of j failed disks.
  std::vector<double> log_weight(static_cast<std::size_t>(z + 1), 0.0);
  for (int j = 1; j <= z; ++j) {
    const auto s = static_cast<std::size_t>(j - 1);
    log_weight[static_cast<std::size_t>(j)] =
        log_weight[s] + std::log((z - j + 1) * lambda[s] / mu[s]);
  }
  const double top = *std::max_element(log_weight.begin(), log_weight.end());
  std::vector<double> pi(log_weight.size());
  KahanSum total;
  for (std::size_t j = 0; j < pi.size(); ++j) {
    pi[j] = std::exp(log_weight[j] - top);
    total.add(pi[j]);
  }
  for (double& x : pi) x /= total.value();
  return finish(std::move(pi));
}

NodeSteadyState node_steady_state_exact(int z, const std::vector<double>& lambda,
                                        const std::vector<double>& mu) {
  check_node_rates(z, lambda, mu);
  const auto size = static_cast<std::size_t>(z + 1);
  std::vector<double> rate(size * size, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return rate[i * size + j]; };
  for (std::size_t j = 0; j < size; ++j) {
    if (j + 1 < size) at(j, j + 1) = static_cast<double>(z - static_cast<int>(j)) * lambda[j];
    if (j > 0) at(j, j - 1) = mu[j - 1];
  }
  // Stationary vector by state reduction (GTH) on the full generator.
  std::vector<double> outflow(size, 0.0);
  for (std::size_t k = size; k-- > 1;) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += at(k, j);
    outflow[k] = s;
    for (std::size_t i = 0; i < k; ++i) {
      const double w = at(i, k) / s;
      if (w == 0.0) continue;
      for (std::size_t j = 0; j < k; ++j) {
        if (j != i) at(i, j) += w * at(k, j);
      }
    }
  }
  std::vector<double> pi(size, 0.0);
  pi[0] = 1.0;
  double total = 1.0;
  for (std::size_t k = 1; k < size; ++k) {
    double inflow = 0.0;
    for (std::size_t i = 0; i < k; ++i) inflow += pi[i] * at(i, k);
    pi[k] = inflow / outflow[k];
    total += pi[k];
  }
  for (double& x : pi) x /= total;
  return finish(std::move(pi));
}

NodeSteadyState node_steady_state(int z, const std::vector<double>& lambda,
                                  const std::vector<double>& mu) {
  return z <= kExactSteadyStateLimit ? node_steady_state_exact(z, lambda, mu)
                                     : node_steady_state_product_form(z, lambda, mu);
}

double average_failure_rate(const NodeSteadyState& state, const std::vector<double>& lambda) {
  const int z = state.z();
  if (lambda.size() < static_cast<std::size_t>(z)) {
    throw Error(ErrorCode::RateVectorMismatch, "need lambda_0..lambda_{z-1}");
  }
  KahanSum sum;
  for (int j = 0; j < z; ++j) {
    sum.add(lambda[static_cast<std::size_t>(j)] * state.theta[static_cast<std::size_t>(j)]);
  }
  return sum.value();
}

double vertical_mttdl_given(const FailureModel& epg_model, double lambda_avg, double rho) {
  if (!(lambda_avg > 0.0)) throw Error(ErrorCode::DomainError, "lambda_avg must be positive");
  if (!(rho >= 0.0 && rho < 1.0)) throw Error(ErrorCode::DomainError, "rho must lie in [0, 1)");
  const int n = epg_model.n();
  const int m = epg_model.m();
  const int p = epg_model.p();
  KahanSum total;
  for (int nu = 0; nu <= p; ++nu) {
    double weight;
    if (rho == 0.0) {
      weight = nu == 0 ? 1.0 : 0.0;
    } else {
      weight = std::exp(log_binomial_pmf(n, nu, rho));
    }
    if (weight == 0.0) continue;
    const int parities = p - nu;
    double hours;
    if (parities == 0) {
      hours = 1.0 / (m * lambda_avg);
    } else {
      const FailureModel prefix = epg_model.truncated(parities);
      const FailureModel averaged(
          prefix.n(), m, std::vector<double>(static_cast<std::size_t>(parities + 1), lambda_avg),
          prefix.mu(), prefix.gamma());
      hours = mttdl_exact(averaged).hours;
    }
    total.add(weight * hours);
  }
  return total.value();
}

double vertical_epg_mttdl(const AllocationScenario& scenario) {
  if (scenario.policy != AllocationPolicy::Vertical) {
    throw Error(ErrorCode::PolicyMismatch, "vertical MTTDL requested for a horizontal scenario");
  }
  scenario.validate();
  const int z = scenario.z;
  std::vector<double> node_lambda(static_cast<std::size_t>(z));
  for (int j = 0; j < z; ++j) node_lambda[static_cast<std::size_t>(j)] = logistic_lambda(scenario.growth, j);
  const std::vector<double> node_mu(static_cast<std::size_t>(z), scenario.epg_model.mu(0));
  const NodeSteadyState state = node_steady_state(z, node_lambda, node_mu);
  const double lambda_avg = average_failure_rate(state, node_lambda);
  return vertical_mttdl_given(scenario.epg_model, lambda_avg, state.theta_f);
}

double system_mttdl(const AllocationScenario& scenario) {
  scenario.validate();
  const double per_epg = scenario.policy == AllocationPolicy::Horizontal
                             ? mttdl_exact(scenario.epg_model).hours
                             : vertical_epg_mttdl(scenario);
  return horizontal_system_mttdl(per_epg, scenario.z, scenario.weibull_k);
}

}  // namespace mttdl
