#include "mttdl/markov_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "absorbing_chain.hpp"
#include "kahan.hpp"

namespace mttdl {

namespace {

void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) throw Error(code, what);
}

void check_rates(const std::vector<double>& v, std::string_view name) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = v[i];
    if (std::isfinite(x) && x >= 0.0) continue;
    std::ostringstream where;
    where << name << "[" << i << "] = " << x << " must be finite and non-negative";
    throw Error(ErrorCode::InvalidModel, where.str());
  }
}

detail::AbsorbingChain chain_of(const FailureModel& model) {
  const int p = model.p();
  detail::AbsorbingChain chain(static_cast<std::size_t>(p + 1));
  for (int i = 0; i <= p; ++i) {
    const auto si = static_cast<std::size_t>(i);
    if (i < p) {
      chain.rate(si, si + 1) = model.failure_flow(i);
    } else {
      chain.absorption(si) += model.failure_flow(i);
    }
    if (i > 0) chain.rate(si, 0) = model.repair_flow(i);
    chain.absorption(si) += model.error_flow(i);
  }
  return chain;
}

// Lambda_x(j) / (lambda_j (n - j)), extended to j = p with Lambda_x(p) =
// lambda_p m + p mu_{p-1}. Sum over x of prod_{j != x} Lambda_x(j), divided by
// prod_j lambda_j (n - j); the common factor is split across the product so
// that nothing underflows for long chains.
double normalized_numerator(const FailureModel& model) {
  require(model.all_failure_rates_positive(), ErrorCode::DomainError,
          "the product form needs every lambda_i > 0; use the linear solve");
  const int p = model.p();
  std::vector<double> ratio(static_cast<std::size_t>(p + 1));
  for (int j = 0; j <= p; ++j) {
    const double base = model.failure_flow(j);
    ratio[static_cast<std::size_t>(j)] = (base + model.repair_flow(j) + model.error_flow(j)) / base;
  }
  // term_x = ratio_p * prod_{x<j<p} ratio_j / a_x  for x < p,  term_p = 1 / a_p
  KahanSum sum;
  double tail = ratio[static_cast<std::size_t>(p)];
  for (int x = p - 1; x >= 0; --x) {
    sum.add(tail / model.failure_flow(x));
    tail *= ratio[static_cast<std::size_t>(x)];
  }
  sum.add(1.0 / model.failure_flow(p));
  return sum.value();
}

double xi_value(const FailureModel& model, std::span<const double> xi, int t) {
  if (static_cast<std::size_t>(t) <= xi.size()) return xi[static_cast<std::size_t>(t - 1)];
  if (t <= 2) return 0.0;
  if (t == 3) return model.gamma(0) * model.mu(0);
  std::ostringstream msg;
  msg << "xi_" << t << " has no known closed form and was not supplied";
  throw Error(ErrorCode::UnknownXi, msg.str());
}

// phi_t - prod_{i<=t} lambda_i (n-i), divided by that product when
// `normalized`. The recursion only adds non-negative terms.
double phi_excess(const FailureModel& model, std::span<const double> xi, bool use_xi,
                  bool normalized) {
  const int p = model.p();
  double excess = 0.0;
  double prefix = model.failure_flow(0);  // prod_{i<=t-1} a_i
  double guarded = 1.0;                    // prod_{i<=t-2} (gamma_i + a_i), / a_i when normalized
  for (int t = 1; t <= p; ++t) {
    const double a_t = model.failure_flow(t);
    const double outflow = t * model.mu(t - 1) + a_t;
    const double g = model.gamma(t - 1);
    double extra = 0.0;
    if (g > 0.0) {
      const double x = use_xi ? xi_value(model, xi, t) : 0.0;
      extra = normalized ? g * (guarded / model.failure_flow(t - 1) + x / prefix)
                         : g * (guarded + x);
    }
    if (normalized) {
      excess = outflow / a_t * (excess + extra);
      guarded *= (g + model.failure_flow(t - 1)) / model.failure_flow(t - 1);
    } else {
      excess = outflow * (excess + extra);
      guarded *= g + model.failure_flow(t - 1);
    }
    prefix *= a_t;
  }
  return excess;
}

double failure_product(const FailureModel& model) {
  double prod = 1.0;
  for (int i = 0; i <= model.p(); ++i) prod *= model.failure_flow(i);
  return prod;
}

}  // namespace

// ---------------------------------------------------------------------------
// Types

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::GammaNotZero: return "GammaNotZero";
    case ErrorCode::UnknownXi: return "UnknownXi";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::MalformedProfile: return "MalformedProfile";
    case ErrorCode::AlreadyHasGamma: return "AlreadyHasGamma";
    case ErrorCode::RateVectorMismatch: return "RateVectorMismatch";
    case ErrorCode::PolicyMismatch: return "PolicyMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::ClosedForm: return "closed_form";
    case Method::LinearSolve: return "linear_solve";
    case Method::Recursion: return "recursion";
    case Method::UpperBound: return "upper_bound";
    case Method::MonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

FailureModel::FailureModel(int n, int m, std::vector<double> lambda, std::vector<double> mu,
                           std::vector<double> gamma)
    : n_(n), m_(m), lambda_(std::move(lambda)), mu_(std::move(mu)), gamma_(std::move(gamma)) {
  require(m_ >= 1 && m_ < n_, ErrorCode::InvalidModel, "need 1 <= m < n");
  const auto p = static_cast<std::size_t>(n_ - m_);
  require(lambda_.size() == p + 1, ErrorCode::InvalidModel, "lambda must have p+1 entries");
  require(mu_.size() == p, ErrorCode::InvalidModel, "mu must have p entries");
  require(gamma_.size() == p, ErrorCode::InvalidModel, "gamma must have p entries");
  check_rates(lambda_, "lambda");
  check_rates(mu_, "mu");
  check_rates(gamma_, "gamma");
  // A zero failure rate is only meaningful when the state still drains to F
  // through gamma (e.g. a hard error that consumes every rebuild).
  for (std::size_t i = 0; i < lambda_.size(); ++i) {
    require(lambda_[i] > 0.0 || (i < p && gamma_[i] > 0.0), ErrorCode::InvalidModel,
            "lambda[" + std::to_string(i) + "] must be positive (MTTDL is undefined otherwise)");
  }
}

bool FailureModel::all_failure_rates_positive() const noexcept {
  return std::all_of(lambda_.begin(), lambda_.end(), [](double l) { return l > 0.0; });
}

FailureModel::FailureModel(int n, int m, std::vector<double> lambda, std::vector<double> mu)
    : FailureModel(n, m, std::move(lambda), std::move(mu),
                   std::vector<double>(n > m ? static_cast<std::size_t>(n - m) : 0, 0.0)) {}

bool FailureModel::has_gamma() const noexcept {
  return std::any_of(gamma_.begin(), gamma_.end(), [](double g) { return g != 0.0; });
}

FailureModel FailureModel::truncated(int parities) const {
  require(parities >= 1 && parities <= p(), ErrorCode::IndexOutOfRange,
          "truncation must keep between 1 and p parities");
  const auto q = static_cast<std::size_t>(parities);
  return FailureModel(m_ + parities, m_,
                      std::vector<double>(lambda_.begin(), lambda_.begin() + q + 1),
                      std::vector<double>(mu_.begin(), mu_.begin() + q),
                      std::vector<double>(gamma_.begin(), gamma_.begin() + q));
}

FailureModel FailureModel::scaled(double factor) const {
  auto scale = [factor](std::vector<double> v) {
    for (double& x : v) x *= factor;
    return v;
  };
  return FailureModel(n_, m_, scale(lambda_), scale(mu_), scale(gamma_));
}

TransitionMatrix::TransitionMatrix(std::size_t size, double s)
    : size_(size), s_(s), entries_(size * size, 0.0) {}

MttdlEstimate MttdlEstimate::make(double hours, Method method, std::optional<double> ci_halfwidth) {
  require(hours > 0.0 && !std::isnan(hours), ErrorCode::DomainError, "MTTDL must be positive");
  require(ci_halfwidth.has_value() == (method == Method::MonteCarlo), ErrorCode::DomainError,
          "confidence interval is reported for Monte Carlo estimates only");
  require(!ci_halfwidth || *ci_halfwidth >= 0.0, ErrorCode::DomainError,
          "confidence half-width must be non-negative");
  return MttdlEstimate{hours, method, ci_halfwidth};
}

InitialDistribution::InitialDistribution(std::vector<double> eps) : eps_(std::move(eps)) {
  require(eps_.size() >= 3, ErrorCode::InvalidDistribution, "need p+2 >= 3 probabilities");
  KahanSum total;
  for (double e : eps_) {
    require(std::isfinite(e) && e >= 0.0 && e <= 1.0, ErrorCode::InvalidDistribution,
            "probabilities must lie in [0, 1]");
    total.add(e);
  }
  require(std::abs(total.value() - 1.0) <= 1e-12, ErrorCode::InvalidDistribution,
          "probabilities must sum to 1");
}

InitialDistribution InitialDistribution::all_operational(int p) {
  std::vector<double> eps(static_cast<std::size_t>(p + 2), 0.0);
  eps[0] = 1.0;
  return InitialDistribution(std::move(eps));
}

// ---------------------------------------------------------------------------
// Operations

TransitionMatrix build_transition_matrix(const FailureModel& model, double s) {
  const int p = model.p();
  const auto size = static_cast<std::size_t>(p + 2);
  TransitionMatrix a(size, s);
  for (int i = 0; i <= p; ++i) {
    const auto si = static_cast<std::size_t>(i);
    a(si, si) = s + model.failure_flow(i) + model.repair_flow(i) + model.error_flow(i);
    if (i > 0) {
      a(si, si - 1) = -model.failure_flow(i - 1);
      a(0, si) = -model.repair_flow(i);
    }
  }
  const std::size_t f = size - 1;
  for (int j = 0; j < p; ++j) a(f, static_cast<std::size_t>(j)) = -model.gamma(j);
  a(f, static_cast<std::size_t>(p)) = -model.failure_flow(p);
  a(f, f) = s;
  return a;
}

std::vector<double> lambda_array(const FailureModel& model, int x) {
  const int p = model.p();
  require(x >= 0 && x < p, ErrorCode::IndexOutOfRange, "x must lie in 0..p-1");
  std::vector<double> out(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) {
    double v = model.failure_flow(j);
    if (j >= x) v += model.repair_flow(j) + model.gamma(j);
    out[static_cast<std::size_t>(j)] = v;
  }
  return out;
}

LinearSolveDetail linear_solve_detail(const FailureModel& model) {
  const auto chain = chain_of(model);
  detail::GthFactorization lu;
  require(lu.factor(chain), ErrorCode::SingularMatrix, "A_{p+1}(0) is singular");

  const std::size_t states = chain.states();
  const std::vector<double> ones(states, 1.0);
  const auto to_loss = lu.solve(ones);

  // Column j of A_{p+1}(0)^{-1} sums to the expected time to loss from j.
  std::vector<double> sojourn(states, 0.0);
  std::vector<double> unit(states, 0.0);
  for (std::size_t i = 0; i < states; ++i) {
    unit[i] = 1.0;
    sojourn[i] = lu.solve(unit)[0];
    unit[i] = 0.0;
  }

  double norm_a = 0.0;
  for (std::size_t j = 0; j < states; ++j) {
    const double out = chain.exit_rate(j);
    norm_a = std::max(norm_a, out + (out - chain.absorption(j)));
  }
  const double norm_inv = *std::max_element(to_loss.begin(), to_loss.end());

  return LinearSolveDetail{std::move(sojourn), to_loss[0], norm_a * norm_inv};
}

MttdlEstimate mttdl_linear_solve(const FailureModel& model) {
  return MttdlEstimate::make(linear_solve_detail(model).mttdl_hours, Method::LinearSolve);
}

MttdlEstimate mttdl_closed_form(const FailureModel& model) {
  require(!model.has_gamma(), ErrorCode::GammaNotZero,
          "the closed form is exact only for gamma = 0");
  return MttdlEstimate::make(normalized_numerator(model), Method::ClosedForm);
}

double phi_recursive(const FailureModel& model, std::span<const double> xi) {
  return failure_product(model) + phi_excess(model, xi, true, false);
}

double phi_star(const FailureModel& model) {
  return failure_product(model) + phi_excess(model, {}, false, false);
}

double phi_determinant(const FailureModel& model) {
  detail::GthFactorization lu;
  require(lu.factor(chain_of(model)), ErrorCode::SingularMatrix, "A_{p+1}(0) is singular");
  return lu.determinant();
}

double phi_gap(const FailureModel& model, std::span<const double> xi) {
  const int p = model.p();
  KahanSum sum;
  for (int i = 1; i <= p; ++i) {
    const double g = model.gamma(i - 1);
    if (g == 0.0) continue;
    double term = g * xi_value(model, xi, i);
    if (term == 0.0) continue;
    for (int j = i; j <= p; ++j) term *= j * model.mu(j - 1) + model.failure_flow(j);
    sum.add(term);
  }
  return sum.value();
}

MttdlEstimate mttdl_upper_bound(const FailureModel& model) {
  const double normalized_phi_star = 1.0 + phi_excess(model, {}, false, true);
  return MttdlEstimate::make(normalized_numerator(model) / normalized_phi_star,
                             Method::UpperBound);
}

MttdlEstimate mttdl_recursive_step(const FailureModel& current_model,
                                   const MttdlEstimate& current,
                                   const FailureModel& model_next) {
  require(!current_model.has_gamma() && !model_next.has_gamma(), ErrorCode::GammaNotZero,
          "the parity recursion requires gamma = 0");
  require(model_next.n() == current_model.n(), ErrorCode::DimensionMismatch,
          "both configurations must have the same n");
  require(model_next.m() == current_model.m() - 1 && model_next.m() >= 1,
          ErrorCode::DimensionMismatch, "next configuration must have one fewer data disk");
  const int p = current_model.p();
  for (int i = 0; i <= p; ++i) {
    require(model_next.lambda(i) == current_model.lambda(i), ErrorCode::DimensionMismatch,
            "lambda prefix differs between configurations");
  }
  for (int i = 0; i < p; ++i) {
    require(model_next.mu(i) == current_model.mu(i), ErrorCode::DimensionMismatch,
            "mu prefix differs between configurations");
  }
  // lambda_{p+1} (m - 1) with m the data count of the p-parity configuration.
  const double last_failure = model_next.failure_flow(p + 1);
  const double last_repair = (p + 1) * model_next.mu(p);
  const double hours = current.hours * (1.0 + last_repair / last_failure) + 1.0 / last_failure;
  return MttdlEstimate::make(hours, Method::Recursion);
}

MttdlEstimate mttdl_recursion_chain(const FailureModel& model) {
  require(!model.has_gamma(), ErrorCode::GammaNotZero, "the parity recursion requires gamma = 0");
  const int n = model.n();
  auto config = [&](int parities) {
    const auto q = static_cast<std::size_t>(parities);
    return FailureModel(n, n - parities,
                        std::vector<double>(model.lambda().begin(), model.lambda().begin() + q + 1),
                        std::vector<double>(model.mu().begin(), model.mu().begin() + q));
  };
  FailureModel current = config(1);
  MttdlEstimate estimate = mttdl_closed_form(current);
  for (int parities = 2; parities <= model.p(); ++parities) {
    FailureModel next = config(parities);
    estimate = mttdl_recursive_step(current, estimate, next);
    current = std::move(next);
  }
  return estimate;
}

MttdlEstimate mttdl_exact(const FailureModel& model) {
  return model.has_gamma() ? mttdl_linear_solve(model) : mttdl_closed_form(model);
}

MttdlEstimate mttdl_with_initial_distribution(const FailureModel& model,
                                              const InitialDistribution& eps) {
  const int p = model.p();
  require(eps.p() == p, ErrorCode::InvalidDistribution, "distribution must have p+2 entries");
  // eps is ordered [eps_{m+p}, ..., eps_m, eps_F]; eps_{m+l} sits at index p-l.
  KahanSum total;
  for (int l = 0; l <= p; ++l) {
    const double weight = eps.failed(p - l);
    if (weight == 0.0) continue;
    const double hours = l == 0 ? 1.0 / (model.m() * model.lambda(0))
                                : mttdl_exact(model.truncated(l)).hours;
    total.add(weight * hours);
  }
  if (total.value() == 0.0) {
    // Starting in F: the only estimate allowed to carry zero hours.
    return MttdlEstimate{0.0, model.has_gamma() ? Method::LinearSolve : Method::ClosedForm,
                         std::nullopt};
  }
  return MttdlEstimate::make(total.value(),
                             model.has_gamma() ? Method::LinearSolve : Method::ClosedForm);
}

}  // namespace mttdl
