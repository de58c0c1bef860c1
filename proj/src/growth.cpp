#include "mttdl/growth.hpp"

#include <cmath>
#include <string>

#include "mttdl/error.hpp"

namespace mttdl {

void GrowthSpec::validate() const {
  if (!(std::isfinite(lambda0) && lambda0 > 0.0)) {
    throw Error(ErrorCode::InvalidModel, "growth: lambda0 must be positive");
  }
  if (!(std::isfinite(r) && r >= 0.0)) {
    throw Error(ErrorCode::InvalidModel, "growth: r must be non-negative");
  }
  if (std::isnan(lambda_max) || lambda_max < lambda0) {
    throw Error(ErrorCode::InvalidModel, "growth: lambda_max must be >= lambda0 or infinite");
  }
}

double logistic_lambda(const GrowthSpec& spec, int i) {
  spec.validate();
  if (i < 0) throw Error(ErrorCode::IndexOutOfRange, "growth: failure count must be >= 0");
  const double exponent = i * std::log1p(spec.r);
  if (std::isinf(spec.lambda_max)) return spec.lambda0 * std::exp(exponent);
  // Divide through by e^{i r*} so large i saturates at lambda_max instead of inf/inf.
  const double decay = std::exp(-exponent);
  const double rest = -std::expm1(-exponent);
  return spec.lambda0 / (decay + rest * spec.lambda0 / spec.lambda_max);
}

std::vector<double> build_lambda_vector(const GrowthSpec& spec, int p) {
  if (p < 1) throw Error(ErrorCode::IndexOutOfRange, "growth: need p >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(p + 1));
  for (int i = 0; i <= p; ++i) out.push_back(logistic_lambda(spec, i));
  return out;
}

std::vector<double> build_mu_vector(double mu, int p, RepairPolicy policy) {
  return apply_repair_policy(std::vector<double>(static_cast<std::size_t>(p), mu), policy);
}

std::vector<double> apply_repair_policy(const std::vector<double>& rates, RepairPolicy policy) {
  std::vector<double> out(rates);
  if (policy == RepairPolicy::Homogeneous) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] /= static_cast<double>(j + 1);
  }
  return out;
}

void RepairSpec::validate() const {
  if (!(std::isfinite(mu_nominal) && mu_nominal > 0.0)) {
    throw Error(ErrorCode::InvalidModel, "repair: mu_nominal must be positive");
  }
  if (!(std::isfinite(delta) && delta > 0.0)) {
    throw Error(ErrorCode::InvalidModel, "repair: delta must be positive");
  }
  if (overhead_mds.size() != overhead_code.size()) {
    throw Error(ErrorCode::InvalidModel, "repair: overhead tables must be aligned");
  }
  for (std::size_t j = 0; j < overhead_mds.size(); ++j) {
    if (!(overhead_mds[j] >= 1.0) || !(overhead_code[j] >= 1.0)) {
      throw Error(ErrorCode::InvalidModel,
                  "repair: overhead entries must be >= 1 (index " + std::to_string(j) + ")");
    }
  }
}

double repair_rate(const RepairSpec& spec, int j) {
  spec.validate();
  if (j < 0 || static_cast<std::size_t>(j + 1) >= spec.overhead_mds.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "repair: j+1 outside the overhead tables");
  }
  const auto k = static_cast<std::size_t>(j + 1);
  const double nominal = spec.delta * spec.mu_nominal;
  if (spec.overhead_mds[k] == spec.overhead_code[k]) return nominal;
  const double mds_arg = (j + 1) * spec.overhead_mds[k];
  const double code_arg = (j + 1) * spec.overhead_code[k];
  if (!(mds_arg > 1.0) || !(code_arg > 1.0)) {
    throw Error(ErrorCode::DomainError,
                "repair: (j+1) Phi_{j+1} must exceed 1 for the logarithm ratio");
  }
  return nominal * std::log(mds_arg) / std::log(code_arg);
}

std::vector<double> build_repair_vector(const RepairSpec& spec, int p) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) out.push_back(repair_rate(spec, j));
  return out;
}

}  // namespace mttdl
