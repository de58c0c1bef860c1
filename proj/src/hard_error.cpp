#include "mttdl/hard_error.hpp"

#include <cmath>

namespace mttdl {

void UcerSpec::validate() const {
  if (!(ucer >= 0.0 && ucer <= 1.0)) throw Error(ErrorCode::DomainError, "ucer must lie in [0, 1]");
  if (!(device_capacity >= 1.0) || !std::isfinite(device_capacity)) {
    throw Error(ErrorCode::DomainError, "device capacity must be >= 1");
  }
}

double eta(const UcerSpec& spec) {
  spec.validate();
  return -std::expm1(spec.device_capacity * std::log1p(-spec.ucer));
}

double p_ucer(double eta, int m) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorCode::DomainError, "eta must lie in [0, 1]");
  if (m < 1) throw Error(ErrorCode::DomainError, "m must be positive");
  return -std::expm1(m * std::log1p(-eta));
}

FailureModel apply_hard_error(const FailureModel& model, double eta) {
  if (model.has_gamma()) {
    throw Error(ErrorCode::AlreadyHasGamma, "hard errors are applied to gamma-free models");
  }
  const double loss = p_ucer(eta, model.m());
  const auto critical = static_cast<std::size_t>(model.p() - 1);
  std::vector<double> lambda = model.lambda();
  std::vector<double> gamma = model.gamma();
  const double old_rate = lambda[critical];
  lambda[critical] = old_rate * (1.0 - loss);
  gamma[critical] = (model.m() + 1) * old_rate * loss;
  return FailureModel(model.n(), model.m(), std::move(lambda), model.mu(), std::move(gamma));
}

}  // namespace mttdl
