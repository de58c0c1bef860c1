#include "mttdl/montecarlo.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "mttdl/error.hpp"

namespace mttdl {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
}

// Outgoing rates of state i (i failures): failure, repair, error.
struct StateRates {
  double failure;
  double repair;
  double error;
  double total;
};

std::vector<StateRates> state_rates(const FailureModel& model) {
  std::vector<StateRates> out;
  for (int i = 0; i <= model.p(); ++i) {
    StateRates s{model.failure_flow(i), model.repair_flow(i), model.error_flow(i), 0.0};
    s.total = s.failure + s.repair + s.error;
    out.push_back(s);
  }
  return out;
}

// Absorption time of one trial, or NaN when the event cap is hit.
double run_trial(const std::vector<StateRates>& rates, int p, std::uint64_t cap,
                 std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double t = 0.0;
  int i = 0;
  for (std::uint64_t events = 0; events < cap; ++events) {
    const StateRates& s = rates[static_cast<std::size_t>(i)];
    // -log(1-u) with u in [0,1) never hits log(0)
    t += -std::log1p(-unit(rng)) / s.total;
    const double pick = unit(rng) * s.total;
    if (pick < s.failure) {
      if (i == p) return t;
      ++i;
    } else if (pick < s.failure + s.repair) {
      i = 0;
    } else {
      return t;
    }
  }
  return std::nan("");
}

}  // namespace

void SimConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::InvalidConfig, "simulation needs trials >= 1");
  if (max_events_per_trial < 1) {
    throw Error(ErrorCode::InvalidConfig, "simulation needs max_events_per_trial >= 1");
  }
}

SimResult simulate_mttdl(const FailureModel& model, const SimConfig& config) {
  config.validate();
  const auto rates = state_rates(model);
  for (const auto& s : rates) {
    if (!(s.total > 0.0)) throw Error(ErrorCode::InvalidModel, "state with no exit");
  }
  std::vector<double> times(config.trials);
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    std::mt19937_64 rng(trial_seed(config.seed, t));
    times[t] = run_trial(rates, model.p(), config.max_events_per_trial, rng);
  }

  // Reduce in trial order (Welford).
  SimResult result{0.0, 0.0, 0, 0};
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t count = 0;
  for (double x : times) {
    if (std::isnan(x)) {
      ++result.trials_truncated;
      continue;
    }
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }
  result.trials_completed = count;
  if (count == 0) {
    result.mean_hours = std::nan("");
    result.stderr_hours = std::nan("");
    return result;
  }
  result.mean_hours = mean;
  result.stderr_hours =
      count > 1 ? std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count)) : 0.0;
  return result;
}

MttdlEstimate to_estimate(const SimResult& result) {
  return MttdlEstimate::make(result.mean_hours, Method::MonteCarlo, 1.959963984540054 * result.stderr_hours);
}

}  // namespace mttdl
