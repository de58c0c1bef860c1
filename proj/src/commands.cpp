#include "mttdl/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mttdl/error.hpp"
#include "mttdl/growth.hpp"
#include "mttdl/hard_error.hpp"
#include "mttdl/montecarlo.hpp"

namespace mttdl {

namespace {

template <typename T>
const T& need(const std::optional<T>& section, const char* name) {
  if (!section) throw Error(ErrorCode::InvalidConfig, std::string(name) + ": section required");
  return *section;
}

double configured_eta(const ScenarioConfig& config) {
  return config.hard_error ? config.hard_error->resolve_eta() : 0.0;
}

FailureModel with_eta(FailureModel model, double eta) {
  return eta > 0.0 ? apply_hard_error(model, eta) : model;
}

double relative_deviation(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

SimConfig sim_config(const ScenarioConfig& config, std::optional<std::uint64_t> seed) {
  SimConfig sim = config.simulation.value_or(SimConfig{});
  if (seed) sim.seed = *seed;
  return sim;
}

}  // namespace

FailureModel scenario_model(const ScenarioConfig& config) {
  return with_eta(build_model(need(config.model, "model")), configured_eta(config));
}

FailureModel with_recoverability(const FailureModel& model, const std::vector<double>& recoverability) {
  const int p = model.p();
  if (recoverability.size() < static_cast<std::size_t>(p + 1)) {
    throw Error(ErrorCode::RateVectorMismatch, "recoverability needs p+1 entries");
  }
  std::vector<double> lambda = model.lambda();
  std::vector<double> gamma = model.gamma();
  for (int j = 0; j < p; ++j) {
    const auto s = static_cast<std::size_t>(j);
    const double here = recoverability[s];
    const double q = here > 0.0 ? std::min(1.0, recoverability[s + 1] / here) : 0.0;
    if (q >= 1.0) continue;
    gamma[s] += (1.0 - q) * model.failure_flow(j);
    lambda[s] *= q;
  }
  return FailureModel(model.n(), model.m(), std::move(lambda), model.mu(), std::move(gamma));
}

FailureModel pyramid_model(const CodeProfile& code, const CodeProfile& baseline,
                           const PyramidConfig& config, double lambda) {
  if (code.n != baseline.n || code.m != baseline.m) {
    throw Error(ErrorCode::DimensionMismatch, "code '" + code.name + "' and baseline differ in (n, m)");
  }
  const int p = code.n - code.m;
  const double delta = code == baseline ? config.baseline_delta : config.delta;
  const RepairSpec repair{config.mu, delta, baseline.read_overhead, code.read_overhead};
  std::vector<double> mu = apply_repair_policy(build_repair_vector(repair, p), config.repair_policy);
  FailureModel base(code.n, code.m, std::vector<double>(static_cast<std::size_t>(p + 1), lambda),
                    std::move(mu));
  return with_recoverability(with_eta(base, config.eta), code.recoverability);
}

AllocationScenario allocation_scenario(const AllocationConfig& config, AllocationPolicy policy,
                                       int p, double r) {
  const GrowthSpec growth{config.lambda0, r, config.lambda_max};
  FailureModel epg(config.z, config.z - p, build_lambda_vector(growth, p),
                   build_mu_vector(config.mu, p, config.repair_policy));
  AllocationScenario scenario{config.z, policy, config.weibull_k, std::move(epg), growth};
  scenario.validate();
  return scenario;
}

Table cmd_analyze(const ScenarioConfig& config, std::optional<std::uint64_t> seed) {
  const FailureModel model = scenario_model(config);
  Table table{{"method", "mttdl_hours", "rel_dev_vs_linear_solve", "ci_halfwidth_hours"}, {}};
  const double reference = mttdl_linear_solve(model).hours;
  auto row = [&](std::string_view method, double hours, Cell ci = std::monostate{}) {
    table.add({std::string(method), hours, relative_deviation(hours, reference), ci});
  };

  if (!model.has_gamma()) row(to_string(Method::ClosedForm), mttdl_closed_form(model).hours);
  row(to_string(Method::LinearSolve), reference);
  if (!model.has_gamma()) row(to_string(Method::Recursion), mttdl_recursion_chain(model).hours);
  if (model.all_failure_rates_positive()) row(to_string(Method::UpperBound), mttdl_upper_bound(model).hours);
  if (config.simulation) {
    const SimResult sim = simulate_mttdl(model, sim_config(config, seed));
    row(to_string(Method::MonteCarlo), sim.mean_hours, *to_estimate(sim).ci_halfwidth);
  }
  if (config.initial_distribution) {
    const InitialDistribution eps(*config.initial_distribution);
    const double hours = mttdl_with_initial_distribution(model, eps).hours;
    row("initial_distribution", hours);
  }
  return table;
}

Table cmd_sweep(const ScenarioConfig& config) {
  const SweepConfig& sweep = need(config.sweep, "sweep");
  const ModelConfig& base = need(config.model, "model");
  const double base_eta = configured_eta(config);
  Table table{{std::string(to_string(sweep.variable)), "p", "mttdl_hours", "ratio_to_previous_p"}, {}};

  for (double value : sweep.values) {
    ModelConfig model = base;
    double eta = base_eta;
    std::vector<int> parities = sweep.parities.empty() ? std::vector<int>{base.p} : sweep.parities;
    switch (sweep.variable) {
      case SweepVariable::R: model.growth.r = value; break;
      case SweepVariable::M: model.m = static_cast<int>(value); break;
      case SweepVariable::Eta: eta = value; break;
      case SweepVariable::P: parities = {static_cast<int>(value)}; break;
    }
    std::map<int, double> cache;
    auto hours = [&](int p) {
      auto it = cache.find(p);
      if (it != cache.end()) return it->second;
      double h;
      if (p == 0) {
        const double lambda0 = model.lambda ? model.lambda->front() : model.growth.lambda0;
        h = 1.0 / (model.m * lambda0);
      } else {
        h = mttdl_exact(with_eta(build_model(model, p, model.m), eta)).hours;
      }
      cache.emplace(p, h);
      return h;
    };
    for (int p : parities) {
      const double h = hours(p);
      table.add({value, static_cast<std::int64_t>(p), h, h / hours(p - 1)});
    }
  }
  return table;
}

Table cmd_overhead(const ScenarioConfig& config) {
  const OverheadConfig& section = need(config.overhead, "overhead");
  const CodeProfile* profile = nullptr;
  if (section.inline_profile) profile = &*section.inline_profile;
  if (section.profile) profile = &builtin_profile(*section.profile);
  const AccessPattern* pattern = section.access_pattern ? &*section.access_pattern : nullptr;
  if (profile && pattern && (profile->n != pattern->n || profile->m != pattern->m)) {
    throw Error(ErrorCode::DimensionMismatch, "overhead: profile and access pattern differ in (n, m)");
  }
  const int n = pattern ? pattern->n : profile->n;
  const int m = pattern ? pattern->m : profile->m;

  Table table{{"j", "exact", "asymptotic", "tabulated"}, {}};
  for (int j = 0; j <= n - m; ++j) {
    Cell exact, asymptotic, tabulated;
    if (pattern) {
      exact = avg_read_overhead(*pattern, j);
      asymptotic = asymptotic_overhead(*pattern, j);
    }
    if (profile) tabulated = profile->read_overhead[static_cast<std::size_t>(j)];
    table.add({static_cast<std::int64_t>(j), exact, asymptotic, tabulated});
  }
  return table;
}

Table cmd_pyramid(const ScenarioConfig& config) {
  const PyramidConfig& section = need(config.pyramid, "pyramid");
  const CodeProfile& baseline = builtin_profile(section.baseline);
  Table table{{"code", "disk_mttf_hours", "mttdl_hours"}, {}};
  for (const auto& ref : section.profiles) {
    const CodeProfile& code = ref.resolve();
    for (double lambda : section.lambdas) {
      const FailureModel model = pyramid_model(code, baseline, section, lambda);
      table.add({code.name, 1.0 / lambda, mttdl_linear_solve(model).hours});
    }
  }
  return table;
}

Table cmd_allocate(const ScenarioConfig& config) {
  const AllocationConfig& section = need(config.allocation, "allocation");
  Table table{{"policy", "p", "r", "epg_mttdl_hours", "system_mttdl_hours"}, {}};
  for (AllocationPolicy policy : section.policies) {
    for (int p : section.parities) {
      for (double r : section.r_values) {
        const AllocationScenario scenario = allocation_scenario(section, policy, p, r);
        const double epg = policy == AllocationPolicy::Horizontal
                               ? mttdl_exact(scenario.epg_model).hours
                               : vertical_epg_mttdl(scenario);
        table.add({std::string(to_string(policy)), static_cast<std::int64_t>(p), r, epg,
                   horizontal_system_mttdl(epg, scenario.z, scenario.weibull_k)});
      }
    }
  }
  return table;
}

Table cmd_simulate(const ScenarioConfig& config, std::optional<std::uint64_t> seed) {
  const FailureModel model = scenario_model(config);
  const SimConfig sim = sim_config(config, seed);
  const SimResult result = simulate_mttdl(model, sim);
  const double exact = mttdl_linear_solve(model).hours;
  Table table{{"seed", "trials", "mean_hours", "stderr_hours", "trials_completed", "trials_truncated",
               "linear_solve_hours", "z_score"},
              {}};
  table.add({std::to_string(sim.seed), std::to_string(sim.trials), result.mean_hours,
             result.stderr_hours, static_cast<std::int64_t>(result.trials_completed),
             static_cast<std::int64_t>(result.trials_truncated), exact,
             (result.mean_hours - exact) / result.stderr_hours});
  return table;
}

}  // namespace mttdl
