#include "mttdl/config.hpp"

#include <cstdint>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "mttdl/error.hpp"
#include "mttdl/hard_error.hpp"

namespace mttdl {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& why) {
  throw Error(ErrorCode::InvalidConfig, path + ": " + why);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Walks one JSON object, remembering its path and rejecting unknown keys.
class Fields {
 public:
  Fields(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) bad(path_.empty() ? "<root>" : path_, "expected an object");
  }

  bool has(const std::string& key) {
    seen_.push_back(key);
    return node_.contains(key) && !node_.at(key).is_null();
  }

  const json& raw(const std::string& key) {
    seen_.push_back(key);
    if (!node_.contains(key)) bad(join(path_, key), "missing required field");
    return node_.at(key);
  }

  std::string path(const std::string& key) const { return join(path_, key); }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) bad(path(key), "expected a number");
    return v.get<double>();
  }

  double number_or(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  int integer(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number_integer()) bad(path(key), "expected an integer");
    return v.get<int>();
  }

  int integer_or(const std::string& key, int fallback) { return has(key) ? integer(key) : fallback; }

  std::uint64_t unsigned_integer(const std::string& key) {
    const json& v = raw(key);
    const bool ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
    if (!ok) bad(path(key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::string text(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) bad(path(key), "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_array()) bad(path(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) bad(path(key) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  std::vector<int> integers(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_array()) bad(path(key), "expected an array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_integer()) {
        bad(path(key) + "[" + std::to_string(i) + "]", "expected an integer");
      }
      out.push_back(v[i].get<int>());
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
        bad(path(key), "unknown field");
      }
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::vector<std::string> seen_;
};

RepairPolicy parse_policy(const std::string& s, const std::string& path) {
  if (s == "concurrent") return RepairPolicy::Concurrent;
  if (s == "homogeneous") return RepairPolicy::Homogeneous;
  bad(path, "expected 'concurrent' or 'homogeneous'");
}

AllocationPolicy parse_allocation(const std::string& s, const std::string& path) {
  if (s == "horizontal") return AllocationPolicy::Horizontal;
  if (s == "vertical") return AllocationPolicy::Vertical;
  bad(path, "expected 'horizontal' or 'vertical'");
}

SweepVariable parse_variable(const std::string& s, const std::string& path) {
  if (s == "r") return SweepVariable::R;
  if (s == "p") return SweepVariable::P;
  if (s == "m") return SweepVariable::M;
  if (s == "eta") return SweepVariable::Eta;
  bad(path, "expected one of r, p, m, eta");
}

GrowthSpec parse_growth(const json& node, const std::string& path) {
  Fields f(node, path);
  GrowthSpec g{f.number("lambda0")};
  g.r = f.number_or("r", 0.0);
  g.lambda_max = f.number_or("lambda_max", std::numeric_limits<double>::infinity());
  f.finish();
  try {
    g.validate();
  } catch (const Error& e) {
    bad(path, e.what());
  }
  return g;
}

json growth_json(const GrowthSpec& g) {
  json out{{"lambda0", g.lambda0}, {"r", g.r}};
  if (std::isfinite(g.lambda_max)) out["lambda_max"] = g.lambda_max;
  return out;
}

ModelConfig parse_model(const json& node, const std::string& path) {
  Fields f(node, path);
  ModelConfig c;
  c.m = f.integer("m");
  c.p = f.integer("p");
  if (c.m < 1) bad(f.path("m"), "must be >= 1");
  if (c.p < 1) bad(f.path("p"), "must be >= 1");
  if (f.has("growth")) c.growth = parse_growth(f.raw("growth"), f.path("growth"));
  c.mu = f.number_or("mu", c.mu);
  if (f.has("repair_policy")) c.repair_policy = parse_policy(f.text("repair_policy"), f.path("repair_policy"));
  if (f.has("lambda")) c.lambda = f.numbers("lambda");
  if (f.has("mu_vector")) c.mu_vector = f.numbers("mu_vector");
  if (f.has("gamma")) c.gamma = f.numbers("gamma");
  f.finish();
  try {
    build_model(c);
  } catch (const Error& e) {
    bad(path, e.what());
  }
  return c;
}

json model_json(const ModelConfig& c) {
  json out{{"m", c.m},
           {"p", c.p},
           {"growth", growth_json(c.growth)},
           {"mu", c.mu},
           {"repair_policy", to_string(c.repair_policy)}};
  if (c.lambda) out["lambda"] = *c.lambda;
  if (c.mu_vector) out["mu_vector"] = *c.mu_vector;
  if (c.gamma) out["gamma"] = *c.gamma;
  return out;
}

HardErrorConfig parse_hard_error(const json& node, const std::string& path) {
  Fields f(node, path);
  HardErrorConfig c;
  if (f.has("eta")) c.eta = f.number("eta");
  if (f.has("ucer")) c.ucer = f.number("ucer");
  if (f.has("device_capacity")) c.device_capacity = f.number("device_capacity");
  f.finish();
  try {
    c.resolve_eta();
  } catch (const Error& e) {
    bad(path, e.what());
  }
  return c;
}

json hard_error_json(const HardErrorConfig& c) {
  json out = json::object();
  if (c.eta) out["eta"] = *c.eta;
  if (c.ucer) out["ucer"] = *c.ucer;
  if (c.device_capacity) out["device_capacity"] = *c.device_capacity;
  return out;
}

SimConfig parse_simulation(const json& node, const std::string& path) {
  Fields f(node, path);
  SimConfig c;
  if (f.has("trials")) c.trials = f.unsigned_integer("trials");
  if (f.has("seed")) c.seed = f.unsigned_integer("seed");
  if (f.has("max_events_per_trial")) c.max_events_per_trial = f.unsigned_integer("max_events_per_trial");
  f.finish();
  try {
    c.validate();
  } catch (const Error& e) {
    bad(path, e.what());
  }
  return c;
}

json simulation_json(const SimConfig& c) {
  return json{{"trials", c.trials}, {"seed", c.seed}, {"max_events_per_trial", c.max_events_per_trial}};
}

SweepConfig parse_sweep(const json& node, const std::string& path) {
  Fields f(node, path);
  SweepConfig c;
  c.variable = parse_variable(f.text("variable"), f.path("variable"));
  c.values = f.numbers("values");
  if (c.values.empty()) bad(f.path("values"), "needs at least one value");
  if (f.has("parities")) c.parities = f.integers("parities");
  for (int p : c.parities) {
    if (p < 1) bad(f.path("parities"), "parity counts must be >= 1");
  }
  if (c.variable == SweepVariable::P || c.variable == SweepVariable::M) {
    for (double v : c.values) {
      if (v != std::floor(v) || v < 1) bad(f.path("values"), "p and m values must be integers >= 1");
    }
  }
  f.finish();
  return c;
}

json sweep_json(const SweepConfig& c) {
  json out{{"variable", to_string(c.variable)}, {"values", c.values}};
  if (!c.parities.empty()) out["parities"] = c.parities;
  return out;
}

CodeProfile parse_inline_profile(const json& node, const std::string& path) {
  try {
    return load_code_profile(node);
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

AccessPattern parse_pattern(const json& node, const std::string& path) {
  Fields f(node, path);
  AccessPattern a;
  a.n = f.integer("n");
  a.m = f.integer("m");
  if (f.has("set_sizes")) {
    a.set_sizes = f.integers("set_sizes");
  } else {
    a.set_sizes.assign(a.m > 0 ? static_cast<std::size_t>(a.m) : 0, a.m);
  }
  f.finish();
  try {
    a.validate();
  } catch (const Error& e) {
    bad(path, e.what());
  }
  return a;
}

OverheadConfig parse_overhead(const json& node, const std::string& path) {
  Fields f(node, path);
  OverheadConfig c;
  if (f.has("profile")) {
    const json& v = f.raw("profile");
    if (v.is_string()) {
      c.profile = v.get<std::string>();
      try {
        builtin_profile(*c.profile);
      } catch (const Error& e) {
        bad(f.path("profile"), e.what());
      }
    } else {
      c.inline_profile = parse_inline_profile(v, f.path("profile"));
    }
  }
  if (f.has("access_pattern")) c.access_pattern = parse_pattern(f.raw("access_pattern"), f.path("access_pattern"));
  f.finish();
  if (!c.profile && !c.inline_profile && !c.access_pattern) {
    bad(path, "needs a profile or an access_pattern");
  }
  return c;
}

json overhead_json(const OverheadConfig& c) {
  json out = json::object();
  if (c.profile) out["profile"] = *c.profile;
  if (c.inline_profile) out["profile"] = to_json(*c.inline_profile);
  if (c.access_pattern) {
    out["access_pattern"] = json{{"n", c.access_pattern->n},
                                 {"m", c.access_pattern->m},
                                 {"set_sizes", c.access_pattern->set_sizes}};
  }
  return out;
}

ProfileRef parse_profile_ref(const json& node, const std::string& path) {
  ProfileRef ref;
  if (node.is_string()) {
    ref.key = node.get<std::string>();
    try {
      builtin_profile(*ref.key);
    } catch (const Error& e) {
      bad(path, e.what());
    }
  } else {
    ref.inline_profile = parse_inline_profile(node, path);
  }
  return ref;
}

PyramidConfig parse_pyramid(const json& node, const std::string& path) {
  Fields f(node, path);
  PyramidConfig c;
  if (f.has("profiles")) {
    const json& list = f.raw("profiles");
    if (!list.is_array()) bad(f.path("profiles"), "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      c.profiles.push_back(parse_profile_ref(list[i], f.path("profiles") + "[" + std::to_string(i) + "]"));
    }
  } else {
    for (const char* key : {"mds", "pc", "gpc", "gpc_no_global"}) c.profiles.push_back(ProfileRef{key, {}});
  }
  if (f.has("baseline")) {
    c.baseline = f.text("baseline");
    try {
      builtin_profile(c.baseline);
    } catch (const Error& e) {
      bad(f.path("baseline"), e.what());
    }
  }
  c.mu = f.number_or("mu", c.mu);
  c.eta = f.number_or("eta", c.eta);
  c.delta = f.number_or("delta", c.delta);
  c.baseline_delta = f.number_or("baseline_delta", c.baseline_delta);
  if (f.has("lambdas")) c.lambdas = f.numbers("lambdas");
  if (f.has("repair_policy")) c.repair_policy = parse_policy(f.text("repair_policy"), f.path("repair_policy"));
  f.finish();
  if (!(c.mu > 0.0)) bad(f.path("mu"), "must be positive");
  if (!(c.eta >= 0.0 && c.eta <= 1.0)) bad(f.path("eta"), "must lie in [0, 1]");
  if (!(c.delta > 0.0)) bad(f.path("delta"), "must be positive");
  if (!(c.baseline_delta > 0.0)) bad(f.path("baseline_delta"), "must be positive");
  for (double l : c.lambdas) {
    if (!(l > 0.0)) bad(f.path("lambdas"), "rates must be positive");
  }
  return c;
}

json pyramid_json(const PyramidConfig& c) {
  json profiles = json::array();
  for (const auto& ref : c.profiles) {
    profiles.push_back(ref.key ? json(*ref.key) : to_json(*ref.inline_profile));
  }
  return json{{"profiles", profiles},         {"baseline", c.baseline},
              {"mu", c.mu},                   {"eta", c.eta},
              {"delta", c.delta},             {"baseline_delta", c.baseline_delta},
              {"lambdas", c.lambdas},         {"repair_policy", to_string(c.repair_policy)}};
}

AllocationConfig parse_allocation_config(const json& node, const std::string& path) {
  Fields f(node, path);
  AllocationConfig c;
  c.z = f.integer_or("z", c.z);
  c.weibull_k = f.number_or("weibull_k", c.weibull_k);
  c.lambda0 = f.number_or("lambda0", c.lambda0);
  if (node.contains("lambda_max") && node.at("lambda_max").is_null()) {
    f.raw("lambda_max");
    c.lambda_max = std::numeric_limits<double>::infinity();
  } else {
    c.lambda_max = f.number_or("lambda_max", c.lambda_max);
  }
  c.mu = f.number_or("mu", c.mu);
  if (f.has("repair_policy")) c.repair_policy = parse_policy(f.text("repair_policy"), f.path("repair_policy"));
  if (f.has("policies")) {
    const json& list = f.raw("policies");
    if (!list.is_array()) bad(f.path("policies"), "expected an array");
    c.policies.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = f.path("policies") + "[" + std::to_string(i) + "]";
      if (!list[i].is_string()) bad(where, "expected a string");
      c.policies.push_back(parse_allocation(list[i].get<std::string>(), where));
    }
  }
  if (f.has("parities")) c.parities = f.integers("parities");
  c.r_values = f.numbers("r_values");
  f.finish();
  if (c.z < 2) bad(f.path("z"), "must be >= 2");
  if (!(c.weibull_k > 0.0)) bad(f.path("weibull_k"), "must be positive");
  if (!(c.mu > 0.0)) bad(f.path("mu"), "must be positive");
  for (int p : c.parities) {
    if (p < 1 || p >= c.z) bad(f.path("parities"), "parity counts must lie in 1..z-1");
  }
  try {
    GrowthSpec{c.lambda0, 0.0, c.lambda_max}.validate();
    for (double r : c.r_values) GrowthSpec{c.lambda0, r, c.lambda_max}.validate();
  } catch (const Error& e) {
    bad(path, e.what());
  }
  return c;
}

json allocation_json(const AllocationConfig& c) {
  json policies = json::array();
  for (auto p : c.policies) policies.push_back(to_string(p));
  json out{{"z", c.z},           {"weibull_k", c.weibull_k},
           {"lambda0", c.lambda0}, {"mu", c.mu},
           {"repair_policy", to_string(c.repair_policy)},
           {"policies", policies}, {"parities", c.parities},
           {"r_values", c.r_values}};
  if (std::isfinite(c.lambda_max)) {
    out["lambda_max"] = c.lambda_max;
  } else {
    out["lambda_max"] = nullptr;
  }
  return out;
}

}  // namespace

double HardErrorConfig::resolve_eta() const {
  if (eta) {
    if (ucer || device_capacity) {
      throw Error(ErrorCode::InvalidConfig, "give either eta or ucer + device_capacity");
    }
    if (!(*eta >= 0.0 && *eta <= 1.0)) throw Error(ErrorCode::InvalidConfig, "eta must lie in [0, 1]");
    return *eta;
  }
  if (!ucer || !device_capacity) {
    throw Error(ErrorCode::InvalidConfig, "need eta or both ucer and device_capacity");
  }
  return mttdl::eta(UcerSpec{*ucer, *device_capacity});
}

const CodeProfile& ProfileRef::resolve() const {
  if (inline_profile) return *inline_profile;
  return builtin_profile(key.value_or(""));
}

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::R: return "r";
    case SweepVariable::P: return "p";
    case SweepVariable::M: return "m";
    case SweepVariable::Eta: return "eta";
  }
  return "?";
}

std::string_view to_string(RepairPolicy policy) {
  return policy == RepairPolicy::Concurrent ? "concurrent" : "homogeneous";
}

std::string_view to_string(AllocationPolicy policy) {
  return policy == AllocationPolicy::Horizontal ? "horizontal" : "vertical";
}

FailureModel build_model(const ModelConfig& config, int p, int m) {
  const bool explicit_rates = config.lambda || config.mu_vector || config.gamma;
  if (explicit_rates && p != config.p) {
    throw Error(ErrorCode::InvalidConfig, "explicit rate vectors fix p; cannot rebuild at another p");
  }
  std::vector<double> lambda = config.lambda ? *config.lambda : build_lambda_vector(config.growth, p);
  std::vector<double> mu =
      config.mu_vector ? *config.mu_vector : build_mu_vector(config.mu, p, config.repair_policy);
  std::vector<double> gamma = config.gamma ? *config.gamma : std::vector<double>(static_cast<std::size_t>(p), 0.0);
  return FailureModel(m + p, m, std::move(lambda), std::move(mu), std::move(gamma));
}

FailureModel build_model(const ModelConfig& config) { return build_model(config, config.p, config.m); }

ScenarioConfig parse_config(const json& doc) {
  Fields f(doc, "");
  ScenarioConfig c;
  if (f.has("model")) c.model = parse_model(f.raw("model"), "model");
  if (f.has("hard_error")) c.hard_error = parse_hard_error(f.raw("hard_error"), "hard_error");
  if (f.has("initial_distribution")) {
    c.initial_distribution = f.numbers("initial_distribution");
    try {
      InitialDistribution check(*c.initial_distribution);
      if (c.model && check.p() != c.model->p) {
        bad("initial_distribution", "needs p+2 entries");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidConfig) throw;
      bad("initial_distribution", e.what());
    }
  }
  if (f.has("simulation")) c.simulation = parse_simulation(f.raw("simulation"), "simulation");
  if (f.has("sweep")) c.sweep = parse_sweep(f.raw("sweep"), "sweep");
  if (f.has("overhead")) c.overhead = parse_overhead(f.raw("overhead"), "overhead");
  if (f.has("pyramid")) c.pyramid = parse_pyramid(f.raw("pyramid"), "pyramid");
  if (f.has("allocation")) c.allocation = parse_allocation_config(f.raw("allocation"), "allocation");
  f.finish();
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidConfig, path + ": " + e.what());
  }
  return parse_config(doc);
}

json to_json(const ScenarioConfig& c) {
  json out = json::object();
  if (c.model) out["model"] = model_json(*c.model);
  if (c.hard_error) out["hard_error"] = hard_error_json(*c.hard_error);
  if (c.initial_distribution) out["initial_distribution"] = *c.initial_distribution;
  if (c.simulation) out["simulation"] = simulation_json(*c.simulation);
  if (c.sweep) out["sweep"] = sweep_json(*c.sweep);
  if (c.overhead) out["overhead"] = overhead_json(*c.overhead);
  if (c.pyramid) out["pyramid"] = pyramid_json(*c.pyramid);
  if (c.allocation) out["allocation"] = allocation_json(*c.allocation);
  return out;
}

}  // namespace mttdl
