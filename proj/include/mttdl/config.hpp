#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mttdl/allocation.hpp"
#include "mttdl/growth.hpp"
#include "mttdl/markov_core.hpp"
#include "mttdl/montecarlo.hpp"
#include "mttdl/overhead.hpp"

namespace mttdl {

/// One EPG: m data disks, p parities, lambda from `growth` and mu from a
/// scalar spread by `repair_policy`. Explicit vectors override both and are
/// only usable at the configured p.
struct ModelConfig {
  int m = 1;
  int p = 1;
  GrowthSpec growth{1e-6};
  double mu = 1.0;
  RepairPolicy repair_policy = RepairPolicy::Concurrent;
  std::optional<std::vector<double>> lambda;
  std::optional<std::vector<double>> mu_vector;
  std::optional<std::vector<double>> gamma;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// Either eta directly or ucer + device_capacity.
struct HardErrorConfig {
  std::optional<double> eta;
  std::optional<double> ucer;
  std::optional<double> device_capacity;

  double resolve_eta() const;
  friend bool operator==(const HardErrorConfig&, const HardErrorConfig&) = default;
};

enum class SweepVariable { R, P, M, Eta };

struct SweepConfig {
  SweepVariable variable = SweepVariable::R;
  std::vector<double> values;
  std::vector<int> parities;  // empty: the model's p (ignored for a p sweep)

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct OverheadConfig {
  std::optional<std::string> profile;      // built-in key or name
  std::optional<CodeProfile> inline_profile;
  std::optional<AccessPattern> access_pattern;

  friend bool operator==(const OverheadConfig&, const OverheadConfig&) = default;
};

/// A profile entry: built-in key/name or a full inline record.
struct ProfileRef {
  std::optional<std::string> key;
  std::optional<CodeProfile> inline_profile;

  const CodeProfile& resolve() const;
  friend bool operator==(const ProfileRef&, const ProfileRef&) = default;
};

struct PyramidConfig {
  std::vector<ProfileRef> profiles;
  std::string baseline = "mds";  // overheads are taken relative to this profile
  double mu = 1.0 / 168.0;
  double eta = 1e-3;
  double delta = 20.0;
  double baseline_delta = 1.0;
  std::vector<double> lambdas{1.0 / 200000.0, 1.0 / 500000.0, 1.0 / 1200000.0};
  RepairPolicy repair_policy = RepairPolicy::Homogeneous;

  friend bool operator==(const PyramidConfig&, const PyramidConfig&) = default;
};

struct AllocationConfig {
  int z = 200;
  double weibull_k = 0.9;
  double lambda0 = 4e-6;
  double lambda_max = 3e-2;
  double mu = 4.0;
  RepairPolicy repair_policy = RepairPolicy::Homogeneous;
  std::vector<AllocationPolicy> policies{AllocationPolicy::Horizontal, AllocationPolicy::Vertical};
  std::vector<int> parities{6, 8};
  std::vector<double> r_values;

  friend bool operator==(const AllocationConfig&, const AllocationConfig&) = default;
};

struct ScenarioConfig {
  std::optional<ModelConfig> model;
  std::optional<HardErrorConfig> hard_error;
  std::optional<std::vector<double>> initial_distribution;
  std::optional<SimConfig> simulation;
  std::optional<SweepConfig> sweep;
  std::optional<OverheadConfig> overhead;
  std::optional<PyramidConfig> pyramid;
  std::optional<AllocationConfig> allocation;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Throws Error(InvalidConfig) naming the offending field path.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig load_config(const std::string& path);
nlohmann::json to_json(const ScenarioConfig& config);

std::string_view to_string(SweepVariable v);
std::string_view to_string(RepairPolicy policy);
std::string_view to_string(AllocationPolicy policy);

/// FailureModel for `config` at p parities and m data disks, no hard error.
FailureModel build_model(const ModelConfig& config, int p, int m);
FailureModel build_model(const ModelConfig& config);

}  // namespace mttdl
