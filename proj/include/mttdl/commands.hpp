#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mttdl/allocation.hpp"
#include "mttdl/config.hpp"
#include "mttdl/csv.hpp"
#include "mttdl/overhead.hpp"

namespace mttdl {

/// The configured EPG with the hard-error split applied when eta > 0.
FailureModel scenario_model(const ScenarioConfig& config);

/// Moves the unrecoverable share of each failure transition j -> j+1 to
/// direct loss: with q = R_{j+1} / R_j, gamma_j += (1-q) lambda_j (n-j) and
/// lambda_j *= q. The last transition already leads to loss.
FailureModel with_recoverability(const FailureModel& model, const std::vector<double>& recoverability);

/// Chain for one code at per-disk failure rate `lambda`: constant lambda,
/// overhead-derived repair vector spread by the configured policy, the
/// hard-error split, then the recoverability split.
FailureModel pyramid_model(const CodeProfile& code, const CodeProfile& baseline,
                           const PyramidConfig& config, double lambda);

/// EPG of a z-node system with p parities and growth factor r.
AllocationScenario allocation_scenario(const AllocationConfig& config, AllocationPolicy policy,
                                       int p, double r);

Table cmd_analyze(const ScenarioConfig& config, std::optional<std::uint64_t> seed = std::nullopt);
Table cmd_sweep(const ScenarioConfig& config);
Table cmd_overhead(const ScenarioConfig& config);
Table cmd_pyramid(const ScenarioConfig& config);
Table cmd_allocate(const ScenarioConfig& config);
Table cmd_simulate(const ScenarioConfig& config, std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace mttdl
