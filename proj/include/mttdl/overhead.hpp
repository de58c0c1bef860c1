#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace mttdl {

/// Access pattern of a systematic (n, m) code: set_sizes[k] is |S_k|, the
/// number of blocks read to rebuild data block k when it is unavailable.
struct AccessPattern {
  int n;
  int m;
  std::vector<int> set_sizes;

  /// Every data block rebuilt from any m surviving blocks.
  static AccessPattern mds(int n, int m);

  void validate() const;
  /// Per-block average of |S_k|.
  double mean_set_size() const;

  friend bool operator==(const AccessPattern&, const AccessPattern&) = default;
};

/// Expected whole-device reads per data-block access with j failed blocks,
/// averaged over the hypergeometric split of failures between data and parity.
double avg_read_overhead(const AccessPattern& pattern, int j);

/// Large-n limit at fixed rate m/n: 1 + (mean |S| - 1) j / n.
double asymptotic_overhead(const AccessPattern& pattern, int j);

struct CodeProfile {
  std::string name;
  int n;
  int m;
  std::vector<double> recoverability;  // fraction recoverable, j = 0..n-m
  std::vector<double> read_overhead;   // Phi_j, j = 0..n-m

  void validate() const;
  friend bool operator==(const CodeProfile&, const CodeProfile&) = default;
};

/// Parses {name, n, m, recoverability: [...], read_overhead: [...]}.
CodeProfile load_code_profile(const nlohmann::json& record);
nlohmann::json to_json(const CodeProfile& profile);

/// The generic (18,12) MDS code and the three (18,12) pyramid variants.
const std::vector<CodeProfile>& builtin_profiles();

/// Lookup by full name or short key: mds, pc, gpc, gpc_no_global.
const CodeProfile& builtin_profile(const std::string& key);

}  // namespace mttdl
