#include "mttdl/overhead.hpp"

#include <cmath>
#include <numeric>

#include "kahan.hpp"
#include "mttdl/error.hpp"

namespace mttdl {

namespace {

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

AccessPattern AccessPattern::mds(int n, int m) {
  AccessPattern pattern{n, m, std::vector<int>(static_cast<std::size_t>(m > 0 ? m : 0), m)};
  pattern.validate();
  return pattern;
}

void AccessPattern::validate() const {
  if (m < 1 || m >= n) throw Error(ErrorCode::InvalidModel, "access pattern: need 1 <= m < n");
  if (set_sizes.size() != static_cast<std::size_t>(m)) {
    throw Error(ErrorCode::InvalidModel, "access pattern: need one set size per data block");
  }
  for (int s : set_sizes) {
    if (s < 1 || s > n - 1) {
      throw Error(ErrorCode::InvalidModel, "access pattern: set sizes must lie in 1..n-1");
    }
  }
}

double AccessPattern::mean_set_size() const {
  const double total = std::accumulate(set_sizes.begin(), set_sizes.end(), 0.0);
  return total / m;
}

double avg_read_overhead(const AccessPattern& pattern, int j) {
  pattern.validate();
  const int n = pattern.n;
  const int m = pattern.m;
  if (j < 0 || j > n - m) throw Error(ErrorCode::IndexOutOfRange, "overhead: need 0 <= j <= n-m");
  const double mean_set = pattern.mean_set_size();
  const double log_total = log_choose(n, j);
  KahanSum sum;
  for (int i = 0; i <= j; ++i) {
    if (i > m || j - i > n - m) continue;
    // P(i of the j failures hit data blocks), hypergeometric.
    const double weight = std::exp(log_choose(m, i) + log_choose(n - m, j - i) - log_total);
    sum.add((i * mean_set + (m - i)) / m * weight);
  }
  return sum.value();
}

double asymptotic_overhead(const AccessPattern& pattern, int j) {
  pattern.validate();
  if (j < 0) throw Error(ErrorCode::IndexOutOfRange, "overhead: need j >= 0");
  return 1.0 + (pattern.mean_set_size() - 1.0) * j / pattern.n;
}

void CodeProfile::validate() const {
  auto fail = [this](const std::string& why) {
    throw Error(ErrorCode::MalformedProfile, "profile '" + name + "': " + why);
  };
  if (m < 1 || m >= n) fail("need 1 <= m < n");
  const auto len = static_cast<std::size_t>(n - m + 1);
  if (recoverability.size() != len) fail("recoverability needs n-m+1 entries");
  if (read_overhead.size() != len) fail("read_overhead needs n-m+1 entries");
  if (recoverability[0] != 1.0) fail("recoverability at zero failures must be 1");
  if (read_overhead[0] != 1.0) fail("read overhead at zero failures must be 1");
  for (std::size_t j = 0; j < len; ++j) {
    if (!(recoverability[j] >= 0.0 && recoverability[j] <= 1.0)) {
      fail("recoverability entries are fractions in [0, 1]");
    }
    if (!(read_overhead[j] >= 1.0) || !std::isfinite(read_overhead[j])) {
      fail("read overhead entries must be >= 1");
    }
  }
}

CodeProfile load_code_profile(const nlohmann::json& record) {
  CodeProfile profile;
  try {
    profile.name = record.at("name").get<std::string>();
    profile.n = record.at("n").get<int>();
    profile.m = record.at("m").get<int>();
    profile.recoverability = record.at("recoverability").get<std::vector<double>>();
    profile.read_overhead = record.at("read_overhead").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedProfile, e.what());
  }
  profile.validate();
  return profile;
}

nlohmann::json to_json(const CodeProfile& profile) {
  return nlohmann::json{{"name", profile.name},
                        {"n", profile.n},
                        {"m", profile.m},
                        {"recoverability", profile.recoverability},
                        {"read_overhead", profile.read_overhead}};
}

const std::vector<CodeProfile>& builtin_profiles() {
  static const std::vector<CodeProfile> profiles = [] {
    std::vector<CodeProfile> out{
        {"Generic MDS (18,12)", 18, 12,
         {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
         {1.0, 1.61, 2.22, 2.83, 3.44, 4.06, 4.67}},
        {"Pyramid Code", 18, 12,
         {1.0, 1.0, 1.0, 1.0, 1.0, 0.9412, 0.5932},
         {1.0, 1.28, 1.56, 1.99, 2.59, 3.29, 3.83}},
        {"Generalized PC", 18, 12,
         {1.0, 1.0, 1.0, 1.0, 1.0, 0.9419, 0.7644},
         {1.0, 1.28, 1.56, 1.99, 2.59, 3.29, 4.12}},
        {"GPC w/o global symbols", 18, 12,
         {1.0, 1.0, 1.0, 1.0, 0.9794, 0.8857, 0.6563},
         {1.0, 1.28, 1.56, 1.87, 2.32, 2.93, 3.85}},
    };
    for (const auto& p : out) p.validate();
    return out;
  }();
  return profiles;
}

const CodeProfile& builtin_profile(const std::string& key) {
  static const std::vector<std::string> short_keys{"mds", "pc", "gpc", "gpc_no_global"};
  const auto& all = builtin_profiles();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (key == all[i].name || key == short_keys[i]) return all[i];
  }
  throw Error(ErrorCode::MalformedProfile, "unknown built-in profile '" + key + "'");
}

}  // namespace mttdl
