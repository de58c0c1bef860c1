#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "mttdl/commands.hpp"
#include "mttdl/config.hpp"
#include "mttdl/csv.hpp"
#include "mttdl/error.hpp"

namespace {

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, Options& opts, bool with_seed) {
  sub->add_option("--config", opts.config, "scenario JSON")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", opts.out, "CSV output path (default stdout)");
  if (with_seed) sub->add_option("--seed", opts.seed, "Monte Carlo seed override");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MTTDL analysis for MDS-protected disk arrays"};
  app.require_subcommand(1);
  Options opts;

  auto* analyze = app.add_subcommand("analyze", "MTTDL of one EPG by every applicable method");
  auto* sweep = app.add_subcommand("sweep", "MTTDL over a swept parameter and parity levels");
  auto* overhead = app.add_subcommand("overhead", "average read overhead per failure count");
  auto* pyramid = app.add_subcommand("pyramid", "MTTDL table for code profiles");
  auto* allocate = app.add_subcommand("allocate", "horizontal vs vertical allocation");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of one EPG");
  for (auto* sub : {analyze, simulate}) add_common(sub, opts, true);
  for (auto* sub : {sweep, overhead, pyramid, allocate}) add_common(sub, opts, false);

  CLI11_PARSE(app, argc, argv);

  try {
    const mttdl::ScenarioConfig config = mttdl::load_config(opts.config);
    mttdl::Table table;
    if (analyze->parsed()) table = mttdl::cmd_analyze(config, opts.seed);
    if (sweep->parsed()) table = mttdl::cmd_sweep(config);
    if (overhead->parsed()) table = mttdl::cmd_overhead(config);
    if (pyramid->parsed()) table = mttdl::cmd_pyramid(config);
    if (allocate->parsed()) table = mttdl::cmd_allocate(config);
    if (simulate->parsed()) table = mttdl::cmd_simulate(config, opts.seed);

    if (opts.out.empty()) {
      mttdl::write_csv(std::cout, table);
    } else {
      std::ofstream out(opts.out, std::ios::binary);
      if (!out) {
        std::cerr << "cannot write " << opts.out << "\n";
        return 1;
      }
      mttdl::write_csv(out, table);
    }
  } catch (const mttdl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
