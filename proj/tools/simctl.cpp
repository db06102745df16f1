#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "impsim/errors.hpp"
#include "impsim/sim/chain_cmd.hpp"
#include "impsim/sim/runner.hpp"
#include "impsim/trace_io.hpp"

using namespace impsim;
using namespace impsim::sim;

namespace {

int cmd_run(const std::string& scenario_path, const std::string& trace_path) {
  const auto scenario = load_scenario(scenario_path);
  auto outcome = execute_scenario(scenario, scenario.seed);
  if (!trace_path.empty()) {
    emit_trace(outcome.trace, trace_path);
    outcome.report.trace_path = trace_path;
  }
  std::cout << report_to_json(outcome.report).dump(2) << '\n';
  return exit_code(outcome.report);
}

int cmd_montecarlo(const std::string& scenario_path, int runs, std::uint64_t seed_base, bool serial, bool per_run) {
  if (runs < 1) throw ConfigError("runs", "must be at least 1");
  const auto scenario = load_scenario(scenario_path);
  const auto report = serial ? montecarlo_serial(scenario, runs, seed_base) : montecarlo_parallel(scenario, runs, seed_base);
  std::cout << montecarlo_to_json(report, per_run).dump(2) << '\n';
  return report.pass() ? kExitOk : kExitViolation;
}

int cmd_chain(const ChainRequest& request) {
  const auto limits = parse_chain_limits(std::getenv("SIMCTL_MAX_CHAIN"));
  const auto report = run_chain(request, limits);
  std::cout << chain_report_to_json(report).dump(2) << '\n';
  return report.pass() ? kExitOk : kExitViolation;
}

int cmd_replay(const std::string& trace_path, const std::string& scenario_path) {
  const auto scenario = load_scenario(scenario_path);
  const auto result = replay(scenario, load_trace(trace_path));
  auto j = report_to_json(result.report);
  j["decisions_match"] = result.decisions_match;
  j["trace_match"] = result.trace_match;
  std::cout << j.dump(2) << '\n';
  return result.decisions_match ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synchronous round simulator for protocols under a message-forging adversary"};
  app.require_subcommand(1);

  std::string scenario;
  std::string trace;

  auto* run = app.add_subcommand("run", "Execute one scenario and check its invariants");
  run->add_option("--scenario", scenario, "Scenario JSON file")->required();
  run->add_option("--trace", trace, "Write the JSONL trace here");

  int runs = 1;
  std::uint64_t seed_base = 0;
  bool serial = false;
  bool per_run = false;
  auto* mc = app.add_subcommand("montecarlo", "Run a seeded campaign");
  mc->add_option("--scenario", scenario, "Scenario JSON file")->required();
  mc->add_option("--runs", runs, "Number of runs")->required();
  mc->add_option("--seed-base", seed_base, "First seed")->required();
  mc->add_flag("--serial", serial, "Use the single-threaded reference kernel");
  mc->add_flag("--per-run", per_run, "Include one line per run");

  ChainRequest request;
  std::string out_dir;
  auto* ch = app.add_subcommand("chain", "Build and verify a similarity chain");
  ch->add_option("--n", request.n, "Processors")->required();
  ch->add_option("--rounds", request.rounds, "Horizon R")->required();
  ch->add_option("--out", out_dir, "Output directory")->required();
  ch->add_flag("--verify", request.verify, "Check every adjacent pair");
  ch->add_flag("--force", request.force, "Ignore size caps");
  ch->add_flag("!--parallel,--serial", request.parallel, "Use the single-threaded verifier");

  auto* rp = app.add_subcommand("replay", "Re-run a scenario from a recorded trace");
  rp->add_option("--trace", trace, "Trace JSONL file")->required();
  rp->add_option("--scenario", scenario, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(scenario, trace);
    if (*mc) return cmd_montecarlo(scenario, runs, seed_base, serial, per_run);
    if (*ch) {
      request.out_dir = out_dir;
      return cmd_chain(request);
    }
    if (*rp) return cmd_replay(trace, scenario);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ChainError& e) {
    std::cerr << "chain error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
