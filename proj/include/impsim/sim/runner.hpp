#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "impsim/engine.hpp"
#include "impsim/protocols/checks.hpp"
#include "impsim/sim/scenario.hpp"

namespace impsim::sim {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitConfig = 2 };

struct ShadowOutcome {
  TwinSpec twin;
  std::optional<Decision> decision;
};

struct RunReport {
  ProtocolKind protocol = ProtocolKind::kRenaming;
  std::uint64_t seed = 0;
  std::vector<Value> inputs;
  std::vector<std::optional<Decision>> decisions;  // by slot
  std::vector<ShadowOutcome> shadows;
  std::vector<Verdict> verdicts;
  int rounds_executed = 0;
  bool non_termination = false;
  std::string trace_path;
  double wall_ms = 0;

  bool pass() const { return all_pass(verdicts); }
  bool safety_pass() const { return all_safety_pass(verdicts); }
};

struct RunOutcome {
  RunReport report;
  Trace trace;
};

/// One run of the scenario with the given seed. The run seed drives input
/// sampling, per-processor tapes and the adversary. A ProtocolFault or a
/// budget breach becomes a failing "run.fault" verdict; ConfigError
/// propagates.
RunOutcome execute_scenario(const ScenarioConfig& s, std::uint64_t seed, Adversary* adversary_override = nullptr);

nlohmann::ordered_json report_to_json(const RunReport& report);
int exit_code(const RunReport& report);

/// Per-run line of a campaign.
struct RunSummary {
  std::uint64_t seed = 0;
  bool pass = true;
  bool safety_pass = true;
  bool all_decided = false;
  bool unanimous = false;
  std::vector<std::string> failed;
  std::vector<Value> decision_set;
  int rounds = 0;
  int max_decision_round = 0;
  int max_phase = 0;  // ben_or: phase of the last decision
};

struct MonteCarloReport {
  ProtocolKind protocol = ProtocolKind::kRenaming;
  std::uint64_t seed_base = 0;
  std::vector<RunSummary> runs;  // sorted by seed
  int safety_violations = 0;
  int liveness_failures = 0;
  std::map<std::string, int> verdict_failures;
  std::map<Value, int> decision_histogram;
  std::size_t max_decision_set_size = 0;
  double mean_rounds = 0;
  int max_rounds = 0;
  double mean_phases = 0;
  int max_phases = 0;

  bool pass() const { return safety_violations == 0 && liveness_failures == 0; }
};

RunSummary summarize(const RunReport& report);
/// Order-independent: sorts by seed before aggregating.
MonteCarloReport aggregate(ProtocolKind protocol, std::uint64_t seed_base, std::vector<RunSummary> runs);

/// Seeds seed_base .. seed_base + runs - 1, one after another.
MonteCarloReport montecarlo_serial(const ScenarioConfig& s, int runs, std::uint64_t seed_base);
/// Same campaign with one engine per OpenMP worker.
MonteCarloReport montecarlo_parallel(const ScenarioConfig& s, int runs, std::uint64_t seed_base);

nlohmann::ordered_json montecarlo_to_json(const MonteCarloReport& report, bool include_runs = false);

/// Re-executes the scenario (inputs and tapes from its seed) with the forged
/// envelopes of `trace` injected by a scripted adversary.
struct ReplayResult {
  RunReport report;
  bool decisions_match = false;
  bool trace_match = false;
};
ReplayResult replay(const ScenarioConfig& s, const Trace& trace);

}  // namespace impsim::sim
