#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "impsim/adversaries/strategies.hpp"
#include "impsim/chain/comm_graph.hpp"
#include "impsim/config.hpp"
#include "impsim/protocols/full_info.hpp"

namespace impsim::sim {

inline constexpr int kScenarioSchemaVersion = 1;

struct AdversarySpec {
  enum class Kind { kNull, kSybilTwin, kRandomForger, kDuplicateSpam, kGraph };

  Kind kind = Kind::kNull;
  std::vector<TwinSpec> twins;
  std::vector<bool> explicit_tapes;  // per twin; otherwise derived from the run seed
  RandomForger::Mode mode = RandomForger::Mode::kReplay;
  int spam_ids = 0;
  std::filesystem::path graph_path;
  std::optional<chain::CommGraph> graph;  // loaded from graph_path
};

struct InputDistribution {
  Value lo = 0;
  Value hi = 0;
};

struct ScenarioConfig {
  ProtocolKind protocol = ProtocolKind::kRenaming;
  int n = 0;
  int k = 0;
  std::optional<std::vector<Value>> inputs;
  std::optional<InputDistribution> input_dist;
  std::vector<Value> value_domain;
  AdversarySpec adversary;
  std::uint64_t seed = 0;
  std::optional<int> max_rounds;
  std::optional<int> max_phases;
  bool weak_renaming_bound = false;
  bool skip_round2_echo = false;  // fault hook "skip_round2_echo"
};

/// Parses and validates. `base_dir` resolves relative graph paths. Throws
/// ConfigError(field, reason); unknown fields are rejected.
ScenarioConfig parse_scenario(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Checks the protocol preconditions and input constraints.
void validate_scenario(const ScenarioConfig& s);

ProtocolRequirements requirements(const ScenarioConfig& s);
ProtocolOptions protocol_options(const ScenarioConfig& s);
EngineConfig engine_config(const ScenarioConfig& s, const Protocol& protocol, std::uint64_t seed);

/// Explicit inputs, or a draw from input_dist seeded by `seed`.
std::vector<Value> scenario_inputs(const ScenarioConfig& s, std::uint64_t seed);

std::unique_ptr<Adversary> make_adversary(const ScenarioConfig& s, const Protocol& protocol, std::uint64_t seed);

}  // namespace impsim::sim
