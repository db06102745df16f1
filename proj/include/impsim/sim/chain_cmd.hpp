#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "impsim/chain/builder.hpp"

namespace impsim::sim {

struct ChainRequest {
  int n = 3;
  int rounds = 1;
  std::filesystem::path out_dir;  // empty: nothing written
  bool verify = false;
  bool force = false;
  bool parallel = true;
};

struct ChainReport {
  int n = 0;
  int rounds = 0;
  std::size_t graphs = 0;
  std::size_t steps = 0;
  std::uint64_t start_fingerprint = 0;
  std::uint64_t end_fingerprint = 0;
  bool endpoints_ok = false;
  bool verified = false;
  std::size_t pairs_checked = 0;
  std::size_t pairs_failed = 0;
  std::optional<std::size_t> first_failure;
  std::optional<std::size_t> strawman_violation;
  double wall_ms = 0;

  bool pass() const { return endpoints_ok && pairs_failed == 0; }
};

/// SIMCTL_MAX_CHAIN: "<max_n>:<max_R>", or one integer used for both.
/// Throws ConfigError on a malformed value.
chain::ChainLimits parse_chain_limits(const char* env);

/// Builds the full chain, writes graph_<index>.json files and chain.json into
/// out_dir, and optionally verifies every adjacent pair under the
/// full-information protocol. Throws ChainError(kHorizonExceeded) on a cap
/// breach without force and ChainError(kPreconditionFailed) for n < 2 or R < 1.
ChainReport run_chain(const ChainRequest& request, const chain::ChainLimits& limits);

nlohmann::ordered_json chain_report_to_json(const ChainReport& report);

}  // namespace impsim::sim
