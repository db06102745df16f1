#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "impsim/envelope.hpp"
#include "impsim/errors.hpp"
#include "impsim/protocol.hpp"

namespace impsim {

struct EngineConfig {
  int n = 1;
  int k = 0;
  int max_rounds = 1;
  std::uint64_t seed = 0;
};

struct ProtocolRequirements {
  ProtocolKind kind = ProtocolKind::kFullInformation;
  /// |Vset| for set agreement.
  std::size_t value_domain_size = 0;
  /// Accept renaming under n > k^2 + k instead of n > k^2 + 2k.
  bool weak_renaming_bound = false;
};

/// Throws ConfigError naming the violated inequality.
void validate_config(const EngineConfig& cfg, const ProtocolRequirements& req);

/// Throws BudgetError if any receiver is targeted by more than k forged
/// envelopes. All envelopes must share one round.
void enforce_budget(std::span<const Envelope> forged, const EngineConfig& cfg);

}  // namespace impsim
