#pragma once

#include <optional>
#include <string_view>

#include "impsim/envelope.hpp"
#include "impsim/protocols/states.hpp"

namespace impsim {

enum class ProtocolKind { kRenaming, kSetAgreement, kBenOr, kFullInformation };

std::string_view protocol_name(ProtocolKind kind);
std::optional<ProtocolKind> protocol_from_name(std::string_view name);

struct StartResult {
  ProcessState state;
  Message outbox;  // round-1 broadcast
};

struct StepResult {
  ProcessState state;
  Message outbox;  // next-round broadcast
  std::optional<Value> decision;
};

/// A deterministic per-processor transition system. `step` consumes the inbox
/// of `round` and yields the broadcast for `round + 1`. Implementations must
/// not depend on inbox order or on how ids compare, only on id equality.
class Protocol {
 public:
  virtual ~Protocol() = default;

  virtual ProtocolKind kind() const = 0;
  virtual int default_max_rounds() const = 0;
  virtual StartResult init(ProcessorId id, const ProcessInput& input) const = 0;
  virtual StepResult step(const ProcessState& state, int round, const RoundInbox& inbox) const = 0;
};

}  // namespace impsim
