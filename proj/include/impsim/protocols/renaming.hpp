#pragma once

#include <set>

#include "impsim/protocol.hpp"

namespace impsim {

/// 1-based position of `v` among the distinct values of `values`. Throws
/// ProtocolFault(kMissingValue) when v is absent.
int rank(Value v, const std::set<Value>& values);

/// S = {v | (p, v) in V}.
std::set<Value> value_set(const VVector& accepted);

/// Order-preserving renaming into 1..n+k, layered on the echo protocol that
/// builds the V vector. Runs n+k+4 rounds; decisions happen at the end of
/// rounds 4..n+k+3.
class RenamingProtocol final : public Protocol {
 public:
  struct Options {
    int n = 1;
    int k = 0;
    /// Fault hook for negative controls: never send the round-2 echoes.
    bool skip_round2_echo = false;
  };

  explicit RenamingProtocol(Options opts) : opts_(opts) {}

  ProtocolKind kind() const override { return ProtocolKind::kRenaming; }
  int default_max_rounds() const override { return horizon(); }
  int horizon() const { return opts_.n + opts_.k + 4; }
  const Options& options() const { return opts_; }

  StartResult init(ProcessorId id, const ProcessInput& input) const override;
  StepResult step(const ProcessState& state, int round, const RoundInbox& inbox) const override;

  /// The echo layer alone: consumes the round's inbox and returns the updated
  /// state plus the next-round broadcast.
  std::pair<RenamingState, Message> echo_vector_round(const RenamingState& state, int round,
                                                      const RoundInbox& inbox) const;

 private:
  Options opts_;
};

}  // namespace impsim
