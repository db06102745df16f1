#pragma once

#include "impsim/protocol.hpp"

namespace impsim {

/// Asynchrony simulation: every entry whose claimed sender appears more than
/// once is dropped. With a k-adversary at most k sender ids lose their
/// messages, as with k crash-like omissions.
RoundInbox async_filter(const RoundInbox& inbox);

/// Ben-Or style randomized binary consensus run over the async filter.
/// Phase p uses round 2p-1 for reports and round 2p for proposals.
///   report:   propose v if more than n/2 filtered reports carry v, else bottom
///   proposal: decide v on >= k+1 proposals for v; adopt v on >= 1; else coin
class BenOrProtocol final : public Protocol {
 public:
  struct Options {
    int n = 1;
    int k = 0;
    int max_phases = 60;
  };

  explicit BenOrProtocol(Options opts) : opts_(opts) {}

  ProtocolKind kind() const override { return ProtocolKind::kBenOr; }
  int default_max_rounds() const override { return 2 * opts_.max_phases; }

  StartResult init(ProcessorId id, const ProcessInput& input) const override;
  StepResult step(const ProcessState& state, int round, const RoundInbox& inbox) const override;

  static int phase_of_round(int round) { return (round + 1) / 2; }
  /// Fair coin for `phase` drawn from the processor's tape.
  static Value coin(std::uint64_t tape, int phase);

 private:
  Options opts_;
};

}  // namespace impsim
