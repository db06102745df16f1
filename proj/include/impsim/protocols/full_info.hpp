#pragma once

#include <memory>
#include <set>

#include "impsim/protocol.hpp"

namespace impsim {

/// Every round each processor rebroadcasts its entire view (input plus all
/// inboxes so far). Never decides. Used as the reference protocol for
/// similarity checks because a view determines the state exactly.
class FullInformationProtocol final : public Protocol {
 public:
  explicit FullInformationProtocol(int rounds) : rounds_(rounds) {}

  ProtocolKind kind() const override { return ProtocolKind::kFullInformation; }
  int default_max_rounds() const override { return rounds_; }

  StartResult init(ProcessorId id, const ProcessInput& input) const override;
  StepResult step(const ProcessState& state, int round, const RoundInbox& inbox) const override;

  static Value input_of(const FullInfoState& state) { return state.view.fields.at(0); }

 private:
  int rounds_;
};

struct ProtocolOptions {
  ProtocolKind kind = ProtocolKind::kFullInformation;
  int n = 1;
  int k = 0;
  int max_phases = 60;        // randomized consensus
  int rounds = 1;             // full information
  bool skip_round2_echo = false;  // renaming fault hook
};

std::unique_ptr<Protocol> make_protocol(const ProtocolOptions& opts);

}  // namespace impsim
