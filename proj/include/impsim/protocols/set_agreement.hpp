#pragma once

#include <span>

#include "impsim/protocol.hpp"

namespace impsim {

/// Two-round (k+1)-set agreement against a k-adversary, for n > |Vset| k.
/// Decides min(M) at the end of round 2.
class SetAgreementProtocol final : public Protocol {
 public:
  struct Options {
    int n = 1;
    int k = 0;
  };

  explicit SetAgreementProtocol(Options opts) : opts_(opts) {}

  ProtocolKind kind() const override { return ProtocolKind::kSetAgreement; }
  int default_max_rounds() const override { return 2; }

  StartResult init(ProcessorId id, const ProcessInput& input) const override;
  StepResult step(const ProcessState& state, int round, const RoundInbox& inbox) const override;

 private:
  Options opts_;
};

/// Decision rule for processors that joined after a set-agreement run: any
/// value carried by more than k received decision messages (smallest such
/// value). Throws ProtocolFault(kNoQualifyingValue) if none qualifies.
Value boost_participants(std::span<const Value> received, int k);

/// Same rule over an inbox of DECIDED(v) messages; other messages are ignored.
Value boost_participants(const RoundInbox& inbox, int k);

}  // namespace impsim
