#include "impsim/protocols/full_info.hpp"

#include "impsim/protocols/ben_or.hpp"
#include "impsim/protocols/renaming.hpp"
#include "impsim/protocols/set_agreement.hpp"

namespace impsim {

StartResult FullInformationProtocol::init(ProcessorId, const ProcessInput& input) const {
  FullInfoState s{Payload{PayloadKind::kView, {input.value}, {}}};
  Message out({s.view});
  return {std::move(s), std::move(out)};
}

StepResult FullInformationProtocol::step(const ProcessState& state, int, const RoundInbox& inbox) const {
  FullInfoState s = std::get<FullInfoState>(state);
  RoundInbox sorted = inbox;
  canonicalize(sorted);

  Payload round_record{PayloadKind::kRound, {}, {}};
  round_record.children.reserve(sorted.size());
  for (const auto& entry : sorted)
    round_record.children.push_back(Payload{PayloadKind::kEntry, {entry.sender.index()}, entry.message.items()});
  s.view.children.push_back(std::move(round_record));

  Message out({s.view});
  return {std::move(s), std::move(out), std::nullopt};
}

std::unique_ptr<Protocol> make_protocol(const ProtocolOptions& opts) {
  switch (opts.kind) {
    case ProtocolKind::kRenaming:
      return std::make_unique<RenamingProtocol>(RenamingProtocol::Options{opts.n, opts.k, opts.skip_round2_echo});
    case ProtocolKind::kSetAgreement:
      return std::make_unique<SetAgreementProtocol>(SetAgreementProtocol::Options{opts.n, opts.k});
    case ProtocolKind::kBenOr:
      return std::make_unique<BenOrProtocol>(BenOrProtocol::Options{opts.n, opts.k, opts.max_phases});
    case ProtocolKind::kFullInformation:
      return std::make_unique<FullInformationProtocol>(opts.rounds);
  }
  return nullptr;
}

}  // namespace impsim
