#include "impsim/protocols/set_agreement.hpp"

#include <map>

#include "impsim/errors.hpp"

namespace impsim {

StartResult SetAgreementProtocol::init(ProcessorId, const ProcessInput& input) const {
  SetAgreementState s;
  s.v0 = input.value;
  return {std::move(s), Message({Payload::sa_value(input.value)})};
}

StepResult SetAgreementProtocol::step(const ProcessState& state, int round, const RoundInbox& inbox) const {
  SetAgreementState s = std::get<SetAgreementState>(state);

  if (round == 1) {
    std::map<Value, std::set<ProcessorId>> sources;
    for (const auto& entry : inbox) {
      if (const auto* item = entry.message.sole(PayloadKind::kSaVal); item && item->fields.size() == 1)
        sources[item->fields[0]].insert(entry.sender);
    }
    std::vector<Payload> echoes;
    for (const auto& [v, senders] : sources) {
      if (senders.size() > static_cast<std::size_t>(opts_.k)) {
        s.echoed.insert(v);
        echoes.push_back(Payload::sa_echo(v));
      }
    }
    return {std::move(s), Message(std::move(echoes)), std::nullopt};
  }

  if (round == 2) {
    std::map<Value, std::set<ProcessorId>> sources;
    for (const auto& entry : inbox) {
      for (const auto& item : entry.message.items()) {
        if (item.kind == PayloadKind::kSaEcho && item.fields.size() == 1) sources[item.fields[0]].insert(entry.sender);
      }
    }
    for (Value v : s.echoed) {
      if (auto it = sources.find(v); it != sources.end() && it->second.size() >= static_cast<std::size_t>(opts_.n))
        s.candidates.insert(v);
    }
    if (s.candidates.empty())
      throw ProtocolFault(ProtocolFault::Code::kEmptyCandidates, "set agreement: M is empty at decision time");
    s.decided = *s.candidates.begin();
    const Value d = *s.decided;
    return {std::move(s), Message({Payload::decided(d)}), d};
  }

  std::optional<Value> none;
  Message out = s.decided ? Message({Payload::decided(*s.decided)}) : Message();
  return {std::move(s), std::move(out), none};
}

Value boost_participants(std::span<const Value> received, int k) {
  std::map<Value, int> counts;
  for (Value v : received) ++counts[v];
  for (const auto& [v, c] : counts) {
    if (c > k) return v;
  }
  throw ProtocolFault(ProtocolFault::Code::kNoQualifyingValue, "no value appears in more than k decision messages");
}

Value boost_participants(const RoundInbox& inbox, int k) {
  std::vector<Value> values;
  for (const auto& entry : inbox) {
    if (const auto* item = entry.message.sole(PayloadKind::kDecided); item && item->fields.size() == 1)
      values.push_back(item->fields[0]);
  }
  return boost_participants(values, k);
}

}  // namespace impsim
