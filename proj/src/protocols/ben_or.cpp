#include "impsim/protocols/ben_or.hpp"

#include <array>
#include <map>
#include <stdexcept>

namespace impsim {

RoundInbox async_filter(const RoundInbox& inbox) {
  std::map<ProcessorId, int> occurrences;
  for (const auto& entry : inbox) ++occurrences[entry.sender];
  RoundInbox kept;
  kept.reserve(inbox.size());
  for (const auto& entry : inbox) {
    if (occurrences[entry.sender] == 1) kept.push_back(entry);
  }
  return kept;
}

Value BenOrProtocol::coin(std::uint64_t tape, int phase) {
  return static_cast<Value>(splitmix64(tape ^ splitmix64(static_cast<std::uint64_t>(phase))) & 1U);
}

namespace {

Message with_decision(Payload item, const BenOrState& s) {
  std::vector<Payload> items{std::move(item)};
  if (s.decided) items.push_back(Payload::decided(*s.decided));
  return Message(std::move(items));
}

/// The unique item of `kind` for `phase` in a message, or null if absent or
/// ambiguous.
const Payload* phase_item(const Message& m, PayloadKind kind, int phase) {
  const Payload* found = nullptr;
  for (const auto& item : m.items()) {
    if (item.kind != kind || item.fields.empty() || item.fields[0] != phase) continue;
    if (found) return nullptr;
    found = &item;
  }
  return found;
}

bool binary(Value v) { return v == 0 || v == 1; }

}  // namespace

StartResult BenOrProtocol::init(ProcessorId, const ProcessInput& input) const {
  if (!binary(input.value)) throw std::invalid_argument("randomized consensus takes binary inputs");
  BenOrState s;
  s.estimate = input.value;
  s.tape = input.tape;
  Message out = with_decision(Payload::report(1, s.estimate), s);
  return {std::move(s), std::move(out)};
}

StepResult BenOrProtocol::step(const ProcessState& state, int round, const RoundInbox& inbox) const {
  BenOrState s = std::get<BenOrState>(state);
  const int phase = phase_of_round(round);
  const RoundInbox filtered = async_filter(inbox);

  if (round % 2 == 1) {
    std::array<int, 2> counts{0, 0};
    for (const auto& entry : filtered) {
      const auto* item = phase_item(entry.message, PayloadKind::kBrReport, phase);
      if (item && item->fields.size() == 2 && binary(item->fields[1])) ++counts[item->fields[1]];
    }
    s.proposal.reset();
    for (Value v : {0, 1}) {
      if (2 * counts[v] > opts_.n) s.proposal = v;
    }
    s.phase = phase;
    Message out = with_decision(Payload::propose(phase, s.proposal), s);
    return {std::move(s), std::move(out), std::nullopt};
  }

  std::array<int, 2> counts{0, 0};
  for (const auto& entry : filtered) {
    const auto* item = phase_item(entry.message, PayloadKind::kBrPropose, phase);
    if (item && item->fields.size() == 2 && binary(item->fields[1])) ++counts[item->fields[1]];
  }

  std::optional<Value> decision;
  if (!s.decided) {
    const Value leading = counts[1] > counts[0] ? 1 : 0;
    if (counts[leading] >= opts_.k + 1) {
      s.decided = leading;
      s.decided_phase = phase;
      s.estimate = leading;
      decision = leading;
    } else if (counts[leading] >= 1) {
      s.estimate = leading;
    } else {
      s.estimate = coin(s.tape, phase);
    }
  }
  s.phase = phase + 1;
  s.proposal.reset();
  Message out = with_decision(Payload::report(s.phase, s.estimate), s);
  return {std::move(s), std::move(out), decision};
}

}  // namespace impsim
