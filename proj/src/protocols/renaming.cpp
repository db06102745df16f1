#include "impsim/protocols/renaming.hpp"

#include <map>

#include "impsim/errors.hpp"

namespace impsim {

namespace {

using SenderCount = std::map<IdValue, std::set<ProcessorId>>;

/// For every (p, v) carried by items of `kind`, the distinct claimed senders.
SenderCount distinct_senders(const RoundInbox& inbox, PayloadKind kind) {
  SenderCount counts;
  for (const auto& entry : inbox) {
    for (const auto& item : entry.message.items()) {
      if (item.kind != kind || item.fields.size() != 2) continue;
      counts[{ProcessorId(static_cast<int>(item.fields[0])), item.fields[1]}].insert(entry.sender);
    }
  }
  return counts;
}

Message echo_message(const RenamingState& s) {
  std::vector<Payload> items;
  for (const auto& [p, v] : s.accepted) items.push_back(Payload::echo(p, v));
  for (const auto& [p, v] : s.echo_next) items.push_back(Payload::echo(p, v));
  return Message(std::move(items));
}

}  // namespace

int rank(Value v, const std::set<Value>& values) {
  auto it = values.find(v);
  if (it == values.end())
    throw ProtocolFault(ProtocolFault::Code::kMissingValue, "rank: value " + std::to_string(v) + " not in S");
  return static_cast<int>(std::distance(values.begin(), it)) + 1;
}

std::set<Value> value_set(const VVector& accepted) {
  std::set<Value> out;
  for (const auto& [p, v] : accepted) out.insert(v);
  return out;
}

StartResult RenamingProtocol::init(ProcessorId, const ProcessInput& input) const {
  RenamingState s;
  s.v0 = input.value;
  return {std::move(s), Message({Payload::input(input.value)})};
}

std::pair<RenamingState, Message> RenamingProtocol::echo_vector_round(const RenamingState& state, int round,
                                                                     const RoundInbox& inbox) const {
  RenamingState s = state;
  const auto n = static_cast<std::size_t>(opts_.n);
  const auto quorum_low = static_cast<std::size_t>(opts_.n - opts_.k);

  if (round == 1) {
    // Only well-formed round-1 messages (a single value) are echoed.
    std::vector<Payload> items;
    if (!opts_.skip_round2_echo) {
      for (const auto& entry : inbox) {
        if (const auto* in = entry.message.sole(PayloadKind::kInput); in && in->fields.size() == 1)
          items.push_back(Payload::echo1(entry.sender, in->fields[0]));
      }
    }
    return {std::move(s), Message(std::move(items))};
  }

  if (round == 2) {
    s.echo_next.clear();
    for (const auto& [pair, senders] : distinct_senders(inbox, PayloadKind::kEcho1)) {
      if (senders.size() >= n) s.echo_next.insert(pair);
    }
    Message out = echo_message(s);
    return {std::move(s), std::move(out)};
  }

  s.echo_next.clear();
  for (const auto& [pair, senders] : distinct_senders(inbox, PayloadKind::kEcho)) {
    if (senders.size() >= n) s.accepted.insert(pair);
    if (senders.size() >= quorum_low && !s.accepted.contains(pair)) s.echo_next.insert(pair);
  }
  Message out = echo_message(s);
  return {std::move(s), std::move(out)};
}

StepResult RenamingProtocol::step(const ProcessState& state, int round, const RoundInbox& inbox) const {
  auto [s, out] = echo_vector_round(std::get<RenamingState>(state), round, inbox);
  std::optional<Value> decision;
  if (round >= 3) {
    s.prev_rank = s.rank;
    s.rank = rank(s.v0, value_set(s.accepted));
    const int r = round - 3;
    if (r >= 1 && r <= opts_.n + opts_.k && !s.decided && s.rank == r && s.prev_rank == r) {
      s.decided = r;
      decision = r;
    }
  }
  return {std::move(s), std::move(out), decision};
}

}  // namespace impsim
