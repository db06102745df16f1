#include "impsim/chain/execute.hpp"

#include <algorithm>

#include "impsim/adversaries/graph_adversary.hpp"
#include "impsim/errors.hpp"

namespace impsim::chain {

namespace {

std::vector<ProcessInput> graph_inputs(const CommGraph& g) {
  std::vector<ProcessInput> inputs;
  for (Value v : g.base_inputs) inputs.push_back({v, 0});
  return inputs;
}

void require_valid(const CommGraph& g) {
  if (auto v = validate_graph(g); !v.empty()) throw ChainError(ChainError::Code::kInvalidGraph, v.front());
}

}  // namespace

ShadowRecord inverse_state(const ExecutionRecord& exec, const Protocol& protocol, int i, int r) {
  const ProcessorId id(i);
  const std::size_t slot = id.slot();
  if (r == 1) {
    ProcessInput flipped = exec.inputs[slot];
    flipped.value = 1 - flipped.value;
    auto start = protocol.init(id, flipped);
    return {id, std::move(start.state), std::move(start.outbox)};
  }
  const auto prev = static_cast<std::size_t>(r - 1);  // the round whose message is toggled
  const auto& adv = exec.adversary[prev - 1];
  if (!adv) return {id, exec.states[prev][slot], exec.outboxes[prev][slot]};

  std::vector<Envelope> box = exec.delivered[prev - 1][slot];
  auto forged = std::find_if(box.begin(), box.end(), [](const Envelope& e) { return e.origin == Origin::kForged; });
  if (forged != box.end()) {
    box.erase(forged);
  } else {
    box.push_back({adv->id, id, adv->outbox, Origin::kForged, r - 1});
    std::sort(box.begin(), box.end(), delivery_less);
  }
  auto step = protocol.step(exec.states[prev - 1][slot], r - 1, to_inbox(box));
  return {id, std::move(step.state), std::move(step.outbox)};
}

ExecutionRecord interpret_graph(const CommGraph& g, const Protocol& protocol) {
  require_valid(g);
  ExecutionRecord exec;
  exec.n = g.n;
  exec.horizon = g.horizon;
  exec.inputs = graph_inputs(g);
  const auto n = static_cast<std::size_t>(g.n);

  exec.states.emplace_back();
  exec.outboxes.emplace_back();
  for (std::size_t slot = 0; slot < n; ++slot) {
    auto start = protocol.init(id_from_slot(slot), exec.inputs[slot]);
    exec.states[0].push_back(std::move(start.state));
    exec.outboxes[0].push_back(std::move(start.outbox));
  }
  if (g.label(0).is_proc()) {
    exec.adversary.push_back(inverse_state(exec, protocol, g.label(0).processor, 1));
  } else {
    exec.adversary.push_back(std::nullopt);
  }

  for (int r = 1; r <= g.horizon; ++r) {
    const auto ri = static_cast<std::size_t>(r);
    const auto& adv = exec.adversary[ri - 1];
    auto& round_boxes = exec.delivered.emplace_back(n);
    for (std::size_t slot = 0; slot < n; ++slot) {
      auto& box = round_boxes[slot];
      for (std::size_t src = 0; src < n; ++src)
        box.push_back({id_from_slot(src), id_from_slot(slot), exec.outboxes[ri - 1][src], Origin::kGenuine, r});
      if (adv && g.has_edge(r, static_cast<int>(slot) + 1))
        box.push_back({adv->id, id_from_slot(slot), adv->outbox, Origin::kForged, r});
      std::sort(box.begin(), box.end(), delivery_less);
    }

    exec.states.emplace_back();
    exec.outboxes.emplace_back();
    for (std::size_t slot = 0; slot < n; ++slot) {
      auto step = protocol.step(exec.states[ri - 1][slot], r, to_inbox(exec.delivered[ri - 1][slot]));
      exec.states[ri].push_back(std::move(step.state));
      exec.outboxes[ri].push_back(std::move(step.outbox));
    }

    const auto& label = g.label(r);
    if (label.is_a()) {
      auto step = protocol.step(adv->state, r, to_inbox(exec.delivered[ri - 1][adv->id.slot()]));
      exec.adversary.push_back(ShadowRecord{adv->id, std::move(step.state), std::move(step.outbox)});
    } else if (label.is_proc()) {
      exec.adversary.push_back(inverse_state(exec, protocol, label.processor, r + 1));
    } else {
      exec.adversary.push_back(std::nullopt);
    }
  }
  return exec;
}

std::vector<Delivery> deliveries(const ExecutionRecord& exec) {
  std::vector<Delivery> out;
  for (const auto& round_boxes : exec.delivered) {
    for (const auto& box : round_boxes) {
      for (const auto& e : box)
        out.push_back({e.round, e.receiver, e.claimed_sender, e.origin == Origin::kForged, e.payload});
    }
  }
  return out;
}

std::vector<View> views_of(const ExecutionRecord& exec) {
  std::vector<View> views(static_cast<std::size_t>(exec.n));
  for (std::size_t slot = 0; slot < views.size(); ++slot) {
    views[slot].input = exec.inputs[slot].value;
    for (const auto& round_boxes : exec.delivered) {
      RoundInbox inbox = to_inbox(round_boxes[slot]);
      canonicalize(inbox);
      views[slot].inboxes.push_back(std::move(inbox));
    }
  }
  return views;
}

GraphExecution execute_graph(const CommGraph& g, const Protocol& protocol) {
  require_valid(g);
  GraphAdversary adversary(g, protocol);
  const EngineConfig cfg{g.n, 1, std::max(g.horizon, 1), 0};

  GraphExecution out;
  out.views.resize(static_cast<std::size_t>(g.n));
  for (std::size_t slot = 0; slot < out.views.size(); ++slot) out.views[slot].input = g.base_inputs[slot];

  if (g.horizon >= 1) {
    Engine engine(cfg, protocol, graph_inputs(g), adversary);
    engine.set_observer([&out](int, std::span<const ProcessState>, std::span<const RoundInbox> inboxes) {
      for (std::size_t slot = 0; slot < inboxes.size(); ++slot) {
        RoundInbox inbox = inboxes[slot];
        canonicalize(inbox);
        out.views[slot].inboxes.push_back(std::move(inbox));
      }
    });
    // Views cover the whole horizon regardless of decisions.
    while (engine.next_round() <= g.horizon) engine.run_round();
    for (const auto& event : engine.result().trace) {
      if (const auto* d = std::get_if<Delivery>(&event)) out.deliveries.push_back(*d);
    }
  }
  for (const auto& s : adversary.shadows()) out.shadow_ids.push_back(s ? std::optional(s->id) : std::nullopt);
  return out;
}

Similarity compare_views(const std::vector<View>& a, const std::vector<View>& b) {
  Similarity s;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t slot = 0; slot < n; ++slot) {
    if (slot >= a.size() || slot >= b.size() || !(a[slot] == b[slot])) s.differing.insert(id_from_slot(slot));
  }
  s.similar = s.differing.size() <= 1;
  return s;
}

Similarity verify_similar(const CommGraph& g1, const CommGraph& g2, const Protocol& protocol) {
  return compare_views(execute_graph(g1, protocol).views, execute_graph(g2, protocol).views);
}

}  // namespace impsim::chain
