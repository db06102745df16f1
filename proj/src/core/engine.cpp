#include "impsim/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace impsim {

Engine::Engine(EngineConfig cfg, const Protocol& protocol, std::vector<ProcessInput> inputs, Adversary& adversary)
    : cfg_(cfg), protocol_(&protocol), inputs_(std::move(inputs)), adversary_(&adversary) {
  if (inputs_.size() != static_cast<std::size_t>(cfg_.n))
    throw ConfigError("inputs", "expected " + std::to_string(cfg_.n) + " inputs, got " + std::to_string(inputs_.size()));
  states_.reserve(inputs_.size());
  outboxes_.reserve(inputs_.size());
  for (std::size_t slot = 0; slot < inputs_.size(); ++slot) {
    auto start = protocol_->init(id_from_slot(slot), inputs_[slot]);
    states_.push_back(std::move(start.state));
    outboxes_.push_back(std::move(start.outbox));
  }
  result_.decisions.assign(inputs_.size(), std::nullopt);
}

void Engine::run_round() {
  if (round_ > cfg_.max_rounds) throw std::logic_error("run_round past max_rounds");
  const auto n = static_cast<std::size_t>(cfg_.n);

  RoundContext ctx{round_, &cfg_, inputs_, outboxes_};
  std::vector<Envelope> forged = adversary_->forge(ctx);
  for (auto& e : forged) {
    e.origin = Origin::kForged;
    e.round = round_;
  }
  enforce_budget(forged, cfg_);

  std::vector<std::vector<Envelope>> delivered(n);
  for (std::size_t recv = 0; recv < n; ++recv) {
    auto& box = delivered[recv];
    box.reserve(n + static_cast<std::size_t>(cfg_.k));
    for (std::size_t src = 0; src < n; ++src)
      box.push_back({id_from_slot(src), id_from_slot(recv), outboxes_[src], Origin::kGenuine, round_});
  }
  for (auto& e : forged) delivered[e.receiver.slot()].push_back(std::move(e));

  std::vector<RoundInbox> inboxes(n);
  for (std::size_t recv = 0; recv < n; ++recv) {
    auto& box = delivered[recv];
    std::sort(box.begin(), box.end(), delivery_less);

    std::size_t genuine = 0;
    std::size_t fake = 0;
    for (const auto& e : box) (e.origin == Origin::kGenuine ? genuine : fake)++;
    if (genuine != n || fake > static_cast<std::size_t>(cfg_.k))
      throw std::logic_error("inbox invariant violated for " + id_from_slot(recv).tag());

    for (const auto& e : box)
      result_.trace.emplace_back(Delivery{round_, e.receiver, e.claimed_sender, e.origin == Origin::kForged, e.payload});
    inboxes[recv] = to_inbox(box);
  }

  for (std::size_t slot = 0; slot < n; ++slot) {
    auto step = protocol_->step(states_[slot], round_, inboxes[slot]);
    states_[slot] = std::move(step.state);
    outboxes_[slot] = std::move(step.outbox);
    if (step.decision && !result_.decisions[slot]) {
      Decision d{id_from_slot(slot), *step.decision, round_};
      result_.decisions[slot] = d;
      result_.trace.emplace_back(d);
    }
  }

  if (observer_) observer_(round_, states_, inboxes);
  result_.rounds_executed = round_;
  ++round_;
}

bool Engine::all_decided() const {
  return std::all_of(result_.decisions.begin(), result_.decisions.end(), [](const auto& d) { return d.has_value(); });
}

bool Engine::finished() const {
  if (round_ > cfg_.max_rounds) return true;
  return all_decided() && adversary_->idle();
}

RunResult Engine::take_result() {
  result_.non_termination = !all_decided();
  return std::move(result_);
}

RunResult run_protocol(const EngineConfig& cfg, const Protocol& protocol, std::vector<ProcessInput> inputs,
                       Adversary& adversary, RoundObserver observer) {
  Engine engine(cfg, protocol, std::move(inputs), adversary);
  engine.set_observer(std::move(observer));
  while (!engine.finished()) engine.run_round();
  return engine.take_result();
}

std::vector<ProcessInput> make_inputs(std::span<const Value> values, std::uint64_t seed) {
  std::vector<ProcessInput> inputs;
  inputs.reserve(values.size());
  for (std::size_t slot = 0; slot < values.size(); ++slot)
    inputs.push_back({values[slot], splitmix64(seed ^ splitmix64(slot + 1))});
  return inputs;
}

std::vector<std::optional<Value>> decided_values(const RunResult& result) {
  std::vector<std::optional<Value>> out;
  out.reserve(result.decisions.size());
  for (const auto& d : result.decisions) out.push_back(d ? std::optional<Value>(d->value) : std::nullopt);
  return out;
}

}  // namespace impsim
