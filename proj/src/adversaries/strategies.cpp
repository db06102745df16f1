#include "impsim/adversaries/strategies.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "impsim/errors.hpp"

namespace impsim {

SybilTwinAdversary::SybilTwinAdversary(std::vector<TwinSpec> twins, const Protocol& protocol)
    : twins_(std::move(twins)), protocol_(&protocol) {
  std::set<ProcessorId> targets;
  for (const auto& t : twins_) {
    if (!targets.insert(t.target).second) throw ConfigError("twins", "duplicate twin target " + t.target.tag());
  }
  decisions_.assign(twins_.size(), std::nullopt);
  history_.assign(twins_.size(), {});
}

std::vector<Envelope> SybilTwinAdversary::forge(const RoundContext& ctx) {
  const int n = ctx.cfg->n;
  if (!started_) {
    if (static_cast<int>(twins_.size()) > ctx.cfg->k)
      throw ConfigError("twins", "twin count " + std::to_string(twins_.size()) + " exceeds k");
    for (const auto& t : twins_) {
      if (t.target.index() < 1 || t.target.index() > n) throw ConfigError("twins", "unknown target " + t.target.tag());
      auto start = protocol_->init(t.target, {t.alt_input, t.tape});
      states_.push_back(std::move(start.state));
      outboxes_.push_back(std::move(start.outbox));
    }
    started_ = true;
  }

  std::vector<Envelope> forged;
  forged.reserve(twins_.size() * static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    for (std::size_t t = 0; t < twins_.size(); ++t)
      forged.push_back({twins_[t].target, ProcessorId(j), outboxes_[t], Origin::kForged, ctx.round});
  }

  // Shadows see what every real processor sees: all genuine plus all shadow broadcasts.
  std::vector<Envelope> heard;
  for (std::size_t src = 0; src < ctx.genuine.size(); ++src)
    heard.push_back({id_from_slot(src), ProcessorId{}, ctx.genuine[src], Origin::kGenuine, ctx.round});
  for (std::size_t t = 0; t < twins_.size(); ++t)
    heard.push_back({twins_[t].target, ProcessorId{}, outboxes_[t], Origin::kForged, ctx.round});
  std::sort(heard.begin(), heard.end(), delivery_less);
  const RoundInbox inbox = to_inbox(heard);

  for (std::size_t t = 0; t < twins_.size(); ++t) {
    history_[t].push_back(outboxes_[t]);
    auto step = protocol_->step(states_[t], ctx.round, inbox);
    states_[t] = std::move(step.state);
    outboxes_[t] = std::move(step.outbox);
    if (step.decision && !decisions_[t]) decisions_[t] = Decision{twins_[t].target, *step.decision, ctx.round};
  }
  return forged;
}

bool SybilTwinAdversary::idle() const {
  return std::all_of(decisions_.begin(), decisions_.end(), [](const auto& d) { return d.has_value(); });
}

namespace {

using Alphabet = std::map<std::pair<PayloadKind, std::size_t>, std::vector<Value>>;

Alphabet observed_alphabet(std::span<const Message> genuine) {
  std::map<std::pair<PayloadKind, std::size_t>, std::set<Value>> seen;
  for (const auto& m : genuine) {
    for (const auto& item : m.items()) {
      for (std::size_t f = 0; f < item.fields.size(); ++f) seen[{item.kind, f}].insert(item.fields[f]);
    }
  }
  Alphabet out;
  for (auto& [key, values] : seen) out[key] = {values.begin(), values.end()};
  return out;
}

template <class Rng>
std::size_t pick(Rng& rng, std::size_t size) {
  return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
}

}  // namespace

std::vector<Envelope> RandomForger::forge(const RoundContext& ctx) {
  const int n = ctx.cfg->n;
  const int k = ctx.cfg->k;
  std::vector<Envelope> forged;
  if (k == 0 || ctx.genuine.empty()) return forged;

  const Alphabet alphabet = mode_ == Mode::kMutate ? observed_alphabet(ctx.genuine) : Alphabet{};
  std::uniform_int_distribution<int> count_dist(0, k);
  std::uniform_int_distribution<int> sender_dist(1, n);
  std::bernoulli_distribution flip(0.5);

  for (int j = 1; j <= n; ++j) {
    const int c = count_dist(rng_);
    for (int e = 0; e < c; ++e) {
      const ProcessorId sender(sender_dist(rng_));
      const Message& base = ctx.genuine[pick(rng_, ctx.genuine.size())];
      Message payload = base;
      if (mode_ == Mode::kMutate) {
        std::vector<Payload> items = base.items();
        for (auto& item : items) {
          for (std::size_t f = 0; f < item.fields.size(); ++f) {
            if (!flip(rng_)) continue;
            const auto& values = alphabet.at({item.kind, f});
            item.fields[f] = values[pick(rng_, values.size())];
          }
        }
        payload = Message(std::move(items));
      }
      forged.push_back({sender, ProcessorId(j), std::move(payload), Origin::kForged, ctx.round});
    }
  }
  return forged;
}

std::vector<Envelope> DuplicateSpamAdversary::forge(const RoundContext& ctx) {
  const int n = ctx.cfg->n;
  const int count = std::min({count_, ctx.cfg->k, n});
  std::vector<Envelope> forged;
  std::vector<int> ids(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    std::iota(ids.begin(), ids.end(), 1);
    std::shuffle(ids.begin(), ids.end(), rng_);
    for (int c = 0; c < count; ++c) {
      const ProcessorId victim(ids[static_cast<std::size_t>(c)]);
      forged.push_back({victim, ProcessorId(j), ctx.genuine[victim.slot()], Origin::kForged, ctx.round});
    }
  }
  return forged;
}

std::vector<Envelope> ScriptedAdversary::forge(const RoundContext& ctx) {
  last_round_ = ctx.round;
  auto it = script_.find(ctx.round);
  if (it == script_.end()) return {};
  return it->second;
}

bool ScriptedAdversary::idle() const { return script_.upper_bound(last_round_) == script_.end(); }

std::map<int, std::vector<Envelope>> forged_script(const Trace& trace) {
  std::map<int, std::vector<Envelope>> script;
  for (const auto& event : trace) {
    const auto* d = std::get_if<Delivery>(&event);
    if (!d || !d->forged) continue;
    script[d->round].push_back({d->sender, d->receiver, d->payload, Origin::kForged, d->round});
  }
  return script;
}

}  // namespace impsim
