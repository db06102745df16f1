#include "impsim/adversaries/graph_adversary.hpp"

#include <algorithm>
#include <stdexcept>

#include "impsim/errors.hpp"

namespace impsim {

GraphAdversary::GraphAdversary(chain::CommGraph graph, const Protocol& protocol)
    : graph_(std::move(graph)), protocol_(&protocol) {
  if (auto violations = chain::validate_graph(graph_); !violations.empty())
    throw ChainError(ChainError::Code::kInvalidGraph, "graph adversary: " + violations.front());
}

std::vector<Envelope> GraphAdversary::forge(const RoundContext& ctx) {
  const int r = ctx.round;
  const auto n = static_cast<std::size_t>(graph_.n);

  if (r == 1) {
    if (ctx.cfg->n != graph_.n || ctx.cfg->max_rounds != graph_.horizon || ctx.cfg->k < 1)
      throw ChainError(ChainError::Code::kGraphMismatch,
                       "graph (n=" + std::to_string(graph_.n) + ", R=" + std::to_string(graph_.horizon) +
                           ") does not match run (n=" + std::to_string(ctx.cfg->n) +
                           ", max_rounds=" + std::to_string(ctx.cfg->max_rounds) + ", k=" + std::to_string(ctx.cfg->k) + ")");
    inputs_.assign(ctx.inputs.begin(), ctx.inputs.end());
    for (std::size_t slot = 0; slot < n; ++slot) {
      auto start = protocol_->init(id_from_slot(slot), inputs_[slot]);
      mirror_.push_back(std::move(start.state));
      mirror_out_.push_back(std::move(start.outbox));
    }
    const auto& l0 = graph_.label(0);
    if (l0.is_proc()) {
      const ProcessorId id(l0.processor);
      ProcessInput flipped = inputs_[id.slot()];
      flipped.value = 1 - flipped.value;
      auto start = protocol_->init(id, flipped);
      shadows_.push_back(Shadow{id, std::move(start.state), std::move(start.outbox)});
    } else {
      shadows_.push_back(std::nullopt);
    }
  }
  if (r > graph_.horizon) return {};

  for (std::size_t slot = 0; slot < n; ++slot) {
    if (!(ctx.genuine[slot] == mirror_out_[slot]))
      throw std::logic_error("graph adversary mirror diverged for " + id_from_slot(slot).tag());
  }

  const auto& adv = shadows_[static_cast<std::size_t>(r - 1)];
  std::vector<Envelope> forged;
  std::vector<std::vector<Envelope>> delivered(n);
  for (std::size_t slot = 0; slot < n; ++slot) {
    for (std::size_t src = 0; src < n; ++src)
      delivered[slot].push_back({id_from_slot(src), id_from_slot(slot), ctx.genuine[src], Origin::kGenuine, r});
    if (adv && graph_.has_edge(r, static_cast<int>(slot) + 1)) {
      Envelope e{adv->id, id_from_slot(slot), adv->outbox, Origin::kForged, r};
      forged.push_back(e);
      delivered[slot].push_back(std::move(e));
    }
    std::sort(delivered[slot].begin(), delivered[slot].end(), delivery_less);
  }

  std::optional<Shadow> next;
  const auto& label = graph_.label(r);
  if (label.is_a()) {
    if (!adv) throw std::logic_error("A label without a previous shadow");
    auto step = protocol_->step(adv->state, r, to_inbox(delivered[adv->id.slot()]));
    next = Shadow{adv->id, std::move(step.state), std::move(step.outbox)};
  } else if (label.is_proc()) {
    const ProcessorId id(label.processor);
    std::vector<Envelope> toggled = delivered[id.slot()];
    if (adv) {
      auto it = std::find_if(toggled.begin(), toggled.end(), [](const Envelope& e) { return e.origin == Origin::kForged; });
      if (it != toggled.end()) {
        toggled.erase(it);
      } else {
        toggled.push_back({adv->id, id, adv->outbox, Origin::kForged, r});
        std::sort(toggled.begin(), toggled.end(), delivery_less);
      }
    }
    auto step = protocol_->step(mirror_[id.slot()], r, to_inbox(toggled));
    next = Shadow{id, std::move(step.state), std::move(step.outbox)};
  }
  shadows_.push_back(std::move(next));

  for (std::size_t slot = 0; slot < n; ++slot) {
    auto step = protocol_->step(mirror_[slot], r, to_inbox(delivered[slot]));
    mirror_[slot] = std::move(step.state);
    mirror_out_[slot] = std::move(step.outbox);
  }
  return forged;
}

}  // namespace impsim
