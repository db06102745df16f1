#include "impsim/chain/builder.hpp"

#include <algorithm>
#include <exception>

#include "impsim/errors.hpp"

namespace impsim::chain {

ChainBuilder::ChainBuilder(int n, int horizon, ChainLimits limits) : n_(n), horizon_(horizon) {
  if (n < 2) throw ChainError(ChainError::Code::kPreconditionFailed, "similarity chains need n >= 2");
  if (horizon < 1) throw ChainError(ChainError::Code::kPreconditionFailed, "similarity chains need R >= 1");
  if (!limits.unlimited && (n > limits.max_n || horizon > limits.max_rounds))
    throw ChainError(ChainError::Code::kHorizonExceeded,
                     "chain size cap exceeded: n=" + std::to_string(n) + " (max " + std::to_string(limits.max_n) +
                         "), R=" + std::to_string(horizon) + " (max " + std::to_string(limits.max_rounds) + ")");
}

std::vector<ChainOp> reversed(const std::vector<ChainOp>& plan) {
  std::vector<ChainOp> out;
  out.reserve(plan.size());
  for (auto it = plan.rbegin(); it != plan.rend(); ++it) {
    switch (it->kind) {
      case ChainOp::Kind::kLabel:
        out.push_back(ChainOp::remove_op(it->round, it->label));
        break;
      case ChainOp::Kind::kRemove:
        out.push_back(ChainOp::label_op(it->label, it->round));
        break;
      case ChainOp::Kind::kSwitch:
        out.push_back(*it);
        break;
    }
  }
  return out;
}

const std::vector<ChainOp>& ChainBuilder::pi_plan(int i, int r) {
  if (auto it = plans_.find({i, r}); it != plans_.end()) return it->second;

  std::vector<ChainOp> plan{ChainOp::label_op(AdvLabel::proc(i), r)};
  // Connect <Adv, s-1> to every p_j in round s, then label <Adv, s> with A.
  for (int s = r + 1; s <= horizon_; ++s) {
    for (int j = 1; j <= n_; ++j) {
      const auto& sub = pi_plan(j, s);
      plan.insert(plan.end(), sub.begin(), sub.end());
      plan.push_back(ChainOp::switch_op(s));
      const auto back = reversed(sub);
      plan.insert(plan.end(), back.begin(), back.end());
    }
    plan.push_back(ChainOp::label_op(AdvLabel::a(), s));
  }
  return plans_.emplace(std::pair{i, r}, std::move(plan)).first->second;
}

void extend(Chain& chain, const std::vector<ChainOp>& plan) {
  chain.steps.reserve(chain.steps.size() + plan.size());
  for (const auto& op : plan) {
    CommGraph next = apply(chain.back(), op);
    chain.steps.push_back({op, std::move(next)});
  }
}

Chain ChainBuilder::build_pi_chain(const CommGraph& g_ff, int i, int r) {
  if (g_ff.n != n_ || g_ff.horizon != horizon_)
    throw ChainError(ChainError::Code::kPreconditionFailed, "graph shape does not match the builder");
  if (!is_r_ff(g_ff, r))
    throw ChainError(ChainError::Code::kPreconditionFailed, "build_pi_chain: graph is not " + std::to_string(r) + "-ff");
  Chain chain{g_ff, {}};
  extend(chain, pi_plan(i, r));
  return chain;
}

Chain ChainBuilder::build_full_chain() {
  Chain chain{CommGraph::failure_free(n_, horizon_, std::vector<Value>(static_cast<std::size_t>(n_), 0)), {}};
  for (int i = 1; i <= n_; ++i) {
    const auto& plan = pi_plan(i, 0);
    extend(chain, plan);
    extend(chain, {ChainOp::switch_op(0)});
    extend(chain, reversed(plan));
  }
  const auto expected_end =
      CommGraph::failure_free(n_, horizon_, std::vector<Value>(static_cast<std::size_t>(n_), 1));
  if (!(chain.back() == expected_end))
    throw std::logic_error("full chain does not end at the all-1 failure-free graph");
  return chain;
}

Chain build_full_chain(int n, int horizon, ChainLimits limits) {
  ChainBuilder builder(n, horizon, limits);
  return builder.build_full_chain();
}

std::vector<PairCheck> verify_chain_serial(const Chain& chain, const Protocol& protocol) {
  std::vector<PairCheck> out;
  for (std::size_t idx = 0; idx + 1 < chain.graph_count(); ++idx)
    out.push_back({idx, verify_similar(chain.graph(idx), chain.graph(idx + 1), protocol)});
  return out;
}

std::vector<PairCheck> verify_chain_parallel(const Chain& chain, const Protocol& protocol) {
  const auto count = static_cast<long>(chain.graph_count());
  std::vector<std::vector<View>> views(static_cast<std::size_t>(count));
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
  for (long idx = 0; idx < count; ++idx) {
    try {
      views[static_cast<std::size_t>(idx)] = execute_graph(chain.graph(static_cast<std::size_t>(idx)), protocol).views;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<PairCheck> out(static_cast<std::size_t>(std::max(count - 1, 0L)));
#pragma omp parallel for schedule(static)
  for (long idx = 0; idx < count - 1; ++idx) {
    const auto u = static_cast<std::size_t>(idx);
    out[u] = {u, compare_views(views[u], views[u + 1])};
  }
  return out;
}

Value strawman_decision(const View& view) {
  int ones = 0;
  int zeros = 0;
  if (!view.inboxes.empty()) {
    for (const auto& entry : view.inboxes.front()) {
      for (const auto& item : entry.message.items()) {
        if ((item.kind == PayloadKind::kView || item.kind == PayloadKind::kInput) && !item.fields.empty())
          (item.fields[0] == 1 ? ones : zeros)++;
      }
    }
  } else {
    (view.input == 1 ? ones : zeros)++;
  }
  return ones > zeros ? 1 : 0;
}

std::optional<std::size_t> find_strawman_violation(const Chain& chain, const Protocol& protocol) {
  for (std::size_t idx = 0; idx < chain.graph_count(); ++idx) {
    const auto& g = chain.graph(idx);
    const auto views = execute_graph(g, protocol).views;
    std::vector<Value> decisions;
    for (const auto& v : views) decisions.push_back(strawman_decision(v));
    const bool agreement = std::adjacent_find(decisions.begin(), decisions.end(), std::not_equal_to<>()) == decisions.end();
    bool validity = true;
    if (std::adjacent_find(g.base_inputs.begin(), g.base_inputs.end(), std::not_equal_to<>()) == g.base_inputs.end()) {
      for (Value d : decisions) validity = validity && d == g.base_inputs.front();
    }
    if (!agreement || !validity) return idx;
  }
  return std::nullopt;
}

}  // namespace impsim::chain
