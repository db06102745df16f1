#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "impsim/chain/execute.hpp"
#include "impsim/chain/ops.hpp"

namespace impsim::chain {

struct ChainStep {
  ChainOp op;
  CommGraph graph;  // result of applying op to the previous graph
};

struct Chain {
  CommGraph start;
  std::vector<ChainStep> steps;

  const CommGraph& back() const { return steps.empty() ? start : steps.back().graph; }
  std::size_t graph_count() const { return steps.size() + 1; }
  const CommGraph& graph(std::size_t index) const { return index == 0 ? start : steps[index - 1].graph; }
};

struct ChainLimits {
  int max_n = 4;
  int max_rounds = 3;
  bool unlimited = false;
};

/// Plans and materializes similarity chains. The operation sequence leading
/// from an r-ff graph to its fully connected <p_i, r>-graph does not depend
/// on the graph itself, so plans are memoized per (i, r).
class ChainBuilder {
 public:
  ChainBuilder(int n, int horizon, ChainLimits limits = {});

  /// Operation plan from any r-ff graph to its <p_i, r>-graph.
  const std::vector<ChainOp>& pi_plan(int i, int r);

  /// Chain from g_ff (which must be r-ff) to the <p_i, r>-graph with full
  /// connectivity after round r.
  Chain build_pi_chain(const CommGraph& g_ff, int i, int r);

  /// Chain from the all-0 to the all-1 failure-free graph.
  Chain build_full_chain();

  std::size_t memo_size() const { return plans_.size(); }

 private:
  int n_;
  int horizon_;
  std::map<std::pair<int, int>, std::vector<ChainOp>> plans_;
};

/// Appends the steps of `plan` applied to chain.back().
void extend(Chain& chain, const std::vector<ChainOp>& plan);

/// The plan that undoes `plan` step by step, visiting the same graphs in
/// reverse order.
std::vector<ChainOp> reversed(const std::vector<ChainOp>& plan);

/// Convenience wrapper with default limits.
Chain build_full_chain(int n, int horizon, ChainLimits limits = {});

struct PairCheck {
  std::size_t index = 0;  // compares graph(index) with graph(index + 1)
  Similarity similarity;
};

/// Serial reference: verify_similar on every adjacent pair.
std::vector<PairCheck> verify_chain_serial(const Chain& chain, const Protocol& protocol);

/// OpenMP kernel: executes every graph once in parallel, then compares
/// adjacent views in parallel. Results equal verify_chain_serial.
std::vector<PairCheck> verify_chain_parallel(const Chain& chain, const Protocol& protocol);

/// Decision of the majority-of-inputs strawman consensus from one view:
/// the majority of the round-1 values received, ties to 0.
Value strawman_decision(const View& view);

/// First graph index where the strawman violates agreement or validity.
std::optional<std::size_t> find_strawman_violation(const Chain& chain, const Protocol& protocol);

}  // namespace impsim::chain
