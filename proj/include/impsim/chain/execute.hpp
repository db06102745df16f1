#pragma once

#include <optional>
#include <set>
#include <vector>

#include "impsim/chain/comm_graph.hpp"
#include "impsim/engine.hpp"
#include "impsim/protocol.hpp"

namespace impsim::chain {

/// What one processor observed: its input and every round inbox, canonically
/// sorted and without origin marks.
struct View {
  Value input = 0;
  std::vector<RoundInbox> inboxes;

  friend bool operator==(const View&, const View&) = default;
};

struct ShadowRecord {
  ProcessorId id;
  ProcessState state;
  Message outbox;
};

/// A fully materialized execution of a graph.
struct ExecutionRecord {
  int n = 0;
  int horizon = 0;
  std::vector<ProcessInput> inputs;
  /// states[r][slot] / outboxes[r][slot]: at the start of round r+1 (r = 0..R).
  std::vector<std::vector<ProcessState>> states;
  std::vector<std::vector<Message>> outboxes;
  /// delivered[r-1][slot]: sorted envelopes of round r.
  std::vector<std::vector<std::vector<Envelope>>> delivered;
  /// adversary[r]: state of <Adv, r>, the shadow at the start of round r+1.
  std::vector<std::optional<ShadowRecord>> adversary;
};

/// The shadow p_i's inverse would be at the start of round r: flipped input
/// for r = 1; otherwise p_i's round r-1 step recomputed with the adversary's
/// round-(r-1) message toggled; the original state if no shadow existed in
/// round r-1. Requires exec to be materialized through round r-1.
ShadowRecord inverse_state(const ExecutionRecord& exec, const Protocol& protocol, int i, int r);

/// Direct interpreter of the graph semantics, independent of the engine.
ExecutionRecord interpret_graph(const CommGraph& g, const Protocol& protocol);

std::vector<Delivery> deliveries(const ExecutionRecord& exec);
std::vector<View> views_of(const ExecutionRecord& exec);

struct GraphExecution {
  std::vector<View> views;
  std::vector<Delivery> deliveries;
  /// Impersonated id per adversary vertex (empty when unlabeled).
  std::vector<std::optional<ProcessorId>> shadow_ids;
};

/// Runs the engine with a GraphAdversary for g. Throws ChainError on an
/// invalid graph.
GraphExecution execute_graph(const CommGraph& g, const Protocol& protocol);

struct Similarity {
  bool similar = false;
  std::set<ProcessorId> differing;
};

Similarity compare_views(const std::vector<View>& a, const std::vector<View>& b);

/// Similar iff at most one processor's view differs.
Similarity verify_similar(const CommGraph& g1, const CommGraph& g2, const Protocol& protocol);

}  // namespace impsim::chain
