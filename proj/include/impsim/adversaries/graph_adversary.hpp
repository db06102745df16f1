#pragma once

#include <optional>
#include <vector>

#include "impsim/adversary.hpp"
#include "impsim/chain/comm_graph.hpp"
#include "impsim/protocol.hpp"

namespace impsim {

/// Replays the 1-adversary behaviour described by a communication graph.
///
/// The strategy mirrors every real processor (it sees all inputs and all
/// genuine broadcasts, and knows its own forgeries), and keeps the shadow
/// state dictated by the round labels:
///   label(r) = i : inverse of p_i's state at the start of round r+1
///   label(r) = A : previous shadow advanced with p_i's round-r inbox
///   label(r) = - : no shadow, nothing sent in round r+1
/// The shadow broadcast of round r goes to p_j, tagged with the impersonated
/// id, exactly when edge (r, j) is present.
class GraphAdversary final : public Adversary {
 public:
  /// Throws ChainError(kInvalidGraph) when the graph fails validation.
  GraphAdversary(chain::CommGraph graph, const Protocol& protocol);

  std::vector<Envelope> forge(const RoundContext& ctx) override;

  struct Shadow {
    ProcessorId id;
    ProcessState state;
    Message outbox;
  };

  /// shadows()[r] is the state of <Adv, r>, i.e. the shadow at the start of
  /// round r+1, for every r processed so far.
  const std::vector<std::optional<Shadow>>& shadows() const { return shadows_; }

 private:
  chain::CommGraph graph_;
  const Protocol* protocol_;
  std::vector<ProcessState> mirror_;
  std::vector<Message> mirror_out_;
  std::vector<ProcessInput> inputs_;
  std::vector<std::optional<Shadow>> shadows_;
};

}  // namespace impsim
