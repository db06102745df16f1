#pragma once

#include <optional>
#include <set>
#include <utility>
#include <variant>

#include "impsim/ids.hpp"
#include "impsim/payload.hpp"

namespace impsim {

using IdValue = std::pair<ProcessorId, Value>;

/// The (processor id, value) pairs accepted by the echo layer. May hold more
/// than one pair per id when the adversary impersonates.
using VVector = std::set<IdValue>;

struct RenamingState {
  Value v0 = 0;
  VVector accepted;
  /// Pairs to echo in the next round beyond those already accepted.
  std::set<IdValue> echo_next;
  /// Rank of v0 at the previous and the latest round end (from round 3 on).
  std::optional<int> prev_rank;
  std::optional<int> rank;
  std::optional<Value> decided;

  friend bool operator==(const RenamingState&, const RenamingState&) = default;
};

struct SetAgreementState {
  Value v0 = 0;
  /// Values seen in round 1 from more than k distinct senders.
  std::set<Value> echoed;
  std::set<Value> candidates;  // M
  std::optional<Value> decided;

  friend bool operator==(const SetAgreementState&, const SetAgreementState&) = default;
};

struct BenOrState {
  Value estimate = 0;
  int phase = 1;
  /// Value to propose in the proposal round of the current phase; empty is bottom.
  std::optional<Value> proposal;
  std::optional<Value> decided;
  int decided_phase = 0;
  std::uint64_t tape = 0;

  friend bool operator==(const BenOrState&, const BenOrState&) = default;
};

/// Full-information state: the whole view so far, encoded as a VIEW payload
/// so it can be rebroadcast verbatim.
struct FullInfoState {
  Payload view;

  friend bool operator==(const FullInfoState& a, const FullInfoState& b) { return a.view == b.view; }
};

using ProcessState = std::variant<RenamingState, SetAgreementState, BenOrState, FullInfoState>;

}  // namespace impsim
