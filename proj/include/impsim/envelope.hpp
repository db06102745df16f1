#pragma once

#include <span>
#include <vector>

#include "impsim/ids.hpp"
#include "impsim/payload.hpp"

namespace impsim {

enum class Origin : std::uint8_t { kGenuine, kForged };

/// A message as delivered. `origin` is harness bookkeeping and never reaches
/// protocol code.
struct Envelope {
  ProcessorId claimed_sender;
  ProcessorId receiver;
  Message payload;
  Origin origin = Origin::kGenuine;
  int round = 1;

  friend bool operator==(const Envelope&, const Envelope&) = default;
};

struct InboxEntry {
  ProcessorId sender;
  Message message;

  friend bool operator==(const InboxEntry&, const InboxEntry&) = default;
};

/// What one processor sees in one round: claimed sender plus message, with
/// possible repeats of a sender id.
using RoundInbox = std::vector<InboxEntry>;

/// Canonical delivery order: claimed sender index, then payload, then
/// genuine before forged.
bool delivery_less(const Envelope& a, const Envelope& b);

/// Strips origin marks, keeping delivery order.
RoundInbox to_inbox(std::span<const Envelope> delivered);

/// Sorts an origin-free inbox by (sender, message).
void canonicalize(RoundInbox& inbox);

}  // namespace impsim
