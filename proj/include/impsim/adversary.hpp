#pragma once

#include <span>
#include <vector>

#include "impsim/config.hpp"
#include "impsim/envelope.hpp"

namespace impsim {

/// Everything a rushing, omniscient adversary sees before forging round
/// `round`: all private inputs and every genuine broadcast of the round.
struct RoundContext {
  int round = 1;
  const EngineConfig* cfg = nullptr;
  std::span<const ProcessInput> inputs;
  std::span<const Message> genuine;  // indexed by sender slot
};

class Adversary {
 public:
  virtual ~Adversary() = default;

  virtual std::vector<Envelope> forge(const RoundContext& ctx) = 0;

  /// False while the adversary still has work a run should wait for (for
  /// example shadow instances that have not decided yet).
  virtual bool idle() const { return true; }
};

}  // namespace impsim
