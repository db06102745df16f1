#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "impsim/adversary.hpp"
#include "impsim/config.hpp"
#include "impsim/protocol.hpp"

namespace impsim {

struct Decision {
  ProcessorId id;
  Value value = 0;
  int round = 0;

  friend bool operator==(const Decision&, const Decision&) = default;
};

struct Delivery {
  int round = 0;
  ProcessorId receiver;
  ProcessorId sender;
  bool forged = false;
  Message payload;

  friend bool operator==(const Delivery&, const Delivery&) = default;
};

using TraceEvent = std::variant<Delivery, Decision>;
using Trace = std::vector<TraceEvent>;

struct RunResult {
  std::vector<std::optional<Decision>> decisions;  // by slot
  Trace trace;
  int rounds_executed = 0;
  /// max_rounds elapsed with undecided processors.
  bool non_termination = false;
};

/// Called after every round with the post-step states and the inboxes the
/// processors consumed.
using RoundObserver =
    std::function<void(int round, std::span<const ProcessState> states, std::span<const RoundInbox> inboxes)>;

/// Synchronous round executor. Every round each processor receives all n
/// genuine broadcasts plus the adversary's budget-checked forgeries.
class Engine {
 public:
  Engine(EngineConfig cfg, const Protocol& protocol, std::vector<ProcessInput> inputs, Adversary& adversary);

  /// Executes the next round. Throws BudgetError on an over-budget adversary.
  void run_round();
  bool finished() const;
  int next_round() const { return round_; }

  std::span<const ProcessState> states() const { return states_; }
  const RunResult& result() const { return result_; }
  RunResult take_result();

  void set_observer(RoundObserver observer) { observer_ = std::move(observer); }

 private:
  bool all_decided() const;

  EngineConfig cfg_;
  const Protocol* protocol_;
  std::vector<ProcessInput> inputs_;
  Adversary* adversary_;
  std::vector<ProcessState> states_;
  std::vector<Message> outboxes_;
  RunResult result_;
  RoundObserver observer_;
  int round_ = 1;
};

/// Runs rounds until every processor decided (and the adversary is idle) or
/// max_rounds elapsed.
RunResult run_protocol(const EngineConfig& cfg, const Protocol& protocol, std::vector<ProcessInput> inputs,
                       Adversary& adversary, RoundObserver observer = {});

/// Inputs with per-processor random tapes derived from the run seed.
std::vector<ProcessInput> make_inputs(std::span<const Value> values, std::uint64_t seed);

std::vector<std::optional<Value>> decided_values(const RunResult& result);

}  // namespace impsim
