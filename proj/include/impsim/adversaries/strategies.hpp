#pragma once

#include <map>
#include <optional>
#include <random>
#include <vector>

#include "impsim/adversary.hpp"
#include "impsim/engine.hpp"
#include "impsim/protocol.hpp"

namespace impsim {

/// Never forges; yields failure-free runs.
class NullAdversary final : public Adversary {
 public:
  std::vector<Envelope> forge(const RoundContext&) override { return {}; }
};

struct TwinSpec {
  ProcessorId target;
  Value alt_input = 0;
  std::uint64_t tape = 0;
};

/// Stolen-identity Sybil attack: one shadow protocol instance per twin runs
/// under the stolen id with an alternative input. Shadows hear every genuine
/// broadcast and every shadow broadcast (their own included), and each shadow
/// broadcast reaches every processor tagged with the stolen id.
class SybilTwinAdversary final : public Adversary {
 public:
  SybilTwinAdversary(std::vector<TwinSpec> twins, const Protocol& protocol);

  std::vector<Envelope> forge(const RoundContext& ctx) override;
  bool idle() const override;

  const std::vector<TwinSpec>& twins() const { return twins_; }
  const std::vector<std::optional<Decision>>& shadow_decisions() const { return decisions_; }
  /// Broadcast of shadow t in each round so far.
  const std::vector<std::vector<Message>>& shadow_outboxes() const { return history_; }

 private:
  std::vector<TwinSpec> twins_;
  const Protocol* protocol_;
  std::vector<ProcessState> states_;
  std::vector<Message> outboxes_;
  std::vector<std::optional<Decision>> decisions_;
  std::vector<std::vector<Message>> history_;
  bool started_ = false;
};

/// Stress adversary: each receiver gets a uniform 0..k forgeries per round
/// with uniform claimed senders. Payloads replay an observed genuine message
/// of the round, or (mutate) resample its fields within the values observed
/// at the same (kind, position) this round.
class RandomForger final : public Adversary {
 public:
  enum class Mode { kReplay, kMutate };

  RandomForger(std::uint64_t seed, Mode mode) : rng_(seed), mode_(mode) {}

  std::vector<Envelope> forge(const RoundContext& ctx) override;

 private:
  std::mt19937_64 rng_;
  Mode mode_;
};

/// Forges a copy of `ids_per_receiver` distinct senders' genuine messages to
/// every receiver each round, so the async filter drops exactly those ids.
class DuplicateSpamAdversary final : public Adversary {
 public:
  DuplicateSpamAdversary(std::uint64_t seed, int ids_per_receiver) : rng_(seed), count_(ids_per_receiver) {}

  std::vector<Envelope> forge(const RoundContext& ctx) override;

 private:
  std::mt19937_64 rng_;
  int count_;
};

/// Injects a fixed list of envelopes per round (tests and trace replay).
class ScriptedAdversary final : public Adversary {
 public:
  explicit ScriptedAdversary(std::map<int, std::vector<Envelope>> script) : script_(std::move(script)) {}

  std::vector<Envelope> forge(const RoundContext& ctx) override;
  /// Busy while scripted rounds remain.
  bool idle() const override;

 private:
  std::map<int, std::vector<Envelope>> script_;
  int last_round_ = 0;
};

/// Forged envelopes of a recorded trace, keyed by round.
std::map<int, std::vector<Envelope>> forged_script(const Trace& trace);

}  // namespace impsim
