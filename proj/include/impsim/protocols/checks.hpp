#pragma once

#include <string>
#include <vector>

#include "impsim/engine.hpp"

namespace impsim {

struct Verdict {
  std::string name;
  bool pass = true;
  /// Safety properties must hold on every run; the rest (termination of the
  /// randomized protocol) are judged statistically.
  bool safety = true;
  std::string detail;
};

bool all_pass(const std::vector<Verdict>& verdicts);
bool all_safety_pass(const std::vector<Verdict>& verdicts);

/// Records every post-round state so per-round invariants can be evaluated
/// after the run.
class StateRecorder {
 public:
  RoundObserver observer();
  const std::vector<std::vector<ProcessState>>& rounds() const { return rounds_; }

 private:
  std::vector<std::vector<ProcessState>> rounds_;  // rounds_[r-1][slot]
};

struct CheckContext {
  EngineConfig cfg;
  ProtocolKind kind = ProtocolKind::kFullInformation;
  std::vector<ProcessInput> inputs;
  const RunResult* result = nullptr;
  const StateRecorder* states = nullptr;
};

/// Evaluates every invariant listed for the protocol family of the run.
std::vector<Verdict> check_run(const CheckContext& ctx);

std::vector<Verdict> check_renaming(const CheckContext& ctx);
std::vector<Verdict> check_set_agreement(const CheckContext& ctx);
std::vector<Verdict> check_ben_or(const CheckContext& ctx);

}  // namespace impsim
