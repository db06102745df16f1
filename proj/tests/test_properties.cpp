#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "impsim/adversaries/strategies.hpp"
#include "impsim/protocols/ben_or.hpp"
#include "impsim/protocols/checks.hpp"
#include "impsim/protocols/renaming.hpp"
#include "impsim/protocols/set_agreement.hpp"

using namespace impsim;

namespace {

struct Case {
  std::unique_ptr<Protocol> protocol;
  EngineConfig cfg;
  std::vector<Value> values;
  std::vector<TwinSpec> twins;
};

std::vector<Case> cases() {
  std::vector<Case> out;
  out.push_back({std::make_unique<RenamingProtocol>(RenamingProtocol::Options{9, 2, false}), {9, 2, 15, 4},
                 {41, 12, 73, 5, 66, 30, 18, 99, 57}, {{ProcessorId(2), 50, 7}, {ProcessorId(6), 1, 8}}});
  out.push_back({std::make_unique<SetAgreementProtocol>(SetAgreementProtocol::Options{7, 2}), {7, 2, 2, 4},
                 {0, 1, 2, 1, 2, 2, 0}, {{ProcessorId(3), 0, 1}, {ProcessorId(5), 1, 2}}});
  out.push_back({std::make_unique<BenOrProtocol>(BenOrProtocol::Options{5, 2, 60}), {5, 2, 120, 4},
                 {0, 1, 1, 0, 1}, {{ProcessorId(1), 1, 9}}});
  return out;
}

}  // namespace

// Relabelling processors (inputs and tapes travel with them) relabels the
// decisions and changes nothing else.
TEST(Equivariance, RandomPermutationsForEveryProtocol) {
  std::mt19937_64 rng(2024);
  for (auto& c : cases()) {
    const int n = c.cfg.n;
    const auto inputs = make_inputs(c.values, c.cfg.seed);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<int> perm(static_cast<std::size_t>(n));  // slot i -> slot perm[i]
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const bool twins = trial % 2 == 1;

      std::vector<ProcessInput> permuted(inputs.size());
      for (int i = 0; i < n; ++i) permuted[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = inputs[static_cast<std::size_t>(i)];
      std::vector<TwinSpec> moved = c.twins;
      for (auto& t : moved) t.target = id_from_slot(static_cast<std::size_t>(perm[t.target.slot()]));

      NullAdversary null_a;
      NullAdversary null_b;
      SybilTwinAdversary twin_a(c.twins, *c.protocol);
      SybilTwinAdversary twin_b(moved, *c.protocol);
      Adversary& a = twins ? static_cast<Adversary&>(twin_a) : null_a;
      Adversary& b = twins ? static_cast<Adversary&>(twin_b) : null_b;

      const auto ra = run_protocol(c.cfg, *c.protocol, inputs, a);
      const auto rb = run_protocol(c.cfg, *c.protocol, permuted, b);
      ASSERT_EQ(ra.rounds_executed, rb.rounds_executed);
      for (int i = 0; i < n; ++i) {
        const auto& da = ra.decisions[static_cast<std::size_t>(i)];
        const auto& db = rb.decisions[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        ASSERT_EQ(da.has_value(), db.has_value());
        if (!da) continue;
        EXPECT_EQ(da->value, db->value);
        EXPECT_EQ(da->round, db->round);
      }
      if (twins) {
        for (std::size_t t = 0; t < c.twins.size(); ++t) {
          const auto& sa = twin_a.shadow_decisions()[t];
          const auto& sb = twin_b.shadow_decisions()[t];
          ASSERT_EQ(sa.has_value(), sb.has_value());
          if (sa) EXPECT_EQ(sa->value, sb->value);
        }
      }
    }
  }
}

// A step only sees (sender, message) pairs; their order is irrelevant.
TEST(OriginOpacity, ShuffledInboxGivesTheSameStep) {
  std::mt19937_64 rng(77);
  for (auto& c : cases()) {
    const auto inputs = make_inputs(c.values, c.cfg.seed);
    RandomForger adv(c.cfg.seed, RandomForger::Mode::kMutate);
    std::vector<ProcessState> prev;
    for (std::size_t s = 0; s < inputs.size(); ++s) prev.push_back(c.protocol->init(id_from_slot(s), inputs[s]).state);
    int checked = 0;
    run_protocol(c.cfg, *c.protocol, inputs, adv,
                 [&](int round, std::span<const ProcessState> states, std::span<const RoundInbox> boxes) {
                   for (std::size_t s = 0; s < boxes.size(); ++s) {
                     RoundInbox shuffled = boxes[s];
                     std::shuffle(shuffled.begin(), shuffled.end(), rng);
                     const auto again = c.protocol->step(prev[s], round, shuffled);
                     EXPECT_EQ(again.state, states[s]);
                     ++checked;
                   }
                   prev.assign(states.begin(), states.end());
                 });
    EXPECT_GT(checked, 0);
  }
}
