#include "impsim/protocols/checks.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "impsim/protocols/renaming.hpp"

namespace impsim {

bool all_pass(const std::vector<Verdict>& verdicts) {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

bool all_safety_pass(const std::vector<Verdict>& verdicts) {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass || !v.safety; });
}

RoundObserver StateRecorder::observer() {
  return [this](int, std::span<const ProcessState> states, std::span<const RoundInbox>) {
    rounds_.emplace_back(states.begin(), states.end());
  };
}

namespace {

class VerdictBuilder {
 public:
  Verdict& add(std::string name, bool safety = true) {
    verdicts_.push_back({std::move(name), true, safety, {}});
    return verdicts_.back();
  }
  static void fail(Verdict& v, const std::string& detail) {
    if (v.pass) v.detail = detail;
    v.pass = false;
  }
  std::vector<Verdict> take() { return {verdicts_.begin(), verdicts_.end()}; }

 private:
  // deque keeps references from add() valid
  std::deque<Verdict> verdicts_;
};

std::string at(std::size_t slot, int round) { return id_from_slot(slot).tag() + " round " + std::to_string(round); }

}  // namespace

std::vector<Verdict> check_renaming(const CheckContext& ctx) {
  VerdictBuilder b;
  const int n = ctx.cfg.n;
  const int k = ctx.cfg.k;
  const auto& decisions = ctx.result->decisions;

  auto& decided = b.add("renaming.decided_by_n_k_3");
  auto& distinct = b.add("renaming.distinct_names");
  auto& range = b.add("renaming.names_in_range");
  auto& order = b.add("renaming.order_preserving");
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    const auto& d = decisions[i];
    if (!d || d->round > n + k + 3) {
      VerdictBuilder::fail(decided, id_from_slot(i).tag() + " undecided at round " + std::to_string(n + k + 3));
      continue;
    }
    if (d->value < 1 || d->value > n + k) VerdictBuilder::fail(range, id_from_slot(i).tag() + " named " + std::to_string(d->value));
    for (std::size_t j = 0; j < decisions.size(); ++j) {
      const auto& e = decisions[j];
      if (j == i || !e) continue;
      if (i < j && d->value == e->value)
        VerdictBuilder::fail(distinct, id_from_slot(i).tag() + " and " + id_from_slot(j).tag() + " share a name");
      if (ctx.inputs[i].value < ctx.inputs[j].value && !(d->value < e->value))
        VerdictBuilder::fail(order, id_from_slot(i).tag() + " vs " + id_from_slot(j).tag());
    }
  }

  auto& size_bound = b.add("vvector.size_bound");
  auto& monotone = b.add("vvector.monotone");
  auto& genuine = b.add("vvector.genuine_by_round3");
  auto& propagation = b.add("vvector.one_round_propagation");
  auto& rank_bound = b.add("renaming.undecided_rank_above_r");
  if (ctx.states) {
    const auto& rounds = ctx.states->rounds();
    for (std::size_t ri = 0; ri < rounds.size(); ++ri) {
      const int round = static_cast<int>(ri) + 1;
      for (std::size_t slot = 0; slot < rounds[ri].size(); ++slot) {
        const auto& s = std::get<RenamingState>(rounds[ri][slot]);
        if (s.accepted.size() > static_cast<std::size_t>(n + k))
          VerdictBuilder::fail(size_bound, at(slot, round) + " |V|=" + std::to_string(s.accepted.size()));
        if (ri > 0) {
          const auto& prev = std::get<RenamingState>(rounds[ri - 1][slot]);
          if (!std::includes(s.accepted.begin(), s.accepted.end(), prev.accepted.begin(), prev.accepted.end()))
            VerdictBuilder::fail(monotone, at(slot, round));
        }
        const int r = round - 3;
        if (r >= 1 && r <= n + k && !s.decided && s.rank && *s.rank <= r)
          VerdictBuilder::fail(rank_bound, at(slot, round) + " rank " + std::to_string(*s.rank));
      }
    }
    if (rounds.size() >= 3) {
      for (std::size_t slot = 0; slot < rounds[2].size(); ++slot) {
        const auto& s = std::get<RenamingState>(rounds[2][slot]);
        for (std::size_t j = 0; j < ctx.inputs.size(); ++j) {
          if (!s.accepted.contains({id_from_slot(j), ctx.inputs[j].value}))
            VerdictBuilder::fail(genuine, at(slot, 3) + " lacks pair of " + id_from_slot(j).tag());
        }
      }
    }
    for (std::size_t ri = 2; ri + 1 < rounds.size(); ++ri) {
      VVector seen;
      for (const auto& st : rounds[ri]) {
        const auto& acc = std::get<RenamingState>(st).accepted;
        seen.insert(acc.begin(), acc.end());
      }
      for (std::size_t slot = 0; slot < rounds[ri + 1].size(); ++slot) {
        const auto& next = std::get<RenamingState>(rounds[ri + 1][slot]).accepted;
        if (!std::includes(next.begin(), next.end(), seen.begin(), seen.end()))
          VerdictBuilder::fail(propagation, at(slot, static_cast<int>(ri) + 2));
      }
    }
  }
  return b.take();
}

std::vector<Verdict> check_set_agreement(const CheckContext& ctx) {
  VerdictBuilder b;
  const int k = ctx.cfg.k;
  const auto& decisions = ctx.result->decisions;

  auto& decided = b.add("set_agreement.all_decided");
  auto& cardinality = b.add("set_agreement.cardinality_le_k_plus_1");
  auto& validity = b.add("set_agreement.validity");
  std::set<Value> inputs;
  for (const auto& in : ctx.inputs) inputs.insert(in.value);
  std::set<Value> values;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    if (!decisions[i]) {
      VerdictBuilder::fail(decided, id_from_slot(i).tag());
      continue;
    }
    values.insert(decisions[i]->value);
    if (!inputs.contains(decisions[i]->value))
      VerdictBuilder::fail(validity, id_from_slot(i).tag() + " decided non-input " + std::to_string(decisions[i]->value));
  }
  if (values.size() > static_cast<std::size_t>(k + 1))
    VerdictBuilder::fail(cardinality, std::to_string(values.size()) + " distinct decisions");

  auto& nonempty = b.add("set_agreement.m_nonempty");
  auto& common = b.add("set_agreement.common_values_in_m");
  if (ctx.states && !ctx.states->rounds().empty()) {
    std::map<Value, int> holders;
    for (const auto& in : ctx.inputs) ++holders[in.value];
    const auto& final_states = ctx.states->rounds().back();
    for (std::size_t slot = 0; slot < final_states.size(); ++slot) {
      const auto& s = std::get<SetAgreementState>(final_states[slot]);
      if (s.candidates.empty() || (s.decided && *s.decided != *s.candidates.begin()))
        VerdictBuilder::fail(nonempty, id_from_slot(slot).tag());
      for (const auto& [v, c] : holders) {
        if (c >= k + 1 && !s.candidates.contains(v))
          VerdictBuilder::fail(common, id_from_slot(slot).tag() + " misses " + std::to_string(v));
      }
    }
  }
  return b.take();
}

std::vector<Verdict> check_ben_or(const CheckContext& ctx) {
  VerdictBuilder b;
  const auto& decisions = ctx.result->decisions;

  auto& agreement = b.add("ben_or.agreement");
  auto& validity = b.add("ben_or.validity");
  auto& stable = b.add("ben_or.decision_stable");
  auto& terminated = b.add("ben_or.terminated", /*safety=*/false);

  std::set<Value> inputs;
  for (const auto& in : ctx.inputs) inputs.insert(in.value);
  std::optional<Value> first;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    if (!decisions[i]) {
      VerdictBuilder::fail(terminated, id_from_slot(i).tag() + " undecided");
      continue;
    }
    if (!first) first = decisions[i]->value;
    if (decisions[i]->value != *first) VerdictBuilder::fail(agreement, id_from_slot(i).tag());
    if (!inputs.contains(decisions[i]->value)) VerdictBuilder::fail(validity, id_from_slot(i).tag());
  }

  if (ctx.states) {
    const auto& rounds = ctx.states->rounds();
    for (std::size_t ri = 0; ri < rounds.size(); ++ri) {
      for (std::size_t slot = 0; slot < rounds[ri].size(); ++slot) {
        const auto& s = std::get<BenOrState>(rounds[ri][slot]);
        if (s.decided && s.estimate != *s.decided) VerdictBuilder::fail(stable, at(slot, static_cast<int>(ri) + 1));
        if (ri > 0) {
          const auto& prev = std::get<BenOrState>(rounds[ri - 1][slot]);
          if (prev.decided && prev.decided != s.decided) VerdictBuilder::fail(stable, at(slot, static_cast<int>(ri) + 1));
        }
      }
    }
  }
  return b.take();
}

std::vector<Verdict> check_run(const CheckContext& ctx) {
  switch (ctx.kind) {
    case ProtocolKind::kRenaming:
      return check_renaming(ctx);
    case ProtocolKind::kSetAgreement:
      return check_set_agreement(ctx);
    case ProtocolKind::kBenOr:
      return check_ben_or(ctx);
    case ProtocolKind::kFullInformation:
      return {};
  }
  return {};
}

}  // namespace impsim
