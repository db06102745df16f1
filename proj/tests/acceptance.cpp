// Acceptance harness: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "impsim/adversaries/strategies.hpp"
#include "impsim/chain/builder.hpp"
#include "impsim/chain/execute.hpp"
#include "impsim/errors.hpp"
#include "impsim/protocols/ben_or.hpp"
#include "impsim/protocols/full_info.hpp"
#include "impsim/protocols/renaming.hpp"
#include "impsim/protocols/set_agreement.hpp"
#include "impsim/sim/runner.hpp"
#include "impsim/trace_io.hpp"

using namespace impsim;
using namespace impsim::sim;

namespace {

// Wall-clock bounds in seconds.
constexpr double kRenamingBound = 10.0;
constexpr double kWitnessBound = 1.0;
constexpr double kSetAgreementBound = 30.0;
constexpr double kChainBound = 60.0;
constexpr double kConsensusBound = 30.0;
constexpr double kEngineBound = 30.0;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void fail(const std::string& why) {
    pass = false;
    if (problems.size() < 5) problems.push_back(why);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void report(int id, const std::string& name, Outcome o, double secs, double bound) {
  if (bound > 0 && secs >= bound) o.fail("runtime " + std::to_string(secs) + " s over bound");
  std::printf("%s criterion %d: %s | %s | %.2f s", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
  if (bound > 0) std::printf(" (bound %.0f s)", bound);
  std::printf("\n");
  for (const auto& p : o.problems) std::printf("    %s\n", p.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

ScenarioConfig base(ProtocolKind kind, int n, int k) {
  ScenarioConfig s;
  s.protocol = kind;
  s.n = n;
  s.k = k;
  return s;
}

// Independent renaming check over a set of (input, decision) instances.
void check_names(const std::vector<std::pair<Value, std::optional<Decision>>>& inst, int n, int k, Outcome& o,
                 const std::string& tag) {
  for (std::size_t a = 0; a < inst.size(); ++a) {
    const auto& [va, da] = inst[a];
    if (!da) {
      o.fail(tag + ": undecided instance");
      continue;
    }
    if (da->round > n + k + 3) o.fail(tag + ": decided after round " + std::to_string(n + k + 3));
    if (da->value < 1 || da->value > n + k) o.fail(tag + ": name out of range");
    for (std::size_t b = 0; b < inst.size(); ++b) {
      const auto& [vb, db] = inst[b];
      if (a == b || !db) continue;
      if (da->value == db->value) o.fail(tag + ": duplicate name");
      if (va < vb && da->value >= db->value) o.fail(tag + ": order violated");
    }
  }
}

const std::vector<std::string> kVectorVerdicts = {"vvector.size_bound", "vvector.genuine_by_round3",
                                                 "vvector.one_round_propagation"};

void criteria_1_and_3() {
  const auto start = Clock::now();
  Outcome c1;
  Outcome c3;
  int runs = 0;
  int vector_checks = 0;

  auto absorb = [&](const RunReport& r, const std::string& tag) {
    ++runs;
    std::vector<std::pair<Value, std::optional<Decision>>> real;
    for (std::size_t i = 0; i < r.inputs.size(); ++i) real.emplace_back(r.inputs[i], r.decisions[i]);
    check_names(real, 9, 2, c1, tag);
    for (const auto& v : r.verdicts) {
      const bool vec = std::find(kVectorVerdicts.begin(), kVectorVerdicts.end(), v.name) != kVectorVerdicts.end();
      if (vec) ++vector_checks;
      if (!v.pass) (vec ? c3 : c1).fail(tag + ": " + v.name + " " + v.detail);
    }
  };

  auto forger = base(ProtocolKind::kRenaming, 9, 2);
  forger.input_dist = InputDistribution{1, 1000};
  forger.adversary.kind = AdversarySpec::Kind::kRandomForger;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    forger.adversary.mode = seed % 2 ? RandomForger::Mode::kMutate : RandomForger::Mode::kReplay;
    absorb(execute_scenario(forger, seed).report, "seed " + std::to_string(seed));
  }

  auto twins = base(ProtocolKind::kRenaming, 9, 2);
  twins.inputs = std::vector<Value>{1, 2, 3, 4, 5, 6, 7, 8, 9};
  twins.adversary.kind = AdversarySpec::Kind::kSybilTwin;
  twins.adversary.twins = {{ProcessorId(1), 10, 0}, {ProcessorId(2), 11, 0}};
  absorb(execute_scenario(twins, 1).report, "twin scenario");

  const double secs = seconds_since(start);
  c1.detail = std::to_string(runs) + " runs (200 random_forger + Sybil twin), n=9 k=2";
  c3.detail = std::to_string(vector_checks) + " V-vector verdicts over the same runs";
  report(1, "order-preserving renaming into 1..n+k by round n+k+3", c1, secs, kRenamingBound);
  report(3, "V-vector bound, genuine pairs by round 3, one-round propagation", c3, secs, kRenamingBound);
}

void criterion_2() {
  const auto start = Clock::now();
  Outcome o;
  auto s = base(ProtocolKind::kRenaming, 9, 2);
  s.inputs = std::vector<Value>{1, 2, 3, 4, 5, 6, 7, 8, 9};
  s.adversary.kind = AdversarySpec::Kind::kSybilTwin;
  s.adversary.twins = {{ProcessorId(1), 10, 0}, {ProcessorId(2), 11, 0}};
  const auto r = execute_scenario(s, 1).report;

  std::vector<std::pair<Value, std::optional<Decision>>> inst;
  for (std::size_t i = 0; i < r.inputs.size(); ++i) inst.emplace_back(r.inputs[i], r.decisions[i]);
  for (const auto& sh : r.shadows) inst.emplace_back(sh.twin.alt_input, sh.decision);
  check_names(inst, 9, 2, o, "instances");

  std::set<Value> names;
  for (const auto& [v, d] : inst) {
    if (d) names.insert(d->value);
  }
  std::set<Value> expected;
  for (Value v = 1; v <= 11; ++v) expected.insert(v);
  if (names != expected) o.fail("names do not fill 1..11");
  for (std::size_t t = 0; t < r.shadows.size(); ++t) {
    const auto& low = r.decisions[r.shadows[t].twin.target.slot()];
    const auto& high = r.shadows[t].decision;
    if (!low || !high || low->value >= high->value)
      o.fail("twin " + r.shadows[t].twin.target.tag() + ": low-input name not below high-input name");
  }
  std::ostringstream d;
  d << "names";
  for (const auto& [v, dec] : inst) d << ' ' << v << "->" << (dec ? std::to_string(dec->value) : "?");
  o.detail = d.str();
  report(2, "namespace witness: 11 instances take exactly 1..11", o, seconds_since(start), kWitnessBound);
}

void criterion_4() {
  const auto start = Clock::now();
  Outcome o;
  int runs = 0;

  auto s = base(ProtocolKind::kSetAgreement, 7, 2);
  s.value_domain = {0, 1, 2};
  s.input_dist = InputDistribution{0, 2};
  std::size_t max_set = 0;

  auto absorb = [&](const RunReport& r, const std::string& tag) {
    ++runs;
    std::set<Value> decided;
    const std::set<Value> real(r.inputs.begin(), r.inputs.end());
    for (const auto& d : r.decisions) {
      if (!d) {
        o.fail(tag + ": undecided");
        continue;
      }
      decided.insert(d->value);
      if (!real.contains(d->value)) o.fail(tag + ": decision is not a real input");
    }
    if (decided.size() > 3) o.fail(tag + ": more than k+1 decisions");
    max_set = std::max(max_set, decided.size());
    for (const auto& v : r.verdicts) {
      if (!v.pass) o.fail(tag + ": " + v.name + " " + v.detail);
    }
  };

  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    if (seed % 2 == 0) {
      s.adversary = {};
      s.adversary.kind = AdversarySpec::Kind::kRandomForger;
      s.adversary.mode = seed % 4 == 0 ? RandomForger::Mode::kMutate : RandomForger::Mode::kReplay;
    } else {
      s.adversary = {};
      s.adversary.kind = AdversarySpec::Kind::kSybilTwin;
      std::mt19937_64 rng(seed);
      std::vector<int> ids(7);
      std::iota(ids.begin(), ids.end(), 1);
      std::shuffle(ids.begin(), ids.end(), rng);
      const int count = 1 + static_cast<int>(rng() % 2);
      for (int t = 0; t < count; ++t)
        s.adversary.twins.push_back({ProcessorId(ids[static_cast<std::size_t>(t)]), static_cast<Value>(rng() % 3), 0});
    }
    absorb(execute_scenario(s, seed).report, "seed " + std::to_string(seed));
  }

  // Exhaustive: n=3, k=1, Vset={0,1}; every input vector, and for every
  // receiver either no round-1 forgery or one SAVAL(v) claimed from any sender.
  SetAgreementProtocol p({3, 1});
  int exhaustive = 0;
  for (int mask = 0; mask < 8; ++mask) {
    const std::vector<Value> values{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1};
    for (int combo = 0; combo < 343; ++combo) {
      std::map<int, std::vector<Envelope>> script;
      int c = combo;
      for (int recv = 1; recv <= 3; ++recv, c /= 7) {
        const int choice = c % 7;
        if (choice == 0) continue;
        const int sender = (choice - 1) / 2 + 1;
        const Value v = (choice - 1) % 2;
        script[1].push_back({ProcessorId(sender), ProcessorId(recv), Message({Payload::sa_value(v)}), Origin::kForged, 1});
      }
      ScriptedAdversary adv(script);
      const EngineConfig cfg{3, 1, 2, 0};
      const auto inputs = make_inputs(values, 0);
      StateRecorder rec;
      ++exhaustive;
      try {
        const auto r = run_protocol(cfg, p, inputs, adv, rec.observer());
        std::set<Value> decided;
        for (const auto& d : r.decisions) {
          if (!d) o.fail("exhaustive: undecided");
          else decided.insert(d->value);
        }
        for (Value d : decided) {
          if (std::find(values.begin(), values.end(), d) == values.end()) o.fail("exhaustive: invalid decision");
        }
        if (decided.size() > 2) o.fail("exhaustive: more than k+1 decisions");
        for (const auto& v : check_set_agreement({cfg, ProtocolKind::kSetAgreement, inputs, &r, &rec})) {
          if (!v.pass) o.fail("exhaustive mask " + std::to_string(mask) + " combo " + std::to_string(combo) + ": " + v.name);
        }
      } catch (const ProtocolFault& e) {
        o.fail(std::string("exhaustive: ") + e.what());
      }
    }
  }
  o.detail = std::to_string(runs) + " seeded runs n=7 k=2 (max decision set " + std::to_string(max_set) + "), " +
             std::to_string(exhaustive) + " exhaustive runs n=3 k=1";
  report(4, "(k+1)-set agreement with valid decisions and non-empty M", o, seconds_since(start), kSetAgreementBound);
}

std::vector<chain::Chain> chains;

void criterion_5() {
  const auto start = Clock::now();
  Outcome o;
  std::ostringstream d;
  for (int R : {1, 2}) {
    chain::ChainBuilder builder(3, R);
    chains.push_back(builder.build_full_chain());
    const auto& c = chains.back();
    if (!(c.start == chain::CommGraph::failure_free(3, R, {0, 0, 0}))) o.fail("R=" + std::to_string(R) + ": bad start");
    if (!(c.back() == chain::CommGraph::failure_free(3, R, {1, 1, 1}))) o.fail("R=" + std::to_string(R) + ": bad end");
    FullInformationProtocol p(R);
    const auto checks = chain::verify_chain_parallel(c, p);
    std::size_t similar = 0;
    for (const auto& ch : checks) similar += ch.similarity.similar ? 1 : 0;
    if (similar != checks.size() || checks.size() != c.steps.size())
      o.fail("R=" + std::to_string(R) + ": " + std::to_string(checks.size() - similar) + " dissimilar pairs");
    const auto straw = chain::find_strawman_violation(c, p);
    if (!straw) o.fail("R=" + std::to_string(R) + ": strawman scan found no violation");
    d << "R=" << R << ": " << c.graph_count() << " graphs, " << similar << "/" << checks.size()
      << " pairs similar, strawman breaks at graph " << (straw ? std::to_string(*straw) : "none") << "; ";
  }
  o.detail = d.str();
  report(5, "similarity chain all-0 ff to all-1 ff, n=3", o, seconds_since(start), kChainBound);
}

void criterion_6() {
  const auto start = Clock::now();
  Outcome o;
  auto s = base(ProtocolKind::kBenOr, 5, 2);
  s.input_dist = InputDistribution{0, 1};
  s.max_phases = 60;
  s.adversary.kind = AdversarySpec::Kind::kDuplicateSpam;
  s.adversary.spam_ids = 2;
  int unanimous = 0;
  int phase_sum = 0;
  int phase_max = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto r = execute_scenario(s, seed).report;
    const std::string tag = "seed " + std::to_string(seed);
    std::set<Value> decided;
    int last = 0;
    for (const auto& d : r.decisions) {
      if (!d) {
        o.fail(tag + ": did not terminate within 60 phases");
        continue;
      }
      decided.insert(d->value);
      last = std::max(last, BenOrProtocol::phase_of_round(d->round));
    }
    if (decided.size() > 1) o.fail(tag + ": disagreement");
    const std::set<Value> in(r.inputs.begin(), r.inputs.end());
    for (Value v : decided) {
      if (!in.contains(v)) o.fail(tag + ": validity");
    }
    if (in.size() == 1) {
      ++unanimous;
      if (last != 1) o.fail(tag + ": unanimous run decided in phase " + std::to_string(last));
    }
    for (const auto& v : r.verdicts) {
      if (!v.pass) o.fail(tag + ": " + v.name);
    }
    phase_sum += last;
    phase_max = std::max(phase_max, last);
  }
  if (unanimous == 0) o.fail("no unanimous-input run sampled");
  char buf[160];
  std::snprintf(buf, sizeof buf, "500 runs n=5 k=2, mean phases %.2f, max %d, %d unanimous runs", phase_sum / 500.0,
                phase_max, unanimous);
  o.detail = buf;
  report(6, "randomized consensus under duplicate spam", o, seconds_since(start), kConsensusBound);
}

void criterion_7() {
  const auto start = Clock::now();
  Outcome o;

  // Budget fuzz: the oracle counts envelopes per receiver.
  std::mt19937_64 rng(7);
  int rejected = 0;
  for (int batch = 0; batch < 10000; ++batch) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const int k = static_cast<int>(rng() % 4);
    const EngineConfig cfg{n, k, 1, 0};
    std::vector<Envelope> env;
    std::map<int, int> per;
    const int count = static_cast<int>(rng() % static_cast<std::uint64_t>(n * (k + 2) + 1));
    for (int e = 0; e < count; ++e) {
      const int to = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
      const int from = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
      env.push_back({ProcessorId(from), ProcessorId(to), Message({Payload::input(static_cast<Value>(rng() % 5))}),
                     Origin::kForged, 1});
      ++per[to];
    }
    bool over = false;
    for (const auto& [to, c] : per) over = over || c > k;
    bool threw = false;
    try {
      enforce_budget(env, cfg);
    } catch (const BudgetError&) {
      threw = true;
    }
    if (threw != over) o.fail("batch " + std::to_string(batch) + ": budget decision differs from oracle");
    rejected += threw ? 1 : 0;
  }

  // Id-permutation equivariance.
  struct Case {
    std::unique_ptr<Protocol> p;
    EngineConfig cfg;
    std::vector<Value> values;
  };
  std::vector<Case> cases;
  cases.push_back({std::make_unique<RenamingProtocol>(RenamingProtocol::Options{9, 2, false}), {9, 2, 15, 3},
                   {41, 12, 73, 5, 66, 30, 18, 99, 57}});
  cases.push_back({std::make_unique<SetAgreementProtocol>(SetAgreementProtocol::Options{7, 2}), {7, 2, 2, 3},
                   {0, 1, 2, 1, 2, 2, 0}});
  cases.push_back({std::make_unique<BenOrProtocol>(BenOrProtocol::Options{5, 2, 60}), {5, 2, 120, 3}, {0, 1, 1, 0, 1}});
  int perms = 0;
  for (auto& c : cases) {
    const int n = c.cfg.n;
    const auto inputs = make_inputs(c.values, c.cfg.seed);
    NullAdversary null;
    const auto ref = run_protocol(c.cfg, *c.p, inputs, null);
    for (int t = 0; t < 50; ++t) {
      std::vector<std::size_t> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<ProcessInput> moved(inputs.size());
      for (std::size_t i = 0; i < perm.size(); ++i) moved[perm[i]] = inputs[i];
      NullAdversary adv;
      const auto r = run_protocol(c.cfg, *c.p, moved, adv);
      ++perms;
      for (std::size_t i = 0; i < perm.size(); ++i) {
        const auto& a = ref.decisions[i];
        const auto& b = r.decisions[perm[i]];
        if (a.has_value() != b.has_value() || (a && (a->value != b->value || a->round != b->round)))
          o.fail(std::string(protocol_name(c.p->kind())) + ": permutation changed a decision");
      }
    }
  }

  // Trace replay.
  int replays = 0;
  for (auto kind : {ProtocolKind::kRenaming, ProtocolKind::kSetAgreement, ProtocolKind::kBenOr}) {
    ScenarioConfig s = kind == ProtocolKind::kRenaming ? base(kind, 9, 2) : kind == ProtocolKind::kSetAgreement ? base(kind, 7, 2) : base(kind, 5, 2);
    if (kind == ProtocolKind::kRenaming) s.input_dist = InputDistribution{1, 100};
    if (kind == ProtocolKind::kSetAgreement) {
      s.value_domain = {0, 1, 2};
      s.input_dist = InputDistribution{0, 2};
    }
    if (kind == ProtocolKind::kBenOr) s.input_dist = InputDistribution{0, 1};
    s.adversary.kind = AdversarySpec::Kind::kRandomForger;
    s.adversary.mode = RandomForger::Mode::kMutate;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      s.seed = seed;
      const auto run = execute_scenario(s, seed);
      std::stringstream buf;
      write_trace(run.trace, buf);
      const auto back = replay(s, read_trace(buf));
      ++replays;
      if (!back.decisions_match || !back.trace_match || back.report.decisions != run.report.decisions)
        o.fail(std::string(protocol_name(kind)) + " seed " + std::to_string(seed) + ": replay diverged");
    }
  }

  o.detail = "10000 budget batches (" + std::to_string(rejected) + " rejected), " + std::to_string(perms) +
             " permutations, " + std::to_string(replays) + " replays";
  report(7, "budget enforcement, id-permutation equivariance, trace replay", o, seconds_since(start), kEngineBound);
}

void criterion_8() {
  const auto start = Clock::now();
  Outcome o;
  std::size_t graphs = 0;
  std::size_t envelopes = 0;
  for (const auto& c : chains) {
    FullInformationProtocol p(c.start.horizon);
    for (std::size_t i = 0; i < c.graph_count(); ++i) {
      const auto& g = c.graph(i);
      const auto direct = chain::interpret_graph(g, p);
      const auto run = chain::execute_graph(g, p);
      const auto expected = chain::deliveries(direct);
      ++graphs;
      envelopes += expected.size();
      if (run.deliveries != expected) o.fail("R=" + std::to_string(g.horizon) + " graph " + std::to_string(i) + ": deliveries differ");
    }
  }
  if (chains.empty()) o.fail("criterion 5 produced no chains");
  o.detail = std::to_string(graphs) + " graphs, " + std::to_string(envelopes) + " envelopes compared";
  report(8, "engine with graph adversary equals direct graph interpreter", o, seconds_since(start), 0);
}

}  // namespace

int main() {
  criteria_1_and_3();
  criterion_2();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures;
}
