#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "impsim/chain/serialize.hpp"
#include "impsim/errors.hpp"
#include "impsim/sim/chain_cmd.hpp"
#include "impsim/sim/runner.hpp"
#include "impsim/trace_io.hpp"

using namespace impsim;
using namespace impsim::sim;
using nlohmann::json;

namespace {

json twins_scenario() {
  return json::parse(R"({
    "schema": 1, "protocol": "renaming", "n": 9, "k": 2,
    "inputs": [1, 2, 3, 4, 5, 6, 7, 8, 9],
    "adversary": {"kind": "sybil_twin", "twins": [{"target": "p_1", "alt_input": 10}, {"target": "p_2", "alt_input": 11}]},
    "seed": 1
  })");
}

json set_agreement_scenario() {
  return json::parse(R"({
    "schema": 1, "protocol": "set_agreement", "n": 7, "k": 2,
    "input_dist": {"kind": "uniform"}, "value_domain": [0, 1, 2],
    "adversary": {"kind": "random_forger", "mode": "mutate"}, "seed": 7
  })");
}

std::string field_of(const json& j) {
  try {
    parse_scenario(j);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST(Scenario, ParsesValidFile) {
  const auto s = parse_scenario(twins_scenario());
  EXPECT_EQ(s.protocol, ProtocolKind::kRenaming);
  EXPECT_EQ(s.n, 9);
  EXPECT_EQ(s.adversary.kind, AdversarySpec::Kind::kSybilTwin);
  ASSERT_EQ(s.adversary.twins.size(), 2u);
  EXPECT_EQ(s.adversary.twins[1].target, ProcessorId(2));
}

TEST(Scenario, RejectsMissingUnknownAndOutOfBounds) {
  auto j = twins_scenario();
  j.erase("k");
  EXPECT_EQ(field_of(j), "k");
  try {
    parse_scenario(j);
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.reason(), "required");
  }

  j = twins_scenario();
  j["colour"] = "blue";
  EXPECT_EQ(field_of(j), "colour");

  j = twins_scenario();
  j["adversary"]["twins"][0]["nick"] = 1;
  EXPECT_EQ(field_of(j), "adversary.twins[0].nick");

  j = twins_scenario();
  j["n"] = 8;
  j["inputs"] = {1, 2, 3, 4, 5, 6, 7, 8};
  j["adversary"] = {{"kind", "null"}};
  EXPECT_EQ(field_of(j), "n > k^2 + 2k");
  j["weak_renaming_bound"] = true;
  EXPECT_EQ(field_of(j), "");

  j = twins_scenario();
  j["inputs"] = {1, 2, 3};
  EXPECT_EQ(field_of(j), "inputs");

  j = twins_scenario();
  j["adversary"]["twins"].push_back({{"target", "p_3"}, {"alt_input", 12}});
  EXPECT_EQ(field_of(j), "adversary.twins");

  j = set_agreement_scenario();
  j["inputs"] = {0, 1, 2, 3, 0, 1, 2};
  j.erase("input_dist");
  EXPECT_EQ(field_of(j), "inputs");

  j = set_agreement_scenario();
  j["n"] = 6;
  EXPECT_EQ(field_of(j), "n > |Vset|k");

  j = set_agreement_scenario();
  j["schema"] = 2;
  EXPECT_EQ(field_of(j), "schema");
}

TEST(Scenario, SampledInputsAreSeededAndWellFormed) {
  auto j = twins_scenario();
  j.erase("inputs");
  j["input_dist"] = {{"kind", "uniform"}, {"lo", 1}, {"hi", 30}};
  j["adversary"] = {{"kind", "null"}};
  const auto s = parse_scenario(j);
  const auto a = scenario_inputs(s, 3);
  EXPECT_EQ(a, scenario_inputs(s, 3));
  EXPECT_NE(a, scenario_inputs(s, 4));
  EXPECT_EQ(std::set<Value>(a.begin(), a.end()).size(), 9u);
  for (Value v : a) {
    EXPECT_GE(v, 1);
    EXPECT_LE(v, 30);
  }
  const auto sa = parse_scenario(set_agreement_scenario());
  for (Value v : scenario_inputs(sa, 11)) EXPECT_TRUE(v >= 0 && v <= 2);
}

TEST(Run, TwinScenarioGivesElevenDistinctNames) {
  const auto out = execute_scenario(parse_scenario(twins_scenario()), 1);
  EXPECT_EQ(exit_code(out.report), kExitOk);
  std::set<Value> names;
  for (const auto& d : out.report.decisions) names.insert(d->value);
  for (const auto& s : out.report.shadows) names.insert(s.decision->value);
  EXPECT_EQ(names, (std::set<Value>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}));
  EXPECT_NE(out.report.decisions[0]->value, out.report.shadows[0].decision->value);
  const auto j = report_to_json(out.report);
  EXPECT_EQ(j["shadows"].size(), 2u);
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Run, SetAgreementSeedSeven) {
  const auto out = execute_scenario(parse_scenario(set_agreement_scenario()), 7);
  EXPECT_EQ(exit_code(out.report), kExitOk);
  std::set<Value> decided;
  for (const auto& d : out.report.decisions) decided.insert(d->value);
  EXPECT_LE(decided.size(), 3u);
}

TEST(Run, FaultHookIsAViolation) {
  auto j = twins_scenario();
  j["fault_hook"] = "skip_round2_echo";
  j["adversary"] = {{"kind", "null"}};
  const auto out = execute_scenario(parse_scenario(j), 1);
  EXPECT_EQ(exit_code(out.report), kExitViolation);
}

TEST(Run, GraphAdversaryScenario) {
  const auto dir = std::filesystem::temp_directory_path() / "impsim_graph_scenario";
  std::filesystem::create_directories(dir);
  auto g = chain::CommGraph::failure_free(3, 1, {0, 1, 1});
  g.labels = {chain::AdvLabel::proc(1), chain::AdvLabel::none()};
  g.edges = {{1, 2}};
  chain::save_graph(g, dir / "g.json");
  auto j = json::parse(R"({"schema": 1, "protocol": "ben_or", "n": 3, "k": 1, "inputs": [0, 1, 1],
                           "adversary": {"kind": "graph", "path": "g.json"}, "max_rounds": 1})");
  const auto s = parse_scenario(j, dir);
  const auto out = execute_scenario(s, 0);
  int forged = 0;
  for (const auto& ev : out.trace) {
    if (const auto* d = std::get_if<Delivery>(&ev); d && d->forged) {
      ++forged;
      EXPECT_EQ(d->receiver, ProcessorId(2));
      EXPECT_EQ(d->sender, ProcessorId(1));
    }
  }
  EXPECT_EQ(forged, 1);

  j["inputs"] = {1, 1, 1};
  EXPECT_THROW(parse_scenario(j, dir), ConfigError);
}

TEST(Trace, SameSeedSameFileAndReplayMatches) {
  const auto s = parse_scenario(set_agreement_scenario());
  const auto a = execute_scenario(s, s.seed);
  const auto b = execute_scenario(s, s.seed);
  std::ostringstream ta;
  std::ostringstream tb;
  write_trace(a.trace, ta);
  write_trace(b.trace, tb);
  EXPECT_EQ(ta.str(), tb.str());

  std::istringstream in(ta.str());
  const auto r = replay(s, read_trace(in));
  EXPECT_TRUE(r.decisions_match);
  EXPECT_TRUE(r.trace_match);
  EXPECT_EQ(r.report.decisions, a.report.decisions);

  const auto t = parse_scenario(twins_scenario());
  const auto tw = execute_scenario(t, t.seed);
  const auto rt = replay(t, tw.trace);
  EXPECT_TRUE(rt.decisions_match);
  EXPECT_TRUE(rt.trace_match);
}

TEST(MonteCarlo, ParallelMatchesSerial) {
  for (const auto& j : {set_agreement_scenario(), twins_scenario()}) {
    const auto s = parse_scenario(j);
    const auto serial = montecarlo_serial(s, 24, 100);
    const auto parallel = montecarlo_parallel(s, 24, 100);
    EXPECT_EQ(montecarlo_to_json(serial, true).dump(), montecarlo_to_json(parallel, true).dump());
    EXPECT_TRUE(serial.pass());
    EXPECT_EQ(serial.runs.front().seed, 100u);
    EXPECT_EQ(serial.runs.back().seed, 123u);
  }
}

TEST(MonteCarlo, AggregateIsOrderIndependent) {
  std::vector<RunSummary> runs(3);
  runs[0].seed = 5;
  runs[0].decision_set = {1};
  runs[1].seed = 3;
  runs[1].decision_set = {0, 1};
  runs[2].seed = 4;
  runs[2].pass = false;
  runs[2].safety_pass = false;
  runs[2].failed = {"x"};
  const auto a = aggregate(ProtocolKind::kSetAgreement, 3, runs);
  std::reverse(runs.begin(), runs.end());
  const auto b = aggregate(ProtocolKind::kSetAgreement, 3, runs);
  EXPECT_EQ(montecarlo_to_json(a, true).dump(), montecarlo_to_json(b, true).dump());
  EXPECT_EQ(a.safety_violations, 1);
  EXPECT_EQ(a.max_decision_set_size, 2u);
  EXPECT_EQ(a.decision_histogram.at(1), 2);
  EXPECT_FALSE(a.pass());
}

TEST(Chain, CommandBuildsWritesAndVerifies) {
  const auto dir = std::filesystem::temp_directory_path() / "impsim_chain_cmd";
  std::filesystem::remove_all(dir);
  const auto report = run_chain({3, 1, dir, true, false, true}, {});
  EXPECT_TRUE(report.pass());
  EXPECT_EQ(report.steps, 69u);
  EXPECT_EQ(report.pairs_checked, 69u);
  EXPECT_TRUE(report.strawman_violation.has_value());
  EXPECT_TRUE(std::filesystem::exists(dir / "graph_000069.json"));
  EXPECT_EQ(chain::fingerprint(chain::load_graph(dir / "graph_000000.json")), report.start_fingerprint);
  EXPECT_EQ(chain::fingerprint(chain::load_graph(dir / "graph_000069.json")), report.end_fingerprint);

  EXPECT_THROW(run_chain({2, 0, {}, false, false, true}, {}), ChainError);
  EXPECT_THROW(run_chain({5, 1, {}, false, false, true}, {}), ChainError);
  EXPECT_EQ(run_chain({5, 1, {}, false, true, true}, {}).steps, 5u * (2 * (1 + 5 * 3 + 1) + 1));
}

TEST(Chain, LimitParsing) {
  EXPECT_EQ(parse_chain_limits(nullptr).max_n, 4);
  const auto pair = parse_chain_limits("6:2");
  EXPECT_EQ(pair.max_n, 6);
  EXPECT_EQ(pair.max_rounds, 2);
  const auto single = parse_chain_limits("5");
  EXPECT_EQ(single.max_n, 5);
  EXPECT_EQ(single.max_rounds, 5);
  EXPECT_THROW(parse_chain_limits("x"), ConfigError);
  EXPECT_THROW(parse_chain_limits("3:"), ConfigError);
}
