#include "impsim/sim/runner.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <set>

#include "impsim/errors.hpp"
#include "impsim/protocols/ben_or.hpp"
#include "impsim/protocols/full_info.hpp"

namespace impsim::sim {

namespace {

using ordered_json = nlohmann::ordered_json;

// Renaming across real processors and shadows: the twins behave as extra
// correct participants, so the n + t instances must still get distinct,
// order-preserving names in 1..n+k.
void check_instances(const ScenarioConfig& s, RunReport& report) {
  if (report.shadows.empty() || s.protocol != ProtocolKind::kRenaming) return;
  std::vector<std::pair<Value, std::optional<Decision>>> instances;
  for (std::size_t i = 0; i < report.inputs.size(); ++i) instances.emplace_back(report.inputs[i], report.decisions[i]);
  for (const auto& sh : report.shadows) instances.emplace_back(sh.twin.alt_input, sh.decision);
  std::set<Value> values;
  for (const auto& [v, d] : instances) values.insert(v);
  if (values.size() != instances.size()) return;

  Verdict decided{"instances.all_decided", true, true, {}};
  Verdict distinct{"instances.distinct_names", true, true, {}};
  Verdict range{"instances.names_in_range", true, true, {}};
  Verdict order{"instances.order_preserving", true, true, {}};
  auto fail = [](Verdict& v, const std::string& detail) {
    if (v.pass) v.detail = detail;
    v.pass = false;
  };
  for (std::size_t a = 0; a < instances.size(); ++a) {
    const auto& [va, da] = instances[a];
    if (!da) {
      fail(decided, "instance with input " + std::to_string(va) + " undecided");
      continue;
    }
    if (da->value < 1 || da->value > s.n + s.k) fail(range, "name " + std::to_string(da->value));
    for (std::size_t b = 0; b < instances.size(); ++b) {
      const auto& [vb, db] = instances[b];
      if (a == b || !db) continue;
      if (a < b && da->value == db->value) fail(distinct, "inputs " + std::to_string(va) + " and " + std::to_string(vb));
      if (va < vb && !(da->value < db->value)) fail(order, "inputs " + std::to_string(va) + " vs " + std::to_string(vb));
    }
  }
  for (auto* v : {&decided, &distinct, &range, &order}) report.verdicts.push_back(std::move(*v));
}

ordered_json decision_json(const std::optional<Decision>& d) {
  if (!d) return nullptr;
  return {{"id", d->id.tag()}, {"value", d->value}, {"round", d->round}};
}

}  // namespace

RunOutcome execute_scenario(const ScenarioConfig& s, std::uint64_t seed, Adversary* adversary_override) {
  const auto start = std::chrono::steady_clock::now();
  const auto protocol = make_protocol(protocol_options(s));
  const auto cfg = engine_config(s, *protocol, seed);
  const auto values = scenario_inputs(s, seed);
  const auto inputs = make_inputs(values, seed);

  std::unique_ptr<Adversary> owned;
  Adversary* adversary = adversary_override;
  if (!adversary) {
    owned = make_adversary(s, *protocol, seed);
    adversary = owned.get();
  }

  RunOutcome out;
  auto& report = out.report;
  report.protocol = s.protocol;
  report.seed = seed;
  report.inputs = values;

  StateRecorder recorder;
  Engine engine(cfg, *protocol, inputs, *adversary);
  engine.set_observer(recorder.observer());
  std::optional<std::string> fault;
  try {
    while (!engine.finished()) engine.run_round();
  } catch (const ProtocolFault& e) {
    fault = e.what();
  } catch (const BudgetError& e) {
    fault = e.what();
  }
  RunResult result = engine.take_result();

  if (const auto* twins = dynamic_cast<const SybilTwinAdversary*>(adversary)) {
    for (std::size_t t = 0; t < twins->twins().size(); ++t)
      report.shadows.push_back({twins->twins()[t], twins->shadow_decisions()[t]});
  }

  report.decisions = result.decisions;
  report.rounds_executed = result.rounds_executed;
  report.non_termination = result.non_termination;
  if (fault) {
    report.verdicts.push_back({"run.fault", false, true, *fault});
  } else {
    report.verdicts = check_run({cfg, s.protocol, inputs, &result, &recorder});
    check_instances(s, report);
  }
  out.trace = std::move(result.trace);
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

int exit_code(const RunReport& report) { return report.pass() ? kExitOk : kExitViolation; }

ordered_json report_to_json(const RunReport& report) {
  ordered_json j;
  j["protocol"] = protocol_name(report.protocol);
  j["seed"] = report.seed;
  j["inputs"] = report.inputs;
  auto decisions = ordered_json::array();
  for (const auto& d : report.decisions) decisions.push_back(decision_json(d));
  j["decisions"] = std::move(decisions);
  if (!report.shadows.empty()) {
    auto shadows = ordered_json::array();
    for (const auto& sh : report.shadows)
      shadows.push_back({{"target", sh.twin.target.tag()}, {"alt_input", sh.twin.alt_input}, {"decision", decision_json(sh.decision)}});
    j["shadows"] = std::move(shadows);
  }
  auto verdicts = ordered_json::array();
  for (const auto& v : report.verdicts) {
    ordered_json e{{"name", v.name}, {"pass", v.pass}, {"safety", v.safety}};
    if (!v.detail.empty()) e["detail"] = v.detail;
    verdicts.push_back(std::move(e));
  }
  j["verdicts"] = std::move(verdicts);
  j["rounds"] = report.rounds_executed;
  j["non_termination"] = report.non_termination;
  j["trace"] = report.trace_path.empty() ? ordered_json(nullptr) : ordered_json(report.trace_path);
  j["wall_ms"] = report.wall_ms;
  j["pass"] = report.pass();
  return j;
}

RunSummary summarize(const RunReport& report) {
  RunSummary s;
  s.seed = report.seed;
  s.pass = report.pass();
  s.safety_pass = report.safety_pass();
  s.rounds = report.rounds_executed;
  for (const auto& v : report.verdicts) {
    if (!v.pass) s.failed.push_back(v.name);
  }
  std::set<Value> decided;
  s.all_decided = true;
  for (const auto& d : report.decisions) {
    if (!d) {
      s.all_decided = false;
      continue;
    }
    decided.insert(d->value);
    s.max_decision_round = std::max(s.max_decision_round, d->round);
  }
  s.decision_set.assign(decided.begin(), decided.end());
  s.unanimous = std::adjacent_find(report.inputs.begin(), report.inputs.end(), std::not_equal_to<>()) == report.inputs.end();
  if (report.protocol == ProtocolKind::kBenOr) s.max_phase = BenOrProtocol::phase_of_round(s.max_decision_round);
  return s;
}

MonteCarloReport aggregate(ProtocolKind protocol, std::uint64_t seed_base, std::vector<RunSummary> runs) {
  std::sort(runs.begin(), runs.end(), [](const RunSummary& a, const RunSummary& b) { return a.seed < b.seed; });
  MonteCarloReport r;
  r.protocol = protocol;
  r.seed_base = seed_base;
  double rounds = 0;
  double phases = 0;
  for (const auto& run : runs) {
    if (!run.safety_pass) ++r.safety_violations;
    if (run.safety_pass && !run.pass) ++r.liveness_failures;
    for (const auto& name : run.failed) ++r.verdict_failures[name];
    for (Value v : run.decision_set) ++r.decision_histogram[v];
    r.max_decision_set_size = std::max(r.max_decision_set_size, run.decision_set.size());
    rounds += run.rounds;
    r.max_rounds = std::max(r.max_rounds, run.rounds);
    phases += run.max_phase;
    r.max_phases = std::max(r.max_phases, run.max_phase);
  }
  if (!runs.empty()) {
    r.mean_rounds = rounds / static_cast<double>(runs.size());
    r.mean_phases = phases / static_cast<double>(runs.size());
  }
  r.runs = std::move(runs);
  return r;
}

MonteCarloReport montecarlo_serial(const ScenarioConfig& s, int runs, std::uint64_t seed_base) {
  std::vector<RunSummary> out;
  out.reserve(static_cast<std::size_t>(std::max(runs, 0)));
  for (int i = 0; i < runs; ++i) out.push_back(summarize(execute_scenario(s, seed_base + static_cast<std::uint64_t>(i)).report));
  return aggregate(s.protocol, seed_base, std::move(out));
}

MonteCarloReport montecarlo_parallel(const ScenarioConfig& s, int runs, std::uint64_t seed_base) {
  std::vector<RunSummary> out(static_cast<std::size_t>(std::max(runs, 0)));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < runs; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = summarize(execute_scenario(s, seed_base + static_cast<std::uint64_t>(i)).report);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return aggregate(s.protocol, seed_base, std::move(out));
}

ordered_json montecarlo_to_json(const MonteCarloReport& report, bool include_runs) {
  ordered_json j;
  j["protocol"] = protocol_name(report.protocol);
  j["seed_base"] = report.seed_base;
  j["runs"] = report.runs.size();
  j["safety_violations"] = report.safety_violations;
  j["liveness_failures"] = report.liveness_failures;
  auto failures = ordered_json::object();
  for (const auto& [name, count] : report.verdict_failures) failures[name] = count;
  j["verdict_failures"] = std::move(failures);
  auto histogram = ordered_json::object();
  for (const auto& [value, count] : report.decision_histogram) histogram[std::to_string(value)] = count;
  j["decision_histogram"] = std::move(histogram);
  j["max_decision_set_size"] = report.max_decision_set_size;
  j["mean_rounds"] = report.mean_rounds;
  j["max_rounds"] = report.max_rounds;
  if (report.protocol == ProtocolKind::kBenOr) {
    j["mean_phases"] = report.mean_phases;
    j["max_phases"] = report.max_phases;
  }
  if (include_runs) {
    auto runs = ordered_json::array();
    for (const auto& r : report.runs) {
      runs.push_back({{"seed", r.seed},
                      {"pass", r.pass},
                      {"failed", r.failed},
                      {"decision_set", r.decision_set},
                      {"rounds", r.rounds}});
    }
    j["per_run"] = std::move(runs);
  }
  j["pass"] = report.pass();
  return j;
}

ReplayResult replay(const ScenarioConfig& s, const Trace& trace) {
  ScriptedAdversary scripted(forged_script(trace));
  auto outcome = execute_scenario(s, s.seed, &scripted);
  ReplayResult r;
  std::vector<std::optional<Decision>> recorded(static_cast<std::size_t>(s.n));
  for (const auto& event : trace) {
    if (const auto* d = std::get_if<Decision>(&event)) {
      if (d->id.index() >= 1 && d->id.index() <= s.n) recorded[d->id.slot()] = *d;
    }
  }
  r.decisions_match = recorded == outcome.report.decisions;
  r.trace_match = outcome.trace == trace;
  r.report = std::move(outcome.report);
  return r;
}

}  // namespace impsim::sim
