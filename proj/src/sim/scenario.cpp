#include "impsim/sim/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include "impsim/adversaries/graph_adversary.hpp"
#include "impsim/chain/serialize.hpp"
#include "impsim/errors.hpp"

namespace impsim::sim {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& prefix, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(prefix.empty() ? "scenario" : prefix, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError(prefix + key, "unknown field");
  }
}

const json& required(const json& j, const std::string& prefix, const std::string& key) {
  if (!j.contains(key)) throw ConfigError(prefix + key, "required");
  return j.at(key);
}

template <typename T>
T get_as(const json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(field, "wrong type");
  }
}

AdversarySpec parse_adversary(const json& j, const std::filesystem::path& base_dir) {
  AdversarySpec spec;
  const auto kind = get_as<std::string>(required(j, "adversary.", "kind"), "adversary.kind");
  if (kind == "null") {
    reject_unknown(j, "adversary.", {"kind"});
  } else if (kind == "sybil_twin") {
    reject_unknown(j, "adversary.", {"kind", "twins"});
    spec.kind = AdversarySpec::Kind::kSybilTwin;
    const auto& twins = required(j, "adversary.", "twins");
    if (!twins.is_array()) throw ConfigError("adversary.twins", "expected an array");
    for (std::size_t t = 0; t < twins.size(); ++t) {
      const std::string prefix = "adversary.twins[" + std::to_string(t) + "].";
      reject_unknown(twins[t], prefix, {"target", "alt_input", "tape"});
      TwinSpec twin;
      twin.target = parse_processor_tag(get_as<std::string>(required(twins[t], prefix, "target"), prefix + "target"));
      if (twin.target.index() == 0) throw ConfigError(prefix + "target", "expected p_<i>");
      twin.alt_input = get_as<Value>(required(twins[t], prefix, "alt_input"), prefix + "alt_input");
      if (twins[t].contains("tape")) {
        twin.tape = get_as<std::uint64_t>(twins[t].at("tape"), prefix + "tape");
        spec.explicit_tapes.push_back(true);
      } else {
        spec.explicit_tapes.push_back(false);
      }
      spec.twins.push_back(twin);
    }
  } else if (kind == "random_forger") {
    reject_unknown(j, "adversary.", {"kind", "mode"});
    spec.kind = AdversarySpec::Kind::kRandomForger;
    const auto mode = j.contains("mode") ? get_as<std::string>(j.at("mode"), "adversary.mode") : "replay";
    if (mode == "replay")
      spec.mode = RandomForger::Mode::kReplay;
    else if (mode == "mutate")
      spec.mode = RandomForger::Mode::kMutate;
    else
      throw ConfigError("adversary.mode", "expected replay or mutate");
  } else if (kind == "duplicate_spam") {
    reject_unknown(j, "adversary.", {"kind", "ids"});
    spec.kind = AdversarySpec::Kind::kDuplicateSpam;
    spec.spam_ids = get_as<int>(required(j, "adversary.", "ids"), "adversary.ids");
    if (spec.spam_ids < 0) throw ConfigError("adversary.ids", "must be non-negative");
  } else if (kind == "graph") {
    reject_unknown(j, "adversary.", {"kind", "path"});
    spec.kind = AdversarySpec::Kind::kGraph;
    spec.graph_path = get_as<std::string>(required(j, "adversary.", "path"), "adversary.path");
    if (spec.graph_path.is_relative() && !base_dir.empty()) spec.graph_path = base_dir / spec.graph_path;
    spec.graph = chain::load_graph(spec.graph_path);
  } else {
    throw ConfigError("adversary.kind", "unknown adversary '" + kind + "'");
  }
  return spec;
}

bool distinct(const std::vector<Value>& values) {
  return std::set<Value>(values.begin(), values.end()).size() == values.size();
}

}  // namespace

ScenarioConfig parse_scenario(const json& j, const std::filesystem::path& base_dir) {
  reject_unknown(j, "", {"schema", "protocol", "n", "k", "inputs", "input_dist", "value_domain", "adversary", "seed",
                         "max_rounds", "max_phases", "weak_renaming_bound", "fault_hook"});
  ScenarioConfig s;
  const auto name = get_as<std::string>(required(j, "", "protocol"), "protocol");
  const auto kind = protocol_from_name(name);
  if (!kind || *kind == ProtocolKind::kFullInformation) throw ConfigError("protocol", "unknown protocol '" + name + "'");
  s.protocol = *kind;
  s.n = get_as<int>(required(j, "", "n"), "n");
  s.k = get_as<int>(required(j, "", "k"), "k");
  if (get_as<int>(required(j, "", "schema"), "schema") != kScenarioSchemaVersion)
    throw ConfigError("schema", "unsupported scenario schema version");

  if (j.contains("inputs") == j.contains("input_dist"))
    throw ConfigError("inputs", "exactly one of inputs and input_dist is required");
  if (j.contains("inputs")) s.inputs = get_as<std::vector<Value>>(j.at("inputs"), "inputs");
  if (j.contains("input_dist")) {
    const auto& d = j.at("input_dist");
    reject_unknown(d, "input_dist.", {"kind", "lo", "hi"});
    if (get_as<std::string>(required(d, "input_dist.", "kind"), "input_dist.kind") != "uniform")
      throw ConfigError("input_dist.kind", "only uniform is supported");
    InputDistribution dist;
    if (s.protocol == ProtocolKind::kBenOr) dist = {0, 1};
    if (d.contains("lo")) dist.lo = get_as<Value>(d.at("lo"), "input_dist.lo");
    if (d.contains("hi")) dist.hi = get_as<Value>(d.at("hi"), "input_dist.hi");
    if (s.protocol == ProtocolKind::kRenaming && (!d.contains("lo") || !d.contains("hi")))
      throw ConfigError("input_dist", "renaming needs lo and hi");
    s.input_dist = dist;
  }
  if (j.contains("value_domain")) s.value_domain = get_as<std::vector<Value>>(j.at("value_domain"), "value_domain");
  if (j.contains("adversary")) s.adversary = parse_adversary(j.at("adversary"), base_dir);
  if (j.contains("seed")) s.seed = get_as<std::uint64_t>(j.at("seed"), "seed");
  if (j.contains("max_rounds")) s.max_rounds = get_as<int>(j.at("max_rounds"), "max_rounds");
  if (j.contains("max_phases")) s.max_phases = get_as<int>(j.at("max_phases"), "max_phases");
  if (j.contains("weak_renaming_bound")) s.weak_renaming_bound = get_as<bool>(j.at("weak_renaming_bound"), "weak_renaming_bound");
  if (j.contains("fault_hook")) {
    const auto hook = get_as<std::string>(j.at("fault_hook"), "fault_hook");
    if (hook != "skip_round2_echo") throw ConfigError("fault_hook", "unknown hook '" + hook + "'");
    s.skip_round2_echo = true;
  }
  validate_scenario(s);
  return s;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("scenario", "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("scenario", e.what());
  }
  return parse_scenario(j, path.parent_path());
}

ProtocolRequirements requirements(const ScenarioConfig& s) {
  std::set<Value> domain(s.value_domain.begin(), s.value_domain.end());
  return {s.protocol, domain.size(), s.weak_renaming_bound};
}

ProtocolOptions protocol_options(const ScenarioConfig& s) {
  ProtocolOptions o;
  o.kind = s.protocol;
  o.n = s.n;
  o.k = s.k;
  if (s.max_phases) o.max_phases = *s.max_phases;
  o.skip_round2_echo = s.skip_round2_echo;
  return o;
}

EngineConfig engine_config(const ScenarioConfig& s, const Protocol& protocol, std::uint64_t seed) {
  return {s.n, s.k, s.max_rounds.value_or(protocol.default_max_rounds()), seed};
}

void validate_scenario(const ScenarioConfig& s) {
  if (s.n < 1) throw ConfigError("n", "must be positive");
  if (s.k < 0) throw ConfigError("k", "must be non-negative");
  if (s.max_rounds && *s.max_rounds < 1) throw ConfigError("max_rounds", "must be positive");
  if (s.max_phases && *s.max_phases < 1) throw ConfigError("max_phases", "must be positive");
  if (s.max_phases && s.protocol != ProtocolKind::kBenOr) throw ConfigError("max_phases", "only for ben_or");
  if (s.skip_round2_echo && s.protocol != ProtocolKind::kRenaming) throw ConfigError("fault_hook", "only for renaming");
  if (s.weak_renaming_bound && s.protocol != ProtocolKind::kRenaming)
    throw ConfigError("weak_renaming_bound", "only for renaming");

  const bool set_agreement = s.protocol == ProtocolKind::kSetAgreement;
  if (set_agreement && s.value_domain.empty()) throw ConfigError("value_domain", "required for set_agreement");
  if (!set_agreement && !s.value_domain.empty()) throw ConfigError("value_domain", "only for set_agreement");
  if (!distinct(s.value_domain)) throw ConfigError("value_domain", "values must be distinct");

  validate_config({s.n, s.k, 1, s.seed}, requirements(s));

  auto admissible = [&](Value v) {
    switch (s.protocol) {
      case ProtocolKind::kSetAgreement:
        return std::find(s.value_domain.begin(), s.value_domain.end(), v) != s.value_domain.end();
      case ProtocolKind::kBenOr:
        return v == 0 || v == 1;
      default:
        return true;
    }
  };

  if (s.inputs) {
    if (static_cast<int>(s.inputs->size()) != s.n) throw ConfigError("inputs", "length must equal n");
    for (Value v : *s.inputs) {
      if (!admissible(v)) throw ConfigError("inputs", "value " + std::to_string(v) + " outside the input domain");
    }
    if (s.protocol == ProtocolKind::kRenaming && !distinct(*s.inputs))
      throw ConfigError("inputs", "renaming inputs must be distinct");
  }
  if (s.input_dist) {
    const auto& d = *s.input_dist;
    if (d.lo > d.hi) throw ConfigError("input_dist", "lo > hi");
    if (s.protocol == ProtocolKind::kRenaming && d.hi - d.lo + 1 < s.n)
      throw ConfigError("input_dist", "range too small for n distinct renaming inputs");
    if (s.protocol == ProtocolKind::kBenOr && (d.lo < 0 || d.hi > 1)) throw ConfigError("input_dist", "ben_or inputs are binary");
  }

  const auto& adv = s.adversary;
  if (adv.kind == AdversarySpec::Kind::kSybilTwin) {
    if (static_cast<int>(adv.twins.size()) > s.k) throw ConfigError("adversary.twins", "more twins than k");
    std::set<ProcessorId> targets;
    for (const auto& t : adv.twins) {
      if (t.target.index() > s.n) throw ConfigError("adversary.twins", "unknown target " + t.target.tag());
      if (!targets.insert(t.target).second) throw ConfigError("adversary.twins", "duplicate target " + t.target.tag());
      if (!admissible(t.alt_input)) throw ConfigError("adversary.twins", "alt_input outside the input domain");
    }
  }
  if (adv.kind == AdversarySpec::Kind::kDuplicateSpam && adv.spam_ids > s.k)
    throw ConfigError("adversary.ids", "more spammed ids than k");
  if (adv.kind == AdversarySpec::Kind::kGraph) {
    const auto& g = *adv.graph;
    if (const auto problems = chain::validate_graph(g); !problems.empty())
      throw ConfigError("adversary.path", "invalid graph: " + problems.front());
    if (s.k < 1) throw ConfigError("k", "graph adversaries need k >= 1");
    if (g.n != s.n) throw ConfigError("adversary.path", "graph n differs from scenario n");
    if (!s.inputs || *s.inputs != g.base_inputs) throw ConfigError("inputs", "must equal the graph's base_inputs");
    if (s.max_rounds && *s.max_rounds != g.horizon) throw ConfigError("max_rounds", "must equal the graph's R");
  }
}

std::vector<Value> scenario_inputs(const ScenarioConfig& s, std::uint64_t seed) {
  if (s.inputs) return *s.inputs;
  std::mt19937_64 rng(splitmix64(seed ^ 0x696e707574ULL));
  const auto& d = *s.input_dist;
  std::vector<Value> out;
  if (s.protocol == ProtocolKind::kRenaming) {
    std::set<Value> seen;
    std::uniform_int_distribution<Value> pick(d.lo, d.hi);
    while (out.size() < static_cast<std::size_t>(s.n)) {
      const Value v = pick(rng);
      if (seen.insert(v).second) out.push_back(v);
    }
  } else if (s.protocol == ProtocolKind::kSetAgreement) {
    std::uniform_int_distribution<std::size_t> pick(0, s.value_domain.size() - 1);
    for (int i = 0; i < s.n; ++i) out.push_back(s.value_domain[pick(rng)]);
  } else {
    std::uniform_int_distribution<Value> pick(d.lo, d.hi);
    for (int i = 0; i < s.n; ++i) out.push_back(pick(rng));
  }
  return out;
}

std::unique_ptr<Adversary> make_adversary(const ScenarioConfig& s, const Protocol& protocol, std::uint64_t seed) {
  const auto& adv = s.adversary;
  switch (adv.kind) {
    case AdversarySpec::Kind::kNull:
      return std::make_unique<NullAdversary>();
    case AdversarySpec::Kind::kSybilTwin: {
      auto twins = adv.twins;
      for (std::size_t t = 0; t < twins.size(); ++t) {
        if (t >= adv.explicit_tapes.size() || !adv.explicit_tapes[t])
          twins[t].tape = splitmix64(seed ^ splitmix64(0x7477696eULL + static_cast<std::uint64_t>(twins[t].target.index())));
      }
      return std::make_unique<SybilTwinAdversary>(std::move(twins), protocol);
    }
    case AdversarySpec::Kind::kRandomForger:
      return std::make_unique<RandomForger>(splitmix64(seed), adv.mode);
    case AdversarySpec::Kind::kDuplicateSpam:
      return std::make_unique<DuplicateSpamAdversary>(splitmix64(seed), adv.spam_ids);
    case AdversarySpec::Kind::kGraph:
      return std::make_unique<GraphAdversary>(*adv.graph, protocol);
  }
  return nullptr;
}

}  // namespace impsim::sim
