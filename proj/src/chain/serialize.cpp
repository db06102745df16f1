#include "impsim/chain/serialize.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "impsim/errors.hpp"

namespace impsim::chain {

nlohmann::ordered_json graph_to_json(const CommGraph& g) {
  nlohmann::ordered_json j;
  j["schema"] = kGraphSchemaVersion;
  j["n"] = g.n;
  j["R"] = g.horizon;
  auto labels = nlohmann::ordered_json::array();
  for (const auto& l : g.labels) {
    if (l.is_none())
      labels.push_back(nullptr);
    else if (l.is_a())
      labels.push_back("A");
    else
      labels.push_back(l.processor);
  }
  j["labels"] = std::move(labels);
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [r, p] : g.edges) edges.push_back({r, p});
  j["edges"] = std::move(edges);
  j["base_inputs"] = g.base_inputs;
  return j;
}

CommGraph graph_from_json(const nlohmann::json& j) {
  static const std::set<std::string> kFields = {"schema", "n", "R", "labels", "edges", "base_inputs"};
  if (!j.is_object()) throw ConfigError("graph", "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!kFields.contains(key)) throw ConfigError(key, "unknown field");
  }
  for (const auto& key : kFields) {
    if (!j.contains(key)) throw ConfigError(key, "required");
  }
  if (j.at("schema") != kGraphSchemaVersion) throw ConfigError("schema", "unsupported graph schema version");

  try {
    CommGraph g;
    g.n = j.at("n").get<int>();
    g.horizon = j.at("R").get<int>();
    for (const auto& l : j.at("labels")) {
      if (l.is_null())
        g.labels.push_back(AdvLabel::none());
      else if (l.is_string() && l.get<std::string>() == "A")
        g.labels.push_back(AdvLabel::a());
      else if (l.is_number_integer())
        g.labels.push_back(AdvLabel::proc(l.get<int>()));
      else
        throw ConfigError("labels", "label must be null, \"A\" or a processor index");
    }
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ConfigError("edges", "edge must be [round, processor]");
      g.edges.insert({e[0].get<int>(), e[1].get<int>()});
    }
    g.base_inputs = j.at("base_inputs").get<std::vector<Value>>();
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("graph", e.what());
  }
}

std::string canonical_text(const CommGraph& g) { return graph_to_json(g).dump(); }

CommGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("graph", "cannot open " + path.string());
  try {
    return graph_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("graph", e.what());
  }
}

void save_graph(const CommGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << graph_to_json(g).dump(2) << '\n';
}

std::uint64_t fingerprint(const CommGraph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_text(g)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string to_dot(const CommGraph& g) {
  std::ostringstream out;
  out << "digraph comm_graph {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (int r = 0; r <= g.horizon; ++r) {
    const auto& l = g.label(r);
    out << "  adv_" << r << " [label=\"Adv," << r << (l.is_none() ? "" : "\\n" + l.str()) << "\"];\n";
    for (int i = 1; i <= g.n; ++i) {
      out << "  p" << i << "_" << r << " [label=\"p" << i << "," << r;
      if (r == 0) out << "\\nin=" << g.base_inputs[static_cast<std::size_t>(i - 1)];
      out << "\"];\n";
    }
  }
  for (const auto& [r, j] : g.edges) out << "  adv_" << r - 1 << " -> p" << j << "_" << r << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace impsim::chain
