#include "impsim/chain/comm_graph.hpp"

#include <optional>

namespace impsim::chain {

std::string AdvLabel::str() const {
  switch (kind) {
    case Kind::kNone:
      return "-";
    case Kind::kA:
      return "A";
    case Kind::kProcessor:
      return std::to_string(processor);
  }
  return "?";
}

CommGraph CommGraph::failure_free(int n, int horizon, std::vector<Value> inputs) {
  CommGraph g;
  g.n = n;
  g.horizon = horizon;
  g.labels.assign(static_cast<std::size_t>(horizon) + 1, AdvLabel::none());
  g.base_inputs = std::move(inputs);
  return g;
}

bool CommGraph::has_edges_from(int r) const {
  auto it = edges.lower_bound({r + 1, 0});
  return it != edges.end() && it->first == r + 1;
}

std::vector<std::string> validate_graph(const CommGraph& g) {
  std::vector<std::string> out;
  if (g.n < 1) out.push_back("n must be >= 1");
  if (g.horizon < 0) out.push_back("R must be >= 0");
  if (g.labels.size() != static_cast<std::size_t>(g.horizon) + 1)
    out.push_back("labels must have R+1 entries");
  if (g.base_inputs.size() != static_cast<std::size_t>(g.n)) out.push_back("base_inputs must have n entries");
  for (std::size_t j = 0; j < g.base_inputs.size(); ++j) {
    if (g.base_inputs[j] != 0 && g.base_inputs[j] != 1)
      out.push_back("base input of p_" + std::to_string(j + 1) + " is not binary");
  }
  if (!out.empty()) return out;

  for (int r = 0; r <= g.horizon; ++r) {
    const auto& l = g.label(r);
    if (l.is_proc() && (l.processor < 1 || l.processor > g.n))
      out.push_back("label(" + std::to_string(r) + ") names unknown processor " + std::to_string(l.processor));
    if (l.is_a() && r == 0) out.push_back("label(0) cannot be A");
    if (l.is_a() && r > 0 && g.label(r - 1).is_none())
      out.push_back("label(" + std::to_string(r) + ") = A requires label(" + std::to_string(r - 1) + ") to be set");
    if (l.is_a() && r > 0) {
      for (int j = 1; j <= g.n; ++j) {
        if (!g.has_edge(r, j))
          out.push_back("label(" + std::to_string(r) + ") = A requires edge (" + std::to_string(r) + ", p_" +
                        std::to_string(j) + ")");
      }
    }
  }
  for (const auto& [r, j] : g.edges) {
    if (r < 1 || r > g.horizon || j < 1 || j > g.n) {
      out.push_back("edge (" + std::to_string(r) + ", p_" + std::to_string(j) + ") out of range");
      continue;
    }
    if (g.label(r - 1).is_none())
      out.push_back("edge (" + std::to_string(r) + ", p_" + std::to_string(j) + ") from unlabeled <Adv, " +
                    std::to_string(r - 1) + ">");
  }
  return out;
}

bool is_r_ff(const CommGraph& g, int r) {
  for (int s = std::max(r, 0); s <= g.horizon; ++s) {
    if (!g.label(s).is_none()) return false;
  }
  return true;
}

std::optional<int> pi_graph_processor(const CommGraph& g, int r) {
  if (r < 0 || r > g.horizon || !g.label(r).is_proc()) return std::nullopt;
  for (int s = r + 1; s <= g.horizon; ++s) {
    if (!g.label(s).is_a()) return std::nullopt;
  }
  return g.label(r).processor;
}

}  // namespace impsim::chain
