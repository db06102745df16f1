#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "impsim/ids.hpp"

namespace impsim::chain {

/// Label of an adversary vertex <Adv, r>: none (adversary undefined), A (the
/// shadow continues from its previous state), or a processor index i (the
/// shadow starts from the inverse of p_i's state).
struct AdvLabel {
  enum class Kind : std::uint8_t { kNone, kA, kProcessor };

  Kind kind = Kind::kNone;
  int processor = 0;

  static AdvLabel none() { return {}; }
  static AdvLabel a() { return {Kind::kA, 0}; }
  static AdvLabel proc(int i) { return {Kind::kProcessor, i}; }

  bool is_none() const { return kind == Kind::kNone; }
  bool is_a() const { return kind == Kind::kA; }
  bool is_proc() const { return kind == Kind::kProcessor; }

  std::string str() const;

  friend bool operator==(const AdvLabel&, const AdvLabel&) = default;
  friend auto operator<=>(const AdvLabel&, const AdvLabel&) = default;
};

/// Edge (r, j): the adversary's round-r message reaches p_j, i.e. an edge
/// from <Adv, r-1> to <p_j, r>.
using Edge = std::pair<int, int>;

/// A 1-adversary execution over rounds 1..R described on the
/// (n+1) x (R+1) grid. Genuine messages are implicit.
struct CommGraph {
  int n = 1;
  int horizon = 1;               // R
  std::vector<AdvLabel> labels;  // labels[r], r = 0..R
  std::set<Edge> edges;
  std::vector<Value> base_inputs;  // binary, one per processor

  static CommGraph failure_free(int n, int horizon, std::vector<Value> inputs);

  const AdvLabel& label(int r) const { return labels.at(static_cast<std::size_t>(r)); }
  bool has_edge(int r, int j) const { return edges.contains({r, j}); }
  bool has_edges_from(int r) const;  // any edge (r+1, .)

  friend bool operator==(const CommGraph&, const CommGraph&) = default;
  friend auto operator<=>(const CommGraph&, const CommGraph&) = default;
};

/// Empty when the graph is well formed; otherwise one message per violation.
std::vector<std::string> validate_graph(const CommGraph& g);

/// No labels on <Adv, r>, ..., <Adv, R>.
bool is_r_ff(const CommGraph& g, int r);

/// The processor i when g is a <p_i, r>-graph (label(r) = i and A after).
std::optional<int> pi_graph_processor(const CommGraph& g, int r);

}  // namespace impsim::chain
