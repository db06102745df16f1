#include "impsim/chain/ops.hpp"

#include "impsim/errors.hpp"

namespace impsim::chain {

namespace {

[[noreturn]] void precondition(const std::string& what) {
  throw ChainError(ChainError::Code::kPreconditionFailed, what);
}

void check_round(const CommGraph& g, int r, const char* op) {
  if (r < 0 || r > g.horizon) precondition(std::string(op) + ": round " + std::to_string(r) + " out of range");
}

CommGraph validated(CommGraph g, const std::string& op) {
  if (auto v = validate_graph(g); !v.empty()) precondition(op + " yields invalid graph: " + v.front());
  return g;
}

}  // namespace

CommGraph op_label(const CommGraph& g, AdvLabel alpha, int r) {
  check_round(g, r, "label");
  if (alpha.is_none()) precondition("label: alpha must be A or a processor");
  if (!is_r_ff(g, r)) precondition("label(" + alpha.str() + ", " + std::to_string(r) + "): graph is not r-ff");
  CommGraph out = g;
  out.labels[static_cast<std::size_t>(r)] = alpha;
  return validated(std::move(out), "label(" + alpha.str() + ", " + std::to_string(r) + ")");
}

CommGraph op_remove(const CommGraph& g, int r) {
  check_round(g, r, "remove");
  if (g.label(r).is_none()) precondition("remove(" + std::to_string(r) + "): vertex is unlabeled");
  if (g.has_edges_from(r)) precondition("remove(" + std::to_string(r) + "): <Adv, r> has edges into round r+1");
  CommGraph out = g;
  out.labels[static_cast<std::size_t>(r)] = AdvLabel::none();
  return validated(std::move(out), "remove(" + std::to_string(r) + ")");
}

CommGraph op_switch(const CommGraph& g, int r) {
  check_round(g, r, "switch");
  const auto i = pi_graph_processor(g, r);
  if (!i) precondition("switch(" + std::to_string(r) + "): not a <p_i, r>-graph");
  CommGraph out = g;
  if (r == 0) {
    auto& v = out.base_inputs[static_cast<std::size_t>(*i - 1)];
    v = 1 - v;
  } else if (!g.label(r - 1).is_none()) {
    const Edge e{r, *i};
    if (!out.edges.erase(e)) out.edges.insert(e);
  }
  return validated(std::move(out), "switch(" + std::to_string(r) + ")");
}

std::string ChainOp::str() const {
  switch (kind) {
    case Kind::kLabel:
      return "label(" + label.str() + ", " + std::to_string(round) + ")";
    case Kind::kRemove:
      return "remove(" + std::to_string(round) + ")";
    case Kind::kSwitch:
      return "switch(" + std::to_string(round) + ")";
  }
  return "?";
}

CommGraph apply(const CommGraph& g, const ChainOp& op) {
  switch (op.kind) {
    case ChainOp::Kind::kLabel:
      return op_label(g, op.label, op.round);
    case ChainOp::Kind::kRemove:
      if (!op.label.is_none() && op.round >= 0 && op.round <= g.horizon && g.label(op.round) != op.label)
        precondition(op.str() + ": expected label " + op.label.str() + ", found " + g.label(op.round).str());
      return op_remove(g, op.round);
    case ChainOp::Kind::kSwitch:
      return op_switch(g, op.round);
  }
  return g;
}

}  // namespace impsim::chain
