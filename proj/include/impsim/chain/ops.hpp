#pragma once

#include <string>

#include "impsim/chain/comm_graph.hpp"

namespace impsim::chain {

/// label(alpha, r) on an r-ff graph. Throws ChainError(kPreconditionFailed)
/// if g is not r-ff or the result is invalid.
CommGraph op_label(const CommGraph& g, AdvLabel alpha, int r);

/// Removes the label of <Adv, r>; requires the vertex to be labeled and to
/// have no edges into round r+1.
CommGraph op_remove(const CommGraph& g, int r);

/// On a <p_i, r>-graph, swaps real p_i and its shadow from round r+1 on:
/// toggles edge (r, i) when <Adv, r-1> is labeled, or flips p_i's input when
/// r = 0.
CommGraph op_switch(const CommGraph& g, int r);

struct ChainOp {
  enum class Kind : std::uint8_t { kLabel, kRemove, kSwitch };

  Kind kind = Kind::kLabel;
  int round = 0;
  /// Label written (kLabel) or expected to be removed (kRemove; none means
  /// unchecked).
  AdvLabel label;

  static ChainOp label_op(AdvLabel l, int r) { return {Kind::kLabel, r, l}; }
  static ChainOp remove_op(int r, AdvLabel removed = {}) { return {Kind::kRemove, r, removed}; }
  static ChainOp switch_op(int r) { return {Kind::kSwitch, r, {}}; }

  std::string str() const;

  friend bool operator==(const ChainOp&, const ChainOp&) = default;
};

CommGraph apply(const CommGraph& g, const ChainOp& op);

}  // namespace impsim::chain
