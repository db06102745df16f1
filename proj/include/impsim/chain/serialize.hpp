#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "impsim/chain/comm_graph.hpp"

namespace impsim::chain {

inline constexpr int kGraphSchemaVersion = 1;

/// {"schema":1,"n":..,"R":..,"labels":[null|"A"|i,...],"edges":[[r,j],...],"base_inputs":[...]}
nlohmann::ordered_json graph_to_json(const CommGraph& g);

/// Rejects unknown fields and schema mismatches with ConfigError; returns the
/// graph without validating the grid restrictions.
CommGraph graph_from_json(const nlohmann::json& j);

std::string canonical_text(const CommGraph& g);
CommGraph load_graph(const std::filesystem::path& path);
void save_graph(const CommGraph& g, const std::filesystem::path& path);

/// FNV-1a 64 of the canonical text.
std::uint64_t fingerprint(const CommGraph& g);

/// Graphviz rendering: <p_i, r> and <Adv, r> vertices, adversary edges only.
std::string to_dot(const CommGraph& g);

}  // namespace impsim::chain
