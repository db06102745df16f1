#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "impsim/engine.hpp"

namespace impsim {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const Payload& payload);
ordered_json to_json(const Message& message);
Payload payload_from_json(const nlohmann::json& j);
Message message_from_json(const nlohmann::json& j);

/// One JSONL record with stable key order.
std::string trace_line(const TraceEvent& event);

void write_trace(const Trace& trace, std::ostream& out);
void emit_trace(const Trace& trace, const std::filesystem::path& path);

/// Throws std::runtime_error on malformed lines.
Trace read_trace(std::istream& in);
Trace load_trace(const std::filesystem::path& path);

}  // namespace impsim
