#include "impsim/trace_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace impsim {

ordered_json to_json(const Payload& payload) {
  ordered_json j;
  j["kind"] = kind_name(payload.kind);
  j["fields"] = payload.fields;
  if (!payload.children.empty()) {
    ordered_json items = ordered_json::array();
    for (const auto& child : payload.children) items.push_back(to_json(child));
    j["items"] = std::move(items);
  }
  return j;
}

ordered_json to_json(const Message& message) {
  ordered_json j = ordered_json::array();
  for (const auto& item : message.items()) j.push_back(to_json(item));
  return j;
}

Payload payload_from_json(const nlohmann::json& j) {
  const auto kind = kind_from_name(j.at("kind").get<std::string>());
  if (!kind) throw std::runtime_error("unknown payload kind " + j.at("kind").dump());
  Payload p{*kind, j.at("fields").get<std::vector<Value>>(), {}};
  if (auto it = j.find("items"); it != j.end()) {
    for (const auto& child : *it) p.children.push_back(payload_from_json(child));
  }
  return p;
}

Message message_from_json(const nlohmann::json& j) {
  std::vector<Payload> items;
  for (const auto& item : j) items.push_back(payload_from_json(item));
  return Message(std::move(items));
}

std::string trace_line(const TraceEvent& event) {
  ordered_json j;
  if (const auto* d = std::get_if<Delivery>(&event)) {
    j["round"] = d->round;
    j["recv"] = d->receiver.tag();
    j["src"] = d->sender.tag();
    j["forged"] = d->forged;
    j["payload"] = to_json(d->payload);
  } else {
    const auto& dec = std::get<Decision>(event);
    ordered_json inner;
    inner["id"] = dec.id.tag();
    inner["value"] = dec.value;
    inner["round"] = dec.round;
    j["decide"] = std::move(inner);
  }
  return j.dump();
}

void write_trace(const Trace& trace, std::ostream& out) {
  for (const auto& event : trace) out << trace_line(event) << '\n';
}

void emit_trace(const Trace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open trace file " + path.string());
  write_trace(trace, out);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

namespace {

ProcessorId required_id(const nlohmann::json& j, const char* key) {
  const auto id = parse_processor_tag(j.at(key).get<std::string>());
  if (id.index() == 0) throw std::runtime_error(std::string("bad processor tag in ") + key);
  return id;
}

}  // namespace

Trace read_trace(std::istream& in) {
  Trace trace;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      if (auto it = j.find("decide"); it != j.end()) {
        trace.emplace_back(Decision{required_id(*it, "id"), it->at("value").get<Value>(), it->at("round").get<int>()});
      } else {
        trace.emplace_back(Delivery{j.at("round").get<int>(), required_id(j, "recv"), required_id(j, "src"),
                                    j.at("forged").get<bool>(), message_from_json(j.at("payload"))});
      }
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return trace;
}

Trace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file " + path.string());
  return read_trace(in);
}

}  // namespace impsim
