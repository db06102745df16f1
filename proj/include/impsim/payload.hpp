#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "impsim/ids.hpp"

namespace impsim {

enum class PayloadKind : std::uint8_t {
  kInput,      // INPUT(v)
  kEcho1,      // ECHO1(p, v), the round-2 echo'
  kEcho,       // ECHO(p, v)
  kSaVal,      // SAVAL(v)
  kSaEcho,     // SAECHO(v)
  kBrReport,   // BR_REPORT(phase, v)
  kBrPropose,  // BR_PROPOSE(phase) for bottom, BR_PROPOSE(phase, v) otherwise
  kDecided,    // DECIDED(v)
  kView,       // VIEW(input){ROUND...}, full-information state
  kRound,      // ROUND{ENTRY...}
  kEntry,      // ENTRY(sender){items...}
};

std::string_view kind_name(PayloadKind kind);
std::optional<PayloadKind> kind_from_name(std::string_view name);

/// One tagged value inside a message. Fields holding processor ids store the
/// 1-based index. Children are used only by the full-information encoding.
struct Payload {
  PayloadKind kind = PayloadKind::kInput;
  std::vector<Value> fields;
  std::vector<Payload> children;

  static Payload input(Value v) { return {PayloadKind::kInput, {v}, {}}; }
  static Payload echo1(ProcessorId p, Value v) { return {PayloadKind::kEcho1, {p.index(), v}, {}}; }
  static Payload echo(ProcessorId p, Value v) { return {PayloadKind::kEcho, {p.index(), v}, {}}; }
  static Payload sa_value(Value v) { return {PayloadKind::kSaVal, {v}, {}}; }
  static Payload sa_echo(Value v) { return {PayloadKind::kSaEcho, {v}, {}}; }
  static Payload report(Value phase, Value v) { return {PayloadKind::kBrReport, {phase, v}, {}}; }
  static Payload propose(Value phase, std::optional<Value> v) {
    if (v) return {PayloadKind::kBrPropose, {phase, *v}, {}};
    return {PayloadKind::kBrPropose, {phase}, {}};
  }
  static Payload decided(Value v) { return {PayloadKind::kDecided, {v}, {}}; }
};

std::strong_ordering compare(const Payload& a, const Payload& b);
inline bool operator==(const Payload& a, const Payload& b) { return compare(a, b) == 0; }
inline bool operator<(const Payload& a, const Payload& b) { return compare(a, b) < 0; }

/// Everything one processor broadcasts in one round. Items are kept sorted
/// and duplicate-free so that equal messages have one representation.
class Message {
 public:
  Message() = default;
  explicit Message(std::vector<Payload> items);

  const std::vector<Payload>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }

  /// The single item of the given kind, if the message consists of exactly that.
  const Payload* sole(PayloadKind kind) const;

  friend std::strong_ordering compare(const Message& a, const Message& b);
  friend bool operator==(const Message& a, const Message& b) { return compare(a, b) == 0; }
  friend bool operator<(const Message& a, const Message& b) { return compare(a, b) < 0; }

 private:
  std::vector<Payload> items_;
};

}  // namespace impsim
