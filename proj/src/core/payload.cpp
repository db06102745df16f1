#include "impsim/payload.hpp"

#include <algorithm>
#include <array>
#include <charconv>

#include "impsim/envelope.hpp"

namespace impsim {

namespace {

constexpr std::array<std::string_view, 11> kKindNames = {
    "INPUT", "ECHO1", "ECHO", "SAVAL", "SAECHO", "BR_REPORT", "BR_PROPOSE", "DECIDED", "VIEW", "ROUND", "ENTRY",
};

template <class T, class Cmp>
std::strong_ordering lex(const std::vector<T>& a, const std::vector<T>& b, Cmp cmp) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = cmp(a[i], b[i]); c != 0) return c;
  }
  return a.size() <=> b.size();
}

}  // namespace

std::string_view kind_name(PayloadKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<PayloadKind> kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<PayloadKind>(i);
  }
  return std::nullopt;
}

std::strong_ordering compare(const Payload& a, const Payload& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = lex(a.fields, b.fields, [](Value x, Value y) { return x <=> y; }); c != 0) return c;
  return lex(a.children, b.children, [](const Payload& x, const Payload& y) { return compare(x, y); });
}

Message::Message(std::vector<Payload> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

const Payload* Message::sole(PayloadKind kind) const {
  if (items_.size() != 1 || items_.front().kind != kind) return nullptr;
  return &items_.front();
}

std::strong_ordering compare(const Message& a, const Message& b) {
  return lex(a.items_, b.items_, [](const Payload& x, const Payload& y) { return compare(x, y); });
}

bool delivery_less(const Envelope& a, const Envelope& b) {
  if (auto c = a.claimed_sender <=> b.claimed_sender; c != 0) return c < 0;
  if (auto c = compare(a.payload, b.payload); c != 0) return c < 0;
  return a.origin < b.origin;
}

RoundInbox to_inbox(std::span<const Envelope> delivered) {
  RoundInbox inbox;
  inbox.reserve(delivered.size());
  for (const auto& e : delivered) inbox.push_back({e.claimed_sender, e.payload});
  return inbox;
}

void canonicalize(RoundInbox& inbox) {
  std::sort(inbox.begin(), inbox.end(), [](const InboxEntry& a, const InboxEntry& b) {
    if (a.sender != b.sender) return a.sender < b.sender;
    return a.message < b.message;
  });
}

ProcessorId parse_processor_tag(const std::string& tag) {
  if (tag.size() < 3 || tag.compare(0, 2, "p_") != 0) return ProcessorId{};
  int index = 0;
  auto [ptr, ec] = std::from_chars(tag.data() + 2, tag.data() + tag.size(), index);
  if (ec != std::errc{} || ptr != tag.data() + tag.size() || index < 1) return ProcessorId{};
  return ProcessorId(index);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace impsim
