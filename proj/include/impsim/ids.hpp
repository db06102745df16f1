#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace impsim {

using Value = std::int64_t;

/// Identity of a processor, 1-based. Protocol logic may only test ids for
/// equality; the ordering exists so ids can key ordered containers and so the
/// engine can sort inboxes canonically.
class ProcessorId {
 public:
  constexpr ProcessorId() = default;
  constexpr explicit ProcessorId(int index) : index_(index) {}

  constexpr int index() const { return index_; }
  /// 0-based position for vector storage.
  constexpr std::size_t slot() const { return static_cast<std::size_t>(index_ - 1); }

  std::string tag() const { return "p_" + std::to_string(index_); }

  friend constexpr bool operator==(ProcessorId, ProcessorId) = default;
  friend constexpr auto operator<=>(ProcessorId, ProcessorId) = default;

 private:
  int index_ = 0;
};

inline ProcessorId id_from_slot(std::size_t slot) { return ProcessorId(static_cast<int>(slot) + 1); }

/// Parses "p_<i>"; returns an invalid id (index 0) on malformed input.
ProcessorId parse_processor_tag(const std::string& tag);

/// Per-processor private input: the protocol input value and a random tape
/// seed used by randomized protocols.
struct ProcessInput {
  Value value = 0;
  std::uint64_t tape = 0;

  friend bool operator==(const ProcessInput&, const ProcessInput&) = default;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace impsim

template <>
struct std::hash<impsim::ProcessorId> {
  std::size_t operator()(impsim::ProcessorId id) const noexcept { return std::hash<int>{}(id.index()); }
};
