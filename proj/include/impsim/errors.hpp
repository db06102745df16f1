#pragma once

#include <stdexcept>
#include <string>

#include "impsim/ids.hpp"

namespace impsim {

/// Rejected run parameters. `field` names the offending scenario field or the
/// violated inequality.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& reason)
      : std::runtime_error(field + ": " + reason), field_(std::move(field)), reason_(reason) {}

  const std::string& field() const { return field_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string field_;
  std::string reason_;
};

class BudgetError : public std::runtime_error {
 public:
  BudgetError(ProcessorId receiver, int count, int round)
      : std::runtime_error("adversary budget exceeded: " + receiver.tag() + " targeted by " +
                           std::to_string(count) + " forged envelopes in round " + std::to_string(round)),
        receiver_(receiver),
        count_(count) {}

  ProcessorId receiver() const { return receiver_; }
  int count() const { return count_; }

 private:
  ProcessorId receiver_;
  int count_;
};

/// A protocol reached a state its correctness argument rules out.
class ProtocolFault : public std::runtime_error {
 public:
  enum class Code { kMissingValue, kEmptyCandidates, kNoQualifyingValue, kMalformedAdversary };

  ProtocolFault(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

class ChainError : public std::runtime_error {
 public:
  enum class Code { kPreconditionFailed, kGraphMismatch, kHorizonExceeded, kInvalidGraph };

  ChainError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

}  // namespace impsim
