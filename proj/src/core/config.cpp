#include "impsim/config.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace impsim {

namespace {

constexpr std::string_view kProtocolNames[] = {"renaming", "set_agreement", "ben_or", "full_information"};

}  // namespace

std::string_view protocol_name(ProtocolKind kind) { return kProtocolNames[static_cast<int>(kind)]; }

std::optional<ProtocolKind> protocol_from_name(std::string_view name) {
  for (int i = 0; i < 4; ++i) {
    if (kProtocolNames[i] == name) return static_cast<ProtocolKind>(i);
  }
  return std::nullopt;
}

void validate_config(const EngineConfig& cfg, const ProtocolRequirements& req) {
  if (cfg.n < 1) throw ConfigError("n", "n >= 1 required, got " + std::to_string(cfg.n));
  if (cfg.k < 0) throw ConfigError("k", "k >= 0 required, got " + std::to_string(cfg.k));
  if (cfg.max_rounds < 1) throw ConfigError("max_rounds", "max_rounds >= 1 required");

  const long long n = cfg.n;
  const long long k = cfg.k;
  switch (req.kind) {
    case ProtocolKind::kRenaming: {
      if (req.weak_renaming_bound) {
        if (!(n > k * k + k))
          throw ConfigError("n > k^2 + k", "renaming requires n > k^2 + k, got n=" + std::to_string(n) +
                                               " k=" + std::to_string(k));
      } else if (!(n > k * k + 2 * k)) {
        throw ConfigError("n > k^2 + 2k", "renaming requires n > k^2 + 2k, got n=" + std::to_string(n) +
                                              " k=" + std::to_string(k));
      }
      break;
    }
    case ProtocolKind::kSetAgreement: {
      if (req.value_domain_size == 0) throw ConfigError("value_domain", "set agreement needs a non-empty value domain");
      const long long domain = static_cast<long long>(req.value_domain_size);
      if (!(n > domain * k))
        throw ConfigError("n > |Vset|k", "set agreement requires n > |Vset|*k, got n=" + std::to_string(n) +
                                             " |Vset|=" + std::to_string(domain) + " k=" + std::to_string(k));
      break;
    }
    case ProtocolKind::kBenOr:
      if (!(n > 2 * k))
        throw ConfigError("n > 2k", "randomized consensus requires n > 2k, got n=" + std::to_string(n) +
                                        " k=" + std::to_string(k));
      break;
    case ProtocolKind::kFullInformation:
      break;
  }
}

void enforce_budget(std::span<const Envelope> forged, const EngineConfig& cfg) {
  if (forged.empty()) return;
  const int round = forged.front().round;
  std::map<ProcessorId, int> per_receiver;
  for (const auto& e : forged) {
    if (e.round != round) throw std::invalid_argument("forged envelopes span more than one round");
    if (e.receiver.index() < 1 || e.receiver.index() > cfg.n)
      throw std::invalid_argument("forged envelope to unknown receiver " + e.receiver.tag());
    if (e.claimed_sender.index() < 1 || e.claimed_sender.index() > cfg.n)
      throw std::invalid_argument("forged envelope claims unknown sender " + e.claimed_sender.tag());
    ++per_receiver[e.receiver];
  }
  for (const auto& [receiver, count] : per_receiver) {
    if (count > cfg.k) throw BudgetError(receiver, count, round);
  }
}

}  // namespace impsim
