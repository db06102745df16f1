#include "impsim/sim/chain_cmd.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <string_view>

#include "impsim/chain/serialize.hpp"
#include "impsim/errors.hpp"
#include "impsim/protocols/full_info.hpp"

namespace impsim::sim {

namespace {

int parse_positive(std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 1)
    throw ConfigError("SIMCTL_MAX_CHAIN", "expected <n>:<R> or a positive integer");
  return value;
}

std::string hex(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

chain::ChainLimits parse_chain_limits(const char* env) {
  chain::ChainLimits limits;
  if (!env || !*env) return limits;
  const std::string_view text(env);
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    limits.max_n = parse_positive(text.substr(0, colon));
    limits.max_rounds = parse_positive(text.substr(colon + 1));
  } else {
    limits.max_n = limits.max_rounds = parse_positive(text);
  }
  return limits;
}

ChainReport run_chain(const ChainRequest& request, const chain::ChainLimits& limits) {
  const auto start = std::chrono::steady_clock::now();
  auto effective = limits;
  effective.unlimited = effective.unlimited || request.force;
  chain::ChainBuilder builder(request.n, request.rounds, effective);
  const auto c = builder.build_full_chain();

  ChainReport report;
  report.n = request.n;
  report.rounds = request.rounds;
  report.graphs = c.graph_count();
  report.steps = c.steps.size();
  report.start_fingerprint = chain::fingerprint(c.start);
  report.end_fingerprint = chain::fingerprint(c.back());
  const auto zeros = std::vector<Value>(static_cast<std::size_t>(request.n), 0);
  const auto ones = std::vector<Value>(static_cast<std::size_t>(request.n), 1);
  report.endpoints_ok = c.start == chain::CommGraph::failure_free(request.n, request.rounds, zeros) &&
                        c.back() == chain::CommGraph::failure_free(request.n, request.rounds, ones);

  if (!request.out_dir.empty()) {
    std::filesystem::create_directories(request.out_dir);
    nlohmann::ordered_json manifest;
    manifest["n"] = request.n;
    manifest["R"] = request.rounds;
    auto graphs = nlohmann::ordered_json::array();
    for (std::size_t idx = 0; idx < c.graph_count(); ++idx) {
      char name[32];
      std::snprintf(name, sizeof name, "graph_%06zu.json", idx);
      chain::save_graph(c.graph(idx), request.out_dir / name);
      nlohmann::ordered_json entry{{"file", name}, {"fingerprint", hex(chain::fingerprint(c.graph(idx)))}};
      if (idx > 0) entry["op"] = c.steps[idx - 1].op.str();
      graphs.push_back(std::move(entry));
    }
    manifest["graphs"] = std::move(graphs);
    std::ofstream out(request.out_dir / "chain.json");
    out << manifest.dump(2) << '\n';
  }

  if (request.verify) {
    FullInformationProtocol protocol(request.rounds);
    const auto checks = request.parallel ? chain::verify_chain_parallel(c, protocol) : chain::verify_chain_serial(c, protocol);
    report.verified = true;
    report.pairs_checked = checks.size();
    for (const auto& check : checks) {
      if (check.similarity.similar) continue;
      ++report.pairs_failed;
      if (!report.first_failure) report.first_failure = check.index;
    }
    report.strawman_violation = chain::find_strawman_violation(c, protocol);
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::ordered_json chain_report_to_json(const ChainReport& report) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["R"] = report.rounds;
  j["graphs"] = report.graphs;
  j["steps"] = report.steps;
  j["start_fingerprint"] = hex(report.start_fingerprint);
  j["end_fingerprint"] = hex(report.end_fingerprint);
  j["endpoints_ok"] = report.endpoints_ok;
  j["verified"] = report.verified;
  if (report.verified) {
    j["pairs_checked"] = report.pairs_checked;
    j["pairs_failed"] = report.pairs_failed;
    j["first_failure"] = report.first_failure ? nlohmann::ordered_json(*report.first_failure) : nlohmann::ordered_json(nullptr);
    j["strawman_violation"] =
        report.strawman_violation ? nlohmann::ordered_json(*report.strawman_violation) : nlohmann::ordered_json(nullptr);
  }
  j["wall_ms"] = report.wall_ms;
  j["pass"] = report.pass();
  return j;
}

}  // namespace impsim::sim
