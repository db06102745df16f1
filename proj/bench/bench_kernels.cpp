// Serial reference vs OpenMP kernel for the two hot loops.

#include <benchmark/benchmark.h>

#include "impsim/chain/builder.hpp"
#include "impsim/protocols/full_info.hpp"
#include "impsim/sim/runner.hpp"

using namespace impsim;

namespace {

sim::ScenarioConfig renaming_campaign() {
  sim::ScenarioConfig s;
  s.protocol = ProtocolKind::kRenaming;
  s.n = 9;
  s.k = 2;
  s.input_dist = sim::InputDistribution{1, 1000};
  s.adversary.kind = sim::AdversarySpec::Kind::kRandomForger;
  s.adversary.mode = RandomForger::Mode::kMutate;
  return s;
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const auto s = renaming_campaign();
  for (auto _ : state) benchmark::DoNotOptimize(sim::montecarlo_serial(s, static_cast<int>(state.range(0)), 0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MonteCarloParallel(benchmark::State& state) {
  const auto s = renaming_campaign();
  for (auto _ : state) benchmark::DoNotOptimize(sim::montecarlo_parallel(s, static_cast<int>(state.range(0)), 0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

const chain::Chain& chain_of(int rounds) {
  static const chain::Chain r1 = chain::ChainBuilder(3, 1).build_full_chain();
  static const chain::Chain r2 = chain::ChainBuilder(3, 2).build_full_chain();
  return rounds == 1 ? r1 : r2;
}

void BM_VerifyChainSerial(benchmark::State& state) {
  const auto& c = chain_of(static_cast<int>(state.range(0)));
  FullInformationProtocol p(c.start.horizon);
  for (auto _ : state) benchmark::DoNotOptimize(chain::verify_chain_serial(c, p));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.steps.size()));
}

void BM_VerifyChainParallel(benchmark::State& state) {
  const auto& c = chain_of(static_cast<int>(state.range(0)));
  FullInformationProtocol p(c.start.horizon);
  for (auto _ : state) benchmark::DoNotOptimize(chain::verify_chain_parallel(c, p));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.steps.size()));
}

}  // namespace

BENCHMARK(BM_MonteCarloSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyChainSerial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyChainParallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
