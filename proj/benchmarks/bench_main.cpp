#include <benchmark/benchmark.h>

#include "dswap/algorithms.hpp"
#include "dswap/engine.hpp"
#include "dswap/random.hpp"

using namespace dswap;

static void BM_SampleRequest(benchmark::State& state) {
  const BCube topo({3, 7});
  GuestSpec spec{GuestKind::clique, static_cast<std::uint32_t>(state.range(0)), {WeightKind::product_uniform, 100}};
  const OverallGuestGraph g = build_guest(topo, spec, CoverMode::strict, 1);
  const RequestSampler sampler(g);
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(rng));
}
BENCHMARK(BM_SampleRequest)->Arg(27)->Arg(243)->Arg(729);

static void BM_Distance(benchmark::State& state) {
  const BCube topo({3, static_cast<int>(state.range(0))});
  Rng rng(2);
  std::uniform_int_distribution<HostIndex> pick(0, topo.host_count() - 1);
  std::vector<HostIndex> hosts(4096);
  for (auto& h : hosts) h = pick(rng);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(topo.distance(hosts[i & 4095], hosts[(i + 1) & 4095]));
    ++i;
  }
}
BENCHMARK(BM_Distance)->Arg(3)->Arg(7);

// One request plus the resulting migration, on a warmed-up BCube(3,7) state.
static void BM_Apply(benchmark::State& state, const char* policy_name) {
  const BCube topo({3, 7});
  const OverallGuestGraph g = build_guest(topo, {GuestKind::clique, 729, {}}, CoverMode::strict, 1);
  const RequestSampler sampler(g);
  const Policy policy = parse_policy(policy_name);
  Rng rng(3);
  Arrangement arr = random_initial(g.vm_count(), topo.host_count(), rng);
  StatsStore stats(g.vm_count());
  for (int i = 0; i < 200000; ++i) {
    const auto [u, v] = sampler.sample(rng);
    apply(topo, g, arr, stats, policy, u, v, rng);
  }
  for (auto _ : state) {
    const auto [u, v] = sampler.sample(rng);
    benchmark::DoNotOptimize(apply(topo, g, arr, stats, policy, u, v, rng));
  }
}
BENCHMARK_CAPTURE(BM_Apply, none, "none");
BENCHMARK_CAPTURE(BM_Apply, random_direct, "random-direct");
BENCHMARK_CAPTURE(BM_Apply, bestswitch_direct, "bestswitch-direct");
BENCHMARK_CAPTURE(BM_Apply, bestneighbor_direct, "bestneighbor-direct");
BENCHMARK_CAPTURE(BM_Apply, bestneighbor_indirect, "bestneighbor-indirect");
BENCHMARK_CAPTURE(BM_Apply, meetmiddle, "meetmiddle");

BENCHMARK_MAIN();
