#include <gtest/gtest.h>

#include <sstream>

#include "dswap/placement.hpp"
#include "dswap/random.hpp"
#include "oracles.hpp"

using namespace dswap;

TEST(Arrangement, SingleHost) {
  Rng rng(1);
  const Arrangement arr = random_initial(1, 1, rng);
  EXPECT_EQ(arr.host_of(0), 0u);
  EXPECT_EQ(arr.occupant(0), 0u);
  EXPECT_THROW(Arrangement(3, 2), std::invalid_argument);
}

TEST(Arrangement, RandomPlacementAverageDistance) {
  const BCube cube({3, 3});
  const OverallGuestGraph g = assemble_overall(make_clique(81), 81);
  double total = 0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    Rng rng = make_rng(s, Stream::placement);
    const Arrangement arr = random_initial(81, 81, rng);
    std::int64_t sum = 0;
    for (const auto& e : g.edges()) sum += vm_distance(cube, arr, e.u, e.v);
    total += static_cast<double>(sum) / static_cast<double>(g.edge_count());
  }
  // Over distinct pairs the mean is (8/3) * 81/80, slightly above 8/3.
  EXPECT_NEAR(total / seeds, 8.0 / 3, 0.05);
}

TEST(Arrangement, RandomPlacementIsUniform) {
  std::vector<int> hits(27, 0);
  const int seeds = 10000;
  for (int s = 0; s < seeds; ++s) {
    Rng rng = make_rng(s, Stream::placement);
    ++hits[random_initial(5, 27, rng).host_of(3)];
  }
  EXPECT_LT(oracle::chi2_uniform(hits, seeds / 27.0), oracle::chi2_critical_99(26));
}

TEST(Arrangement, LocalPlacementStaysInBlock) {
  const OverallGuestGraph g = assemble_overall(make_clique(9), 27);
  Rng rng(2);
  const Arrangement arr = local_random_initial(g, 27, rng);
  EXPECT_TRUE(arr.consistent());
  for (VmIndex v = 0; v < g.vm_count(); ++v) EXPECT_EQ(arr.host_of(v) / 9, g.tenant_of(v));
}

TEST(Arrangement, PerfectEmbedding) {
  const BCube host({3, 1});
  const OverallGuestGraph g = assemble_overall(make_subcube(3, 0), 9);
  const Arrangement arr = perfect_subcube_embedding(g, host);
  EXPECT_EQ(g.tenant_count(), 3u);
  for (std::uint32_t t = 0; t < 3; ++t) {
    const VmIndex first = g.tenant_offset(t);
    const auto group = host.switch_group(arr.host_of(first), 0).members;
    for (VmIndex v = first; v < first + 3; ++v) {
      EXPECT_TRUE(std::find(group.begin(), group.end(), arr.host_of(v)) != group.end());
    }
  }

  const BCube h2({3, 2});
  const OverallGuestGraph g2 = assemble_overall(make_subcube(3, 1), 27);
  const Arrangement a2 = perfect_subcube_embedding(g2, h2);
  for (const auto& e : g2.edges()) {
    EXPECT_EQ(h2.hamming_distance(h2.address(a2.host_of(e.u)), h2.address(a2.host_of(e.v))), 1);
  }
  EXPECT_THROW(perfect_subcube_embedding(assemble_overall(make_clique(9), 27), h2), std::invalid_argument);
  EXPECT_THROW(perfect_subcube_embedding(assemble_overall(make_subcube(3, 2), 27), h2), std::invalid_argument);
  EXPECT_THROW(perfect_subcube_embedding(assemble_overall(make_subcube(2, 1), 27, CoverMode::lenient), h2),
               std::invalid_argument);
}

TEST(Arrangement, SwapIsAnInvolution) {
  Rng rng(3);
  Arrangement arr = random_initial(20, 27, rng);
  const Arrangement before = arr;
  const SwapRecord r = swap(arr, 4, 17, 99);
  EXPECT_EQ(r.time, 99u);
  EXPECT_NE(arr, before);
  swap(arr, 4, 17);
  EXPECT_EQ(arr, before);
  EXPECT_THROW(arr.swap(5, 5), std::invalid_argument);
}

TEST(Arrangement, SwapWithEmptyHost) {
  Arrangement arr(1, 3);
  arr.place(0, 0);
  arr.swap(0, 2);
  EXPECT_EQ(arr.host_of(0), 2u);
  EXPECT_EQ(arr.occupant(0), kNoVm);
  EXPECT_EQ(arr.occupant(2), 0u);
  EXPECT_TRUE(arr.consistent());
  EXPECT_THROW(arr.place(0, 1), std::logic_error);
}

TEST(Arrangement, StaysConsistentUnderRandomSwaps) {
  Rng rng(4);
  Arrangement arr = random_initial(80, 81, rng);
  std::uniform_int_distribution<HostIndex> pick(0, 80);
  for (int i = 0; i < 100000; ++i) {
    const HostIndex a = pick(rng);
    HostIndex b = pick(rng);
    if (a == b) b = (b + 1) % 81;
    arr.swap(a, b);
  }
  EXPECT_TRUE(arr.consistent());
}

TEST(Arrangement, VmDistance) {
  const BCube cube({2, 2});
  const auto adj = oracle::server_graph(2, 2);
  Rng rng(5);
  const Arrangement arr = random_initial(8, 8, rng);
  for (VmIndex u = 0; u < 8; ++u) {
    const auto hops = oracle::bfs(adj, arr.host_of(u));
    EXPECT_EQ(vm_distance(cube, arr, u, u), 0);
    for (VmIndex v = 0; v < 8; ++v) EXPECT_EQ(vm_distance(cube, arr, u, v), hops[arr.host_of(v)]);
  }
  Arrangement partial(2, 8);
  partial.place(0, 0);
  EXPECT_THROW(vm_distance(cube, partial, 0, 1), std::invalid_argument);
}

TEST(Arrangement, CliqueLocalCost) {
  EXPECT_EQ(clique_local_min_cost(3, 9), (Ratio{20, 3}));
  EXPECT_EQ(clique_local_min_cost(3, 3), (Ratio{8, 3}));
  EXPECT_THROW(clique_local_min_cost(3, 10), std::invalid_argument);

  // K_9 on an aligned BCube(3,1): 18 pairs at distance 1, 18 at distance 2.
  EXPECT_EQ(packed_clique_average_distance(3, 9), (Ratio{3, 2}));
  EXPECT_EQ(packed_clique_average_distance(3, 3), (Ratio{1, 1}));
  EXPECT_EQ(packed_clique_average_distance(4, 4), (Ratio{1, 1}));
}

TEST(Arrangement, CsvExport) {
  const OverallGuestGraph g = assemble_overall(make_clique(2), 3, CoverMode::lenient);
  Arrangement arr(2, 3);
  arr.place(0, 2);
  arr.place(1, 0);
  std::ostringstream out;
  write_arrangement_csv(out, arr, g);
  EXPECT_EQ(out.str(), "host_index,tenant,vm_local_index\n0,0,1\n1,,\n2,0,0\n");
}
