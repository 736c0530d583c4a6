#include <gtest/gtest.h>

#include <cmath>

#include "dswap/engine.hpp"

using namespace dswap;

namespace {

ExperimentConfig small(const char* policy, std::uint64_t requests, std::uint32_t reps) {
  ExperimentConfig c;
  c.host = {3, 3};
  c.guest = {GuestKind::clique, 27, {}};
  c.policy = parse_policy(policy);
  c.requests = requests;
  c.repetitions = reps;
  c.threads = 1;
  return c;
}

}  // namespace

TEST(Engine, Defaults) {
  const ExperimentConfig c;
  EXPECT_EQ(c.repetitions, 10u);
  EXPECT_EQ(c.guest.weights.range_max, 100u);
  EXPECT_EQ(c.effective_sample_every(), 200u);
  ExperimentConfig tiny;
  tiny.requests = 10;
  EXPECT_EQ(tiny.effective_sample_every(), 1u);
}

TEST(Engine, BaselineMatchesRandomPlacementExpectation) {
  const ExperimentResult r = run_repetitions(small("none", 100000, 4));
  EXPECT_NEAR(r.final_point().cost_cum_mean, 8.0 / 3, 0.05);
  const AggregatePoint& p = r.final_point();
  EXPECT_DOUBLE_EQ(p.cost_cum_mean, p.cost_mig_mean);
  EXPECT_DOUBLE_EQ(p.swaps_mean, 0.0);
}

TEST(Engine, PerfectEmbeddingCostsOne) {
  ExperimentConfig c = small("none", 5000, 2);
  c.guest = {GuestKind::subcube, 9, {WeightKind::product_uniform, 100}};
  c.placement = InitialPlacement::perfect;
  const ExperimentResult r = run_repetitions(c);
  for (const auto& p : r.points) EXPECT_EQ(p.cost_cum_mean, 1.0);
  EXPECT_EQ(r.initial_cost_mean, 1.0);
}

TEST(Engine, SameSeedSameSeries) {
  const ExperimentConfig c = small("bestneighbor-indirect", 20000, 1);
  const RunSeries a = run_single(c, 17);
  const RunSeries b = run_single(c, 17);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].cost_cum, b.samples[i].cost_cum);
    EXPECT_EQ(a.samples[i].cost_win, b.samples[i].cost_win);
    EXPECT_EQ(a.samples[i].cumulative_swaps, b.samples[i].cumulative_swaps);
  }
  EXPECT_NE(run_single(c, 18).samples.back().cost_cum, a.samples.back().cost_cum);
}

TEST(Engine, ThreadCountDoesNotChangeResults) {
  ExperimentConfig c = small("random-direct", 5000, 4);
  const ExperimentResult one = run_repetitions(c);
  c.threads = 3;
  const ExperimentResult many = run_repetitions(c);
  for (std::size_t i = 0; i < one.points.size(); ++i) {
    EXPECT_EQ(one.points[i].cost_cum_mean, many.points[i].cost_cum_mean);
    EXPECT_EQ(one.points[i].cost_cum_std, many.points[i].cost_cum_std);
  }
}

TEST(Engine, SingleRepetitionAggregate) {
  const ExperimentConfig c = small("bestswitch-direct", 4000, 1);
  const ExperimentResult r = run_repetitions(c);
  const RunSeries s = run_single(c, c.seed);
  ASSERT_EQ(r.points.size(), s.samples.size());
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    EXPECT_EQ(r.points[i].t, s.samples[i].t);
    EXPECT_EQ(r.points[i].cost_cum_mean, s.samples[i].cost_cum);
    EXPECT_EQ(r.points[i].cost_cum_std, 0.0);
  }
}

TEST(Engine, SampleSchedule) {
  ExperimentConfig c = small("none", 1050, 1);
  c.sample_every = 100;
  const RunSeries s = run_single(c, 1);
  ASSERT_EQ(s.samples.size(), 11u);
  EXPECT_EQ(s.samples.back().t, 1050u);
  EXPECT_DOUBLE_EQ(s.samples[0].requests_per_edge, 100.0 / (3 * 351));
  // The last window covers only the trailing 50 requests.
  double weighted = 0;
  for (std::size_t i = 0; i < s.samples.size(); ++i) weighted += s.samples[i].cost_win * (i + 1 < 11 ? 100 : 50);
  EXPECT_NEAR(weighted / 1050, s.samples.back().cost_cum, 1e-12);
}

TEST(Engine, SpreadShrinksWithMoreRequests) {
  ExperimentConfig c = small("none", 50000, 10);
  c.sample_every = 250;
  const ExperimentResult r = run_repetitions(c);
  EXPECT_LT(r.final_point().cost_win_std, r.points.front().cost_win_std);
}

TEST(Engine, BestNeighborBeatsRandomOnCliques) {
  const ExperimentResult bn = run_repetitions(small("bestneighbor-direct", 60000, 2));
  const ExperimentResult rd = run_repetitions(small("random-direct", 60000, 2));
  const ExperimentResult none = run_repetitions(small("none", 60000, 2));
  EXPECT_LT(bn.final_point().cost_cum_mean, rd.final_point().cost_cum_mean);
  EXPECT_LT(rd.final_point().cost_cum_mean, none.final_point().cost_cum_mean);
}

TEST(Engine, SweepSizes) {
  ExperimentConfig c = small("none", 500, 1);
  c.guest.kind = GuestKind::subcube;
  std::vector<std::uint32_t> sizes;
  for (std::uint32_t s = 2; s < 81; ++s) sizes.push_back(s);
  std::vector<std::uint32_t> ok;
  for (const SweepEntry& e : sweep_guest_size(c, sizes)) {
    if (e.result) {
      ok.push_back(e.size);
    } else {
      EXPECT_FALSE(e.error.empty());
    }
  }
  EXPECT_EQ(ok, (std::vector<std::uint32_t>{3, 9, 27}));

  const BCube cube({3, 3});
  EXPECT_EQ(build_guest(cube, {GuestKind::clique, 81, {}}, CoverMode::strict, 1).tenant_count(), 1u);
}

TEST(Engine, ValidateRejectsBadConfigs) {
  ExperimentConfig c = small("none", 100, 1);
  c.repetitions = 0;
  EXPECT_THROW(validate(c), ConfigError);
  c = small("none", 100, 1);
  c.placement = InitialPlacement::perfect;
  EXPECT_THROW(validate(c), ConfigError);
  c = small("none", 100, 1);
  c.guest.size = 10;
  EXPECT_THROW(validate(c), ConfigError);
  c.cover = CoverMode::lenient;
  EXPECT_NO_THROW(validate(c));
  c = small("none", 100, 1);
  c.phases = {{{GuestKind::clique, 27, {}}, 100}, {{GuestKind::clique, 10, {}}, 100}};
  c.cover = CoverMode::lenient;
  EXPECT_THROW(validate(c), ConfigError);
  c = small("none", 100, 1);
  c.requests = 0;
  EXPECT_THROW(validate(c), ConfigError);
  EXPECT_THROW(run_phases(small("none", 100, 1), 1), ConfigError);
}

TEST(Phases, IdenticalPhasesEqualOneLongRun) {
  ExperimentConfig single = small("bestneighbor-direct", 20000, 1);
  single.sample_every = 500;
  ExperimentConfig split = single;
  split.phases = {{single.guest, 8000}, {single.guest, 12000}};
  split.reset_stats_on_phase = false;
  const RunSeries a = run_single(single, 3);
  const RunSeries b = run_phases(split, 3);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].t, b.samples[i].t);
    EXPECT_EQ(a.samples[i].cost_cum, b.samples[i].cost_cum);
    EXPECT_EQ(a.samples[i].cost_win, b.samples[i].cost_win);
    EXPECT_EQ(a.samples[i].cumulative_swaps, b.samples[i].cumulative_swaps);
  }
  EXPECT_EQ(b.phase_starts, (std::vector<std::uint64_t>{8000}));
}

TEST(Phases, PatternShiftSpikesThenSettles) {
  ExperimentConfig c = small("bestneighbor-direct", 0, 3);
  c.sample_every = 1000;
  c.phases = {{{GuestKind::clique, 27, {}}, 40000}, {{GuestKind::star, 27, {}}, 40000}};
  const ExperimentResult r = run_repetitions(c);
  ASSERT_EQ(r.runs.front().phase_starts, (std::vector<std::uint64_t>{40000}));
  std::size_t boundary = 0;
  while (r.points[boundary].t <= 40000) ++boundary;
  EXPECT_EQ(r.runs.front().samples[boundary - 1].phase, 0u);
  EXPECT_EQ(r.runs.front().samples[boundary].phase, 1u);
  const double before = r.points[boundary - 1].cost_win_mean;
  const double spike = r.points[boundary].cost_win_mean;
  EXPECT_GT(spike, before);
  // The star phase settles on its own level well before the run ends.
  const std::vector<AggregatePoint> tail(r.points.begin() + static_cast<std::ptrdiff_t>(boundary), r.points.end());
  const auto settled = settle_point(tail, 0.05);
  ASSERT_TRUE(settled);
  EXPECT_LT(*settled, tail[tail.size() / 2].requests_per_edge);
  // requests_per_edge restarts its scale with the star's edge count.
  EXPECT_DOUBLE_EQ(r.points[boundary].requests_per_edge, r.points[boundary].t / (3.0 * 26));
}

TEST(Engine, SettlePoint) {
  auto point = [](double rpe, double win) {
    AggregatePoint p;
    p.requests_per_edge = rpe;
    p.cost_win_mean = win;
    return p;
  };
  const std::vector<AggregatePoint> pts = {point(1, 3.0), point(2, 2.5), point(3, 2.04), point(4, 1.98),
                                           point(5, 2.0)};
  EXPECT_EQ(settle_point(pts, 0.05), std::optional<double>(3));
  EXPECT_EQ(settle_point(pts, 0.001), std::optional<double>(5));
  EXPECT_EQ(settle_point({}, 0.05), std::nullopt);
}

TEST(Engine, ExpectedRequestCost) {
  const BCube cube({3, 1});
  const OverallGuestGraph g = assemble_overall(make_clique(9), 9);
  Arrangement arr(9, 9);
  for (VmIndex v = 0; v < 9; ++v) arr.place(v, v);
  EXPECT_DOUBLE_EQ(expected_request_cost(cube, g, arr), 1.5);
}
