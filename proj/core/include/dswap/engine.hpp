#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dswap/algorithms.hpp"
#include "dswap/guest.hpp"
#include "dswap/placement.hpp"
#include "dswap/topology.hpp"

namespace dswap {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class InitialPlacement {
  random,   // uniform over all hosts
  local,    // each tenant shuffled inside its own block of hosts
  perfect,  // sub-cube tenants on aligned sub-cubes
};

std::string_view to_string(InitialPlacement p);
InitialPlacement parse_placement(std::string_view name);

struct GuestSpec {
  GuestKind kind = GuestKind::clique;
  std::uint32_t size = 27;  // VMs per tenant
  WeightModel weights;
};

struct PhaseSpec {
  GuestSpec guest;
  std::uint64_t requests = 0;
};

struct ExperimentConfig {
  BCubeParams host{3, 3};
  GuestSpec guest;
  Policy policy;
  std::uint64_t requests = 100000;
  std::uint32_t repetitions = 10;
  std::uint64_t seed = 1;
  std::uint64_t sample_every = 0;  // 0 selects max(1, requests / 500)
  InitialPlacement placement = InitialPlacement::random;
  CoverMode cover = CoverMode::strict;
  // Pattern-shift runs: when non-empty, replaces guest/requests.
  std::vector<PhaseSpec> phases;
  bool reset_stats_on_phase = true;
  unsigned threads = 0;  // 0: one per hardware thread

  std::vector<PhaseSpec> effective_phases() const;
  std::uint64_t total_requests() const;
  std::uint64_t effective_sample_every() const;
};

// Throws ConfigError on any inconsistency.
void validate(const ExperimentConfig& config);

// Builds the overall guest graph for one spec; product weights come from the
// run's weight stream so identical specs give identical graphs.
OverallGuestGraph build_guest(const BCube& topo, const GuestSpec& spec, CoverMode cover, std::uint64_t seed);

// Weighted mean of the placed distance over all guest edges, i.e. the expected
// cost of the next request if nothing moves.
double expected_request_cost(const BCube& topo, const OverallGuestGraph& guest, const Arrangement& arr);

struct TimeSeriesSample {
  std::uint64_t t = 0;
  double requests_per_edge = 0;
  double cost_cum = 0;  // distance-only amortized cost over [1, t]
  double cost_win = 0;  // distance-only amortized cost over the window ending at t
  double cost_mig = 0;  // amortized cost including swaps over [1, t]
  std::uint64_t cumulative_swaps = 0;
  std::uint32_t phase = 0;
};

struct RunSeries {
  std::uint64_t seed = 0;
  double initial_cost = 0;  // expected_request_cost on the initial arrangement
  std::vector<TimeSeriesSample> samples;
  std::vector<std::uint64_t> phase_starts;  // t before the first request of phases 1, 2, ...
};

struct AggregatePoint {
  std::uint64_t t = 0;
  double requests_per_edge = 0;
  double cost_cum_mean = 0;
  double cost_cum_std = 0;
  double cost_win_mean = 0;
  double cost_win_std = 0;
  double cost_mig_mean = 0;
  double swaps_mean = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<RunSeries> runs;
  std::vector<AggregatePoint> points;
  double initial_cost_mean = 0;

  const AggregatePoint& final_point() const { return points.back(); }
};

RunSeries run_single(const ExperimentConfig& config, std::uint64_t seed);

// Repetition i uses seed config.seed + i. Runs may execute concurrently.
ExperimentResult run_repetitions(const ExperimentConfig& config);

// Mean and sample standard deviation per sample point across runs.
std::vector<AggregatePoint> aggregate(const std::vector<RunSeries>& runs);

struct SweepEntry {
  std::uint32_t size = 0;
  std::optional<ExperimentResult> result;
  std::string error;
};

// One experiment per tenant size; a failing size is reported and skipped.
std::vector<SweepEntry> sweep_guest_size(const ExperimentConfig& config, const std::vector<std::uint32_t>& sizes);

// Pattern-shift run; requires at least two phases.
RunSeries run_phases(const ExperimentConfig& config, std::uint64_t seed);

// Requests per edge at the first sample from which every later windowed mean
// stays within rel_tol of the final windowed mean.
std::optional<double> settle_point(const std::vector<AggregatePoint>& points, double rel_tol);

}  // namespace dswap
