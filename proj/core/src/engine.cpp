#include "dswap/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "dswap/random.hpp"
#include "dswap/stats.hpp"

namespace dswap {

std::string_view to_string(InitialPlacement p) {
  switch (p) {
    case InitialPlacement::random: return "random";
    case InitialPlacement::local: return "local";
    case InitialPlacement::perfect: return "perfect";
  }
  return "?";
}

InitialPlacement parse_placement(std::string_view name) {
  if (name == "random") return InitialPlacement::random;
  if (name == "local") return InitialPlacement::local;
  if (name == "perfect") return InitialPlacement::perfect;
  throw std::invalid_argument("unknown placement '" + std::string(name) + "'");
}

std::vector<PhaseSpec> ExperimentConfig::effective_phases() const {
  if (!phases.empty()) return phases;
  return {PhaseSpec{guest, requests}};
}

std::uint64_t ExperimentConfig::total_requests() const {
  std::uint64_t total = 0;
  for (const auto& p : effective_phases()) total += p.requests;
  return total;
}

std::uint64_t ExperimentConfig::effective_sample_every() const {
  if (sample_every > 0) return sample_every;
  return std::max<std::uint64_t>(1, total_requests() / 500);
}

void validate(const ExperimentConfig& config) {
  try {
    const BCube topo(config.host);
    if (config.repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (config.policy) validate(*config.policy);
    std::uint32_t vm_count = 0;
    for (const auto& phase : config.effective_phases()) {
      if (phase.requests < 1) throw ConfigError("every phase needs at least one request");
      const OverallGuestGraph g = build_guest(topo, phase.guest, config.cover, config.seed);
      if (vm_count != 0 && g.vm_count() != vm_count) {
        throw ConfigError("all phases must place the same number of VMs");
      }
      if (vm_count == 0 && config.placement == InitialPlacement::perfect) perfect_subcube_embedding(g, topo);
      vm_count = g.vm_count();
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

OverallGuestGraph build_guest(const BCube& topo, const GuestSpec& spec, CoverMode cover, std::uint64_t seed) {
  const TenantGraph component = make_component(spec.kind, spec.size, topo.params().n);
  OverallGuestGraph g = assemble_overall(component, topo.host_count(), cover);
  if (spec.weights.kind == WeightKind::unweighted) return g;
  Rng rng = make_rng(seed, Stream::weights);
  return assign_weights(g, spec.weights, rng);
}

double expected_request_cost(const BCube& topo, const OverallGuestGraph& guest, const Arrangement& arr) {
  long double weighted = 0;
  for (const auto& e : guest.edges()) {
    weighted += static_cast<long double>(e.weight) * topo.distance(arr.host_of(e.u), arr.host_of(e.v));
  }
  return static_cast<double>(weighted / static_cast<long double>(guest.total_weight()));
}

namespace {

Arrangement initial_arrangement(const ExperimentConfig& config, const BCube& topo, const OverallGuestGraph& guest,
                                std::uint64_t seed) {
  Rng rng = make_rng(seed, Stream::placement);
  switch (config.placement) {
    case InitialPlacement::random: return random_initial(guest.vm_count(), topo.host_count(), rng);
    case InitialPlacement::local: return local_random_initial(guest, topo.host_count(), rng);
    case InitialPlacement::perfect: return perfect_subcube_embedding(guest, topo);
  }
  throw ConfigError("unknown placement");
}

RunSeries simulate(const ExperimentConfig& config, std::uint64_t seed) {
  validate(config);
  const BCube topo(config.host);
  const std::vector<PhaseSpec> phases = config.effective_phases();
  const std::uint64_t sample_every = config.effective_sample_every();

  OverallGuestGraph guest = build_guest(topo, phases.front().guest, config.cover, seed);
  Arrangement arr = initial_arrangement(config, topo, guest, seed);
  StatsStore stats(guest.vm_count());
  Rng request_rng = make_rng(seed, Stream::requests);
  Rng migration_rng = make_rng(seed, Stream::migration);

  RunSeries series;
  series.seed = seed;
  series.initial_cost = expected_request_cost(topo, guest, arr);
  series.samples.reserve(config.total_requests() / sample_every + phases.size() + 1);

  std::uint64_t t = 0;
  std::uint64_t window_distance = 0;
  std::uint64_t window_requests = 0;
  for (std::uint32_t p = 0; p < phases.size(); ++p) {
    if (p > 0) {
      guest = build_guest(topo, phases[p].guest, config.cover, seed);
      if (config.reset_stats_on_phase) stats.reset_history();
      series.phase_starts.push_back(t);
    }
    const RequestSampler sampler(guest);
    const double edges = static_cast<double>(guest.edge_count());
    for (std::uint64_t i = 0; i < phases[p].requests; ++i) {
      const auto [u, v] = sampler.sample(request_rng);
      const StepOutcome step = apply(topo, guest, arr, stats, config.policy, u, v, migration_rng);
      ++t;
      window_distance += static_cast<std::uint64_t>(step.distance);
      ++window_requests;
      if (t % sample_every == 0 || i + 1 == phases[p].requests) {
        const CostTracker& c = stats.costs();
        TimeSeriesSample s;
        s.t = t;
        s.requests_per_edge = static_cast<double>(t) / edges;
        s.cost_cum = c.amortized_cost();
        s.cost_win = static_cast<double>(window_distance) / static_cast<double>(window_requests);
        s.cost_mig = c.amortized_cost_with_migrations();
        s.cumulative_swaps = c.swap_total;
        s.phase = p;
        series.samples.push_back(s);
        window_distance = 0;
        window_requests = 0;
      }
    }
  }
  return series;
}

double mean_of(const std::vector<double>& xs) {
  long double sum = 0;
  for (double x : xs) sum += x;
  return static_cast<double>(sum / static_cast<long double>(xs.size()));
}

double stddev_of(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  long double sum = 0;
  for (double x : xs) sum += static_cast<long double>(x - mean) * (x - mean);
  return static_cast<double>(std::sqrt(sum / static_cast<long double>(xs.size() - 1)));
}

}  // namespace

RunSeries run_single(const ExperimentConfig& config, std::uint64_t seed) { return simulate(config, seed); }

RunSeries run_phases(const ExperimentConfig& config, std::uint64_t seed) {
  if (config.phases.size() < 2) throw ConfigError("run_phases needs at least two phases");
  return simulate(config, seed);
}

std::vector<AggregatePoint> aggregate(const std::vector<RunSeries>& runs) {
  std::vector<AggregatePoint> points;
  if (runs.empty()) return points;
  const std::size_t n = runs.front().samples.size();
  for (const auto& r : runs) {
    if (r.samples.size() != n) throw std::logic_error("aggregate: runs have different sample schedules");
  }
  std::vector<double> cum(runs.size()), win(runs.size()), mig(runs.size()), swaps(runs.size());
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const TimeSeriesSample& s = runs[r].samples[i];
      cum[r] = s.cost_cum;
      win[r] = s.cost_win;
      mig[r] = s.cost_mig;
      swaps[r] = static_cast<double>(s.cumulative_swaps);
    }
    AggregatePoint p;
    p.t = runs.front().samples[i].t;
    p.requests_per_edge = runs.front().samples[i].requests_per_edge;
    p.cost_cum_mean = mean_of(cum);
    p.cost_cum_std = stddev_of(cum, p.cost_cum_mean);
    p.cost_win_mean = mean_of(win);
    p.cost_win_std = stddev_of(win, p.cost_win_mean);
    p.cost_mig_mean = mean_of(mig);
    p.swaps_mean = mean_of(swaps);
    points.push_back(p);
  }
  return points;
}

ExperimentResult run_repetitions(const ExperimentConfig& config) {
  validate(config);
  ExperimentResult result;
  result.config = config;
  result.runs.resize(config.repetitions);

  unsigned workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, config.repetitions);
  std::atomic<std::uint32_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::uint32_t i = next++; i < config.repetitions; i = next++) {
      try {
        result.runs[i] = run_single(config, config.seed + i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  result.points = aggregate(result.runs);
  std::vector<double> initial;
  for (const auto& r : result.runs) initial.push_back(r.initial_cost);
  result.initial_cost_mean = mean_of(initial);
  return result;
}

std::vector<SweepEntry> sweep_guest_size(const ExperimentConfig& config, const std::vector<std::uint32_t>& sizes) {
  std::vector<SweepEntry> entries;
  entries.reserve(sizes.size());
  for (std::uint32_t size : sizes) {
    SweepEntry entry;
    entry.size = size;
    ExperimentConfig sized = config;
    sized.guest.size = size;
    sized.phases.clear();
    try {
      entry.result = run_repetitions(sized);
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::optional<double> settle_point(const std::vector<AggregatePoint>& points, double rel_tol) {
  if (points.empty()) return std::nullopt;
  const double final_cost = points.back().cost_win_mean;
  std::size_t first = points.size() - 1;
  for (std::size_t i = points.size(); i-- > 0;) {
    if (std::abs(points[i].cost_win_mean - final_cost) > rel_tol * final_cost) break;
    first = i;
  }
  return points[first].requests_per_edge;
}

}  // namespace dswap
