#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "dswap/guest.hpp"
#include "dswap/placement.hpp"

namespace dswap {

struct VmStats {
  std::uint64_t request_count = 0;  // requests with this VM as an endpoint
  std::uint64_t distance_sum = 0;   // sum of their pre-migration distances
};

struct CostTracker {
  std::uint64_t request_total = 0;
  std::uint64_t distance_total = 0;
  std::uint64_t swap_total = 0;

  // distance_total / request_total; throws when no request has been recorded.
  double amortized_cost() const;
  // (distance_total + swap_total) / request_total.
  double amortized_cost_with_migrations() const;
};

// Lcost for given counters: sum / (count * max(1, log2 count)); +inf when count == 0.
double local_amortized_cost(const VmStats& s);

/// Request history of one simulation run: per-VM counters for Lcost, sparse
/// per-pair request counts for Sc, and the global cost totals.
class StatsStore {
 public:
  explicit StatsStore(std::uint32_t vm_count = 0);

  // d is the distance of the request on the arrangement it was routed on,
  // i.e. before any migration triggered by it.
  void record_request(VmIndex u, VmIndex v, int d);
  void record_swaps(std::uint64_t rho) { costs_.swap_total += rho; }

  const VmStats& vm(VmIndex v) const { return vms_[v]; }
  double lcost(VmIndex v) const { return local_amortized_cost(vms_[v]); }
  std::uint64_t pair_count(VmIndex u, VmIndex v) const;
  const CostTracker& costs() const { return costs_; }
  std::size_t distinct_pairs() const { return pairs_.size(); }

  // Sum over unordered pairs of distinct hosts in the set of the pair count of
  // their occupants; empty hosts contribute nothing.
  std::uint64_t sc(std::span<const HostIndex> hosts, const Arrangement& arr) const;

  // sc of the set evaluated as if `place` sat on host `at` and `remove` were
  // nowhere in the set. `place` no longer counts at any other host it holds.
  std::uint64_t sc_hypothetical(std::span<const HostIndex> hosts, const Arrangement& arr, VmIndex place,
                                HostIndex at, VmIndex remove) const;

  // sc_hypothetical(hosts, arr, place, at, occupant(at)) - sc(hosts, arr) in
  // one linear pass. `at` must be a member of `hosts`.
  std::int64_t sc_gain(std::span<const HostIndex> hosts, const Arrangement& arr, VmIndex place,
                       HostIndex at) const;

  // Forget all history (per-VM, per-pair and totals).
  void reset();
  // Forget per-VM and per-pair history, keep cost totals.
  void reset_history();

 private:
  static std::uint64_t key(VmIndex u, VmIndex v) {
    return u < v ? (std::uint64_t{u} << 32) | v : (std::uint64_t{v} << 32) | u;
  }

  std::vector<VmStats> vms_;
  std::unordered_map<std::uint64_t, std::uint64_t> pairs_;
  CostTracker costs_;
};

}  // namespace dswap
