#include "dswap/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dswap {

double CostTracker::amortized_cost() const {
  if (request_total == 0) throw std::logic_error("amortized_cost: no requests recorded");
  return static_cast<double>(distance_total) / static_cast<double>(request_total);
}

double CostTracker::amortized_cost_with_migrations() const {
  if (request_total == 0) throw std::logic_error("amortized_cost: no requests recorded");
  return static_cast<double>(distance_total + swap_total) / static_cast<double>(request_total);
}

double local_amortized_cost(const VmStats& s) {
  if (s.request_count == 0) return std::numeric_limits<double>::infinity();
  const double count = static_cast<double>(s.request_count);
  // log2 is clamped at 1 so that the factor stays finite for count <= 2.
  const double log_factor = std::max(1.0, std::log2(count));
  return static_cast<double>(s.distance_sum) / (count * log_factor);
}

StatsStore::StatsStore(std::uint32_t vm_count) : vms_(vm_count) {}

void StatsStore::record_request(VmIndex u, VmIndex v, int d) {
  if (d < 0) throw std::invalid_argument("record_request: negative distance");
  const auto dist = static_cast<std::uint64_t>(d);
  vms_[u].request_count += 1;
  vms_[u].distance_sum += dist;
  vms_[v].request_count += 1;
  vms_[v].distance_sum += dist;
  pairs_[key(u, v)] += 1;
  costs_.request_total += 1;
  costs_.distance_total += dist;
}

std::uint64_t StatsStore::pair_count(VmIndex u, VmIndex v) const {
  if (u == kNoVm || v == kNoVm || u == v) return 0;
  const auto it = pairs_.find(key(u, v));
  return it == pairs_.end() ? 0 : it->second;
}

std::uint64_t StatsStore::sc(std::span<const HostIndex> hosts, const Arrangement& arr) const {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < hosts.size(); ++i) {
    const VmIndex a = arr.occupant(hosts[i]);
    if (a == kNoVm) continue;
    for (std::size_t j = i + 1; j < hosts.size(); ++j) total += pair_count(a, arr.occupant(hosts[j]));
  }
  return total;
}

std::uint64_t StatsStore::sc_hypothetical(std::span<const HostIndex> hosts, const Arrangement& arr, VmIndex place,
                                          HostIndex at, VmIndex remove) const {
  std::vector<VmIndex> occupants;
  occupants.reserve(hosts.size());
  for (HostIndex h : hosts) {
    VmIndex occ = h == at ? place : arr.occupant(h);
    if (h != at && (occ == place || occ == remove)) occ = kNoVm;
    occupants.push_back(occ);
  }
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < occupants.size(); ++i) {
    for (std::size_t j = i + 1; j < occupants.size(); ++j) total += pair_count(occupants[i], occupants[j]);
  }
  return total;
}

std::int64_t StatsStore::sc_gain(std::span<const HostIndex> hosts, const Arrangement& arr, VmIndex place,
                                 HostIndex at) const {
  const VmIndex displaced = arr.occupant(at);
  if (displaced == place) return 0;
  bool place_in_set = false;
  std::int64_t gained = 0;
  std::int64_t lost = 0;
  for (HostIndex h : hosts) {
    if (h == at) continue;
    const VmIndex y = arr.occupant(h);
    if (y == kNoVm) continue;
    if (y == place) {
      place_in_set = true;
      continue;
    }
    gained += static_cast<std::int64_t>(pair_count(place, y));
    lost += static_cast<std::int64_t>(pair_count(displaced, y));
  }
  if (place_in_set) {
    gained = 0;
    lost += static_cast<std::int64_t>(pair_count(displaced, place));
  }
  return gained - lost;
}

void StatsStore::reset() {
  reset_history();
  costs_ = {};
}

void StatsStore::reset_history() {
  std::fill(vms_.begin(), vms_.end(), VmStats{});
  pairs_.clear();
}

}  // namespace dswap
