#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "dswap/guest.hpp"
#include "dswap/random.hpp"
#include "dswap/topology.hpp"

namespace dswap {

inline constexpr HostIndex kNoHost = std::numeric_limits<HostIndex>::max();

/// VM <-> host assignment with at most one VM per host. Hosts may be empty and
/// VMs may be unplaced; both directions are dense arrays kept in lockstep.
class Arrangement {
 public:
  Arrangement() = default;
  Arrangement(std::uint32_t vm_count, std::uint32_t host_count);

  std::uint32_t vm_count() const { return static_cast<std::uint32_t>(vm_to_host_.size()); }
  std::uint32_t host_count() const { return static_cast<std::uint32_t>(host_to_vm_.size()); }

  HostIndex host_of(VmIndex v) const { return vm_to_host_[v]; }
  VmIndex occupant(HostIndex h) const { return host_to_vm_[h]; }
  bool placed(VmIndex v) const { return vm_to_host_[v] != kNoHost; }

  // Puts an unplaced VM on an empty host.
  void place(VmIndex v, HostIndex h);

  // Exchanges the occupants of a and b; an empty host exchanges like a VM.
  void swap(HostIndex a, HostIndex b);

  // host_to_vm and vm_to_host are mutually inverse on placed VMs.
  bool consistent() const;

  std::span<const HostIndex> vm_to_host() const { return vm_to_host_; }
  std::span<const VmIndex> host_to_vm() const { return host_to_vm_; }

  friend bool operator==(const Arrangement&, const Arrangement&) = default;

 private:
  std::vector<HostIndex> vm_to_host_;
  std::vector<VmIndex> host_to_vm_;
};

struct SwapRecord {
  std::uint64_t time = 0;
  HostIndex host_a = 0;
  HostIndex host_b = 0;
};

SwapRecord swap(Arrangement& arr, HostIndex a, HostIndex b, std::uint64_t time = 0);

// Uniform random injection of the VMs into the hosts.
Arrangement random_initial(std::uint32_t vm_count, std::uint32_t host_count, Rng& rng);

// Tenant i is shuffled uniformly inside the block of host indices
// [offset_i, offset_i + size_i). With equal power-of-n tenant sizes every
// block is an aligned sub-cube.
Arrangement local_random_initial(const OverallGuestGraph& guest, std::uint32_t host_count, Rng& rng);

// Every component must be a BCube(n, k') sub-cube guest with k' < k. Component
// c lands on the aligned sub-cube whose top k-k' digits spell c, local vertex
// i on the host whose low k'+1 digits spell i; every guest edge then has
// placed distance 1.
Arrangement perfect_subcube_embedding(const OverallGuestGraph& guest, const BCube& host);

// Hamming distance between the hosts of u and v; throws if either is unplaced.
int vm_distance(const BCube& topo, const Arrangement& arr, VmIndex u, VmIndex v);

// Reference value (x+1)(n-1)/n for a K_x tenant packed into a sub-cube, as
// printed in the original analysis. Requires x to be a positive power of n.
Ratio clique_local_min_cost(int n, int x);

// Exact mean pairwise distance of K_x packed into an aligned BCube(n, log_n(x)-1).
Ratio packed_clique_average_distance(int n, int x);

// Header row then one line per host: host_index,tenant,vm_local_index
// (empty hosts leave the last two fields blank).
void write_arrangement_csv(std::ostream& out, const Arrangement& arr, const OverallGuestGraph& guest);

}  // namespace dswap
