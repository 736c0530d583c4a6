#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dswap/random.hpp"

namespace dswap {

// Dense global VM index: tenant blocks are laid out back to back.
using VmIndex = std::uint32_t;
inline constexpr VmIndex kNoVm = std::numeric_limits<VmIndex>::max();

struct VmId {
  std::uint32_t tenant = 0;
  std::uint32_t local = 0;

  friend auto operator<=>(const VmId&, const VmId&) = default;
};

enum class GuestKind { clique, star, subcube, matching };

std::string_view to_string(GuestKind kind);
GuestKind parse_guest_kind(std::string_view name);

// Edge between two tenant-local vertices; weight is the relative request frequency.
struct GuestEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  std::uint64_t weight = 1;
};

struct TenantGraph {
  GuestKind kind = GuestKind::clique;
  std::uint32_t vertex_count = 0;
  std::vector<GuestEdge> edges;
  // Per-vertex frequencies under the product weight model; empty when unweighted.
  std::vector<std::uint64_t> frequencies;
  // For sub-cube tenants: the guest is BCube(subcube_n, subcube_k) and local
  // vertex i carries the base-n address of i.
  int subcube_n = 0;
  int subcube_k = -1;
};

enum class WeightKind { unweighted, product_uniform };

struct WeightModel {
  WeightKind kind = WeightKind::unweighted;
  std::uint64_t range_max = 100;
};

std::string_view to_string(WeightKind kind);
WeightKind parse_weight_kind(std::string_view name);

TenantGraph make_clique(std::uint32_t x);
// Vertex 0 is the center.
TenantGraph make_star(std::uint32_t x);
// BCube(n, kp) as a guest: vertices at Hamming distance 1 are connected.
TenantGraph make_subcube(int n, int kp);
// `pairs` tenants of two VMs joined by one edge.
std::vector<TenantGraph> make_matching(std::uint32_t pairs);

// Component template of the given kind and vertex count. Sub-cube sizes must be
// a power n^(kp+1) of the host's port count; matching components have size 2.
TenantGraph make_component(GuestKind kind, std::uint32_t size, int host_n);

// Unweighted: every edge gets weight 1. Product-uniform: each vertex draws
// f uniformly from [1, range_max]; w(u,v) = f(u) * f(v).
TenantGraph assign_weights(TenantGraph g, const WeightModel& model, Rng& rng);
TenantGraph assign_weights(TenantGraph g, const WeightModel& model, std::uint64_t seed);

// An edge of the overall graph in global VM indices.
struct WeightedPair {
  VmIndex u = 0;
  VmIndex v = 0;
  std::uint64_t weight = 1;
};

/// Disjoint union of tenant guest graphs. Immutable once built.
class OverallGuestGraph {
 public:
  OverallGuestGraph() = default;
  explicit OverallGuestGraph(std::vector<TenantGraph> tenants);

  const std::vector<TenantGraph>& tenants() const { return tenants_; }
  std::uint32_t tenant_count() const { return static_cast<std::uint32_t>(tenants_.size()); }
  std::uint32_t vm_count() const { return static_cast<std::uint32_t>(tenant_of_.size()); }
  std::size_t edge_count() const { return edges_.size(); }
  std::uint64_t total_weight() const { return total_weight_; }
  const std::vector<WeightedPair>& edges() const { return edges_; }

  std::uint32_t tenant_of(VmIndex v) const { return tenant_of_[v]; }
  VmIndex tenant_offset(std::uint32_t tenant) const { return offsets_[tenant]; }
  VmId vm_id(VmIndex v) const { return {tenant_of_[v], v - offsets_[tenant_of_[v]]}; }
  VmIndex global(VmId id) const;

 private:
  std::vector<TenantGraph> tenants_;
  std::vector<VmIndex> offsets_;
  std::vector<std::uint32_t> tenant_of_;
  std::vector<WeightedPair> edges_;
  std::uint64_t total_weight_ = 0;
};

enum class CoverMode { strict, lenient };

// Replicates `component` host_count / size times. Strict mode rejects sizes
// that do not divide host_count; lenient mode leaves the remainder hosts empty.
OverallGuestGraph assemble_overall(const TenantGraph& component, std::uint32_t host_count,
                                   CoverMode cover = CoverMode::strict);

// Re-draws weights independently for every tenant.
OverallGuestGraph assign_weights(const OverallGuestGraph& g, const WeightModel& model, Rng& rng);

/// Draws edges i.i.d. with probability w(e) / total_weight, by binary search
/// over the cumulative weight table. Endpoints come back in stored edge order.
class RequestSampler {
 public:
  explicit RequestSampler(const OverallGuestGraph& g);

  std::pair<VmIndex, VmIndex> sample(Rng& rng) const;
  std::size_t sample_edge(Rng& rng) const;

 private:
  std::vector<WeightedPair> edges_;
  std::vector<std::uint64_t> cumulative_;
};

std::pair<VmId, VmId> sample_request(const OverallGuestGraph& g, const RequestSampler& sampler, Rng& rng);

}  // namespace dswap
