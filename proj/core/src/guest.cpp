#include "dswap/guest.hpp"

#include <algorithm>
#include <stdexcept>

#include "dswap/topology.hpp"

namespace dswap {

std::string_view to_string(GuestKind kind) {
  switch (kind) {
    case GuestKind::clique: return "clique";
    case GuestKind::star: return "star";
    case GuestKind::subcube: return "subcube";
    case GuestKind::matching: return "matching";
  }
  return "?";
}

GuestKind parse_guest_kind(std::string_view name) {
  if (name == "clique") return GuestKind::clique;
  if (name == "star") return GuestKind::star;
  if (name == "subcube") return GuestKind::subcube;
  if (name == "matching") return GuestKind::matching;
  throw std::invalid_argument("unknown guest kind '" + std::string(name) + "'");
}

std::string_view to_string(WeightKind kind) {
  return kind == WeightKind::unweighted ? "unweighted" : "product";
}

WeightKind parse_weight_kind(std::string_view name) {
  if (name == "unweighted" || name == "none") return WeightKind::unweighted;
  if (name == "product" || name == "product-uniform") return WeightKind::product_uniform;
  throw std::invalid_argument("unknown weight model '" + std::string(name) + "'");
}

TenantGraph make_clique(std::uint32_t x) {
  if (x < 2) throw std::invalid_argument("make_clique: need at least 2 vertices");
  TenantGraph g;
  g.kind = GuestKind::clique;
  g.vertex_count = x;
  g.edges.reserve(static_cast<std::size_t>(x) * (x - 1) / 2);
  for (std::uint32_t u = 0; u < x; ++u) {
    for (std::uint32_t v = u + 1; v < x; ++v) g.edges.push_back({u, v, 1});
  }
  return g;
}

TenantGraph make_star(std::uint32_t x) {
  if (x < 2) throw std::invalid_argument("make_star: need at least 2 vertices");
  TenantGraph g;
  g.kind = GuestKind::star;
  g.vertex_count = x;
  g.edges.reserve(x - 1);
  for (std::uint32_t leaf = 1; leaf < x; ++leaf) g.edges.push_back({0, leaf, 1});
  return g;
}

TenantGraph make_subcube(int n, int kp) {
  const BCube cube({n, kp});
  TenantGraph g;
  g.kind = GuestKind::subcube;
  g.vertex_count = cube.host_count();
  g.subcube_n = n;
  g.subcube_k = kp;
  for (HostIndex a = 0; a < cube.host_count(); ++a) {
    for (HostIndex b : cube.neighbors(a)) {
      if (a < b) g.edges.push_back({a, b, 1});
    }
  }
  return g;
}

std::vector<TenantGraph> make_matching(std::uint32_t pairs) {
  if (pairs < 1) throw std::invalid_argument("make_matching: need at least one pair");
  TenantGraph pair;
  pair.kind = GuestKind::matching;
  pair.vertex_count = 2;
  pair.edges.push_back({0, 1, 1});
  return std::vector<TenantGraph>(pairs, pair);
}

TenantGraph make_component(GuestKind kind, std::uint32_t size, int host_n) {
  switch (kind) {
    case GuestKind::clique: return make_clique(size);
    case GuestKind::star: return make_star(size);
    case GuestKind::matching:
      if (size != 2) throw std::invalid_argument("matching components have exactly 2 VMs");
      return make_matching(1).front();
    case GuestKind::subcube: {
      if (host_n < 2) throw std::invalid_argument("make_component: invalid host port count");
      std::uint64_t p = static_cast<std::uint64_t>(host_n);
      int kp = 0;
      while (p < size) {
        p *= static_cast<std::uint64_t>(host_n);
        ++kp;
      }
      if (p != size) {
        throw std::invalid_argument("sub-cube guest size " + std::to_string(size) + " is not a power of " +
                                    std::to_string(host_n));
      }
      return make_subcube(host_n, kp);
    }
  }
  throw std::invalid_argument("make_component: unknown kind");
}

TenantGraph assign_weights(TenantGraph g, const WeightModel& model, Rng& rng) {
  if (model.kind == WeightKind::unweighted) {
    g.frequencies.clear();
    for (auto& e : g.edges) e.weight = 1;
    return g;
  }
  if (model.range_max < 1) throw std::invalid_argument("assign_weights: range_max must be >= 1");
  std::uniform_int_distribution<std::uint64_t> draw(1, model.range_max);
  g.frequencies.resize(g.vertex_count);
  for (auto& f : g.frequencies) f = draw(rng);
  for (auto& e : g.edges) e.weight = g.frequencies[e.u] * g.frequencies[e.v];
  return g;
}

TenantGraph assign_weights(TenantGraph g, const WeightModel& model, std::uint64_t seed) {
  Rng rng = make_rng(seed, Stream::weights);
  return assign_weights(std::move(g), model, rng);
}

OverallGuestGraph::OverallGuestGraph(std::vector<TenantGraph> tenants) : tenants_(std::move(tenants)) {
  offsets_.reserve(tenants_.size());
  VmIndex offset = 0;
  for (std::uint32_t t = 0; t < tenants_.size(); ++t) {
    const TenantGraph& g = tenants_[t];
    offsets_.push_back(offset);
    tenant_of_.insert(tenant_of_.end(), g.vertex_count, t);
    for (const GuestEdge& e : g.edges) {
      if (e.u == e.v || e.u >= g.vertex_count || e.v >= g.vertex_count) {
        throw std::invalid_argument("OverallGuestGraph: malformed edge in tenant " + std::to_string(t));
      }
      if (e.weight == 0) throw std::invalid_argument("OverallGuestGraph: zero edge weight");
      edges_.push_back({offset + e.u, offset + e.v, e.weight});
      total_weight_ += e.weight;
    }
    offset += g.vertex_count;
  }
}

VmIndex OverallGuestGraph::global(VmId id) const {
  if (id.tenant >= tenants_.size() || id.local >= tenants_[id.tenant].vertex_count) {
    throw std::out_of_range("OverallGuestGraph::global: no such VM");
  }
  return offsets_[id.tenant] + id.local;
}

OverallGuestGraph assemble_overall(const TenantGraph& component, std::uint32_t host_count, CoverMode cover) {
  if (component.vertex_count == 0) throw std::invalid_argument("assemble_overall: empty component");
  if (component.vertex_count > host_count) {
    throw std::invalid_argument("assemble_overall: component of size " + std::to_string(component.vertex_count) +
                                " exceeds " + std::to_string(host_count) + " hosts");
  }
  if (cover == CoverMode::strict && host_count % component.vertex_count != 0) {
    throw std::invalid_argument("assemble_overall: component size " + std::to_string(component.vertex_count) +
                                " does not divide " + std::to_string(host_count) + " hosts");
  }
  return OverallGuestGraph(std::vector<TenantGraph>(host_count / component.vertex_count, component));
}

OverallGuestGraph assign_weights(const OverallGuestGraph& g, const WeightModel& model, Rng& rng) {
  std::vector<TenantGraph> tenants = g.tenants();
  for (auto& t : tenants) t = assign_weights(std::move(t), model, rng);
  return OverallGuestGraph(std::move(tenants));
}

RequestSampler::RequestSampler(const OverallGuestGraph& g) : edges_(g.edges()) {
  if (edges_.empty()) throw std::invalid_argument("RequestSampler: guest graph has no edges");
  cumulative_.reserve(edges_.size());
  std::uint64_t acc = 0;
  for (const auto& e : edges_) {
    acc += e.weight;
    cumulative_.push_back(acc);
  }
}

std::size_t RequestSampler::sample_edge(Rng& rng) const {
  const std::uint64_t r = std::uniform_int_distribution<std::uint64_t>(0, cumulative_.back() - 1)(rng);
  return static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), r) - cumulative_.begin());
}

std::pair<VmIndex, VmIndex> RequestSampler::sample(Rng& rng) const {
  const auto& e = edges_[sample_edge(rng)];
  return {e.u, e.v};
}

std::pair<VmId, VmId> sample_request(const OverallGuestGraph& g, const RequestSampler& sampler, Rng& rng) {
  const auto [u, v] = sampler.sample(rng);
  return {g.vm_id(u), g.vm_id(v)};
}

}  // namespace dswap
