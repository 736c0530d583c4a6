#include "dswap/placement.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dswap {

Arrangement::Arrangement(std::uint32_t vm_count, std::uint32_t host_count)
    : vm_to_host_(vm_count, kNoHost), host_to_vm_(host_count, kNoVm) {
  if (vm_count > host_count) {
    throw std::invalid_argument("Arrangement: " + std::to_string(vm_count) + " VMs do not fit on " +
                                std::to_string(host_count) + " hosts");
  }
}

void Arrangement::place(VmIndex v, HostIndex h) {
  if (v >= vm_count() || h >= host_count()) throw std::out_of_range("Arrangement::place: index out of range");
  if (placed(v)) throw std::logic_error("Arrangement::place: VM already placed");
  if (host_to_vm_[h] != kNoVm) throw std::logic_error("Arrangement::place: host occupied");
  vm_to_host_[v] = h;
  host_to_vm_[h] = v;
}

void Arrangement::swap(HostIndex a, HostIndex b) {
  if (a == b) throw std::invalid_argument("Arrangement::swap: hosts must differ");
  const VmIndex va = host_to_vm_[a];
  const VmIndex vb = host_to_vm_[b];
  host_to_vm_[a] = vb;
  host_to_vm_[b] = va;
  if (va != kNoVm) vm_to_host_[va] = b;
  if (vb != kNoVm) vm_to_host_[vb] = a;
}

bool Arrangement::consistent() const {
  std::size_t occupied = 0;
  for (HostIndex h = 0; h < host_count(); ++h) {
    const VmIndex v = host_to_vm_[h];
    if (v == kNoVm) continue;
    if (v >= vm_count() || vm_to_host_[v] != h) return false;
    ++occupied;
  }
  std::size_t placed_count = 0;
  for (VmIndex v = 0; v < vm_count(); ++v) {
    const HostIndex h = vm_to_host_[v];
    if (h == kNoHost) continue;
    if (h >= host_count() || host_to_vm_[h] != v) return false;
    ++placed_count;
  }
  return occupied == placed_count;
}

SwapRecord swap(Arrangement& arr, HostIndex a, HostIndex b, std::uint64_t time) {
  arr.swap(a, b);
  return {time, a, b};
}

Arrangement random_initial(std::uint32_t vm_count, std::uint32_t host_count, Rng& rng) {
  Arrangement arr(vm_count, host_count);
  std::vector<HostIndex> hosts(host_count);
  std::iota(hosts.begin(), hosts.end(), HostIndex{0});
  std::shuffle(hosts.begin(), hosts.end(), rng);
  for (VmIndex v = 0; v < vm_count; ++v) arr.place(v, hosts[v]);
  return arr;
}

Arrangement local_random_initial(const OverallGuestGraph& guest, std::uint32_t host_count, Rng& rng) {
  Arrangement arr(guest.vm_count(), host_count);
  for (std::uint32_t t = 0; t < guest.tenant_count(); ++t) {
    const VmIndex offset = guest.tenant_offset(t);
    std::vector<HostIndex> block(guest.tenants()[t].vertex_count);
    std::iota(block.begin(), block.end(), HostIndex{offset});
    std::shuffle(block.begin(), block.end(), rng);
    for (std::uint32_t i = 0; i < block.size(); ++i) arr.place(offset + i, block[i]);
  }
  return arr;
}

Arrangement perfect_subcube_embedding(const OverallGuestGraph& guest, const BCube& host) {
  const BCubeParams& hp = host.params();
  std::uint32_t block = 0;
  for (const TenantGraph& t : guest.tenants()) {
    if (t.kind != GuestKind::subcube || t.subcube_n != hp.n || t.subcube_k < 0 || t.subcube_k >= hp.k) {
      throw std::invalid_argument("perfect_subcube_embedding: every tenant must be a BCube(" + std::to_string(hp.n) +
                                  ", k') guest with k' < " + std::to_string(hp.k));
    }
    if (block != 0 && t.vertex_count != block) {
      throw std::invalid_argument("perfect_subcube_embedding: tenants must share one sub-cube size");
    }
    block = t.vertex_count;
  }
  if (static_cast<std::uint64_t>(guest.vm_count()) > host.host_count()) {
    throw std::invalid_argument("perfect_subcube_embedding: more VMs than hosts");
  }
  // Global VM index c*block + i maps to host index c*block + i: the low digits
  // spell i and the high digits spell c.
  Arrangement arr(guest.vm_count(), host.host_count());
  for (VmIndex v = 0; v < guest.vm_count(); ++v) arr.place(v, v);
  return arr;
}

int vm_distance(const BCube& topo, const Arrangement& arr, VmIndex u, VmIndex v) {
  if (u >= arr.vm_count() || v >= arr.vm_count() || !arr.placed(u) || !arr.placed(v)) {
    throw std::invalid_argument("vm_distance: VM is not placed");
  }
  return topo.distance(arr.host_of(u), arr.host_of(v));
}

namespace {

int exact_log(int n, int x) {
  if (n < 2 || x < n) throw std::invalid_argument("clique size must be a positive power of n");
  int e = 0;
  std::int64_t p = 1;
  while (p < x) {
    p *= n;
    ++e;
  }
  if (p != x) {
    throw std::invalid_argument("log_" + std::to_string(n) + "(" + std::to_string(x) + ") is not an integer");
  }
  return e;
}

}  // namespace

Ratio clique_local_min_cost(int n, int x) {
  exact_log(n, x);
  return Ratio::make(static_cast<std::int64_t>(x + 1) * (n - 1), n);
}

Ratio packed_clique_average_distance(int n, int x) {
  const int levels = exact_log(n, x);
  const BCube cube({n, levels - 1});
  std::int64_t sum = 0;
  std::int64_t pairs = 0;
  for (HostIndex a = 0; a < cube.host_count(); ++a) {
    for (HostIndex b = a + 1; b < cube.host_count(); ++b) {
      sum += cube.distance(a, b);
      ++pairs;
    }
  }
  return Ratio::make(sum, pairs);
}

void write_arrangement_csv(std::ostream& out, const Arrangement& arr, const OverallGuestGraph& guest) {
  out << "host_index,tenant,vm_local_index\n";
  for (HostIndex h = 0; h < arr.host_count(); ++h) {
    out << h << ',';
    const VmIndex v = arr.occupant(h);
    if (v != kNoVm) {
      const VmId id = guest.vm_id(v);
      out << id.tenant << ',' << id.local;
    } else {
      out << ',';
    }
    out << '\n';
  }
}

}  // namespace dswap
