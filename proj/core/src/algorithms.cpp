#include "dswap/algorithms.hpp"

#include <limits>
#include <stdexcept>

namespace dswap {

std::string_view to_string(Mode mode) { return mode == Mode::inter ? "inter" : "intra"; }

Mode parse_mode(std::string_view name) {
  if (name == "inter") return Mode::inter;
  if (name == "intra") return Mode::intra;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

Policy parse_policy(std::string_view name, Mode mode) {
  if (name == "none") return std::nullopt;
  PolicyConfig p;
  p.mode = mode;
  if (name == "meetmiddle") {
    p.destination = Destination::meet_middle;
    validate(p);
    return p;
  }
  const auto dash = name.find('-');
  if (dash == std::string_view::npos) throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
  const std::string_view dest = name.substr(0, dash);
  const std::string_view method = name.substr(dash + 1);
  if (dest == "random") {
    p.destination = Destination::random;
  } else if (dest == "bestswitch") {
    p.destination = Destination::best_switch;
  } else if (dest == "bestneighbor") {
    p.destination = Destination::best_neighbor;
  } else {
    throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
  }
  if (method == "direct") {
    p.swap_method = SwapMethod::direct;
  } else if (method == "indirect") {
    p.swap_method = SwapMethod::indirect;
  } else {
    throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
  }
  validate(p);
  return p;
}

std::string policy_name(const Policy& policy) {
  if (!policy) return "none";
  if (policy->destination == Destination::meet_middle) return "meetmiddle";
  std::string name;
  switch (policy->destination) {
    case Destination::random: name = "random"; break;
    case Destination::best_switch: name = "bestswitch"; break;
    case Destination::best_neighbor: name = "bestneighbor"; break;
    case Destination::meet_middle: break;
  }
  return name + (policy->swap_method == SwapMethod::direct ? "-direct" : "-indirect");
}

void validate(const PolicyConfig& policy) {
  if (policy.destination == Destination::meet_middle && policy.mode == Mode::intra) {
    throw std::invalid_argument("meetmiddle walks through arbitrary hosts and cannot run in intra mode");
  }
}

Roles choose_roles(VmIndex u, VmIndex v, const StatsStore& stats) {
  const double lu = stats.lcost(u);
  const double lv = stats.lcost(v);
  if (lu > lv) return {v, u};
  if (lv > lu) return {u, v};
  return u < v ? Roles{u, v} : Roles{v, u};
}

bool eligible_host(const OverallGuestGraph& guest, const Arrangement& arr, HostIndex h, std::uint32_t tenant,
                   Mode mode) {
  if (mode == Mode::inter) return true;
  const VmIndex occ = arr.occupant(h);
  return occ != kNoVm && guest.tenant_of(occ) == tenant;
}

std::optional<HostIndex> dest_random(const BCube& topo, const OverallGuestGraph& guest, const Arrangement& arr,
                                     VmIndex fixed, VmIndex migrating, Mode mode, Rng& rng) {
  const HostIndex m = arr.host_of(fixed);
  const HostIndex own = arr.host_of(migrating);
  const std::uint32_t tenant = guest.tenant_of(migrating);
  std::vector<HostIndex> candidates;
  candidates.reserve(topo.degree());
  for (HostIndex h : topo.neighbors(m)) {
    if (h != own && eligible_host(guest, arr, h, tenant, mode)) candidates.push_back(h);
  }
  if (candidates.empty()) return std::nullopt;
  return candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
}

std::optional<HostIndex> dest_best_switch(const BCube& topo, const OverallGuestGraph& guest, const Arrangement& arr,
                                          const StatsStore& stats, VmIndex fixed, VmIndex migrating, Mode mode) {
  const HostIndex m = arr.host_of(fixed);
  const HostIndex own = arr.host_of(migrating);
  const std::uint32_t tenant = guest.tenant_of(migrating);
  std::optional<HostIndex> best;
  std::int64_t best_gain = std::numeric_limits<std::int64_t>::min();
  for (int level = 0; level < topo.levels(); ++level) {
    const SwitchGroup group = topo.switch_group(m, level);
    // Victim: least-requested occupant; empty hosts first, then smallest index.
    std::optional<HostIndex> victim;
    std::uint64_t victim_requests = 0;
    bool victim_empty = false;
    for (HostIndex h : group.members) {
      if (h == m || h == own || !eligible_host(guest, arr, h, tenant, mode)) continue;
      const VmIndex occ = arr.occupant(h);
      const bool empty = occ == kNoVm;
      const std::uint64_t requests = empty ? 0 : stats.vm(occ).request_count;
      const bool better = !victim || (empty && !victim_empty) ||
                          (empty == victim_empty && requests < victim_requests);
      if (better) {
        victim = h;
        victim_requests = requests;
        victim_empty = empty;
      }
    }
    if (!victim) continue;
    const std::int64_t gain = stats.sc_gain(group.members, arr, migrating, *victim);
    if (gain > best_gain) {
      best_gain = gain;
      best = victim;
    }
  }
  return best;
}

std::optional<HostIndex> dest_best_neighbor(const BCube& topo, const OverallGuestGraph& guest,
                                            const Arrangement& arr, const StatsStore& stats, VmIndex fixed,
                                            VmIndex migrating, Mode mode) {
  const HostIndex m = arr.host_of(fixed);
  const HostIndex own = arr.host_of(migrating);
  const std::uint32_t tenant = guest.tenant_of(migrating);
  std::optional<HostIndex> best;
  std::int64_t best_gain = std::numeric_limits<std::int64_t>::min();
  std::vector<HostIndex> scored;
  scored.reserve(topo.degree() + 1);
  for (HostIndex mu : topo.neighbors(m)) {
    if (mu == own || !eligible_host(guest, arr, mu, tenant, mode)) continue;
    const auto around = topo.neighbors(mu);
    scored.assign(around.begin(), around.end());
    scored.push_back(mu);
    const std::int64_t gain = stats.sc_gain(scored, arr, migrating, mu);
    if (gain > best_gain) {
      best_gain = gain;
      best = mu;
    }
  }
  return best;
}

MigrationPlan plan_direct(const Arrangement& arr, VmIndex migrating, HostIndex mu) {
  MigrationPlan plan;
  const HostIndex from = arr.host_of(migrating);
  if (from != mu) plan.swaps.emplace_back(from, mu);
  return plan;
}

MigrationPlan plan_indirect(const BCube& topo, const Arrangement& arr, VmIndex migrating, VmIndex fixed,
                            HostIndex mu, Rng& rng) {
  MigrationPlan plan;
  const HostIndex from = arr.host_of(migrating);
  const HostIndex m = arr.host_of(fixed);
  const int d = topo.distance(from, m);
  if (d <= 1) return plan;
  const std::vector<HostIndex> path = topo.shortest_path(from, m, rng);
  // path[i] is d - i hops from m; stop the walk at path[d - 2].
  for (int i = 0; i + 2 < d; ++i) plan.swaps.emplace_back(path[i], path[i + 1]);
  plan.swaps.emplace_back(path[d - 2], mu);
  return plan;
}

MigrationPlan plan_meet_middle(const BCube& topo, const Arrangement& arr, VmIndex u, VmIndex v, Rng& rng) {
  MigrationPlan plan;
  HostIndex a = arr.host_of(u);
  HostIndex b = arr.host_of(v);
  bool u_turn = true;
  while (topo.distance(a, b) > 1) {
    if (u_turn) {
      const HostIndex next = topo.step_toward(a, b, rng);
      plan.swaps.emplace_back(a, next);
      a = next;
    } else {
      const HostIndex next = topo.step_toward(b, a, rng);
      plan.swaps.emplace_back(b, next);
      b = next;
    }
    u_turn = !u_turn;
  }
  return plan;
}

void execute(Arrangement& arr, const MigrationPlan& plan) {
  for (const auto& [a, b] : plan.swaps) arr.swap(a, b);
}

StepOutcome apply(const BCube& topo, const OverallGuestGraph& guest, Arrangement& arr, StatsStore& stats,
                  const Policy& policy, VmIndex u, VmIndex v, Rng& rng) {
  StepOutcome out;
  out.distance = topo.distance(arr.host_of(u), arr.host_of(v));
  stats.record_request(u, v, out.distance);
  if (!policy || out.distance <= 1) return out;

  MigrationPlan plan;
  if (policy->destination == Destination::meet_middle) {
    plan = plan_meet_middle(topo, arr, u, v, rng);
  } else {
    const Roles roles = choose_roles(u, v, stats);
    std::optional<HostIndex> mu;
    switch (policy->destination) {
      case Destination::random:
        mu = dest_random(topo, guest, arr, roles.fixed, roles.migrating, policy->mode, rng);
        break;
      case Destination::best_switch:
        mu = dest_best_switch(topo, guest, arr, stats, roles.fixed, roles.migrating, policy->mode);
        break;
      case Destination::best_neighbor:
        mu = dest_best_neighbor(topo, guest, arr, stats, roles.fixed, roles.migrating, policy->mode);
        break;
      case Destination::meet_middle: break;
    }
    if (!mu) return out;
    plan = policy->effective_swap_method() == SwapMethod::direct
               ? plan_direct(arr, roles.migrating, *mu)
               : plan_indirect(topo, arr, roles.migrating, roles.fixed, *mu, rng);
  }
  execute(arr, plan);
  out.rho = plan.rho();
  stats.record_swaps(out.rho);
  return out;
}

}  // namespace dswap
