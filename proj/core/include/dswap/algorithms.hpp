#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dswap/guest.hpp"
#include "dswap/placement.hpp"
#include "dswap/random.hpp"
#include "dswap/stats.hpp"
#include "dswap/topology.hpp"

namespace dswap {

enum class Destination { meet_middle, random, best_switch, best_neighbor };
enum class SwapMethod { direct, indirect };
// inter: any host may be used; intra: only hosts of the requesting tenant.
enum class Mode { inter, intra };

struct PolicyConfig {
  Destination destination = Destination::best_neighbor;
  SwapMethod swap_method = SwapMethod::direct;
  Mode mode = Mode::inter;

  // Intra-tenant migration never walks through foreign hosts.
  SwapMethod effective_swap_method() const { return mode == Mode::intra ? SwapMethod::direct : swap_method; }

  friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;
};

// "none" means no migration at all.
using Policy = std::optional<PolicyConfig>;

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view name);

// Accepts "none", "meetmiddle" and "<random|bestswitch|bestneighbor>-<direct|indirect>".
Policy parse_policy(std::string_view name, Mode mode = Mode::inter);
std::string policy_name(const Policy& policy);
// Throws std::invalid_argument for combinations that cannot be executed.
void validate(const PolicyConfig& policy);

struct MigrationPlan {
  std::vector<std::pair<HostIndex, HostIndex>> swaps;

  std::uint64_t rho() const { return swaps.size(); }
  bool empty() const { return swaps.empty(); }
};

struct Roles {
  VmIndex fixed = 0;
  VmIndex migrating = 0;
};

// The endpoint with the strictly larger Lcost migrates; on a tie the smaller
// VM index stays.
Roles choose_roles(VmIndex u, VmIndex v, const StatsStore& stats);

// True when h may serve as a destination for a VM of `tenant` under `mode`.
bool eligible_host(const OverallGuestGraph& guest, const Arrangement& arr, HostIndex h, std::uint32_t tenant,
                   Mode mode);

// Uniform neighbor of the fixed VM's host.
std::optional<HostIndex> dest_random(const BCube& topo, const OverallGuestGraph& guest, const Arrangement& arr,
                                     VmIndex fixed, VmIndex migrating, Mode mode, Rng& rng);

// Per switch of the fixed VM's host, the least-requested occupant is the
// victim; the switch whose Sc rises most with the migrating VM in the victim's
// place wins (ties: lowest level).
std::optional<HostIndex> dest_best_switch(const BCube& topo, const OverallGuestGraph& guest, const Arrangement& arr,
                                          const StatsStore& stats, VmIndex fixed, VmIndex migrating, Mode mode);

// Neighbor mu of the fixed VM's host maximising the Sc gain of N(mu) + {mu}
// when the migrating VM replaces mu's occupant (ties: smallest host index).
std::optional<HostIndex> dest_best_neighbor(const BCube& topo, const OverallGuestGraph& guest,
                                            const Arrangement& arr, const StatsStore& stats, VmIndex fixed,
                                            VmIndex migrating, Mode mode);

// One exchange between the migrating VM's host and mu.
MigrationPlan plan_direct(const Arrangement& arr, VmIndex migrating, HostIndex mu);

// Walk the migrating VM hop by hop along a random shortest path toward the
// fixed VM's host until it is two hops away, then exchange it with mu's occupant.
MigrationPlan plan_indirect(const BCube& topo, const Arrangement& arr, VmIndex migrating, VmIndex fixed,
                            HostIndex mu, Rng& rng);

// u and v alternately step toward each other (u first) until adjacent.
MigrationPlan plan_meet_middle(const BCube& topo, const Arrangement& arr, VmIndex u, VmIndex v, Rng& rng);

void execute(Arrangement& arr, const MigrationPlan& plan);

struct StepOutcome {
  int distance = 0;        // routed distance of the request
  std::uint64_t rho = 0;   // swaps performed afterwards
};

// Serve one request: record it at its current distance, then migrate per policy.
StepOutcome apply(const BCube& topo, const OverallGuestGraph& guest, Arrangement& arr, StatsStore& stats,
                  const Policy& policy, VmIndex u, VmIndex v, Rng& rng);

}  // namespace dswap
