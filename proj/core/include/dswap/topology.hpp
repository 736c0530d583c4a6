#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dswap/random.hpp"

namespace dswap {

using HostIndex = std::uint32_t;

struct BCubeParams {
  int n = 2;  // ports per switch
  int k = 0;  // highest level index; a host has k+1 ports

  std::uint32_t host_count() const;
  int diameter() const { return k + 1; }
  int levels() const { return k + 1; }

  friend bool operator==(const BCubeParams&, const BCubeParams&) = default;
};

// Exact non-negative rational, always reduced.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Ratio make(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Ratio&, const Ratio&) = default;
};

// Digit i of a host address is the host's port position on its level-i switch.
struct HostAddress {
  std::vector<int> digits;

  friend bool operator==(const HostAddress&, const HostAddress&) = default;
};

std::string to_string(const HostAddress& a);

// The n hosts attached to one switch: they agree on every digit except `level`.
struct SwitchGroup {
  int level = 0;
  std::vector<HostIndex> members;
};

/// Server-only view of BCube(n,k). Switches are treated as crossbars, so two
/// hosts on a common switch are adjacent and the hop distance between hosts is
/// the Hamming distance of their addresses.
///
/// Host indices encode addresses positionally: index = sum_i digit[i] * n^i.
/// Immutable after construction.
class BCube {
 public:
  explicit BCube(BCubeParams params);

  const BCubeParams& params() const { return params_; }
  std::uint32_t host_count() const { return host_count_; }
  int levels() const { return params_.k + 1; }
  int diameter() const { return params_.k + 1; }

  HostAddress address(HostIndex h) const;
  HostIndex index(const HostAddress& a) const;
  bool valid(const HostAddress& a) const;

  int digit(HostIndex h, int pos) const { return digits_[static_cast<std::size_t>(h) * levels() + pos]; }
  HostIndex with_digit(HostIndex h, int pos, int value) const;

  int hamming_distance(const HostAddress& a, const HostAddress& b) const;
  int distance(HostIndex a, HostIndex b) const {
    const std::uint8_t* da = &digits_[static_cast<std::size_t>(a) * levels()];
    const std::uint8_t* db = &digits_[static_cast<std::size_t>(b) * levels()];
    int d = 0;
    for (int i = 0; i < levels(); ++i) d += da[i] != db[i];
    return d;
  }

  // Hosts at distance exactly 1, ordered by increasing index.
  std::span<const HostIndex> neighbors(HostIndex h) const {
    return {neighbors_.data() + static_cast<std::size_t>(h) * degree_, degree_};
  }
  std::size_t degree() const { return degree_; }

  std::vector<SwitchGroup> switch_groups(HostIndex h) const;
  SwitchGroup switch_group(HostIndex h, int level) const;

  // Path from a to b that fixes one differing digit per hop, taking positions
  // in the given order (positions where a and b already agree are skipped).
  // Returns {a, ..., b}; just {a} when a == b.
  std::vector<HostIndex> shortest_path(HostIndex a, HostIndex b, std::span<const int> order) const;
  std::vector<HostIndex> shortest_path(HostIndex a, HostIndex b, Rng& rng) const;

  // First hop of a uniformly random shortest path from `from` to `to`.
  HostIndex step_toward(HostIndex from, HostIndex to, Rng& rng) const;

 private:
  BCubeParams params_;
  std::uint32_t host_count_;
  std::size_t degree_;
  std::vector<std::uint32_t> powers_;
  std::vector<std::uint8_t> digits_;
  std::vector<HostIndex> neighbors_;
};

// Number of hosts at Hamming distance i from any fixed host: (n-1)^i * C(k+1, i).
std::int64_t count_at_distance(BCubeParams params, int i);

// Mean distance between two independently, uniformly placed endpoints:
// (k+1)(n-1)/n.
Ratio expected_random_distance(BCubeParams params);

}  // namespace dswap
