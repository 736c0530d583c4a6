#include "dswap/topology.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dswap {

namespace {

constexpr std::uint64_t kMaxHosts = std::uint64_t{1} << 26;

std::uint64_t checked_host_count(BCubeParams p) {
  if (p.n < 2 || p.n > 255) throw std::invalid_argument("BCube: n must be in [2, 255]");
  if (p.k < 0) throw std::invalid_argument("BCube: k must be >= 0");
  std::uint64_t count = 1;
  for (int i = 0; i <= p.k; ++i) {
    count *= static_cast<std::uint64_t>(p.n);
    if (count > kMaxHosts) throw std::invalid_argument("BCube: too many hosts");
  }
  return count;
}

std::int64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::int64_t c = 1;
  for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

}  // namespace

std::uint32_t BCubeParams::host_count() const { return static_cast<std::uint32_t>(checked_host_count(*this)); }

Ratio Ratio::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("Ratio: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Ratio{0, 1} : Ratio{num / g, den / g};
}

std::string to_string(const HostAddress& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.digits.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(a.digits[i]);
  }
  return s + ")";
}

BCube::BCube(BCubeParams params)
    : params_(params),
      host_count_(static_cast<std::uint32_t>(checked_host_count(params))),
      degree_(static_cast<std::size_t>(params.n - 1) * static_cast<std::size_t>(params.k + 1)) {
  const int L = levels();
  powers_.resize(L + 1);
  powers_[0] = 1;
  for (int i = 1; i <= L; ++i) powers_[i] = powers_[i - 1] * static_cast<std::uint32_t>(params_.n);

  digits_.resize(static_cast<std::size_t>(host_count_) * L);
  for (HostIndex h = 0; h < host_count_; ++h) {
    HostIndex rest = h;
    for (int i = 0; i < L; ++i) {
      digits_[static_cast<std::size_t>(h) * L + i] = static_cast<std::uint8_t>(rest % params_.n);
      rest /= params_.n;
    }
  }

  neighbors_.reserve(static_cast<std::size_t>(host_count_) * degree_);
  std::vector<HostIndex> scratch;
  scratch.reserve(degree_);
  for (HostIndex h = 0; h < host_count_; ++h) {
    scratch.clear();
    for (int pos = 0; pos < L; ++pos) {
      for (int value = 0; value < params_.n; ++value) {
        if (value != digit(h, pos)) scratch.push_back(with_digit(h, pos, value));
      }
    }
    std::sort(scratch.begin(), scratch.end());
    neighbors_.insert(neighbors_.end(), scratch.begin(), scratch.end());
  }
}

bool BCube::valid(const HostAddress& a) const {
  if (static_cast<int>(a.digits.size()) != levels()) return false;
  return std::all_of(a.digits.begin(), a.digits.end(), [&](int d) { return d >= 0 && d < params_.n; });
}

HostAddress BCube::address(HostIndex h) const {
  if (h >= host_count_) throw std::out_of_range("BCube::address: host index out of range");
  HostAddress a;
  a.digits.resize(levels());
  for (int i = 0; i < levels(); ++i) a.digits[i] = digit(h, i);
  return a;
}

HostIndex BCube::index(const HostAddress& a) const {
  if (!valid(a)) throw std::invalid_argument("BCube::index: invalid address " + to_string(a));
  HostIndex h = 0;
  for (int i = 0; i < levels(); ++i) h += static_cast<HostIndex>(a.digits[i]) * powers_[i];
  return h;
}

HostIndex BCube::with_digit(HostIndex h, int pos, int value) const {
  const int current = digit(h, pos);
  return h - static_cast<HostIndex>(current) * powers_[pos] + static_cast<HostIndex>(value) * powers_[pos];
}

int BCube::hamming_distance(const HostAddress& a, const HostAddress& b) const {
  if (a.digits.size() != b.digits.size() || static_cast<int>(a.digits.size()) != levels()) {
    throw std::invalid_argument("hamming_distance: address length mismatch");
  }
  int d = 0;
  for (std::size_t i = 0; i < a.digits.size(); ++i) d += a.digits[i] != b.digits[i];
  return d;
}

SwitchGroup BCube::switch_group(HostIndex h, int level) const {
  if (level < 0 || level >= levels()) throw std::out_of_range("switch_group: level out of range");
  SwitchGroup g;
  g.level = level;
  g.members.reserve(params_.n);
  for (int value = 0; value < params_.n; ++value) g.members.push_back(with_digit(h, level, value));
  return g;
}

std::vector<SwitchGroup> BCube::switch_groups(HostIndex h) const {
  std::vector<SwitchGroup> groups;
  groups.reserve(levels());
  for (int level = 0; level < levels(); ++level) groups.push_back(switch_group(h, level));
  return groups;
}

std::vector<HostIndex> BCube::shortest_path(HostIndex a, HostIndex b, std::span<const int> order) const {
  std::vector<HostIndex> path{a};
  path.reserve(distance(a, b) + 1);
  HostIndex cur = a;
  for (int pos : order) {
    if (pos < 0 || pos >= levels()) throw std::invalid_argument("shortest_path: digit position out of range");
    if (digit(cur, pos) == digit(b, pos)) continue;
    cur = with_digit(cur, pos, digit(b, pos));
    path.push_back(cur);
  }
  if (cur != b) throw std::invalid_argument("shortest_path: order does not cover every differing digit");
  return path;
}

std::vector<HostIndex> BCube::shortest_path(HostIndex a, HostIndex b, Rng& rng) const {
  std::vector<int> order(levels());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  return shortest_path(a, b, order);
}

HostIndex BCube::step_toward(HostIndex from, HostIndex to, Rng& rng) const {
  int differing[64];
  int count = 0;
  for (int i = 0; i < levels(); ++i) {
    if (digit(from, i) != digit(to, i)) differing[count++] = i;
  }
  if (count == 0) return from;
  const int pos = differing[std::uniform_int_distribution<int>(0, count - 1)(rng)];
  return with_digit(from, pos, digit(to, pos));
}

std::int64_t count_at_distance(BCubeParams params, int i) {
  checked_host_count(params);
  if (i < 0 || i > params.k + 1) throw std::invalid_argument("count_at_distance: distance out of range");
  std::int64_t power = 1;
  for (int j = 0; j < i; ++j) power *= params.n - 1;
  return power * binomial(params.k + 1, i);
}

Ratio expected_random_distance(BCubeParams params) {
  checked_host_count(params);
  return Ratio::make(static_cast<std::int64_t>(params.k + 1) * (params.n - 1), params.n);
}

}  // namespace dswap
