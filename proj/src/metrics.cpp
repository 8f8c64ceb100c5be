#include "stratsim/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace stratsim {

namespace {

// Counts inversions of `seq` by bottom-up merge sort; `seq` is sorted on return.
std::uint64_t count_inversions(std::vector<std::uint32_t>& seq) {
  const std::size_t n = seq.size();
  std::vector<std::uint32_t> buffer(n);
  std::uint64_t inversions = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, n);
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo;
      std::size_t j = mid;
      std::size_t k = lo;
      while (i < mid && j < hi) {
        if (seq[j] < seq[i]) {
          inversions += mid - i;
          buffer[k++] = seq[j++];
        } else {
          buffer[k++] = seq[i++];
        }
      }
      while (i < mid) buffer[k++] = seq[i++];
      while (j < hi) buffer[k++] = seq[j++];
    }
    seq.swap(buffer);
  }
  return inversions;
}

}  // namespace

double schedule_usage(std::span<const Agent> agents, int weekdays) {
  if (agents.empty() || weekdays <= 0) return 0.0;
  std::uint64_t used = 0;
  for (const auto& a : agents) used += static_cast<std::uint64_t>(a.used_slots());
  return static_cast<double>(used) / (static_cast<double>(agents.size()) * weekdays);
}

double willingness_usage(std::span<const Agent> agents) {
  double used = 0.0;
  double available = 0.0;
  for (const auto& a : agents) {
    used += a.used_willingness();
    available += a.total_willingness();
  }
  if (!(available > 0.0)) return 0.0;
  return used / available;
}

std::uint64_t kendall_tau_count(std::span<const AgentId> order1, std::span<const AgentId> order2) {
  if (order1.size() != order2.size()) throw std::invalid_argument("kendall_tau: length mismatch");
  const std::size_t n = order1.size();

  // Fast path: both lists are permutations of 0..n-1.
  {
    constexpr std::uint32_t kUnset = ~std::uint32_t{0};
    std::vector<std::uint32_t> position2(n, kUnset);
    bool dense = true;
    for (std::size_t p = 0; p < n && dense; ++p) {
      const AgentId id = order2[p];
      if (id >= n || position2[id] != kUnset) {
        dense = false;
      } else {
        position2[id] = static_cast<std::uint32_t>(p);
      }
    }
    if (dense) {
      std::vector<std::uint32_t> seq(n);
      for (std::size_t p = 0; p < n && dense; ++p) {
        const AgentId id = order1[p];
        if (id >= n || position2[id] == kUnset) {
          dense = false;
        } else {
          seq[p] = position2[id];
          position2[id] = kUnset;
        }
      }
      if (dense) return count_inversions(seq);
    }
  }

  std::vector<AgentId> ids(order1.begin(), order1.end());
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw std::invalid_argument("kendall_tau: repeated element");
  }
  std::vector<AgentId> ids2(order2.begin(), order2.end());
  std::sort(ids2.begin(), ids2.end());
  if (ids != ids2) throw std::invalid_argument("kendall_tau: element sets differ");

  auto rank_of = [&](AgentId id) {
    return static_cast<std::uint32_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<std::uint32_t> position2(ids.size());
  for (std::size_t p = 0; p < order2.size(); ++p) position2[rank_of(order2[p])] = static_cast<std::uint32_t>(p);
  std::vector<std::uint32_t> seq(order1.size());
  for (std::size_t p = 0; p < order1.size(); ++p) seq[p] = position2[rank_of(order1[p])];
  return count_inversions(seq);
}

double kendall_tau(std::span<const AgentId> order1, std::span<const AgentId> order2,
                   TauNormalization normalization) {
  const auto n = static_cast<double>(order1.size());
  if (order1.size() < 2) throw std::invalid_argument("kendall_tau: need at least 2 elements");
  if (normalization == TauNormalization::NMinusTwo && order1.size() < 3) {
    throw std::invalid_argument("kendall_tau: NMinusTwo normalization needs at least 3 elements");
  }
  const auto count = static_cast<double>(kendall_tau_count(order1, order2));
  const double denom = normalization == TauNormalization::Standard ? n * (n - 1.0) : n * (n - 2.0);
  return 2.0 * count / denom;
}

int top_k_intersection(std::span<const AgentId> order1, std::span<const AgentId> order2, std::size_t k) {
  if (k > order1.size() || k > order2.size()) {
    throw std::invalid_argument("top_k_intersection: k=" + std::to_string(k) + " exceeds list length");
  }
  std::vector<AgentId> a(order1.begin(), order1.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<AgentId> b(order2.begin(), order2.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  int common = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

NetworkStats network_stats(const SocialGraph& graph, std::size_t n) {
  NetworkStats s;
  if (n == 0) return s;
  const auto edges = static_cast<double>(graph.edge_count());
  const auto nn = static_cast<double>(n);
  if (n >= 2) s.density = edges / (nn * (nn - 1.0) / 2.0);
  s.avg_degree = 2.0 * edges / nn;
  return s;
}

std::size_t elite_size(std::size_t n) { return std::max<std::size_t>(1, n / 10); }

}  // namespace stratsim
