#include "qdc/partitioner.hpp"

#include <algorithm>
#include <limits>

namespace qdc {

int Partition::n_vertices() const {
  int n = 0;
  for (const auto& group : groups) n += static_cast<int>(group.size());
  return n;
}

std::vector<int> Partition::assignment(int n) const {
  std::vector<int> group_of(n, -1);
  for (size_t g = 0; g < groups.size(); ++g) {
    for (int v : groups[g]) {
      if (v < 0 || v >= n) throw InputError("partition references vertex " + std::to_string(v));
      if (group_of[v] != -1) throw InputError("partition groups overlap at vertex " + std::to_string(v));
      group_of[v] = static_cast<int>(g);
    }
  }
  for (int v = 0; v < n; ++v)
    if (group_of[v] == -1) throw InputError("partition does not cover vertex " + std::to_string(v));
  return group_of;
}

void Partition::canonicalize() {
  for (auto& group : groups) std::sort(group.begin(), group.end());
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

std::uint64_t balanced_partition_count(int n, int k) {
  if (k < 1 || n < 1 || n % k != 0) throw InfeasibleError("k must divide the vertex count");
  // n! / ((n/k)!^k k!) computed as a product of binomials: at each step the
  // smallest unassigned vertex anchors a group and the remaining m-1 members
  // are chosen from the rest.
  const int m = n / k;
  std::uint64_t count = 1;
  int remaining = n;
  while (remaining > 0) {
    // C(remaining-1, m-1)
    std::uint64_t binom = 1;
    for (int i = 1; i <= m - 1; ++i) {
      const std::uint64_t next = binom * static_cast<std::uint64_t>(remaining - i);
      if (next / static_cast<std::uint64_t>(remaining - i) != binom)
        return std::numeric_limits<std::uint64_t>::max();
      binom = next / static_cast<std::uint64_t>(i);
    }
    const std::uint64_t next = count * binom;
    if (binom != 0 && next / binom != count) return std::numeric_limits<std::uint64_t>::max();
    count = next;
    remaining -= m;
  }
  return count;
}

namespace {

void enumerate_rec(std::vector<int>& unassigned, int group_size,
                   std::vector<std::vector<int>>& current, std::vector<Partition>& out) {
  if (unassigned.empty()) {
    out.push_back(Partition{current});
    return;
  }
  // The smallest unassigned vertex anchors the next group, which makes each
  // partition appear exactly once, already in canonical form and in
  // lexicographic order.
  const int anchor = unassigned.front();
  std::vector<int> rest(unassigned.begin() + 1, unassigned.end());

  // Combinations of `rest` taken (group_size - 1) at a time, lexicographic.
  const int r = group_size - 1;
  const int n = static_cast<int>(rest.size());
  if (r == 0) {
    current.push_back({anchor});
    std::vector<int> next = rest;
    enumerate_rec(next, group_size, current, out);
    current.pop_back();
    return;
  }
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    std::vector<int> group{anchor};
    std::vector<bool> used(n, false);
    for (int i : idx) {
      group.push_back(rest[i]);
      used[i] = true;
    }
    std::vector<int> next;
    for (int i = 0; i < n; ++i)
      if (!used[i]) next.push_back(rest[i]);
    current.push_back(std::move(group));
    enumerate_rec(next, group_size, current, out);
    current.pop_back();

    int pos = r - 1;
    while (pos >= 0 && idx[pos] == n - r + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < r; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace

std::vector<Partition> enumerate_balanced_partitions(int n, int k) {
  const std::uint64_t count = balanced_partition_count(n, k);
  if (count > kMaxEnumeratedPartitions)
    throw InfeasibleError("balanced partition count " + std::to_string(count) +
                          " exceeds the enumeration cap");
  std::vector<Partition> out;
  out.reserve(count);
  std::vector<int> vertices(n);
  for (int v = 0; v < n; ++v) vertices[v] = v;
  std::vector<std::vector<int>> current;
  enumerate_rec(vertices, n / k, current, out);
  return out;
}

long long cut_weight_of(const WeightedGraph& graph, const Partition& partition) {
  const auto group_of = partition.assignment(graph.n_vertices);
  long long cut = 0;
  for (const auto& [pair, w] : graph.edges)
    if (group_of[pair.first] != group_of[pair.second]) cut += w;
  return cut;
}

CutResult min_cut_exact(const WeightedGraph& graph, int k) {
  const auto partitions = enumerate_balanced_partitions(graph.n_vertices, k);
  const long long total = graph.total_weight();
  CutResult best;
  best.cut_weight = std::numeric_limits<long long>::max();
  for (const auto& partition : partitions) {
    const long long cut = cut_weight_of(graph, partition);
    if (cut < best.cut_weight) {
      best.partition = partition;
      best.cut_weight = cut;
    }
  }
  best.internal_weight = total - best.cut_weight;
  best.optimality = Optimality::exact;
  return best;
}

namespace {

// Deterministic across platforms: splitmix64 plus explicit modulo draws
// instead of std::shuffle / distributions.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

struct Adjacency {
  std::vector<std::vector<std::pair<int, long long>>> neighbors;
  explicit Adjacency(const WeightedGraph& graph) : neighbors(graph.n_vertices) {
    for (const auto& [pair, w] : graph.edges) {
      neighbors[pair.first].push_back({pair.second, w});
      neighbors[pair.second].push_back({pair.first, w});
    }
  }
};

// Cut-weight decrease when u and v (in different groups) swap groups.
long long swap_gain(const Adjacency& adj, const std::vector<int>& group_of, int u, int v) {
  long long gain = 0;
  for (const auto& [x, w] : adj.neighbors[u]) {
    if (x == v) continue;
    if (group_of[x] == group_of[u]) gain -= w;       // becomes crossing
    if (group_of[x] == group_of[v]) gain += w;       // becomes internal
  }
  for (const auto& [x, w] : adj.neighbors[v]) {
    if (x == u) continue;
    if (group_of[x] == group_of[v]) gain -= w;
    if (group_of[x] == group_of[u]) gain += w;
  }
  return gain;
}

}  // namespace

CutResult min_cut_heuristic(const WeightedGraph& graph, int k, std::uint64_t seed) {
  const int n = graph.n_vertices;
  if (k < 1 || n % k != 0) throw InfeasibleError("k must divide the vertex count");
  const Adjacency adj(graph);
  const long long total = graph.total_weight();
  constexpr int kRestarts = 16;

  std::vector<int> best_assignment;
  long long best_cut = std::numeric_limits<long long>::max();

  for (int restart = 0; restart < kRestarts; ++restart) {
    SplitMix64 rng{seed * 0x2545f4914f6cdd1dULL + static_cast<std::uint64_t>(restart) + 1};
    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    for (int i = n - 1; i > 0; --i)
      std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);

    std::vector<int> group_of(n);
    const int m = n / k;
    for (int i = 0; i < n; ++i) group_of[order[i]] = i / m;

    // Steepest-descent pairwise swaps to a local optimum.
    while (true) {
      long long best_gain = 0;
      int best_u = -1, best_v = -1;
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          if (group_of[u] == group_of[v]) continue;
          const long long gain = swap_gain(adj, group_of, u, v);
          if (gain > best_gain) {
            best_gain = gain;
            best_u = u;
            best_v = v;
          }
        }
      }
      if (best_u < 0) break;
      std::swap(group_of[best_u], group_of[best_v]);
    }

    long long cut = 0;
    for (const auto& [pair, w] : graph.edges)
      if (group_of[pair.first] != group_of[pair.second]) cut += w;
    if (cut < best_cut) {
      best_cut = cut;
      best_assignment = group_of;
    }
  }

  CutResult result;
  result.partition.groups.assign(k, {});
  for (int v = 0; v < n; ++v) result.partition.groups[best_assignment[v]].push_back(v);
  result.partition.canonicalize();
  result.cut_weight = best_cut;
  result.internal_weight = total - best_cut;
  result.optimality = Optimality::heuristic;
  return result;
}

}  // namespace qdc
