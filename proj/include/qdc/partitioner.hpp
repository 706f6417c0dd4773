#pragma once

#include "qdc/interaction_graph.hpp"

#include <cstdint>
#include <vector>

namespace qdc {

// Exact enumeration refuses to generate more than this many partitions.
inline constexpr std::uint64_t kMaxEnumeratedPartitions = 1'000'000;

/// Balanced grouping of vertices 0..n-1 into k equal-size groups, kept in
/// canonical form: each group ascending, groups ordered by smallest element.
struct Partition {
  std::vector<std::vector<int>> groups;

  int k() const { return static_cast<int>(groups.size()); }
  int n_vertices() const;
  /// Group index of each vertex; throws InputError if the groups do not
  /// partition 0..n-1.
  std::vector<int> assignment(int n) const;
  void canonicalize();

  friend bool operator==(const Partition&, const Partition&) = default;
};

enum class Optimality { exact, heuristic };

struct CutResult {
  Partition partition;
  long long cut_weight = 0;
  long long internal_weight = 0;
  Optimality optimality = Optimality::exact;
};

/// Number of balanced k-way partitions, n! / ((n/k)!^k k!).
std::uint64_t balanced_partition_count(int n, int k);

/// All balanced partitions in canonical form, lexicographic order.
std::vector<Partition> enumerate_balanced_partitions(int n, int k);

long long cut_weight_of(const WeightedGraph& graph, const Partition& partition);

/// Exhaustive minimum balanced k-cut; ties broken toward the
/// lexicographically first canonical partition.
CutResult min_cut_exact(const WeightedGraph& graph, int k);

/// Seeded random balanced starts with pairwise-swap descent, best of 16
/// restarts. Deterministic for a fixed seed.
CutResult min_cut_heuristic(const WeightedGraph& graph, int k, std::uint64_t seed);

}  // namespace qdc
