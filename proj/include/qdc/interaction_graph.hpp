#pragma once

#include "qdc/circuit.hpp"

#include <map>
#include <utility>
#include <vector>

namespace qdc {

struct Partition;

/// Non-locality graph of a circuit: one vertex per wire, edge weights count
/// the two-wire gates on each pair.
struct WeightedGraph {
  int n_vertices = 0;
  std::map<std::pair<int, int>, long long> edges;  // keys have u < v

  long long total_weight() const;
  long long weight(int u, int v) const;
};

/// The graph after identifying each partition group with one qudit vertex.
struct ContractedGraph {
  int n_qudits = 0;
  std::map<std::pair<int, int>, long long> edges;
  long long dropped_weight = 0;  // weight turned local by the contraction

  long long l0() const { return static_cast<long long>(edges.size()); }
  long long l1() const;
};

WeightedGraph build_interaction_graph(const Circuit& circuit);

ContractedGraph contract_graph(const WeightedGraph& graph, const Partition& partition);

}  // namespace qdc
