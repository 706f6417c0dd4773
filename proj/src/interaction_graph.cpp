#include "qdc/interaction_graph.hpp"

#include "qdc/partitioner.hpp"

#include <algorithm>

namespace qdc {

long long WeightedGraph::total_weight() const {
  long long total = 0;
  for (const auto& [pair, w] : edges) total += w;
  return total;
}

long long WeightedGraph::weight(int u, int v) const {
  if (u == v) return 0;
  const auto it = edges.find(std::minmax(u, v));
  return it == edges.end() ? 0 : it->second;
}

long long ContractedGraph::l1() const {
  long long total = 0;
  for (const auto& [pair, w] : edges) total += w;
  return total;
}

WeightedGraph build_interaction_graph(const Circuit& circuit) {
  WeightedGraph graph;
  graph.n_vertices = circuit.n_wires();
  for (const auto& [pair, count] : circuit_stats(circuit).per_pair)
    graph.edges[pair] = count;
  return graph;
}

ContractedGraph contract_graph(const WeightedGraph& graph, const Partition& partition) {
  const auto group_of = partition.assignment(graph.n_vertices);
  ContractedGraph contracted;
  contracted.n_qudits = partition.k();
  for (const auto& [pair, w] : graph.edges) {
    const int gu = group_of[pair.first];
    const int gv = group_of[pair.second];
    if (gu == gv) {
      contracted.dropped_weight += w;
    } else {
      contracted.edges[std::minmax(gu, gv)] += w;
    }
  }
  return contracted;
}

}  // namespace qdc
