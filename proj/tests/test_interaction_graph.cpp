#include "qdc/interaction_graph.hpp"

#include "qdc/gate_library.hpp"
#include "qdc/partitioner.hpp"

#include <doctest.h>

#include <random>

using namespace qdc;

namespace {

WeightedGraph random_graph(std::mt19937_64& rng, int n) {
  WeightedGraph graph;
  graph.n_vertices = n;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng() % 2) graph.edges[{u, v}] = 1 + static_cast<long long>(rng() % 5);
  return graph;
}

}  // namespace

TEST_CASE("build: 2x2 cluster graph is the 4-cycle with unit weights") {
  const WeightedGraph graph = build_interaction_graph(cluster_state_circuit(2, 2));
  CHECK(graph.n_vertices == 4);
  REQUIRE(graph.edges.size() == 4);
  for (const auto& pair : {std::pair{0, 1}, {2, 3}, {0, 2}, {1, 3}})
    CHECK(graph.edges.at(pair) == 1);
}

TEST_CASE("build: empty circuit gives an edgeless graph") {
  Circuit circuit;
  for (int w = 0; w < 4; ++w) circuit.wires.push_back({w, 2});
  const WeightedGraph graph = build_interaction_graph(circuit);
  CHECK(graph.n_vertices == 4);
  CHECK(graph.edges.empty());
}

TEST_CASE("build: barenco recipe weights, total 13 over 6 pairs") {
  const WeightedGraph graph = build_interaction_graph(cpf4_barenco_circuit().circuit);
  CHECK(graph.total_weight() == 13);
  REQUIRE(graph.edges.size() == 6);
  // Frozen from the ladder: CT(0,3); CNOT(0,1) x2; CT*(1,3) x2; CNOT(1,2) x2;
  // CT*(2,3) x4; CNOT(0,2) x2.
  CHECK(graph.edges.at({0, 1}) == 2);
  CHECK(graph.edges.at({0, 2}) == 2);
  CHECK(graph.edges.at({0, 3}) == 1);
  CHECK(graph.edges.at({1, 2}) == 2);
  CHECK(graph.edges.at({1, 3}) == 2);
  CHECK(graph.edges.at({2, 3}) == 4);
}

TEST_CASE("build ignores gate order") {
  Circuit a = cpf4_barenco_circuit().circuit;
  Circuit b = a;
  std::reverse(b.gates.begin(), b.gates.end());
  CHECK(build_interaction_graph(a).edges == build_interaction_graph(b).edges);
}

TEST_CASE("contract: 2x2 cluster rows drop 2, one qudit edge of weight 2") {
  const WeightedGraph graph = build_interaction_graph(cluster_state_circuit(2, 2));
  const Partition rows{{{0, 1}, {2, 3}}};
  const ContractedGraph contracted = contract_graph(graph, rows);
  CHECK(contracted.dropped_weight == 2);
  REQUIRE(contracted.edges.size() == 1);
  CHECK(contracted.edges.at({0, 1}) == 2);
}

TEST_CASE("contract: 3x3 cluster rows drop 6, two qudit edges of weight 3") {
  const WeightedGraph graph = build_interaction_graph(cluster_state_circuit(3, 3));
  const Partition rows{{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}}};
  const ContractedGraph contracted = contract_graph(graph, rows);
  CHECK(contracted.dropped_weight == 6);
  REQUIRE(contracted.edges.size() == 2);
  CHECK(contracted.edges.at({0, 1}) == 3);
  CHECK(contracted.edges.at({1, 2}) == 3);
}

TEST_CASE("contract: the trivial partition changes nothing") {
  std::mt19937_64 rng(5);
  const WeightedGraph graph = random_graph(rng, 6);
  Partition trivial;
  for (int v = 0; v < 6; ++v) trivial.groups.push_back({v});
  const ContractedGraph contracted = contract_graph(graph, trivial);
  CHECK(contracted.dropped_weight == 0);
  CHECK(contracted.edges == graph.edges);
}

TEST_CASE("contract rejects non-partitions") {
  WeightedGraph graph;
  graph.n_vertices = 4;
  CHECK_THROWS_AS(contract_graph(graph, Partition{{{0, 1}, {1, 2, 3}}}), InputError);
  CHECK_THROWS_AS(contract_graph(graph, Partition{{{0, 1}, {2}}}), InputError);
}

TEST_CASE("property: weight conservation over every balanced partition") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + 2 * static_cast<int>(rng() % 4);  // 2, 4, 6, 8
    const WeightedGraph graph = random_graph(rng, n);
    for (int k = 1; k <= n; ++k) {
      if (n % k != 0) continue;
      for (const auto& partition : enumerate_balanced_partitions(n, k)) {
        const ContractedGraph contracted = contract_graph(graph, partition);
        CHECK(contracted.dropped_weight + contracted.l1() == graph.total_weight());
        CHECK(contracted.l0() <= contracted.l1());
        bool all_unit = true;
        for (const auto& [pair, w] : contracted.edges) all_unit &= (w == 1);
        CHECK((contracted.l0() == contracted.l1()) == all_unit);
      }
    }
  }
}
