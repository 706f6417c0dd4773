// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// fail. Usage: qdc_acceptance <path-to-qdc-cli>

#include "qdc/compressor.hpp"
#include "qdc/estimators.hpp"
#include "qdc/gate_library.hpp"
#include "qdc/simulator.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace qdc;

namespace {

std::string g_cli;
fs::path g_dir;
std::ostringstream g_detail;

void detail(const std::string& message) { g_detail << "    " << message << "\n"; }

bool expect(bool ok, const std::string& message) {
  if (!ok) detail("failed: " + message);
  return ok;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const fs::path out_file = g_dir / "stdout.txt";
  const std::string cmd = g_cli + " " + args + " > " + out_file.string() + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), slurp(out_file)};
}

Gate make_gate(Kind kind, std::vector<int> wires) {
  Gate gate;
  gate.kind.name = kind;
  gate.wires = std::move(wires);
  return gate;
}

// --- criterion 1: CPF(4) cascade through the CLI ---------------------------

bool criterion_cpf4_cascade() {
  bool ok = true;
  const fs::path circuit_file = g_dir / "cpf4.json";
  ok &= expect(run_cli("library cpf --n 4 -o " + circuit_file.string()).exit_code == 0,
               "library cpf --n 4 should succeed");
  const RunResult compressed = run_cli("compress " + circuit_file.string() +
                                       " -k 2 --merge --verify -o " +
                                       (g_dir / "cpf4_q.json").string());
  ok &= expect(compressed.exit_code == 0, "compress -k 2 --merge --verify should exit 0");
  if (!ok) return false;
  const json report = json::parse(compressed.out);
  ok &= expect(report["original"]["nonlocal"] == 13, "original non-local count 13");
  ok &= expect(report["tilde"]["l1"] == 7, "7 crossing gates after compression");
  ok &= expect(report["merged_nonlocal"] == 1, "1 non-local gate after merging");
  ok &= expect(report["partition"]["internal_weight"] == 6, "internal weight 6");
  ok &= expect(report["bounds"]["lower"] == json::array({1, 13}), "lower bound exactly 1/13");
  ok &= expect(report["bounds"]["upper"] == json::array({7, 13}), "upper bound exactly 7/13");
  ok &= expect(report["verification"]["checked"] == true, "verification ran");
  ok &= expect(report["verification"]["max_residual"].get<double>() < 1e-9,
               "verification residual below 1e-9");
  const Circuit out_circuit = parse_circuit(slurp(g_dir / "cpf4_q.json"));
  ok &= expect(circuit_stats(out_circuit).n_nonlocal == 1,
               "written circuit file has 1 non-local gate");
  return ok;
}

// --- criterion 2: CPF(6) single-gate realization ----------------------------

bool criterion_cpf6_single_gate() {
  const Encoding encoding{{{0, 1, 2}, {3, 4, 5}}, {8, 8}};
  const auto result = verify_equivalence(
      cpf_unitary(6), controlled_on_level_gate(8, 7, cpf_unitary(3)), encoding, 1e-12);
  bool ok = expect(result.equal, "controlled-cpf(3) on two quocts equals cpf(6)");
  ok &= expect(result.residual < 1e-12, "residual below 1e-12");
  return ok;
}

// --- criterion 3: 2x2 cluster cascade ---------------------------------------

bool criterion_cluster22() {
  const Circuit circuit = cluster_state_circuit(2, 2);
  PipelineOptions options;
  options.k = 2;
  options.merge = true;
  const PipelineResult result = full_pipeline(circuit, options);

  bool ok = expect(result.report.original_nonlocal == 4, "4 two-qubit gates originally");
  ok &= expect(result.report.tilde_l1 == 2, "2 embedded gates");
  ok &= expect(result.report.merged_nonlocal && *result.report.merged_nonlocal == 1,
               "1 gate after merging");
  ok &= expect(result.report.bounds && result.report.bounds->lower == Rational{1, 4} &&
                   result.report.bounds->upper == Rational{1, 2},
               "bounds exactly (1/4, 1/2)");

  const Matrix* merged_gate = nullptr;
  for (const auto& gate : result.compressed.gates)
    if (gate.is_nonlocal()) merged_gate = &*gate.kind.matrix;
  ok &= expect(merged_gate != nullptr, "merged circuit keeps one two-qudit gate");
  if (merged_gate)
    ok &= expect(operator_schmidt_rank(*merged_gate, 4, 4) == 4,
                 "merged gate has operator Schmidt rank 4");

  const StateVector qudit_state = apply_circuit(result.compressed, zero_state({4, 4}));
  ok &= expect(std::abs(state_entropy(qudit_state, {0}) - 2.0) < 1e-9,
               "2.0 bits of entanglement across the ququart cut");

  const StateVector qubit_state = apply_circuit(circuit, zero_state({2, 2, 2, 2}));
  const Matrix e = encoding_isometry(result.encoding);
  const CVector expected = e * qubit_state.amps;
  ok &= expect((qudit_state.amps - expected).cwiseAbs().maxCoeff() < 1e-9,
               "compressed state equals E|G>");
  return ok;
}

// --- criterion 4: 3x3 cluster at k=3 ----------------------------------------

bool criterion_cluster33() {
  PipelineOptions options;
  options.k = 3;
  options.merge = true;
  const PipelineResult result = full_pipeline(cluster_state_circuit(3, 3), options);
  bool ok = expect(result.report.original_nonlocal == 12, "12 two-qubit gates originally");
  ok &= expect(result.report.tilde_l1 == 6, "6 embedded gates");
  ok &= expect(result.report.merged_nonlocal && *result.report.merged_nonlocal == 2,
               "2 two-quoct gates after merging");
  ok &= expect(result.report.contracted.dropped_weight == 6, "dropped weight 6");
  ok &= expect(result.report.tilde_l0 == 2, "two contracted qudit pairs");
  ok &= expect(result.report.verification.checked &&
                   result.report.verification.max_residual < 1e-9,
               "verified below 1e-9");
  return ok;
}

// --- criterion 5: partition combinatorics -----------------------------------

std::set<std::vector<std::vector<int>>> brute_force_partitions(int n, int k) {
  std::set<std::vector<std::vector<int>>> result;
  std::vector<int> assign(n, 0);
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= k;
  for (long long code = 0; code < total; ++code) {
    long long rem = code;
    for (int v = 0; v < n; ++v) {
      assign[v] = static_cast<int>(rem % k);
      rem /= k;
    }
    std::vector<std::vector<int>> groups(k);
    for (int v = 0; v < n; ++v) groups[assign[v]].push_back(v);
    bool balanced = true;
    for (const auto& group : groups)
      if (static_cast<int>(group.size()) != n / k) balanced = false;
    if (!balanced) continue;
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    result.insert(groups);
  }
  return result;
}

bool criterion_partition_combinatorics() {
  const auto partitions = enumerate_balanced_partitions(4, 2);
  bool ok = expect(partitions.size() == 3, "3 balanced bipartitions of 4 vertices");
  ok &= expect(partitions[0].groups == std::vector<std::vector<int>>{{0, 1}, {2, 3}} &&
                   partitions[1].groups == std::vector<std::vector<int>>{{0, 2}, {1, 3}} &&
                   partitions[2].groups == std::vector<std::vector<int>>{{0, 3}, {1, 2}},
               "the three expected bipartitions");
  for (const auto& [n, k, expected] :
       {std::tuple{6, 2, 10ULL}, {6, 3, 15ULL}, {8, 2, 35ULL}}) {
    ok &= expect(balanced_partition_count(n, k) == expected,
                 "closed form for (" + std::to_string(n) + "," + std::to_string(k) + ")");
    ok &= expect(enumerate_balanced_partitions(n, k).size() == expected,
                 "enumeration count for (" + std::to_string(n) + "," + std::to_string(k) + ")");
    ok &= expect(brute_force_partitions(n, k).size() == expected,
                 "brute-force oracle for (" + std::to_string(n) + "," + std::to_string(k) + ")");
  }
  return ok;
}

// --- criterion 6: bounds sandwich over random circuits ----------------------

Circuit random_mix_circuit(std::mt19937_64& rng, int n, int max_gates) {
  Circuit circuit;
  for (int w = 0; w < n; ++w) circuit.wires.push_back({w, 2});
  const int n_gates = static_cast<int>(rng() % (max_gates + 1));
  for (int g = 0; g < n_gates; ++g) {
    int u = static_cast<int>(rng() % n);
    int v = static_cast<int>(rng() % n);
    if (u == v) v = (v + 1) % n;
    const Kind kind = (rng() % 3 == 0) ? Kind::CZ : (rng() % 2 ? Kind::CNOT : Kind::CT);
    circuit.gates.push_back(make_gate(kind, {u, v}));
  }
  return circuit;
}

bool criterion_bounds_sandwich() {
  std::mt19937_64 rng(20240917);
  bool ok = true;
  for (int trial = 0; trial < 200 && ok; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);  // 2..8
    const Circuit circuit = random_mix_circuit(rng, n, 30);
    const WeightedGraph graph = build_interaction_graph(circuit);
    const Matrix u_qubit = circuit_unitary(circuit);

    // The weight identity over every balanced partition of every k.
    for (int k = 1; k <= n && ok; ++k) {
      if (n % k != 0) continue;
      for (const auto& partition : enumerate_balanced_partitions(n, k)) {
        const ContractedGraph contracted = contract_graph(graph, partition);
        ok &= expect(contracted.dropped_weight + contracted.l1() == graph.total_weight(),
                     "dropped + ||w~||_1 == ||w||_1 (trial " + std::to_string(trial) + ")");
        if (!ok) break;
      }
    }

    // Full compress/merge/verify over every balanced partition: all k when
    // the registers are small, one sampled k at n = 7, 8 to stay fast.
    std::vector<int> ks;
    if (n <= 6) {
      for (int k = 1; k <= n; ++k)
        if (n % k == 0) ks.push_back(k);
    } else {
      std::vector<int> divisors;
      for (int k = 2; k <= n; ++k)
        if (n % k == 0) divisors.push_back(k);
      ks.push_back(divisors[rng() % divisors.size()]);
    }
    for (int k : ks) {
      if (!ok) break;
      for (const auto& partition : enumerate_balanced_partitions(n, k)) {
        const ContractedGraph contracted = contract_graph(graph, partition);
        const Encoding encoding = make_encoding(partition);
        const Circuit compressed = compress(circuit, encoding);
        const Circuit merged = merge_pass(compressed);
        const long long merged_nonlocal = circuit_stats(merged).n_nonlocal;
        ok &= expect(circuit_stats(compressed).n_nonlocal == contracted.l1(),
                     "compressed non-local count equals ||w~||_1");
        ok &= expect(merged_nonlocal >= contracted.l0() && merged_nonlocal <= contracted.l1(),
                     "merged count within [||w~||_0, ||w~||_1]");
        ok &= expect(
            verify_equivalence(u_qubit, circuit_unitary(compressed), encoding, 1e-9).equal,
            "compressed circuit verifies at 1e-9");
        ok &= expect(verify_equivalence(u_qubit, circuit_unitary(merged), encoding, 1e-9).equal,
                     "merged circuit verifies at 1e-9");
        if (!ok) {
          detail("trial " + std::to_string(trial) + ", n=" + std::to_string(n) +
                 ", k=" + std::to_string(k));
          break;
        }
      }
    }
  }
  return ok;
}

// --- criterion 7: two-level-entanglement checks ------------------------------

bool criterion_schmidt_ranks() {
  bool ok = true;
  const Matrix cz = gate_unitary(make_gate(Kind::CZ, {0, 1}), {2, 2});
  const Matrix cnot = gate_unitary(make_gate(Kind::CNOT, {0, 1}), {2, 2});
  const Matrix ct = gate_unitary(make_gate(Kind::CT, {0, 1}), {2, 2});
  for (const auto& [name, u4] : {std::pair{"CZ", cz}, {"CNOT", cnot}, {"CT", ct}}) {
    for (int m_a = 1; m_a <= 3; ++m_a) {
      for (int m_b = 1; m_b <= 3; ++m_b) {
        for (int pos_a = 0; pos_a < m_a; ++pos_a) {
          for (int pos_b = 0; pos_b < m_b; ++pos_b) {
            const Matrix embedded = embed_two_qubit_gate(u4, pos_a, m_a, pos_b, m_b);
            const int rank = operator_schmidt_rank(embedded, 1 << m_a, 1 << m_b);
            ok &= expect(rank == 2, std::string("embedded ") + name + " rank 2 at (" +
                                        std::to_string(pos_a) + "/" + std::to_string(m_a) + "," +
                                        std::to_string(pos_b) + "/" + std::to_string(m_b) + ")");
          }
        }
      }
    }
  }
  ok &= expect(operator_schmidt_rank(controlled_on_level_gate(4, 3, cpf_unitary(2)), 4, 4) == 2,
               "controlled-on-level CZ has rank 2");
  const Matrix merged = embed_two_qubit_gate(cz, 1, 2, 1, 2) * embed_two_qubit_gate(cz, 0, 2, 0, 2);
  ok &= expect(operator_schmidt_rank(merged, 4, 4) == 4, "merged 2x2-cluster gate has rank 4");
  return ok;
}

// --- criterion 8: photonic estimator -----------------------------------------

bool criterion_photonic() {
  bool ok = expect(photonic_oam_bs_count(8, 8) == 10, "N(8,8) == 10");
  ok &= expect(photonic_oam_bs_count(2, 2) == 2, "N(2,2) == 2");
  const auto oracle = [](int x) {
    long long e = 0;
    while ((2LL << e) <= x) ++e;
    return e;
  };
  long long prev = -1;
  for (int d = 2; d <= 64 && ok; ++d) {
    for (int d2 = 2; d2 <= 64; ++d2) {
      const long long expected = 2 * (oracle(d - 1) + oracle(d2 - 1)) + 2;
      ok &= expect(photonic_oam_bs_count(d, d2) == expected,
                   "table oracle at (" + std::to_string(d) + "," + std::to_string(d2) + ")");
      if (!ok) break;
    }
    ok &= expect(photonic_oam_bs_count(d, d) >= prev, "monotone along the diagonal");
    prev = photonic_oam_bs_count(d, d);
  }
  ok &= expect(photonic_success_probability() == Rational{1, 4}, "success probability 1/4");
  ok &= expect(photonic_estimate(64, 3).success_probability == Rational{1, 4},
               "success probability independent of dimension");
  return ok;
}

// --- criterion 9: ion estimator -----------------------------------------------

bool criterion_ion() {
  const IonErrorModel model;
  const auto scenarios = ion_scenarios();
  const auto find = [&](const std::string& name) {
    for (const auto& s : scenarios)
      if (s.name == name) return s;
    throw std::runtime_error("missing scenario " + name);
  };
  const double qubit13 = *find("qubit-13").error(model);
  const double qudit1 = *find("qudit-1").error(model);
  bool ok = expect(std::abs(qubit13 - (1.0 - std::pow(0.99, 13))) < 1e-12,
                   "qubit-13 error equals 1 - 0.99^13");
  ok &= expect(std::abs(qudit1 - 0.04) < 1e-12, "qudit-1 error equals 0.04");
  return ok;
}

// --- criterion 10: heuristic quality -------------------------------------------

bool criterion_heuristic_quality() {
  bool ok = true;
  const WeightedGraph cpf4 = build_interaction_graph(cpf4_barenco_circuit().circuit);
  const WeightedGraph c22 = build_interaction_graph(cluster_state_circuit(2, 2));
  const WeightedGraph c33 = build_interaction_graph(cluster_state_circuit(3, 3));
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    ok &= expect(min_cut_heuristic(cpf4, 2, seed).cut_weight == 7,
                 "heuristic optimal on cpf4, seed " + std::to_string(seed));
    ok &= expect(min_cut_heuristic(c22, 2, seed).cut_weight == 2,
                 "heuristic optimal on 2x2 cluster, seed " + std::to_string(seed));
    ok &= expect(min_cut_heuristic(c33, 3, seed).cut_weight == 6,
                 "heuristic optimal on 3x3 cluster, seed " + std::to_string(seed));
  }

  std::mt19937_64 rng(99);
  int trials = 0, matches = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 4 + 2 * static_cast<int>(rng() % 3);  // 4, 6, 8
    WeightedGraph graph;
    graph.n_vertices = n;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 2) graph.edges[{u, v}] = 1 + static_cast<long long>(rng() % 5);
    const int k = (n % 4 == 0 && rng() % 2) ? n / 2 : 2;
    const CutResult exact = min_cut_exact(graph, k);
    const CutResult heuristic = min_cut_heuristic(graph, k, rng());
    ok &= expect(heuristic.cut_weight >= exact.cut_weight, "heuristic never beats exact");
    ++trials;
    if (heuristic.cut_weight == exact.cut_weight) ++matches;
  }
  ok &= expect(matches * 10 >= trials * 9,
               "heuristic matched exact in " + std::to_string(matches) + "/" +
                   std::to_string(trials) + " trials (need 90%)");
  return ok;
}

// --- criterion 11: CLI determinism ---------------------------------------------

bool criterion_determinism() {
  bool ok = true;
  const fs::path in = g_dir / "det_in.json";
  ok &= expect(run_cli("library cluster --rows 2 --cols 3 -o " + in.string()).exit_code == 0,
               "library emits the input circuit");
  const RunResult a = run_cli("compress " + in.string() + " -k 2 --merge -o " +
                              (g_dir / "det_a.json").string());
  const RunResult b = run_cli("compress " + in.string() + " -k 2 --merge -o " +
                              (g_dir / "det_b.json").string());
  ok &= expect(a.exit_code == 0 && b.exit_code == 0, "compress runs succeed");
  ok &= expect(a.out == b.out, "reports byte-identical");
  ok &= expect(slurp(g_dir / "det_a.json") == slurp(g_dir / "det_b.json"),
               "circuit files byte-identical");
  const RunResult r1 = run_cli("analyze " + in.string() + " -k 2");
  const RunResult r2 = run_cli("analyze " + in.string() + " -k 2");
  ok &= expect(r1.out == r2.out, "analyze reports byte-identical");
  return ok;
}

struct Criterion {
  int id;
  const char* label;
  bool (*check)();
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: qdc_acceptance <path-to-qdc-cli>\n";
    return 2;
  }
  g_cli = argv[1];
  g_dir = fs::temp_directory_path() / "qdc_acceptance";
  fs::remove_all(g_dir);
  fs::create_directories(g_dir);

  const Criterion criteria[] = {
      {1, "CPF(4) cascade 13 -> 7 -> 1 with exact bounds (1/13, 7/13)", criterion_cpf4_cascade},
      {2, "CPF(6) as one controlled-CPF(3) on two quocts", criterion_cpf6_single_gate},
      {3, "2x2 cluster cascade 4 -> 2 -> 1, rank 4, 2.0 ebits", criterion_cluster22},
      {4, "3x3 cluster at k=3: 12 -> 6 -> 2, dropped weight 6", criterion_cluster33},
      {5, "balanced-partition combinatorics vs closed form and oracle",
       criterion_partition_combinatorics},
      {6, "bounds sandwich and verification on 200 random circuits", criterion_bounds_sandwich},
      {7, "operator Schmidt ranks: embedded gates 2, merged cluster gate 4",
       criterion_schmidt_ranks},
      {8, "photonic OAM-BS counts and constant 1/4 success", criterion_photonic},
      {9, "ion error estimates 1-0.99^13 and 0.04", criterion_ion},
      {10, "heuristic partitioner matches the exact optimum", criterion_heuristic_quality},
      {11, "byte-identical CLI reports and circuit files", criterion_determinism},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    g_detail.str("");
    bool ok = false;
    try {
      ok = criterion.check();
    } catch (const std::exception& e) {
      detail(std::string("exception: ") + e.what());
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion.id << ": "
              << criterion.label << "\n";
    if (!ok) {
      std::cout << g_detail.str();
      ++failures;
    }
  }
  if (failures > 0) std::cout << failures << " criterion(s) failed\n";
  return failures == 0 ? 0 : 1;
}
