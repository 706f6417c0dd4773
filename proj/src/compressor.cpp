#include "qdc/compressor.hpp"

#include "qdc/simulator.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace qdc {

Rational make_rational(long long num, long long den) {
  if (den == 0) throw InputError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  return {num, den};
}

CompressionBounds compression_bounds(const WeightedGraph& graph, const Partition& partition) {
  const long long total = graph.total_weight();
  if (total == 0)
    throw InputError("degenerate: the circuit has no non-local gates, bounds are undefined");
  const ContractedGraph contracted = contract_graph(graph, partition);
  return {make_rational(contracted.l0(), total), make_rational(contracted.l1(), total)};
}

Encoding make_encoding(const Partition& partition, const std::vector<int>& dims_override) {
  Encoding encoding;
  encoding.groups = partition.groups;
  for (auto& group : encoding.groups) std::sort(group.begin(), group.end());
  if (!dims_override.empty() && dims_override.size() != encoding.groups.size())
    throw InputError("dims override must list one dimension per group");
  for (size_t i = 0; i < encoding.groups.size(); ++i) {
    const long long comp = 1LL << encoding.groups[i].size();
    if (dims_override.empty()) {
      encoding.qudit_dims.push_back(static_cast<int>(comp));
    } else {
      if (dims_override[i] < comp)
        throw InputError("qudit dimension " + std::to_string(dims_override[i]) +
                         " too small for a group of " + std::to_string(encoding.groups[i].size()) +
                         " qubits");
      encoding.qudit_dims.push_back(dims_override[i]);
    }
  }
  return encoding;
}

namespace {

inline int bit_at(long long x, int pos, int m) { return static_cast<int>((x >> (m - 1 - pos)) & 1); }

inline long long with_bit(long long x, int pos, int m, int bit) {
  const long long mask = 1LL << (m - 1 - pos);
  return bit ? (x | mask) : (x & ~mask);
}

// U2 acting on qubit `pos` of an m-qubit group (big-endian), on 2^m levels.
Matrix embed_one_in_group(const Matrix& u2, int pos, int m) {
  const long long dim = 1LL << m;
  Matrix out = Matrix::Zero(dim, dim);
  for (long long j = 0; j < dim; ++j) {
    const int jb = bit_at(j, pos, m);
    for (int rb = 0; rb < 2; ++rb) out(with_bit(j, pos, m, rb), j) = u2(rb, jb);
  }
  return out;
}

// U4 acting on qubits (pos_a, pos_b) of an m-qubit group, first factor major.
Matrix embed_pair_in_group(const Matrix& u4, int pos_a, int pos_b, int m) {
  const long long dim = 1LL << m;
  Matrix out = Matrix::Zero(dim, dim);
  for (long long j = 0; j < dim; ++j) {
    const int ja = bit_at(j, pos_a, m);
    const int jb = bit_at(j, pos_b, m);
    for (int ra = 0; ra < 2; ++ra) {
      for (int rb = 0; rb < 2; ++rb) {
        const long long i = with_bit(with_bit(j, pos_a, m, ra), pos_b, m, rb);
        out(i, j) = u4((ra << 1) | rb, (ja << 1) | jb);
      }
    }
  }
  return out;
}

// Pads a 2^m computational-subspace operator with identity on aux levels.
Matrix extend_to_dim(const Matrix& comp, int dim) {
  if (comp.rows() == dim) return comp;
  Matrix out = Matrix::Identity(dim, dim);
  out.block(0, 0, comp.rows(), comp.cols()) = comp;
  return out;
}

// Pads a two-register computational operator (2^{m_a} x 2^{m_b} levels) to
// (d_a, d_b), identity whenever either register sits in an aux level.
Matrix extend_two_to_dims(const Matrix& comp, int m_a, int m_b, int d_a, int d_b) {
  const long long ca = 1LL << m_a;
  const long long cb = 1LL << m_b;
  if (ca == d_a && cb == d_b) return comp;
  const long long dim = static_cast<long long>(d_a) * d_b;
  Matrix out = Matrix::Zero(dim, dim);
  for (long long ia = 0; ia < d_a; ++ia)
    for (long long ib = 0; ib < d_b; ++ib)
      if (ia >= ca || ib >= cb) out(ia * d_b + ib, ia * d_b + ib) = 1.0;
  for (long long ja = 0; ja < ca; ++ja)
    for (long long jb = 0; jb < cb; ++jb)
      for (long long ia = 0; ia < ca; ++ia)
        for (long long ib = 0; ib < cb; ++ib)
          out(ia * d_b + ib, ja * d_b + jb) = comp(ia * cb + ib, ja * cb + jb);
  return out;
}

Matrix swap_tensor_factors(const Matrix& m, int d_first, int d_second) {
  Matrix out(m.rows(), m.cols());
  for (int ia = 0; ia < d_first; ++ia)
    for (int ib = 0; ib < d_second; ++ib)
      for (int ja = 0; ja < d_first; ++ja)
        for (int jb = 0; jb < d_second; ++jb)
          out(ib * d_first + ia, jb * d_first + ja) = m(ia * d_second + ib, ja * d_second + jb);
  return out;
}

Gate custom_gate(std::vector<int> wires, Matrix m) {
  Gate gate;
  gate.kind.name = Kind::CustomMatrix;
  gate.kind.matrix = std::move(m);
  gate.wires = std::move(wires);
  return gate;
}

}  // namespace

Matrix embed_two_qubit_gate(const Matrix& u4, int pos_a, int m_a, int pos_b, int m_b) {
  if (u4.rows() != 4 || u4.cols() != 4) throw InputError("embedded gate must be 4x4");
  if (pos_a < 0 || pos_a >= m_a || pos_b < 0 || pos_b >= m_b)
    throw InputError("qubit position outside its group");
  const long long da = 1LL << m_a;
  const long long db = 1LL << m_b;
  Matrix out = Matrix::Zero(da * db, da * db);
  for (long long ja = 0; ja < da; ++ja) {
    const int ba = bit_at(ja, pos_a, m_a);
    for (long long jb = 0; jb < db; ++jb) {
      const int bb = bit_at(jb, pos_b, m_b);
      const long long col = ja * db + jb;
      for (int ra = 0; ra < 2; ++ra) {
        for (int rb = 0; rb < 2; ++rb) {
          const long long row = with_bit(ja, pos_a, m_a, ra) * db + with_bit(jb, pos_b, m_b, rb);
          out(row, col) = u4((ra << 1) | rb, (ba << 1) | bb);
        }
      }
    }
  }
  return out;
}

Circuit compress(const Circuit& circuit, const Encoding& encoding) {
  for (const auto& wire : circuit.wires)
    if (wire.dim != 2) throw InputError("compress requires an all-qubit circuit");

  const int n = circuit.n_wires();
  if (encoding.n_qubits() != n) throw InputError("encoding does not cover the circuit's wires");
  std::vector<int> group_of(n, -1), pos_of(n, -1);
  for (size_t g = 0; g < encoding.groups.size(); ++g) {
    for (size_t p = 0; p < encoding.groups[g].size(); ++p) {
      const int q = encoding.groups[g][p];
      if (q < 0 || q >= n || group_of[q] != -1)
        throw InputError("encoding does not partition the circuit's wires");
      group_of[q] = static_cast<int>(g);
      pos_of[q] = static_cast<int>(p);
    }
  }

  Circuit out;
  for (size_t g = 0; g < encoding.groups.size(); ++g)
    out.wires.push_back({static_cast<int>(g), encoding.qudit_dims[g]});
  out.metadata = circuit.metadata;

  for (const auto& gate : circuit.gates) {
    std::vector<int> dims2(gate.wires.size(), 2);
    const Matrix u = gate_unitary(gate, dims2);
    if (gate.is_local()) {
      const int q = gate.wires[0];
      const int g = group_of[q];
      const int m = static_cast<int>(encoding.groups[g].size());
      Matrix emb = extend_to_dim(embed_one_in_group(u, pos_of[q], m), encoding.qudit_dims[g]);
      out.gates.push_back(custom_gate({g}, std::move(emb)));
      continue;
    }
    const int qa = gate.wires[0];
    const int qb = gate.wires[1];
    const int ga = group_of[qa];
    const int gb = group_of[qb];
    if (ga == gb) {
      const int m = static_cast<int>(encoding.groups[ga].size());
      Matrix emb = extend_to_dim(embed_pair_in_group(u, pos_of[qa], pos_of[qb], m),
                                 encoding.qudit_dims[ga]);
      out.gates.push_back(custom_gate({ga}, std::move(emb)));
    } else {
      // Two-qudit gates are listed with ascending qudit wires.
      const int m_first = static_cast<int>(encoding.groups[std::min(ga, gb)].size());
      const int m_second = static_cast<int>(encoding.groups[std::max(ga, gb)].size());
      Matrix comp;
      if (ga < gb) {
        comp = embed_two_qubit_gate(u, pos_of[qa], m_first, pos_of[qb], m_second);
      } else {
        comp = embed_two_qubit_gate(swap_tensor_factors(u, 2, 2), pos_of[qb], m_first,
                                    pos_of[qa], m_second);
      }
      Matrix emb = extend_two_to_dims(comp, m_first, m_second,
                                      encoding.qudit_dims[std::min(ga, gb)],
                                      encoding.qudit_dims[std::max(ga, gb)]);
      out.gates.push_back(custom_gate({std::min(ga, gb), std::max(ga, gb)}, std::move(emb)));
    }
  }
  return out;
}

namespace {

struct WorkGate {
  std::vector<int> wires;  // ascending for two-wire gates
  Matrix m;
  bool diagonal = false;
  bool touched = false;
  Gate original;
};

bool matrix_is_diagonal(const Matrix& m) {
  for (long c = 0; c < m.cols(); ++c)
    for (long r = 0; r < m.rows(); ++r)
      if (r != c && m(r, c) != 0.0) return false;
  return true;
}

bool wires_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  for (int w : a)
    for (int v : b)
      if (w == v) return false;
  return true;
}

// Product computed with a fast path when a factor is a generalized
// permutation (one nonzero per column); identical values to the dense GEMM.
Matrix matrix_product(const Matrix& a, const Matrix& b) {
  const long n = a.rows();
  const auto perm_cols = [n](const Matrix& m, std::vector<int>& row_of, std::vector<Complex>& val) {
    row_of.assign(n, -1);
    val.assign(n, Complex(0, 0));
    std::vector<bool> row_hit(n, false);
    for (long c = 0; c < n; ++c) {
      for (long r = 0; r < n; ++r) {
        if (m(r, c) != 0.0) {
          if (row_of[c] >= 0) return false;
          row_of[c] = static_cast<int>(r);
          val[c] = m(r, c);
        }
      }
      if (row_of[c] < 0) return false;
      if (row_hit[row_of[c]]) return false;
      row_hit[row_of[c]] = true;
    }
    return true;
  };
  std::vector<int> row_of;
  std::vector<Complex> val;
  if (perm_cols(b, row_of, val)) {
    Matrix out(n, n);
    for (long c = 0; c < n; ++c) out.col(c) = val[c] * a.col(row_of[c]);
    return out;
  }
  if (perm_cols(a, row_of, val)) {
    Matrix out = Matrix::Zero(n, n);
    for (long c = 0; c < n; ++c) out.row(row_of[c]) = val[c] * b.row(c);
    return out;
  }
  return a * b;
}

Matrix embed_local_into_pair(const WorkGate& local, const std::vector<int>& pair_wires,
                             int d_first, int d_second) {
  const long long dim = static_cast<long long>(d_first) * d_second;
  Matrix out = Matrix::Zero(dim, dim);
  if (local.wires[0] == pair_wires[0]) {
    // local.m (x) I
    for (int ia = 0; ia < d_first; ++ia)
      for (int ja = 0; ja < d_first; ++ja)
        for (int b = 0; b < d_second; ++b)
          out(static_cast<long long>(ia) * d_second + b,
              static_cast<long long>(ja) * d_second + b) = local.m(ia, ja);
  } else {
    // I (x) local.m
    for (int a = 0; a < d_first; ++a)
      for (int ib = 0; ib < d_second; ++ib)
        for (int jb = 0; jb < d_second; ++jb)
          out(static_cast<long long>(a) * d_second + ib,
              static_cast<long long>(a) * d_second + jb) = local.m(ib, jb);
  }
  return out;
}

bool can_commute(const WorkGate& a, const WorkGate& b) {
  return wires_disjoint(a.wires, b.wires) || (a.diagonal && b.diagonal);
}

// One left-to-right pass. Each non-local gate walks back over the output,
// absorbing blocking local gates speculatively; the walk commits only when
// it reaches a same-pair gate to merge with.
bool merge_stream(std::vector<WorkGate>& gates, const std::vector<int>& dims) {
  bool changed = false;
  std::vector<WorkGate> out;
  out.reserve(gates.size());
  for (auto& gate : gates) {
    if (gate.wires.size() != 2) {
      out.push_back(std::move(gate));
      continue;
    }
    WorkGate moving = gate;
    std::vector<size_t> absorbed;
    bool merged = false;
    for (size_t t = out.size(); t-- > 0;) {
      WorkGate& h = out[t];
      if (h.wires.size() == 2 && h.wires == moving.wires) {
        h.m = matrix_product(moving.m, h.m);
        h.diagonal = matrix_is_diagonal(h.m);
        h.touched = true;
        // `absorbed` holds descending positions, all above t; erase in order.
        for (size_t idx : absorbed) out.erase(out.begin() + static_cast<long>(idx));
        merged = true;
        break;
      }
      if (can_commute(h, moving)) continue;
      if (h.wires.size() == 1 && !wires_disjoint(h.wires, moving.wires)) {
        // h ends up adjacent before `moving`; fold it in.
        moving.m = matrix_product(moving.m,
                                  embed_local_into_pair(h, moving.wires, dims[moving.wires[0]],
                                                        dims[moving.wires[1]]));
        moving.diagonal = matrix_is_diagonal(moving.m);
        moving.touched = true;
        absorbed.push_back(t);
        continue;
      }
      break;
    }
    if (merged) {
      changed = true;
    } else {
      out.push_back(std::move(gate));
    }
  }
  gates = std::move(out);
  return changed;
}

// Folds remaining local gates into a reachable adjacent two-qudit gate on
// the same wire (backward first, then forward).
bool absorb_locals(std::vector<WorkGate>& gates, const std::vector<int>& dims) {
  bool changed = false;
  for (size_t p = 0; p < gates.size();) {
    if (gates[p].wires.size() != 1) {
      ++p;
      continue;
    }
    const WorkGate local = gates[p];
    bool done = false;
    for (size_t t = p; t-- > 0;) {
      if (gates[t].wires.size() == 2 && !wires_disjoint(gates[t].wires, local.wires)) {
        gates[t].m = matrix_product(
            embed_local_into_pair(local, gates[t].wires, dims[gates[t].wires[0]],
                                  dims[gates[t].wires[1]]),
            gates[t].m);
        gates[t].diagonal = matrix_is_diagonal(gates[t].m);
        gates[t].touched = true;
        done = true;
        break;
      }
      if (!can_commute(gates[t], local)) break;
    }
    if (!done) {
      for (size_t t = p + 1; t < gates.size(); ++t) {
        if (gates[t].wires.size() == 2 && !wires_disjoint(gates[t].wires, local.wires)) {
          gates[t].m = matrix_product(
              gates[t].m, embed_local_into_pair(local, gates[t].wires, dims[gates[t].wires[0]],
                                                dims[gates[t].wires[1]]));
          gates[t].diagonal = matrix_is_diagonal(gates[t].m);
          gates[t].touched = true;
          done = true;
          break;
        }
        if (!can_commute(gates[t], local)) break;
      }
    }
    if (done) {
      gates.erase(gates.begin() + static_cast<long>(p));
      changed = true;
    } else {
      ++p;
    }
  }
  return changed;
}

}  // namespace

Circuit merge_pass(const Circuit& circuit, bool absorb_local) {
  const auto dims = circuit.wire_dims();
  std::vector<WorkGate> gates;
  gates.reserve(circuit.gates.size());
  for (const auto& gate : circuit.gates) {
    WorkGate work;
    work.original = gate;
    work.wires = gate.wires;
    std::vector<int> gate_dims;
    for (int w : gate.wires) gate_dims.push_back(dims[w]);
    work.m = gate_unitary(gate, gate_dims);
    if (work.wires.size() == 2 && work.wires[0] > work.wires[1]) {
      work.m = swap_tensor_factors(work.m, gate_dims[0], gate_dims[1]);
      std::swap(work.wires[0], work.wires[1]);
      work.touched = true;
    }
    work.diagonal = matrix_is_diagonal(work.m);
    gates.push_back(std::move(work));
  }

  while (true) {
    bool changed = merge_stream(gates, dims);
    if (absorb_local) changed = absorb_locals(gates, dims) || changed;
    if (!changed) break;
  }

  Circuit out;
  out.wires = circuit.wires;
  out.metadata = circuit.metadata;
  for (auto& work : gates) {
    if (work.touched) {
      out.gates.push_back(custom_gate(work.wires, std::move(work.m)));
    } else {
      out.gates.push_back(std::move(work.original));
    }
  }
  return out;
}

CompressionReport analyze_circuit(const Circuit& circuit, const PipelineOptions& options) {
  validate_circuit(circuit);
  const int n = circuit.n_wires();
  if (options.k < 1 || n == 0 || n % options.k != 0)
    throw InfeasibleError("k must divide the number of wires");

  const WeightedGraph graph = build_interaction_graph(circuit);

  PipelineOptions::Method method = options.method;
  if (method == PipelineOptions::Method::automatic) {
    method = balanced_partition_count(n, options.k) <= kMaxEnumeratedPartitions
                 ? PipelineOptions::Method::exact
                 : PipelineOptions::Method::heuristic;
  }
  const CutResult cut = method == PipelineOptions::Method::exact
                            ? min_cut_exact(graph, options.k)
                            : min_cut_heuristic(graph, options.k, options.seed);

  CompressionReport report;
  report.original_nonlocal = graph.total_weight();
  report.graph = graph;
  report.partition = cut.partition;
  report.cut_weight = cut.cut_weight;
  report.internal_weight = cut.internal_weight;
  report.method = cut.optimality;
  report.contracted = contract_graph(graph, cut.partition);
  report.tilde_l0 = report.contracted.l0();
  report.tilde_l1 = report.contracted.l1();
  if (report.original_nonlocal > 0) report.bounds = compression_bounds(graph, cut.partition);
  return report;
}

PipelineResult full_pipeline(const Circuit& circuit, const PipelineOptions& options) {
  CompressionReport report = analyze_circuit(circuit, options);

  const Encoding encoding = make_encoding(report.partition, options.dims_override);
  Circuit compressed = compress(circuit, encoding);
  Circuit final_circuit = options.merge ? merge_pass(compressed, options.absorb_local) : compressed;
  if (options.merge) report.merged_nonlocal = circuit_stats(final_circuit).n_nonlocal;

  long long qudit_dim = 1;
  for (int d : encoding.qudit_dims) qudit_dim *= d;
  if (circuit.total_dim() <= kMaxSimDim && qudit_dim <= kMaxSimDim) {
    const Matrix u_qubit = circuit_unitary(circuit);
    double residual = verify_equivalence(u_qubit, circuit_unitary(compressed), encoding,
                                         options.tol)
                          .residual;
    if (options.merge) {
      residual = std::max(residual, verify_equivalence(u_qubit, circuit_unitary(final_circuit),
                                                       encoding, options.tol)
                                        .residual);
    }
    report.verification = {true, residual};
  } else {
    report.verification = {false, 0.0};
  }

  return {std::move(report), std::move(final_circuit), encoding};
}

namespace {

nlohmann::ordered_json graph_to_json(int n, const std::map<std::pair<int, int>, long long>& edges) {
  nlohmann::ordered_json j;
  j["n"] = n;
  nlohmann::ordered_json edge_list = nlohmann::ordered_json::array();
  for (const auto& [pair, w] : edges)
    edge_list.push_back({{"u", pair.first}, {"v", pair.second}, {"w", w}});
  j["edges"] = std::move(edge_list);
  return j;
}

}  // namespace

std::string report_to_json(const CompressionReport& report) {
  nlohmann::ordered_json j;
  j["original"] = {{"nonlocal", report.original_nonlocal},
                   {"graph", graph_to_json(report.graph.n_vertices, report.graph.edges)}};
  j["partition"] = {{"groups", report.partition.groups},
                    {"cut_weight", report.cut_weight},
                    {"internal_weight", report.internal_weight},
                    {"method", report.method == Optimality::exact ? "exact" : "heuristic"}};
  j["tilde"] = {{"l0", report.tilde_l0},
                {"l1", report.tilde_l1},
                {"dropped_weight", report.contracted.dropped_weight},
                {"graph", graph_to_json(report.contracted.n_qudits, report.contracted.edges)}};
  if (report.bounds) {
    j["bounds"] = {{"lower", {report.bounds->lower.num, report.bounds->lower.den}},
                   {"upper", {report.bounds->upper.num, report.bounds->upper.den}}};
  } else {
    j["bounds"] = nullptr;
  }
  j["merged_nonlocal"] = report.merged_nonlocal ? nlohmann::ordered_json(*report.merged_nonlocal)
                                                : nlohmann::ordered_json(nullptr);
  j["verification"] = {{"max_residual", report.verification.max_residual},
                       {"checked", report.verification.checked}};
  return j.dump(2) + "\n";
}

}  // namespace qdc
