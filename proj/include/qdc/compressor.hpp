#pragma once

#include "qdc/circuit.hpp"
#include "qdc/encoding.hpp"
#include "qdc/interaction_graph.hpp"
#include "qdc/partitioner.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace qdc {

/// Exact reduced fraction, denominator positive.
struct Rational {
  long long num = 0;
  long long den = 1;

  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(long long num, long long den);

/// Compression-ratio bounds: the number of contracted qudit pairs and the
/// surviving crossing-gate count, both over the original non-local count.
struct CompressionBounds {
  Rational lower;
  Rational upper;
};

/// Throws InputError when the graph carries no weight (degenerate case).
CompressionBounds compression_bounds(const WeightedGraph& graph, const Partition& partition);

/// Canonical binary encoding of each group into one qudit. `dims_override`
/// (if non-empty) must provide one dimension >= 2^group_size per group,
/// e.g. {5, 5} for two-qubit groups with one auxiliary level each.
Encoding make_encoding(const Partition& partition, const std::vector<int>& dims_override = {});

/// Rewrites an all-qubit circuit onto the encoding's qudit register:
/// single-qubit and intra-group gates become single-qudit gates, cross-group
/// gates become embedded two-qudit gates. Gate order is preserved.
Circuit compress(const Circuit& circuit, const Encoding& encoding);

/// The 2^{m_a} * 2^{m_b} unitary acting as `u4` on qubit factors pos_a of
/// register A and pos_b of register B (big-endian positions), identity on
/// all spectator factors.
Matrix embed_two_qubit_gate(const Matrix& u4, int pos_a, int m_a, int pos_b, int m_b);

/// Fixpoint pass combining two-qudit gates on the same qudit pair, commuting
/// gates only when they have disjoint support or are both diagonal. Local
/// gates are absorbed into an adjacent two-qudit gate when that enables a
/// merge, or unconditionally when `absorb_local` is set. The circuit unitary
/// is preserved exactly.
Circuit merge_pass(const Circuit& circuit, bool absorb_local = false);

struct VerificationInfo {
  bool checked = false;
  double max_residual = 0.0;
};

struct CompressionReport {
  long long original_nonlocal = 0;  // ||w||_1
  WeightedGraph graph;
  Partition partition;
  long long cut_weight = 0;
  long long internal_weight = 0;
  Optimality method = Optimality::exact;
  ContractedGraph contracted;
  long long tilde_l0 = 0;
  long long tilde_l1 = 0;
  std::optional<CompressionBounds> bounds;       // nullopt when degenerate
  std::optional<long long> merged_nonlocal;      // nullopt when merge skipped
  VerificationInfo verification;
};

/// Canonical JSON for the report (deterministic byte-for-byte).
std::string report_to_json(const CompressionReport& report);

struct PipelineOptions {
  enum class Method { automatic, exact, heuristic };

  int k = 2;
  bool merge = false;
  bool absorb_local = false;
  Method method = Method::automatic;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::vector<int> dims_override;
};

struct PipelineResult {
  CompressionReport report;
  Circuit compressed;  // post-merge when options.merge is set
  Encoding encoding;
};

/// Graph, partition, and bounds stages only (the `analyze` surface);
/// verification is reported as unchecked.
CompressionReport analyze_circuit(const Circuit& circuit, const PipelineOptions& options);

/// Graph build, partition, bounds, compression, optional merge, and exact
/// verification (mandatory below total dimension 2^12, skipped above).
PipelineResult full_pipeline(const Circuit& circuit, const PipelineOptions& options);

}  // namespace qdc
