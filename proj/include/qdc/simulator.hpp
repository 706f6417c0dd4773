#pragma once

#include "qdc/circuit.hpp"
#include "qdc/encoding.hpp"

#include <vector>

namespace qdc {

// Exact dense simulation is capped at this total dimension.
inline constexpr long long kMaxSimDim = 1LL << 12;

struct StateVector {
  std::vector<int> dims;
  CVector amps;

  long long total_dim() const;
};

/// |0...0> over the given subsystem dimensions.
StateVector zero_state(const std::vector<int>& dims);

/// Applies `gate_matrix` to the subsystems listed in `positions` (matrix is
/// first-position major). Exact in-place update of the state.
void apply_gate(StateVector& state, const Matrix& gate_matrix,
                const std::vector<int>& positions);

StateVector apply_circuit(const Circuit& circuit, StateVector state);

/// Ordered product of all gate embeddings; empty circuit gives the identity.
Matrix circuit_unitary(const Circuit& circuit);

/// The (prod qudit_dims) x 2^n 0/1 isometry mapping each qubit basis state
/// to its qudit levels. Satisfies E^dag E = I exactly.
Matrix encoding_isometry(const Encoding& encoding);

struct EquivalenceResult {
  bool equal = false;
  double residual = 0.0;
};

/// Checks U_qudit E = e^{i phi} E U_qubit with the global phase aligned on
/// the largest-magnitude entry of U_qudit E.
EquivalenceResult verify_equivalence(const Matrix& u_qubit, const Matrix& u_qudit,
                                     const Encoding& encoding, double tol);

/// Number of singular values of the reshuffled operator above tol * sigma_max
/// across the (dim_a, dim_b) cut.
int operator_schmidt_rank(const Matrix& u, int dim_a, int dim_b, double tol = 1e-9);

/// Von Neumann entropy in bits of the reduced state on the subsystems in
/// `side_a`; eigenvalues below 1e-12 are dropped.
double state_entropy(const StateVector& state, const std::vector<int>& side_a);

bool is_unitary(const Matrix& m, double tol = kUnitaryTol);

/// Applies a gate matrix to every column of `u` (i.e. left-multiplies by the
/// gate's embedding). Exposed for pipeline verification.
void apply_gate_to_unitary(Matrix& u, const Matrix& gate_matrix,
                           const std::vector<int>& positions, const std::vector<int>& dims);

}  // namespace qdc
