#pragma once

#include "qdc/circuit.hpp"

namespace qdc {

/// A reference circuit for a named target unitary together with its claimed
/// entangling-gate count.
struct DecompositionRecipe {
  std::string name;
  std::string target;
  Circuit circuit;
  long long claimed_nonlocal_count = 0;
};

/// N-qubit controlled phase flip: identity except a -1 phase on |1...1>.
/// N must be in [2, 12].
Matrix cpf_unitary(int n_qubits);

/// The 13-entangling-gate realization of the 4-qubit controlled phase flip:
/// 6 CNOTs and 7 controlled-T/Tdag gates in a parity ladder. Exactly equals
/// cpf_unitary(4), with no global phase.
DecompositionRecipe cpf4_barenco_circuit();

/// rows x cols 2D cluster-state preparation: one H per wire, then one CZ per
/// 4-neighbor grid edge (row-major, horizontal before vertical).
/// rows * cols must be at most 12.
Circuit cluster_state_circuit(int rows, int cols);

/// Block-diagonal two-qudit gate: applies `v` on the target iff the control
/// occupies |level>, identity otherwise.
Matrix controlled_on_level_gate(int control_dim, int level, const Matrix& v);

/// Permutation |n> -> |(n+shift) mod d>.
Matrix cyclic_shift(int dim, int shift);

}  // namespace qdc
