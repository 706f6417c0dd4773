#include "qdc/gate_library.hpp"

namespace qdc {

Matrix cpf_unitary(int n_qubits) {
  if (n_qubits < 2) throw InputError("the controlled phase flip needs at least 2 qubits");
  if (n_qubits > 12) throw InfeasibleError("cpf_unitary capped at 12 qubits");
  const long long dim = 1LL << n_qubits;
  Matrix u = Matrix::Identity(dim, dim);
  u(dim - 1, dim - 1) = -1.0;
  return u;
}

namespace {

Gate named_gate(Kind kind, std::vector<int> wires) {
  Gate gate;
  gate.kind.name = kind;
  gate.wires = std::move(wires);
  return gate;
}

}  // namespace

DecompositionRecipe cpf4_barenco_circuit() {
  // Parity ladder: each CT/CTdag contributes a quarter-turn phase on the
  // parity currently carried by its control wire, with CNOTs rewriting those
  // parities. The net target phase is
  //   x0 + x1 + x2 - (x0^x1) - (x1^x2) - (x0^x2) + (x0^x1^x2) = 4*x0*x1*x2
  // quarter-turns, i.e. a phase flip exactly on |1111>.
  Circuit circuit;
  for (int w = 0; w < 4; ++w) circuit.wires.push_back({w, 2});
  circuit.gates = {
      named_gate(Kind::CT, {0, 3}),    named_gate(Kind::CNOT, {0, 1}),
      named_gate(Kind::CTdag, {1, 3}), named_gate(Kind::CNOT, {0, 1}),
      named_gate(Kind::CT, {1, 3}),    named_gate(Kind::CNOT, {1, 2}),
      named_gate(Kind::CTdag, {2, 3}), named_gate(Kind::CNOT, {0, 2}),
      named_gate(Kind::CT, {2, 3}),    named_gate(Kind::CNOT, {1, 2}),
      named_gate(Kind::CTdag, {2, 3}), named_gate(Kind::CNOT, {0, 2}),
      named_gate(Kind::CT, {2, 3}),
  };
  circuit.metadata["name"] = "cpf4-barenco";

  DecompositionRecipe recipe;
  recipe.name = "cpf4-barenco";
  recipe.target = "cpf(4)";
  recipe.circuit = std::move(circuit);
  recipe.claimed_nonlocal_count = 13;
  return recipe;
}

Circuit cluster_state_circuit(int rows, int cols) {
  if (rows < 1 || cols < 1) throw InputError("cluster grid must be at least 1x1");
  if (rows * cols > 12) throw InfeasibleError("cluster_state_circuit capped at 12 qubits");

  Circuit circuit;
  const auto at = [cols](int r, int c) { return r * cols + c; };
  for (int w = 0; w < rows * cols; ++w) {
    circuit.wires.push_back({w, 2});
    circuit.gates.push_back(named_gate(Kind::H, {w}));
  }
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c + 1 < cols; ++c)
      circuit.gates.push_back(named_gate(Kind::CZ, {at(r, c), at(r, c + 1)}));
  for (int r = 0; r + 1 < rows; ++r)
    for (int c = 0; c < cols; ++c)
      circuit.gates.push_back(named_gate(Kind::CZ, {at(r, c), at(r + 1, c)}));
  circuit.metadata["name"] = "cluster-" + std::to_string(rows) + "x" + std::to_string(cols);
  return circuit;
}

Matrix controlled_on_level_gate(int control_dim, int level, const Matrix& v) {
  if (control_dim < 2) throw InputError("control dimension must be at least 2");
  if (level < 0 || level >= control_dim) throw InputError("control level out of range");
  if (v.rows() != v.cols() || v.rows() < 1) throw InputError("target unitary must be square");
  const long long dt = v.rows();
  const long long dim = control_dim * dt;
  Matrix u = Matrix::Identity(dim, dim);
  u.block(level * dt, level * dt, dt, dt) = v;
  return u;
}

Matrix cyclic_shift(int dim, int shift) {
  if (dim < 2) throw InputError("cyclic shift needs dimension at least 2");
  Matrix u = Matrix::Zero(dim, dim);
  const int s = ((shift % dim) + dim) % dim;
  for (int c = 0; c < dim; ++c) u((c + s) % dim, c) = 1.0;
  return u;
}

}  // namespace qdc
