#pragma once

#include <vector>

namespace qdc {

/// Assignment of qubit wires to qudit registers. Within each group the
/// qubits are listed most-significant first, so group (q0, q1) encodes
/// |b0 b1> as level b0*2 + b1 (canonical binary order). Dimensions may
/// exceed 2^group_size; the extra levels are auxiliary and identity-acted.
struct Encoding {
  std::vector<std::vector<int>> groups;
  std::vector<int> qudit_dims;

  int n_qudits() const { return static_cast<int>(groups.size()); }

  int n_qubits() const {
    int n = 0;
    for (const auto& group : groups) n += static_cast<int>(group.size());
    return n;
  }

  /// Computational-subspace size 2^m of group i.
  long long comp_dim(int i) const { return 1LL << groups[i].size(); }
};

}  // namespace qdc
