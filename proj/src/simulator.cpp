#include "qdc/simulator.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace qdc {

namespace {

// Generalized-permutation form of a gate matrix: exactly one nonzero per
// column. Products and applications of such gates need no summation, so the
// fast paths below are bit-identical to the dense ones.
struct PermForm {
  bool ok = false;
  std::vector<int> row_of;
  std::vector<Complex> val;
};

PermForm detect_perm(const Matrix& m) {
  PermForm form;
  const long n = m.rows();
  form.row_of.assign(n, -1);
  form.val.assign(n, Complex(0.0, 0.0));
  std::vector<bool> row_hit(n, false);
  for (long c = 0; c < n; ++c) {
    for (long r = 0; r < n; ++r) {
      if (m(r, c) != 0.0) {
        if (form.row_of[c] >= 0) return {};
        form.row_of[c] = static_cast<int>(r);
        form.val[c] = m(r, c);
      }
    }
    if (form.row_of[c] < 0) return {};
    if (row_hit[form.row_of[c]]) return {};  // not a bijection, use the dense path
    row_hit[form.row_of[c]] = true;
  }
  form.ok = true;
  return form;
}

std::vector<long long> wire_strides(const std::vector<int>& dims) {
  std::vector<long long> strides(dims.size());
  long long acc = 1;
  for (int w = static_cast<int>(dims.size()) - 1; w >= 0; --w) {
    strides[w] = acc;
    acc *= dims[w];
  }
  return strides;
}

// Applies a gate on the given wire positions to one column of amplitudes.
// `offsets` maps each gate-local basis index to its register offset;
// `cosets` lists the base indices with all gate digits zero. For
// generalized-permutation gates the action is flattened into a full-register
// row map so each column is one gather/scatter sweep.
struct GatePlan {
  std::vector<long long> offsets;
  std::vector<long long> cosets;
  PermForm perm;
  Matrix dense;
  std::vector<long long> row_map;
  std::vector<Complex> val_map;
};

GatePlan make_plan(const Matrix& gate_matrix, const std::vector<int>& positions,
                   const std::vector<int>& dims) {
  GatePlan plan;
  const auto strides = wire_strides(dims);
  long long total = 1;
  for (int d : dims) total *= d;

  long long gate_dim = 1;
  for (int p : positions) gate_dim *= dims[p];
  if (gate_matrix.rows() != gate_dim || gate_matrix.cols() != gate_dim)
    throw InputError("gate matrix does not match wire dimensions");

  plan.offsets.resize(gate_dim);
  for (long long g = 0; g < gate_dim; ++g) {
    long long rem = g;
    long long offset = 0;
    for (int i = static_cast<int>(positions.size()) - 1; i >= 0; --i) {
      const int d = dims[positions[i]];
      offset += (rem % d) * strides[positions[i]];
      rem /= d;
    }
    plan.offsets[g] = offset;
  }

  plan.cosets.reserve(total / gate_dim);
  for (long long idx = 0; idx < total; ++idx) {
    bool rep = true;
    for (int p : positions) {
      if ((idx / strides[p]) % dims[p] != 0) {
        rep = false;
        break;
      }
    }
    if (rep) plan.cosets.push_back(idx);
  }

  plan.perm = detect_perm(gate_matrix);
  if (plan.perm.ok) {
    // Gather form: out[i] = val_map[i] * in[row_map[i]], sequential writes.
    plan.row_map.resize(total);
    plan.val_map.resize(total);
    for (long long base : plan.cosets) {
      for (long long c = 0; c < gate_dim; ++c) {
        const long long out_idx = base + plan.offsets[plan.perm.row_of[c]];
        plan.row_map[out_idx] = base + plan.offsets[c];
        plan.val_map[out_idx] = plan.perm.val[c];
      }
    }
  } else {
    plan.dense = gate_matrix;
  }
  return plan;
}

void apply_plan(Complex* amps, const GatePlan& plan, std::vector<Complex>& scratch) {
  if (plan.perm.ok) {
    const size_t total = plan.row_map.size();
    scratch.resize(total);
    for (size_t i = 0; i < total; ++i) scratch[i] = plan.val_map[i] * amps[plan.row_map[i]];
    std::copy(scratch.begin(), scratch.end(), amps);
    return;
  }
  const size_t g = plan.offsets.size();
  scratch.resize(g);
  for (long long base : plan.cosets) {
    for (size_t r = 0; r < g; ++r) {
      Complex acc(0.0, 0.0);
      for (size_t c = 0; c < g; ++c) acc += plan.dense(r, c) * amps[base + plan.offsets[c]];
      scratch[r] = acc;
    }
    for (size_t r = 0; r < g; ++r) amps[base + plan.offsets[r]] = scratch[r];
  }
}

}  // namespace

long long StateVector::total_dim() const {
  long long dim = 1;
  for (int d : dims) dim *= d;
  return dim;
}

StateVector zero_state(const std::vector<int>& dims) {
  StateVector state;
  state.dims = dims;
  state.amps = CVector::Zero(state.total_dim());
  state.amps(0) = 1.0;
  return state;
}

void apply_gate(StateVector& state, const Matrix& gate_matrix,
                const std::vector<int>& positions) {
  const GatePlan plan = make_plan(gate_matrix, positions, state.dims);
  std::vector<Complex> scratch;
  apply_plan(state.amps.data(), plan, scratch);
}

void apply_gate_to_unitary(Matrix& u, const Matrix& gate_matrix,
                           const std::vector<int>& positions, const std::vector<int>& dims) {
  const GatePlan plan = make_plan(gate_matrix, positions, dims);
  std::vector<Complex> scratch;
  for (long c = 0; c < u.cols(); ++c) apply_plan(u.col(c).data(), plan, scratch);
}

StateVector apply_circuit(const Circuit& circuit, StateVector state) {
  const auto dims = circuit.wire_dims();
  if (dims != state.dims) throw InputError("state dimensions do not match circuit wires");
  for (const auto& gate : circuit.gates) {
    std::vector<int> gate_dims;
    for (int w : gate.wires) gate_dims.push_back(dims[w]);
    apply_gate(state, gate_unitary(gate, gate_dims), gate.wires);
  }
  return state;
}

Matrix circuit_unitary(const Circuit& circuit) {
  const long long dim = circuit.total_dim();
  if (dim > kMaxSimDim)
    throw InfeasibleError("register dimension " + std::to_string(dim) +
                          " exceeds the simulation cap 2^12");
  const auto dims = circuit.wire_dims();
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& gate : circuit.gates) {
    std::vector<int> gate_dims;
    for (int w : gate.wires) gate_dims.push_back(dims[w]);
    apply_gate_to_unitary(u, gate_unitary(gate, gate_dims), gate.wires, dims);
  }
  return u;
}

namespace {

// Row index of E's single 1 in column x, for each qubit basis state x.
std::vector<long long> isometry_rows(const Encoding& encoding) {
  const int n = encoding.n_qubits();
  const auto qstrides = wire_strides(encoding.qudit_dims);
  std::vector<long long> rows(1LL << n);
  for (long long x = 0; x < (1LL << n); ++x) {
    long long row = 0;
    for (size_t i = 0; i < encoding.groups.size(); ++i) {
      const auto& group = encoding.groups[i];
      long long level = 0;
      for (size_t j = 0; j < group.size(); ++j) {
        const int bit = static_cast<int>((x >> (n - 1 - group[j])) & 1);
        level |= static_cast<long long>(bit) << (group.size() - 1 - j);
      }
      row += level * qstrides[i];
    }
    rows[x] = row;
  }
  return rows;
}

}  // namespace

Matrix encoding_isometry(const Encoding& encoding) {
  long long qudit_dim = 1;
  for (int d : encoding.qudit_dims) qudit_dim *= d;
  const long long qubit_dim = 1LL << encoding.n_qubits();
  Matrix e = Matrix::Zero(qudit_dim, qubit_dim);
  const auto rows = isometry_rows(encoding);
  for (long long x = 0; x < qubit_dim; ++x) e(rows[x], x) = 1.0;
  return e;
}

EquivalenceResult verify_equivalence(const Matrix& u_qubit, const Matrix& u_qudit,
                                     const Encoding& encoding, double tol) {
  long long qudit_dim = 1;
  for (int d : encoding.qudit_dims) qudit_dim *= d;
  const long long qubit_dim = 1LL << encoding.n_qubits();
  if (u_qubit.rows() != qubit_dim || u_qubit.cols() != qubit_dim)
    throw InputError("qubit unitary does not match the encoding's qubit count");
  if (u_qudit.rows() != qudit_dim || u_qudit.cols() != qudit_dim)
    throw InputError("qudit unitary does not match the encoding's qudit dimensions");

  const auto rows = isometry_rows(encoding);
  // A = U_qudit E selects columns; B = E U_qubit scatters rows.
  Matrix a(qudit_dim, qubit_dim);
  Matrix b = Matrix::Zero(qudit_dim, qubit_dim);
  for (long long x = 0; x < qubit_dim; ++x) {
    a.col(x) = u_qudit.col(rows[x]);
    b.row(rows[x]) = u_qubit.row(x);
  }

  long best_r = 0, best_c = 0;
  double best_mag = -1.0;
  for (long c = 0; c < a.cols(); ++c) {
    for (long r = 0; r < a.rows(); ++r) {
      const double mag = std::abs(a(r, c));
      if (mag > best_mag) {
        best_mag = mag;
        best_r = r;
        best_c = c;
      }
    }
  }
  Complex phase(1.0, 0.0);
  const Complex ref = b(best_r, best_c);
  if (std::abs(ref) > 1e-300 && best_mag > 1e-300) {
    phase = a(best_r, best_c) / ref;
    phase /= std::abs(phase);
  }

  EquivalenceResult result;
  result.residual = (a - phase * b).cwiseAbs().maxCoeff();
  result.equal = result.residual < tol;
  return result;
}

int operator_schmidt_rank(const Matrix& u, int dim_a, int dim_b, double tol) {
  const long long dim = static_cast<long long>(dim_a) * dim_b;
  if (dim_a < 1 || dim_b < 1 || u.rows() != dim || u.cols() != dim)
    throw InputError("bad cut: operator dimension is not dim_a * dim_b");
  Matrix reshuffled(static_cast<long long>(dim_a) * dim_a,
                    static_cast<long long>(dim_b) * dim_b);
  for (int ia = 0; ia < dim_a; ++ia)
    for (int ja = 0; ja < dim_a; ++ja)
      for (int ib = 0; ib < dim_b; ++ib)
        for (int jb = 0; jb < dim_b; ++jb)
          reshuffled(ia * dim_a + ja, ib * dim_b + jb) = u(ia * dim_b + ib, ja * dim_b + jb);
  Eigen::BDCSVD<Matrix> svd(reshuffled);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma(0) <= 0.0) return 0;
  int rank = 0;
  for (long k = 0; k < sigma.size(); ++k)
    if (sigma(k) > tol * sigma(0)) ++rank;
  return rank;
}

double state_entropy(const StateVector& state, const std::vector<int>& side_a) {
  const int n = static_cast<int>(state.dims.size());
  std::vector<bool> in_a(n, false);
  for (int w : side_a) {
    if (w < 0 || w >= n || in_a[w]) throw InputError("bad cut: invalid subsystem list");
    in_a[w] = true;
  }
  std::vector<int> a_wires, b_wires;
  for (int w = 0; w < n; ++w) (in_a[w] ? a_wires : b_wires).push_back(w);

  long long dim_a = 1, dim_b = 1;
  for (int w : a_wires) dim_a *= state.dims[w];
  for (int w : b_wires) dim_b *= state.dims[w];

  const auto strides = wire_strides(state.dims);
  Matrix m(dim_a, dim_b);
  for (long long idx = 0; idx < state.total_dim(); ++idx) {
    long long a = 0, b = 0;
    for (int w : a_wires) a = a * state.dims[w] + (idx / strides[w]) % state.dims[w];
    for (int w : b_wires) b = b * state.dims[w] + (idx / strides[w]) % state.dims[w];
    m(a, b) = state.amps(idx);
  }

  Eigen::BDCSVD<Matrix> svd(m);
  double entropy = 0.0;
  for (long k = 0; k < svd.singularValues().size(); ++k) {
    const double p = svd.singularValues()(k) * svd.singularValues()(k);
    if (p > 1e-12) entropy -= p * std::log2(p);
  }
  return entropy;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const PermForm form = detect_perm(m);
  if (form.ok) {
    std::vector<int> hits(m.rows(), 0);
    for (size_t c = 0; c < form.row_of.size(); ++c) {
      if (std::abs(std::norm(form.val[c]) - 1.0) > tol) return false;
      if (++hits[form.row_of[c]] > 1) return false;
    }
    return true;
  }
  return ((m.adjoint() * m) - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() < tol;
}

}  // namespace qdc
