#include "qdc/circuit.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qdc {

namespace {

using json = nlohmann::ordered_json;

struct KindInfo {
  Kind kind;
  std::string_view name;
  int arity;
  int n_params;
};

constexpr KindInfo kKindTable[] = {
    {Kind::H, "H", 1, 0},
    {Kind::X, "X", 1, 0},
    {Kind::Z, "Z", 1, 0},
    {Kind::T, "T", 1, 0},
    {Kind::Tdag, "Tdag", 1, 0},
    {Kind::RX, "RX", 1, 1},
    {Kind::RY, "RY", 1, 1},
    {Kind::Phase, "phase", 1, 1},
    {Kind::Permutation, "permutation", 1, 1},
    {Kind::CNOT, "CNOT", 2, 0},
    {Kind::CZ, "CZ", 2, 0},
    {Kind::CT, "CT", 2, 0},
    {Kind::CTdag, "CTdag", 2, 0},
    {Kind::ControlledOnLevel, "controlled-on-level", 2, 1},
    {Kind::CustomMatrix, "custom-matrix", 0, 0},
};

const KindInfo& info_of(Kind kind) {
  for (const auto& info : kKindTable) {
    if (info.kind == kind) return info;
  }
  throw std::logic_error("unknown gate kind");
}

[[noreturn]] void fail_gate(size_t gate_index, const std::string& what) {
  throw InputError("gate " + std::to_string(gate_index) + ": " + what);
}

Matrix qubit_only(Kind kind, int dim, const Matrix& m) {
  if (dim != 2) {
    throw InputError(std::string(kind_name(kind)) +
                     " is only defined on dimension-2 wires, got dim " +
                     std::to_string(dim));
  }
  return m;
}

}  // namespace

std::string_view kind_name(Kind kind) { return info_of(kind).name; }

std::optional<Kind> kind_from_name(std::string_view name) {
  for (const auto& info : kKindTable) {
    if (info.name == name) return info.kind;
  }
  return std::nullopt;
}

int kind_arity(Kind kind) { return info_of(kind).arity; }

int kind_param_count(Kind kind) { return info_of(kind).n_params; }

long long Circuit::total_dim() const {
  long long dim = 1;
  for (const auto& wire : wires) {
    dim *= wire.dim;
    if (dim > kMaxRegisterDim) return kMaxRegisterDim + 1;
  }
  return dim;
}

std::vector<int> Circuit::wire_dims() const {
  std::vector<int> dims(wires.size());
  for (const auto& wire : wires) dims[wire.index] = wire.dim;
  return dims;
}

Matrix local_gate_unitary(Kind kind, const std::vector<double>& params, int dim) {
  using std::numbers::pi;
  const Complex i(0.0, 1.0);
  switch (kind) {
    case Kind::H: {
      // Fourier matrix; reduces to the Hadamard for dim 2.
      Matrix m(dim, dim);
      const Complex omega = std::exp(2.0 * pi * i / static_cast<double>(dim));
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
          m(r, c) = std::pow(omega, r * c) / std::sqrt(static_cast<double>(dim));
      return m;
    }
    case Kind::X: {
      // Cyclic shift |n> -> |n+1 mod d| (Pauli X for dim 2).
      Matrix m = Matrix::Zero(dim, dim);
      for (int c = 0; c < dim; ++c) m((c + 1) % dim, c) = 1.0;
      return m;
    }
    case Kind::Z: {
      // Clock matrix diag(omega^n) (Pauli Z for dim 2).
      Matrix m = Matrix::Zero(dim, dim);
      const Complex omega = std::exp(2.0 * pi * i / static_cast<double>(dim));
      for (int c = 0; c < dim; ++c) m(c, c) = std::pow(omega, c);
      return m;
    }
    case Kind::T:
    case Kind::Tdag: {
      Matrix m = Matrix::Identity(2, 2);
      m(1, 1) = std::exp((kind == Kind::T ? 1.0 : -1.0) * i * pi / 4.0);
      return qubit_only(kind, dim, m);
    }
    case Kind::RX: {
      const double half = params.at(0) / 2.0;
      Matrix m(2, 2);
      m << std::cos(half), -i * std::sin(half), -i * std::sin(half), std::cos(half);
      return qubit_only(kind, dim, m);
    }
    case Kind::RY: {
      const double half = params.at(0) / 2.0;
      Matrix m(2, 2);
      m << std::cos(half), -std::sin(half), std::sin(half), std::cos(half);
      return qubit_only(kind, dim, m);
    }
    case Kind::Phase: {
      // Phase on the highest level; diag{1, e^{i phi}} for dim 2.
      Matrix m = Matrix::Identity(dim, dim);
      m(dim - 1, dim - 1) = std::exp(i * params.at(0));
      return m;
    }
    case Kind::Permutation: {
      const double raw = params.at(0);
      const long long shift = std::llround(raw);
      if (std::abs(raw - static_cast<double>(shift)) > 1e-9)
        throw InputError("permutation shift must be an integer");
      Matrix m = Matrix::Zero(dim, dim);
      const long long s = ((shift % dim) + dim) % dim;
      for (int c = 0; c < dim; ++c) m(static_cast<int>((c + s) % dim), c) = 1.0;
      return m;
    }
    default:
      throw InputError(std::string(kind_name(kind)) + " is not a single-wire kind");
  }
}

Matrix gate_unitary(const Gate& gate, const std::vector<int>& dims) {
  using std::numbers::pi;
  const Complex i(0.0, 1.0);
  const Kind kind = gate.kind.name;

  if (kind == Kind::CustomMatrix) {
    if (!gate.kind.matrix) throw InputError("custom-matrix gate without matrix");
    return *gate.kind.matrix;
  }

  if (gate.wires.size() == 1) return local_gate_unitary(kind, gate.kind.params, dims.at(0));

  const int dc = dims.at(0);
  const int dt = dims.at(1);
  switch (kind) {
    case Kind::CNOT: {
      if (dc != 2 || dt != 2) throw InputError("CNOT requires two dimension-2 wires");
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(3, 2) = m(2, 3) = 1.0;
      return m;
    }
    case Kind::CZ:
    case Kind::CT:
    case Kind::CTdag: {
      if (dc != 2 || dt != 2)
        throw InputError(std::string(kind_name(kind)) + " requires two dimension-2 wires");
      Matrix m = Matrix::Identity(4, 4);
      if (kind == Kind::CZ)
        m(3, 3) = -1.0;
      else
        m(3, 3) = std::exp((kind == Kind::CT ? 1.0 : -1.0) * i * pi / 4.0);
      return m;
    }
    case Kind::ControlledOnLevel: {
      // Applies a phase to the target's highest level iff the control wire
      // occupies |control_level>.
      if (!gate.control_level) throw InputError("controlled-on-level gate without control_level");
      const int level = *gate.control_level;
      Matrix m = Matrix::Identity(dc * dt, dc * dt);
      const int idx = level * dt + (dt - 1);
      m(idx, idx) = std::exp(i * gate.kind.params.at(0));
      return m;
    }
    default:
      throw InputError(std::string(kind_name(kind)) + " is not a two-wire kind");
  }
}

namespace {

bool matrix_is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const long n = m.rows();
  // Phased-permutation fast path: at most one nonzero per column.
  bool sparse = true;
  std::vector<int> row_of(n, -1);
  std::vector<int> hits(n, 0);
  for (long c = 0; c < n && sparse; ++c) {
    for (long r = 0; r < n; ++r) {
      if (m(r, c) != 0.0) {
        if (row_of[c] >= 0) {
          sparse = false;
          break;
        }
        row_of[c] = static_cast<int>(r);
      }
    }
  }
  if (sparse) {
    for (long c = 0; c < n; ++c) {
      if (row_of[c] < 0) return false;
      if (std::abs(std::norm(m(row_of[c], c)) - 1.0) > tol) return false;
      if (++hits[row_of[c]] > 1) return false;
    }
    return true;
  }
  return ((m.adjoint() * m) - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < tol;
}

void validate_gate(const Circuit& circuit, size_t index) {
  const Gate& gate = circuit.gates[index];
  const Kind kind = gate.kind.name;
  const int n = circuit.n_wires();

  if (gate.wires.empty() || gate.wires.size() > 2)
    fail_gate(index, "gates act on 1 or 2 wires");
  for (int w : gate.wires) {
    if (w < 0 || w >= n) fail_gate(index, "wire index " + std::to_string(w) + " out of range");
  }
  if (gate.wires.size() == 2 && gate.wires[0] == gate.wires[1])
    fail_gate(index, "duplicate wire index in gate");

  const auto dims = circuit.wire_dims();
  if (kind != Kind::CustomMatrix) {
    if (static_cast<int>(gate.wires.size()) != kind_arity(kind))
      fail_gate(index, std::string(kind_name(kind)) + " expects " +
                           std::to_string(kind_arity(kind)) + " wire(s)");
    if (static_cast<int>(gate.kind.params.size()) != kind_param_count(kind))
      fail_gate(index, std::string(kind_name(kind)) + " expects " +
                           std::to_string(kind_param_count(kind)) + " parameter(s)");
    if (gate.kind.matrix) fail_gate(index, "matrix only allowed for custom-matrix gates");
  }

  if (kind == Kind::ControlledOnLevel) {
    if (!gate.control_level) fail_gate(index, "controlled-on-level requires control_level");
    const int dc = dims[gate.wires[0]];
    if (*gate.control_level < 0 || *gate.control_level >= dc)
      fail_gate(index, "control_level " + std::to_string(*gate.control_level) +
                           " not below control dimension " + std::to_string(dc));
  } else if (gate.control_level) {
    fail_gate(index, "control_level only allowed for controlled-on-level gates");
  }

  if (kind == Kind::CustomMatrix) {
    if (!gate.kind.matrix) fail_gate(index, "custom-matrix requires a matrix");
    long long dim = 1;
    for (int w : gate.wires) dim *= dims[w];
    const Matrix& m = *gate.kind.matrix;
    if (m.rows() != dim || m.cols() != dim)
      fail_gate(index, "matrix size " + std::to_string(m.rows()) + " does not match wire dimension product " +
                           std::to_string(dim));
    if (!matrix_is_unitary(m, kUnitaryTol)) fail_gate(index, "matrix is not unitary");
  }

  // Resolve named kinds so dimension mismatches surface with the gate index.
  if (kind != Kind::CustomMatrix) {
    std::vector<int> gate_dims;
    for (int w : gate.wires) gate_dims.push_back(dims[w]);
    try {
      gate_unitary(gate, gate_dims);
    } catch (const InputError& e) {
      fail_gate(index, e.what());
    }
  }
}

}  // namespace

void validate_circuit(const Circuit& circuit) {
  const int n = circuit.n_wires();
  std::vector<bool> seen(n, false);
  for (const auto& wire : circuit.wires) {
    if (wire.index < 0 || wire.index >= n)
      throw InputError("wire indices must be 0..n-1 with no gaps");
    if (seen[wire.index]) throw InputError("duplicate wire index " + std::to_string(wire.index));
    seen[wire.index] = true;
    if (wire.dim < 2) throw InputError("wire dimension must be at least 2");
  }
  if (circuit.total_dim() > kMaxRegisterDim)
    throw InfeasibleError("total Hilbert dimension exceeds 2^16");
  for (size_t g = 0; g < circuit.gates.size(); ++g) validate_gate(circuit, g);
}

CircuitStats circuit_stats(const Circuit& circuit) {
  CircuitStats stats;
  stats.n_wires = circuit.n_wires();
  for (const auto& gate : circuit.gates) {
    if (gate.is_local()) {
      ++stats.n_local;
    } else {
      ++stats.n_nonlocal;
      const auto [lo, hi] = std::minmax(gate.wires[0], gate.wires[1]);
      ++stats.per_pair[{lo, hi}];
    }
  }
  return stats;
}

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (long r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (long c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, size_t gate_index) {
  if (!j.is_array() || j.empty()) fail_gate(gate_index, "matrix must be a non-empty array of rows");
  const size_t n = j.size();
  Matrix m(n, n);
  for (size_t r = 0; r < n; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != n) fail_gate(gate_index, "matrix must be square");
    for (size_t c = 0; c < n; ++c) {
      const json& entry = row[c];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
        fail_gate(gate_index, "matrix entries must be [re, im] pairs");
      m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw InputError("schema error: unknown key \"" + key + "\" in " + where);
  }
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("syntax error: ") + e.what());
  }

  if (!doc.is_object()) throw InputError("schema error: top level must be an object");
  reject_unknown_keys(doc, {"wires", "gates", "metadata"}, "circuit");
  if (!doc.contains("wires") || !doc["wires"].is_array())
    throw InputError("schema error: missing \"wires\" array");
  if (!doc.contains("gates") || !doc["gates"].is_array())
    throw InputError("schema error: missing \"gates\" array");

  Circuit circuit;
  for (const json& jw : doc["wires"]) {
    if (!jw.is_object()) throw InputError("schema error: wire entries must be objects");
    reject_unknown_keys(jw, {"index", "dim"}, "wire");
    if (!jw.contains("index") || !jw["index"].is_number_integer() || !jw.contains("dim") ||
        !jw["dim"].is_number_integer())
      throw InputError("schema error: wire requires integer \"index\" and \"dim\"");
    circuit.wires.push_back({jw["index"].get<int>(), jw["dim"].get<int>()});
  }

  size_t index = 0;
  for (const json& jg : doc["gates"]) {
    if (!jg.is_object()) fail_gate(index, "schema error: gate entries must be objects");
    reject_unknown_keys(jg, {"kind", "wires", "params", "control_level", "matrix"},
                        "gate " + std::to_string(index));
    if (!jg.contains("kind") || !jg["kind"].is_string())
      fail_gate(index, "schema error: missing gate \"kind\"");
    const auto kind = kind_from_name(jg["kind"].get<std::string>());
    if (!kind) fail_gate(index, "schema error: unknown gate kind \"" + jg["kind"].get<std::string>() + "\"");
    if (!jg.contains("wires") || !jg["wires"].is_array())
      fail_gate(index, "schema error: missing gate \"wires\"");

    Gate gate;
    gate.kind.name = *kind;
    for (const json& jw : jg["wires"]) {
      if (!jw.is_number_integer()) fail_gate(index, "schema error: wire refs must be integers");
      gate.wires.push_back(jw.get<int>());
    }
    if (jg.contains("params")) {
      if (!jg["params"].is_array()) fail_gate(index, "schema error: params must be an array");
      for (const json& jp : jg["params"]) {
        if (!jp.is_number()) fail_gate(index, "schema error: params must be numbers");
        gate.kind.params.push_back(jp.get<double>());
      }
    }
    if (jg.contains("control_level") && !jg["control_level"].is_null()) {
      if (!jg["control_level"].is_number_integer())
        fail_gate(index, "schema error: control_level must be an integer or null");
      gate.control_level = jg["control_level"].get<int>();
    }
    if (jg.contains("matrix") && !jg["matrix"].is_null()) {
      if (*kind != Kind::CustomMatrix)
        fail_gate(index, "schema error: matrix only allowed when kind is custom-matrix");
      gate.kind.matrix = matrix_from_json(jg["matrix"], index);
    }
    circuit.gates.push_back(std::move(gate));
    ++index;
  }

  if (doc.contains("metadata")) {
    if (!doc["metadata"].is_object())
      throw InputError("schema error: metadata must be an object");
    for (const auto& [key, value] : doc["metadata"].items()) {
      if (!value.is_string()) throw InputError("schema error: metadata values must be strings");
      circuit.metadata[key] = value.get<std::string>();
    }
  }

  validate_circuit(circuit);
  return circuit;
}

std::string serialize_circuit(const Circuit& circuit) {
  json doc;
  json wires = json::array();
  for (const auto& wire : circuit.wires)
    wires.push_back(json{{"index", wire.index}, {"dim", wire.dim}});
  doc["wires"] = std::move(wires);

  json gates = json::array();
  for (const auto& gate : circuit.gates) {
    json jg;
    jg["kind"] = std::string(kind_name(gate.kind.name));
    jg["wires"] = gate.wires;
    jg["params"] = gate.kind.params;
    jg["control_level"] = gate.control_level ? json(*gate.control_level) : json(nullptr);
    jg["matrix"] = gate.kind.matrix ? matrix_to_json(*gate.kind.matrix) : json(nullptr);
    gates.push_back(std::move(jg));
  }
  doc["gates"] = std::move(gates);
  doc["metadata"] = json(circuit.metadata);
  return doc.dump();
}

bool circuits_structurally_equal(const Circuit& a, const Circuit& b) {
  if (a.wires.size() != b.wires.size() || a.gates.size() != b.gates.size() ||
      a.metadata != b.metadata)
    return false;
  for (size_t i = 0; i < a.wires.size(); ++i)
    if (!(a.wires[i] == b.wires[i])) return false;
  for (size_t i = 0; i < a.gates.size(); ++i) {
    const Gate& ga = a.gates[i];
    const Gate& gb = b.gates[i];
    if (ga.kind.name != gb.kind.name || ga.kind.params != gb.kind.params ||
        ga.wires != gb.wires || ga.control_level != gb.control_level)
      return false;
    if (ga.kind.matrix.has_value() != gb.kind.matrix.has_value()) return false;
    if (ga.kind.matrix && *ga.kind.matrix != *gb.kind.matrix) return false;
  }
  return true;
}

}  // namespace qdc
