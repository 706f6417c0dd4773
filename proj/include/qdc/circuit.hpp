#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qdc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Input/validation problem (bad JSON, schema violation, bad wire index,
/// non-unitary matrix). Maps to CLI exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structurally valid request that cannot be carried out at desk scale
/// (k does not divide n, enumeration cap, Hilbert-dimension cap).
/// Maps to CLI exit code 3.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Max entrywise |U U^dag - I| accepted when validating explicit matrices.
inline constexpr double kUnitaryTol = 1e-10;

// Hard cap on the total Hilbert dimension of a circuit's register.
inline constexpr long long kMaxRegisterDim = 1LL << 16;

struct WireSpec {
  int index = 0;
  int dim = 2;

  friend bool operator==(const WireSpec&, const WireSpec&) = default;
};

enum class Kind {
  H,
  X,
  Z,
  T,
  Tdag,
  RX,
  RY,
  Phase,
  Permutation,
  CNOT,
  CZ,
  CT,
  CTdag,
  ControlledOnLevel,
  CustomMatrix,
};

std::string_view kind_name(Kind kind);
std::optional<Kind> kind_from_name(std::string_view name);

/// Number of wires a gate of this kind acts on (1 or 2).
int kind_arity(Kind kind);

/// Number of real parameters the kind expects.
int kind_param_count(Kind kind);

/// What a gate does: a named operation plus its parameters, or an explicit
/// unitary for kind == CustomMatrix.
struct GateKind {
  Kind name = Kind::CustomMatrix;
  std::vector<double> params;
  std::optional<Matrix> matrix;
};

/// Where a gate is applied. `wires` is ordered; for two-wire kinds the first
/// entry is the control (CNOT, CT, controlled-on-level).
struct Gate {
  GateKind kind;
  std::vector<int> wires;
  std::optional<int> control_level;  // controlled-on-level only

  bool is_local() const { return wires.size() == 1; }
  bool is_nonlocal() const { return wires.size() == 2; }
};

struct Circuit {
  std::vector<WireSpec> wires;
  std::vector<Gate> gates;
  std::map<std::string, std::string> metadata;

  int n_wires() const { return static_cast<int>(wires.size()); }
  long long total_dim() const;
  std::vector<int> wire_dims() const;
};

struct CircuitStats {
  int n_wires = 0;
  long long n_local = 0;
  long long n_nonlocal = 0;
  // unordered pair (u < v) -> number of two-wire gates on that pair
  std::map<std::pair<int, int>, long long> per_pair;
};

/// Parses the canonical JSON circuit format and validates the result.
/// Throws InputError with the offending gate index where applicable.
Circuit parse_circuit(const std::string& text);

/// Canonical JSON serialization; parse_circuit(serialize_circuit(c))
/// is structurally equal to c. Deterministic byte-for-byte.
std::string serialize_circuit(const Circuit& circuit);

CircuitStats circuit_stats(const Circuit& circuit);

/// Full validation of wires and gates; throws InputError / InfeasibleError.
void validate_circuit(const Circuit& circuit);

/// Resolves a gate to its concrete unitary on the listed wires, first wire
/// major in the tensor basis. `dims` are the dimensions of gate.wires.
Matrix gate_unitary(const Gate& gate, const std::vector<int>& dims);

/// The d x d matrix of a single-wire named kind (H, X, Z, T, phase, ...).
Matrix local_gate_unitary(Kind kind, const std::vector<double>& params, int dim);

bool circuits_structurally_equal(const Circuit& a, const Circuit& b);

}  // namespace qdc
