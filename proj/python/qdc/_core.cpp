// Python bindings. Circuits cross the boundary as canonical JSON strings;
// matrices and state vectors as numpy arrays.

#include "qdc/compressor.hpp"
#include "qdc/estimators.hpp"
#include "qdc/gate_library.hpp"
#include "qdc/simulator.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qdc;

namespace {

PipelineOptions make_options(int k, bool merge, bool absorb_local, const std::string& method,
                             std::uint64_t seed, double tol,
                             const std::optional<std::vector<int>>& dims) {
  PipelineOptions options;
  options.k = k;
  options.merge = merge;
  options.absorb_local = absorb_local;
  options.seed = seed;
  options.tol = tol;
  if (method == "exact")
    options.method = PipelineOptions::Method::exact;
  else if (method == "heuristic")
    options.method = PipelineOptions::Method::heuristic;
  else if (method != "auto")
    throw InputError("method must be auto, exact, or heuristic");
  if (dims) options.dims_override = *dims;
  return options;
}

Encoding encoding_from_groups(const std::vector<std::vector<int>>& groups,
                              const std::optional<std::vector<int>>& dims) {
  Partition partition{groups};
  partition.canonicalize();
  return make_encoding(partition, dims ? *dims : std::vector<int>{});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "qudit circuit compression core";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);

  // circuit model
  m.def(
      "canonicalize",
      [](const std::string& text) { return serialize_circuit(parse_circuit(text)); },
      py::arg("circuit_json"), "Parse, validate, and re-serialize a circuit document.");
  m.def(
      "circuit_stats",
      [](const std::string& text) {
        const CircuitStats stats = circuit_stats(parse_circuit(text));
        py::dict out;
        out["n_wires"] = stats.n_wires;
        out["n_local"] = stats.n_local;
        out["n_nonlocal"] = stats.n_nonlocal;
        py::list pairs;
        for (const auto& [pair, count] : stats.per_pair)
          pairs.append(py::make_tuple(pair.first, pair.second, count));
        out["per_pair"] = pairs;
        return out;
      },
      py::arg("circuit_json"));

  // gate library
  m.def(
      "cpf_circuit",
      [](int n) {
        if (n == 2) {
          Circuit circuit;
          circuit.wires = {{0, 2}, {1, 2}};
          Gate cz;
          cz.kind.name = Kind::CZ;
          cz.wires = {0, 1};
          circuit.gates.push_back(cz);
          circuit.metadata["name"] = "cpf2";
          return serialize_circuit(circuit);
        }
        if (n == 4) return serialize_circuit(cpf4_barenco_circuit().circuit);
        throw InfeasibleError("reference circuits exist for n = 2 and n = 4 only");
      },
      py::arg("n"), "Reference controlled-phase-flip circuit (n = 2 or 4).");
  m.def(
      "cluster_circuit",
      [](int rows, int cols) { return serialize_circuit(cluster_state_circuit(rows, cols)); },
      py::arg("rows"), py::arg("cols"));
  m.def("cpf_unitary", &cpf_unitary, py::arg("n"));
  m.def("controlled_on_level_gate", &controlled_on_level_gate, py::arg("control_dim"),
        py::arg("level"), py::arg("v"));
  m.def("cyclic_shift", &cyclic_shift, py::arg("dim"), py::arg("shift"));

  // simulator
  m.def(
      "circuit_unitary",
      [](const std::string& text) { return circuit_unitary(parse_circuit(text)); },
      py::arg("circuit_json"));
  m.def(
      "simulate_state",
      [](const std::string& text) {
        const Circuit circuit = parse_circuit(text);
        return apply_circuit(circuit, zero_state(circuit.wire_dims())).amps;
      },
      py::arg("circuit_json"), "Apply the circuit to |0...0> and return the amplitudes.");
  m.def("operator_schmidt_rank", &operator_schmidt_rank, py::arg("u"), py::arg("dim_a"),
        py::arg("dim_b"), py::arg("tol") = 1e-9);
  m.def(
      "state_entropy",
      [](const CVector& amps, const std::vector<int>& dims, const std::vector<int>& side_a) {
        StateVector state;
        state.dims = dims;
        state.amps = amps;
        if (state.total_dim() != amps.size())
          throw InputError("amplitude length does not match the dimensions");
        return state_entropy(state, side_a);
      },
      py::arg("amps"), py::arg("dims"), py::arg("side_a"));
  m.def(
      "verify_equivalence",
      [](const Matrix& u_qubit, const Matrix& u_qudit, const std::vector<std::vector<int>>& groups,
         const std::optional<std::vector<int>>& dims, double tol) {
        const auto result =
            verify_equivalence(u_qubit, u_qudit, encoding_from_groups(groups, dims), tol);
        return py::make_tuple(result.equal, result.residual);
      },
      py::arg("u_qubit"), py::arg("u_qudit"), py::arg("groups"), py::arg("dims") = py::none(),
      py::arg("tol") = 1e-9);
  m.def(
      "encoding_isometry",
      [](const std::vector<std::vector<int>>& groups, const std::optional<std::vector<int>>& dims) {
        return encoding_isometry(encoding_from_groups(groups, dims));
      },
      py::arg("groups"), py::arg("dims") = py::none());

  // compression pipeline
  m.def(
      "analyze",
      [](const std::string& text, int k, const std::string& method, std::uint64_t seed) {
        return report_to_json(
            analyze_circuit(parse_circuit(text), make_options(k, false, false, method, seed,
                                                              1e-9, std::nullopt)));
      },
      py::arg("circuit_json"), py::arg("k"), py::arg("method") = "auto", py::arg("seed") = 0);
  m.def(
      "compress",
      [](const std::string& text, int k, bool merge, bool absorb_local,
         const std::string& method, std::uint64_t seed, double tol,
         const std::optional<std::vector<int>>& dims) {
        const PipelineResult result = full_pipeline(
            parse_circuit(text), make_options(k, merge, absorb_local, method, seed, tol, dims));
        return py::make_tuple(report_to_json(result.report),
                              serialize_circuit(result.compressed));
      },
      py::arg("circuit_json"), py::arg("k"), py::arg("merge") = false,
      py::arg("absorb_local") = false, py::arg("method") = "auto", py::arg("seed") = 0,
      py::arg("tol") = 1e-9, py::arg("dims") = py::none());
  m.def(
      "merge_pass",
      [](const std::string& text, bool absorb_local) {
        return serialize_circuit(merge_pass(parse_circuit(text), absorb_local));
      },
      py::arg("circuit_json"), py::arg("absorb_local") = false);
  m.def(
      "embed_two_qubit_gate",
      [](const Matrix& u4, int pos_a, int m_a, int pos_b, int m_b) {
        return embed_two_qubit_gate(u4, pos_a, m_a, pos_b, m_b);
      },
      py::arg("u4"), py::arg("pos_a"), py::arg("m_a"), py::arg("pos_b"), py::arg("m_b"));

  // estimators
  m.def("photonic_oam_bs_count", &photonic_oam_bs_count, py::arg("d1"), py::arg("d2"));
  m.def("photonic_success_probability", [] {
    const Rational p = photonic_success_probability();
    return py::make_tuple(p.num, p.den);
  });
  m.def(
      "ion_scenarios",
      [](double base_error, double embed_factor) {
        IonErrorModel model{base_error, embed_factor};
        py::list out;
        for (const auto& scenario : ion_scenarios()) {
          py::dict entry;
          entry["name"] = scenario.name;
          entry["gates"] = scenario.nonlocal_gates;
          const auto error = scenario.error(model);
          entry["error"] = error ? py::object(py::float_(*error)) : py::none();
          entry["note"] = scenario.note;
          out.append(entry);
        }
        return out;
      },
      py::arg("base_error") = 0.01, py::arg("embed_factor") = 2.0);
  m.def(
      "ion_circuit_error",
      [](const std::vector<std::pair<double, double>>& gates, double base_error,
         double embed_factor) {
        std::vector<IonGateCost> costs;
        costs.reserve(gates.size());
        for (const auto& [angle, factor] : gates) costs.push_back({angle, factor});
        return ion_circuit_error(costs, IonErrorModel{base_error, embed_factor});
      },
      py::arg("gates"), py::arg("base_error") = 0.01, py::arg("embed_factor") = 2.0,
      "gates: list of (angle_multiple, embed_factor) pairs");
}
