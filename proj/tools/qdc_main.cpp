// qdc: compress qubit circuits onto qudit registers, bound the gain, verify
// the rewrite, and cost it out for photonic / trapped-ion hardware.

#include "qdc/compressor.hpp"
#include "qdc/estimators.hpp"
#include "qdc/gate_library.hpp"
#include "qdc/simulator.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using qdc::Circuit;
using qdc::InfeasibleError;
using qdc::InputError;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitVerification = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

Circuit load_circuit(const std::string& path) { return qdc::parse_circuit(read_file(path)); }

void save_circuit(const std::string& path, const Circuit& circuit) {
  write_file(path, qdc::serialize_circuit(circuit) + "\n");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) throw InputError("empty entry in list \"" + text + "\"");
    values.push_back(std::stoi(item));
  }
  return values;
}

std::vector<std::vector<int>> parse_groups(const std::string& text) {
  std::vector<std::vector<int>> groups;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, '|')) groups.push_back(parse_int_list(part));
  if (groups.empty()) throw InputError("empty group specification");
  return groups;
}

struct CompressArgs {
  std::string input;
  std::string output;
  int k = 2;
  bool merge = false;
  bool absorb_local = false;
  bool verify = false;
  bool exact = false;
  bool heuristic = false;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string dims;
};

qdc::PipelineOptions to_options(const CompressArgs& args) {
  qdc::PipelineOptions options;
  options.k = args.k;
  options.merge = args.merge;
  options.absorb_local = args.absorb_local;
  options.seed = args.seed;
  options.tol = args.tol;
  if (args.exact) options.method = qdc::PipelineOptions::Method::exact;
  if (args.heuristic) options.method = qdc::PipelineOptions::Method::heuristic;
  if (!args.dims.empty()) options.dims_override = parse_int_list(args.dims);
  return options;
}

int run_analyze(const CompressArgs& args) {
  const Circuit circuit = load_circuit(args.input);
  const qdc::CompressionReport report = qdc::analyze_circuit(circuit, to_options(args));
  std::cout << qdc::report_to_json(report);
  return kExitOk;
}

int run_compress(const CompressArgs& args) {
  const Circuit circuit = load_circuit(args.input);
  const qdc::PipelineResult result = qdc::full_pipeline(circuit, to_options(args));
  if (!args.output.empty()) save_circuit(args.output, result.compressed);
  std::cout << qdc::report_to_json(result.report);
  if (!result.report.verification.checked)
    std::cerr << "warning: register too large for exact verification, skipped\n";
  if (args.verify) {
    if (!result.report.verification.checked) return kExitOk;
    if (result.report.verification.max_residual >= args.tol) return kExitVerification;
  }
  return kExitOk;
}

int run_verify(const std::string& original_path, const std::string& compressed_path,
               const std::string& groups_spec, double tol) {
  const Circuit original = load_circuit(original_path);
  const Circuit compressed = load_circuit(compressed_path);

  qdc::Encoding encoding;
  encoding.groups = parse_groups(groups_spec);
  for (auto& group : encoding.groups) std::sort(group.begin(), group.end());
  if (static_cast<int>(encoding.groups.size()) != compressed.n_wires())
    throw InputError("group count does not match the compressed circuit's wires");
  for (const auto& wire : compressed.wires) encoding.qudit_dims.push_back(wire.dim);
  if (encoding.n_qubits() != original.n_wires())
    throw InputError("groups do not cover the original circuit's wires");

  const auto result = qdc::verify_equivalence(qdc::circuit_unitary(original),
                                              qdc::circuit_unitary(compressed), encoding, tol);
  json out;
  out["equal"] = result.equal;
  out["residual"] = result.residual;
  out["tol"] = tol;
  std::cout << out.dump(2) << "\n";
  return result.equal ? kExitOk : kExitVerification;
}

int run_estimate_photonic(int d1, int d2, int n_gates) {
  const qdc::PhotonicEstimate estimate = qdc::photonic_estimate(d1, d2);
  json out;
  out["photonic"] = {{"d1", estimate.d1},
                     {"d2", estimate.d2},
                     {"oam_bs", estimate.oam_bs_upper_bound},
                     {"p_success", {estimate.success_probability.num,
                                    estimate.success_probability.den}}};
  if (n_gates >= 0) {
    const qdc::Rational compound = qdc::photonic_compound_success(n_gates);
    out["photonic"]["gates"] = n_gates;
    out["photonic"]["p_success_compound"] = {compound.num, compound.den};
    out["photonic"]["note"] = "compound probability assumes independent gate successes";
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_estimate_ion(const std::string& scenario_name, double base_error, double embed_factor,
                     const std::string& angles_csv) {
  qdc::IonErrorModel model;
  model.base_error = base_error;
  model.embed_factor = embed_factor;

  const auto scenarios = qdc::ion_scenarios();
  const auto it = std::find_if(scenarios.begin(), scenarios.end(),
                               [&](const auto& s) { return s.name == scenario_name; });
  if (it == scenarios.end()) {
    std::string names;
    for (const auto& s : scenarios) names += (names.empty() ? "" : ", ") + s.name;
    throw InputError("unknown ion scenario \"" + scenario_name + "\" (known: " + names + ")");
  }
  qdc::IonScenario scenario = *it;
  if (!angles_csv.empty()) {
    std::vector<double> angles;
    std::stringstream stream(angles_csv);
    std::string item;
    while (std::getline(stream, item, ',')) angles.push_back(std::stod(item));
    if (static_cast<int>(angles.size()) != scenario.nonlocal_gates)
      throw InputError("expected " + std::to_string(scenario.nonlocal_gates) +
                       " angle multiples for scenario " + scenario.name);
    scenario.angle_multiples = std::move(angles);
  }

  const auto error = scenario.error(model);
  json out;
  json model_json = {{"base_error", model.base_error}, {"embed_factor", model.embed_factor}};
  model_json["angle_multiples"] =
      scenario.angle_multiples ? json(*scenario.angle_multiples) : json(nullptr);
  out["ion"] = {{"scenario", scenario.name},
                {"gates", scenario.nonlocal_gates},
                {"error", error ? json(*error) : json(nullptr)},
                {"model", std::move(model_json)},
                {"note", scenario.note}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_library_cpf(int n, const std::string& decomposition, const std::string& output) {
  Circuit circuit;
  if (n == 2) {
    circuit.wires = {{0, 2}, {1, 2}};
    qdc::Gate cz;
    cz.kind.name = qdc::Kind::CZ;
    cz.wires = {0, 1};
    circuit.gates.push_back(cz);
    circuit.metadata["name"] = "cpf2";
  } else if (n == 4) {
    if (decomposition != "barenco")
      throw InputError("unknown decomposition \"" + decomposition + "\" for cpf --n 4");
    circuit = qdc::cpf4_barenco_circuit().circuit;
  } else {
    throw InfeasibleError(
        "no reference decomposition is bundled for cpf --n " + std::to_string(n) +
        " (2 and 4 are available; the 61-gate 6-qubit circuit is a literature count only)");
  }
  save_circuit(output, circuit);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qudit circuit compression toolkit"};
  app.require_subcommand(1);

  CompressArgs args;
  double verify_tol = 1e-9;
  std::string verify_original, verify_compressed, verify_groups;
  int photonic_d1 = 8, photonic_d2 = 8, photonic_gates = -1;
  std::string ion_scenario = "qubit-13", ion_angles;
  double ion_base_error = 0.01, ion_embed_factor = 2.0;
  int cpf_n = 4;
  std::string cpf_decomposition = "barenco";
  int cluster_rows = 2, cluster_cols = 2;
  std::string library_output;

  auto* analyze = app.add_subcommand("analyze", "graph, minimal cut, and compression bounds");
  analyze->add_option("input", args.input, "circuit file")->required();
  analyze->add_option("-k,--k", args.k, "number of qudits")->required();
  analyze->add_flag("--exact", args.exact, "force exhaustive partitioning");
  analyze->add_flag("--heuristic", args.heuristic, "force the swap heuristic");
  analyze->add_option("--seed", args.seed, "heuristic seed");

  auto* compress = app.add_subcommand("compress", "rewrite the circuit onto qudits");
  compress->add_option("input", args.input, "circuit file")->required();
  compress->add_option("-k,--k", args.k, "number of qudits")->required();
  compress->add_option("-o,--output", args.output, "compressed circuit file");
  compress->add_flag("--merge", args.merge, "merge two-qudit gates on the same pair");
  compress->add_flag("--absorb-local", args.absorb_local,
                     "fold local gates into adjacent two-qudit gates");
  compress->add_flag("--verify", args.verify, "exit 4 unless the rewrite verifies");
  compress->add_option("--tol", args.tol, "verification tolerance");
  compress->add_option("--seed", args.seed, "heuristic seed");
  compress->add_flag("--exact", args.exact, "force exhaustive partitioning");
  compress->add_flag("--heuristic", args.heuristic, "force the swap heuristic");
  compress->add_option("--dims", args.dims, "qudit dimensions, e.g. 5,5 for aux levels");

  auto* verify = app.add_subcommand("verify", "check a compressed circuit against its source");
  verify->add_option("--original", verify_original, "qubit circuit file")->required();
  verify->add_option("--compressed", verify_compressed, "qudit circuit file")->required();
  verify->add_option("--groups", verify_groups, "qubit groups, e.g. 0,1|2,3")->required();
  verify->add_option("--tol", verify_tol, "equivalence tolerance");

  auto* estimate = app.add_subcommand("estimate", "hardware resource estimates");
  estimate->require_subcommand(1);
  auto* photonic = estimate->add_subcommand("photonic", "OAM beam-splitter count");
  photonic->add_option("--d1", photonic_d1, "control dimension")->required();
  photonic->add_option("--d2", photonic_d2, "target dimension")->required();
  photonic->add_option("--gates", photonic_gates, "report (1/4)^n compound success");
  auto* ion = estimate->add_subcommand("ion", "trapped-ion error estimate");
  ion->add_option("--scenario", ion_scenario, "qubit-13 | aux-qubit-5 | qudit-1")->required();
  ion->add_option("--base-error", ion_base_error, "error per two-qubit-equivalent gate");
  ion->add_option("--embed-factor", ion_embed_factor, "embedded-gate penalty");
  ion->add_option("--angles", ion_angles, "per-gate rotation-angle multiples, CSV");

  auto* library = app.add_subcommand("library", "emit reference circuits");
  library->require_subcommand(1);
  auto* cpf = library->add_subcommand("cpf", "controlled-phase-flip circuits");
  cpf->add_option("--n", cpf_n, "number of qubits")->required();
  cpf->add_option("--decomposition", cpf_decomposition, "decomposition name");
  cpf->add_option("-o,--output", library_output, "output circuit file")->required();
  auto* cluster = library->add_subcommand("cluster", "2D cluster-state circuits");
  cluster->add_option("--rows", cluster_rows, "grid rows")->required();
  cluster->add_option("--cols", cluster_cols, "grid columns")->required();
  cluster->add_option("-o,--output", library_output, "output circuit file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) return run_analyze(args);
    if (*compress) return run_compress(args);
    if (*verify) return run_verify(verify_original, verify_compressed, verify_groups, verify_tol);
    if (*photonic) return run_estimate_photonic(photonic_d1, photonic_d2, photonic_gates);
    if (*ion) return run_estimate_ion(ion_scenario, ion_base_error, ion_embed_factor, ion_angles);
    if (*cpf) return run_library_cpf(cpf_n, cpf_decomposition, library_output);
    if (*cluster) {
      save_circuit(library_output, qdc::cluster_state_circuit(cluster_rows, cluster_cols));
      return kExitOk;
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
