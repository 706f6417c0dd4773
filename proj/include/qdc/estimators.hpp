#pragma once

#include "qdc/compressor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qdc {

struct PhotonicEstimate {
  int d1 = 2;
  int d2 = 2;
  long long oam_bs_upper_bound = 2;
  Rational success_probability{1, 4};
};

/// Upper bound on the OAM beam splitters needed for a two-qudit controlled
/// phase gate: 2 * (floor(log2(d1-1)) + floor(log2(d2-1))) + 2.
long long photonic_oam_bs_count(int d1, int d2);

PhotonicEstimate photonic_estimate(int d1, int d2);

/// Exactly 1/4, independent of the qudit dimensions.
Rational photonic_success_probability();

/// (1/4)^n for n independent sequential gates; n capped at 31 so the exact
/// rational fits in 64 bits.
Rational photonic_compound_success(int n_gates);

struct IonErrorModel {
  double base_error = 0.01;   // per two-qubit-equivalent entangling gate
  double embed_factor = 2.0;  // penalty for embedded qubit gates in qudits
};

struct IonGateCost {
  double angle_multiple = 1.0;  // two-qubit-equivalent rotation content
  double embed_factor = 1.0;
};

/// 1 - prod_i (1 - base * angle_i * factor_i), clamped to [0, 1].
double ion_circuit_error(const std::vector<IonGateCost>& gates, const IonErrorModel& model);

struct IonScenario {
  std::string name;
  int nonlocal_gates = 0;
  // Unset when no per-gate rotation content is established for the scenario;
  // callers may supply their own multiples.
  std::optional<std::vector<double>> angle_multiples;
  double embed_factor = 1.0;
  std::string note;

  std::optional<double> error(const IonErrorModel& model) const;
};

/// The three 4-qubit controlled-phase-flip scenarios: 13 plain qubit gates,
/// 5 gates with an auxiliary level, and 1 two-qudit gate of 4x rotation.
std::vector<IonScenario> ion_scenarios();

}  // namespace qdc
