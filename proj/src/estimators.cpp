#include "qdc/estimators.hpp"

#include <algorithm>
#include <bit>

namespace qdc {

namespace {

long long floor_log2(long long x) {
  return std::bit_width(static_cast<unsigned long long>(x)) - 1;
}

}  // namespace

long long photonic_oam_bs_count(int d1, int d2) {
  if (d1 < 2 || d2 < 2) throw InputError("qudit dimensions must be at least 2");
  return 2 * (floor_log2(d1 - 1) + floor_log2(d2 - 1)) + 2;
}

PhotonicEstimate photonic_estimate(int d1, int d2) {
  return {d1, d2, photonic_oam_bs_count(d1, d2), photonic_success_probability()};
}

Rational photonic_success_probability() { return {1, 4}; }

Rational photonic_compound_success(int n_gates) {
  if (n_gates < 0) throw InputError("gate count must be non-negative");
  if (n_gates > 31) throw InfeasibleError("compound success probability capped at 31 gates");
  return {1, 1LL << (2 * n_gates)};
}

double ion_circuit_error(const std::vector<IonGateCost>& gates, const IonErrorModel& model) {
  if (model.base_error <= 0.0 || model.embed_factor <= 0.0)
    throw InputError("ion error-model parameters must be positive");
  double survival = 1.0;
  for (const auto& gate : gates) {
    if (gate.angle_multiple <= 0.0 || gate.embed_factor <= 0.0)
      throw InputError("ion gate parameters must be positive");
    const double err = std::min(1.0, model.base_error * gate.angle_multiple * gate.embed_factor);
    survival *= 1.0 - err;
  }
  return std::clamp(1.0 - survival, 0.0, 1.0);
}

std::optional<double> IonScenario::error(const IonErrorModel& model) const {
  if (!angle_multiples) return std::nullopt;
  std::vector<IonGateCost> gates;
  gates.reserve(angle_multiples->size());
  for (double angle : *angle_multiples) gates.push_back({angle, embed_factor});
  return ion_circuit_error(gates, model);
}

std::vector<IonScenario> ion_scenarios() {
  std::vector<IonScenario> scenarios;
  scenarios.push_back({"qubit-13", 13, std::vector<double>(13, 1.0), 1.0,
                       "standard two-level decomposition, 13 two-qubit entangling gates"});
  scenarios.push_back({"aux-qubit-5", 5, std::nullopt, 1.0,
                       "auxiliary-level qubit circuit; rotation angles not published, supply "
                       "multiples to evaluate"});
  scenarios.push_back({"qudit-1", 1, std::vector<double>{4.0}, 1.0,
                       "two 5-level qudits, one entangling gate with a rotation angle "
                       "equivalent to 4 qubit gates"});
  return scenarios;
}

}  // namespace qdc
