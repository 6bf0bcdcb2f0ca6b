#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsynth/actions.hpp"

namespace qsynth {

struct Circuit {
  int n = 0;
  std::vector<Action> gates;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

struct CircuitMetrics {
  int gate_count = 0;
  int t_count = 0;  // T and TDG
  int entangling_count = 0;
  int depth = 0;

  friend bool operator==(const CircuitMetrics&, const CircuitMetrics&) = default;
};

// Depth is order-preserving ASAP layering: two gates conflict iff they
// share a qubit.
CircuitMetrics metrics(const Circuit& circuit);

constexpr int kDefaultSimulationCap = 12;

// Dense state-vector evolution; qubit 0 is the most significant index bit.
std::vector<std::complex<double>> simulate_full(const Circuit& circuit,
                                                std::span<const std::complex<double>> initial,
                                                int qubit_cap = kDefaultSimulationCap);

// One gate per line, e.g. "CNOT 0 1".
std::string export_circuit(const Circuit& circuit);
// Blank lines and '#' comments are skipped. Qubits must be < n.
Circuit parse_circuit(std::string_view text, int n);
// Like parse_circuit, with n = 1 + the largest qubit index seen (min 1).
Circuit parse_circuit(std::string_view text);

}  // namespace qsynth
