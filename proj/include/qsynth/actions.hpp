#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qsynth {

enum class GateKind : std::uint8_t { H, T, TDG, CNOT, CZ };

constexpr int arity(GateKind kind) {
  return (kind == GateKind::CNOT || kind == GateKind::CZ) ? 2 : 1;
}

// CZ(i,j) == CZ(j,i); every other two-qubit gate is control/target ordered.
constexpr bool is_symmetric(GateKind kind) { return kind == GateKind::CZ; }

std::string_view gate_token(GateKind kind);
GateKind parse_gate_token(std::string_view token);

// A gate applied to concrete qubits. `index` is the position in the
// enumerated action list, or -1 for actions built outside an enumeration.
struct Action {
  GateKind kind = GateKind::H;
  std::array<std::uint8_t, 2> qubits{0, 0};
  int index = -1;

  static Action single(GateKind kind, int q, int index = -1);
  static Action pair(GateKind kind, int a, int b, int index = -1);

  int arity() const { return qsynth::arity(kind); }
  bool touches(int q) const {
    return qubits[0] == q || (arity() == 2 && qubits[1] == q);
  }

  // Identity compares gate and qubits only; the enumeration index is metadata.
  friend bool operator==(const Action& a, const Action& b) {
    return a.kind == b.kind && a.qubits[0] == b.qubits[0] &&
           (a.arity() == 1 || a.qubits[1] == b.qubits[1]);
  }
};

std::string to_string(const Action& action);

class GateSet {
 public:
  GateSet(std::vector<GateKind> kinds, int n);

  // Parses whitespace-separated tokens from {H, T, TDG, CNOT, CZ}.
  static GateSet parse(std::string_view tokens, int n);

  const std::vector<GateKind>& kinds() const { return kinds_; }
  int n() const { return n_; }
  bool contains(GateKind kind) const;
  std::string tokens() const;

 private:
  std::vector<GateKind> kinds_;
  int n_;
};

// Kind order as given in the set, then lexicographic qubit tuples. CZ uses
// unordered pairs; CNOT uses all ordered pairs.
std::vector<Action> enumerate_actions(const GateSet& gate_set);

// T <-> TDG, everything else is self-inverse. The result carries index -1.
Action inverse_action(const Action& action);

}  // namespace qsynth
