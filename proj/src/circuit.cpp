#include "qsynth/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qsynth/error.hpp"

namespace qsynth {

CircuitMetrics metrics(const Circuit& circuit) {
  CircuitMetrics m;
  std::vector<int> layer(static_cast<std::size_t>(std::max(circuit.n, 0)), 0);
  for (const Action& g : circuit.gates) {
    ++m.gate_count;
    if (g.kind == GateKind::T || g.kind == GateKind::TDG) ++m.t_count;
    if (g.arity() == 2) ++m.entangling_count;
    int at = 0;
    for (int i = 0; i < g.arity(); ++i) at = std::max(at, layer.at(g.qubits[i]));
    ++at;
    for (int i = 0; i < g.arity(); ++i) layer[g.qubits[i]] = at;
    m.depth = std::max(m.depth, at);
  }
  return m;
}

std::vector<std::complex<double>> simulate_full(const Circuit& circuit,
                                                std::span<const std::complex<double>> initial,
                                                int qubit_cap) {
  const int n = circuit.n;
  if (n > qubit_cap) throw Error(ErrorCode::CapExceeded, "circuit exceeds dense simulation cap");
  const std::size_t dim = std::size_t{1} << n;
  if (initial.size() != dim) throw Error(ErrorCode::InvalidArgument, "initial vector has wrong dimension");

  std::vector<std::complex<double>> psi(initial.begin(), initial.end());
  const auto bit = [n](int q) { return std::size_t{1} << (n - 1 - q); };
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  const std::complex<double> t_phase = std::polar(1.0, std::numbers::pi / 4);

  for (const Action& g : circuit.gates) {
    for (int i = 0; i < g.arity(); ++i) {
      if (g.qubits[i] >= n) throw Error(ErrorCode::InvalidArgument, "gate qubit >= n");
    }
    switch (g.kind) {
      case GateKind::H: {
        const std::size_t b = bit(g.qubits[0]);
        for (std::size_t x = 0; x < dim; ++x) {
          if (x & b) continue;
          const auto a0 = psi[x];
          const auto a1 = psi[x | b];
          psi[x] = inv_sqrt2 * (a0 + a1);
          psi[x | b] = inv_sqrt2 * (a0 - a1);
        }
        break;
      }
      case GateKind::T:
      case GateKind::TDG: {
        const std::size_t b = bit(g.qubits[0]);
        const auto phase = g.kind == GateKind::T ? t_phase : std::conj(t_phase);
        for (std::size_t x = 0; x < dim; ++x) {
          if (x & b) psi[x] *= phase;
        }
        break;
      }
      case GateKind::CZ: {
        const std::size_t mask = bit(g.qubits[0]) | bit(g.qubits[1]);
        for (std::size_t x = 0; x < dim; ++x) {
          if ((x & mask) == mask) psi[x] = -psi[x];
        }
        break;
      }
      case GateKind::CNOT: {
        const std::size_t c = bit(g.qubits[0]);
        const std::size_t t = bit(g.qubits[1]);
        for (std::size_t x = 0; x < dim; ++x) {
          if ((x & c) && !(x & t)) std::swap(psi[x], psi[x | t]);
        }
        break;
      }
    }
  }
  return psi;
}

std::string export_circuit(const Circuit& circuit) {
  std::string out;
  for (const Action& g : circuit.gates) {
    out += to_string(g);
    out += '\n';
  }
  return out;
}

namespace {

Circuit parse_impl(std::string_view text, int n) {
  Circuit c;
  c.n = n;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  int max_qubit = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;
    const auto bad = [&](const std::string& why) {
      return Error(ErrorCode::MalformedLine, "line " + std::to_string(lineno) + ": " + why);
    };
    GateKind kind;
    try {
      kind = parse_gate_token(token);
    } catch (const Error&) {
      throw bad("unknown gate '" + token + "'");
    }
    int q[2] = {-1, -1};
    for (int i = 0; i < arity(kind); ++i) {
      if (!(fields >> q[i]) || q[i] < 0) throw bad("expected qubit index");
      if (n >= 0 && q[i] >= n) throw bad("qubit index out of range");
      max_qubit = std::max(max_qubit, q[i]);
    }
    std::string extra;
    if (fields >> extra) throw bad("trailing text '" + extra + "'");
    try {
      c.gates.push_back(arity(kind) == 1 ? Action::single(kind, q[0]) : Action::pair(kind, q[0], q[1]));
    } catch (const Error& e) {
      throw bad(e.what());
    }
  }
  if (n < 0) c.n = std::max(1, max_qubit + 1);
  return c;
}

}  // namespace

Circuit parse_circuit(std::string_view text, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "circuit needs n >= 1");
  return parse_impl(text, n);
}

Circuit parse_circuit(std::string_view text) { return parse_impl(text, -1); }

}  // namespace qsynth
