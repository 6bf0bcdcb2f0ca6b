#include "qsynth/actions.hpp"

#include <algorithm>
#include <sstream>

#include "qsynth/error.hpp"

namespace qsynth {

std::string_view gate_token(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::T: return "T";
    case GateKind::TDG: return "TDG";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
  }
  return "?";
}

GateKind parse_gate_token(std::string_view token) {
  if (token == "H") return GateKind::H;
  if (token == "T") return GateKind::T;
  if (token == "TDG") return GateKind::TDG;
  if (token == "CNOT") return GateKind::CNOT;
  if (token == "CZ") return GateKind::CZ;
  throw Error(ErrorCode::ConfigError, "unknown gate token '" + std::string(token) + "'");
}

Action Action::single(GateKind kind, int q, int index) {
  if (qsynth::arity(kind) != 1) {
    throw Error(ErrorCode::InvalidArgument, "gate needs two qubits");
  }
  if (q < 0 || q > 255) throw Error(ErrorCode::InvalidArgument, "qubit index out of range");
  Action a;
  a.kind = kind;
  a.qubits = {static_cast<std::uint8_t>(q), 0};
  a.index = index;
  return a;
}

Action Action::pair(GateKind kind, int a, int b, int index) {
  if (qsynth::arity(kind) != 2) {
    throw Error(ErrorCode::InvalidArgument, "gate takes one qubit");
  }
  if (a == b) throw Error(ErrorCode::InvalidArgument, "two-qubit gate needs distinct qubits");
  if (a < 0 || b < 0 || a > 255 || b > 255) {
    throw Error(ErrorCode::InvalidArgument, "qubit index out of range");
  }
  if (is_symmetric(kind) && a > b) std::swap(a, b);
  Action act;
  act.kind = kind;
  act.qubits = {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)};
  act.index = index;
  return act;
}

std::string to_string(const Action& action) {
  std::string out(gate_token(action.kind));
  out += ' ';
  out += std::to_string(action.qubits[0]);
  if (action.arity() == 2) {
    out += ' ';
    out += std::to_string(action.qubits[1]);
  }
  return out;
}

GateSet::GateSet(std::vector<GateKind> kinds, int n) : kinds_(std::move(kinds)), n_(n) {
  if (kinds_.empty()) throw Error(ErrorCode::ConfigError, "empty gate set");
  for (std::size_t i = 0; i < kinds_.size(); ++i) {
    for (std::size_t j = i + 1; j < kinds_.size(); ++j) {
      if (kinds_[i] == kinds_[j]) {
        throw Error(ErrorCode::ConfigError,
                    "duplicate gate token " + std::string(gate_token(kinds_[i])));
      }
    }
  }
  if (n_ < 1) throw Error(ErrorCode::ConfigError, "gate set needs at least one qubit");
  for (GateKind k : kinds_) {
    if (arity(k) > n_) {
      throw Error(ErrorCode::ConfigError,
                  std::string(gate_token(k)) + " needs more qubits than available");
    }
  }
}

GateSet GateSet::parse(std::string_view tokens, int n) {
  std::istringstream in{std::string(tokens)};
  std::vector<GateKind> kinds;
  std::string tok;
  while (in >> tok) kinds.push_back(parse_gate_token(tok));
  return GateSet(std::move(kinds), n);
}

bool GateSet::contains(GateKind kind) const {
  return std::find(kinds_.begin(), kinds_.end(), kind) != kinds_.end();
}

std::string GateSet::tokens() const {
  std::string out;
  for (GateKind k : kinds_) {
    if (!out.empty()) out += ' ';
    out += gate_token(k);
  }
  return out;
}

std::vector<Action> enumerate_actions(const GateSet& gate_set) {
  std::vector<Action> actions;
  const int n = gate_set.n();
  for (GateKind kind : gate_set.kinds()) {
    if (arity(kind) == 1) {
      for (int q = 0; q < n; ++q) {
        actions.push_back(Action::single(kind, q, static_cast<int>(actions.size())));
      }
      continue;
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        if (is_symmetric(kind) && b < a) continue;
        actions.push_back(Action::pair(kind, a, b, static_cast<int>(actions.size())));
      }
    }
  }
  return actions;
}

Action inverse_action(const Action& action) {
  Action inv = action;
  inv.index = -1;
  if (action.kind == GateKind::T) inv.kind = GateKind::TDG;
  else if (action.kind == GateKind::TDG) inv.kind = GateKind::T;
  return inv;
}

}  // namespace qsynth
