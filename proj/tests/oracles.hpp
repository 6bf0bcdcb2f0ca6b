#pragma once

// Reference implementations used only by the tests. They share no code with
// the library beyond the public data types.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "qsynth/actions.hpp"
#include "qsynth/sweet.hpp"

namespace qsynth::oracle {

using Vec = std::vector<std::complex<double>>;
using Mat2 = std::array<std::array<std::complex<double>, 2>, 2>;

inline Vec dense(const SweetState& s) {
  Vec v(std::size_t{1} << s.n(), 0.0);
  const double m_size = s.grid().size();
  for (Slot slot : s.slots()) {
    const double angle = 2.0 * std::numbers::pi * s.phase_of(slot) / m_size;
    v[s.basis_of(slot)] = {std::cos(angle), std::sin(angle)};
  }
  return v;
}

// Qubit q is bit (n-1-q) of the index.
inline int bit_of(std::size_t x, int q, int n) { return static_cast<int>((x >> (n - 1 - q)) & 1); }

inline Vec apply_single(const Vec& in, int n, int q, const Mat2& u) {
  Vec out(in.size(), 0.0);
  for (std::size_t x = 0; x < in.size(); ++x) {
    const int b = bit_of(x, q, n);
    const std::size_t flip = x ^ (std::size_t{1} << (n - 1 - q));
    // out[x] = sum_b' u[b][b'] in[x with bit b']
    out[x] += u[b][b] * in[x];
    out[x] += u[b][1 - b] * in[flip];
  }
  return out;
}

// Matrix-based gate application, written independently of the library.
inline Vec apply_dense(const Vec& in, int n, const Action& a) {
  const double r = 1.0 / std::sqrt(2.0);
  const std::complex<double> w = std::exp(std::complex<double>(0, std::numbers::pi / 4));
  switch (a.kind) {
    case GateKind::H: return apply_single(in, n, a.qubits[0], Mat2{{{r, r}, {r, -r}}});
    case GateKind::T: return apply_single(in, n, a.qubits[0], Mat2{{{1.0, 0.0}, {0.0, w}}});
    case GateKind::TDG: return apply_single(in, n, a.qubits[0], Mat2{{{1.0, 0.0}, {0.0, std::conj(w)}}});
    case GateKind::CZ: {
      Vec out = in;
      for (std::size_t x = 0; x < in.size(); ++x) {
        if (bit_of(x, a.qubits[0], n) && bit_of(x, a.qubits[1], n)) out[x] = -in[x];
      }
      return out;
    }
    case GateKind::CNOT: {
      Vec out(in.size());
      for (std::size_t x = 0; x < in.size(); ++x) {
        std::size_t y = x;
        if (bit_of(x, a.qubits[0], n)) y ^= std::size_t{1} << (n - 1 - a.qubits[1]);
        out[y] = in[x];
      }
      return out;
    }
  }
  return in;
}

// a == c * b for some nonzero complex c.
inline bool proportional(const Vec& a, const Vec& b, double tol = 1e-9) {
  std::complex<double> num = 0;
  double den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::conj(b[i]) * a[i];
    den += std::norm(b[i]);
  }
  if (den == 0 || std::abs(num) < tol) return false;
  const auto c = num / den;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - c * b[i]) > tol * std::max(1.0, std::abs(c))) return false;
  }
  return true;
}

// Random valid SWEET state: each basis string kept with probability 1/2,
// with a uniform grid phase; never empty.
inline SweetState random_state(std::mt19937_64& rng, int n, PhaseGrid grid) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> terms;
  std::uniform_int_distribution<std::uint32_t> phase(0, grid.size() - 1);
  while (terms.empty()) {
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
      if (rng() & 1) terms.emplace_back(phase(rng), x);
    }
  }
  return SweetState::canonicalize(std::move(terms), n, grid);
}

// Every valid SWEET state for small (n, p): (M+1)^(2^n) - 1 of them.
inline std::vector<SweetState> all_states(int n, PhaseGrid grid) {
  const std::uint32_t dim = 1u << n;
  const std::uint32_t base = grid.size() + 1;
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < dim; ++i) total *= base;
  std::vector<SweetState> out;
  for (std::uint64_t code = 1; code < total; ++code) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> terms;
    std::uint64_t c = code;
    for (std::uint32_t x = 0; x < dim; ++x, c /= base) {
      if (c % base) terms.emplace_back(static_cast<std::uint32_t>(c % base - 1), x);
    }
    out.push_back(SweetState::canonicalize(std::move(terms), n, grid));
  }
  return out;
}

using RewardMap = std::map<std::pair<StateKey, int>, double>;

// Depth-first recursion over inverse applications: every walk of length
// k+1 from the target assigns R_max / 2^k to its last (state, action) pair,
// keeping the maximum.
inline RewardMap recursive_static_reward(const SweetState& target, const std::vector<Action>& actions,
                                         double r_max, int k_max) {
  RewardMap out;
  std::function<void(const SweetState&, int)> assign = [&](const SweetState& s, int k) {
    for (const Action& a : actions) {
      const SweetState pred = apply_gate(s, inverse_action(a)).state;
      if (pred == s || !(apply_gate(pred, a).state == s)) continue;
      const double value = r_max / static_cast<double>(1u << k);
      auto& slot = out[{encode_state_key(pred), a.index}];
      slot = std::max(slot, value);
      if (k + 1 < k_max) assign(pred, k + 1);
    }
  };
  assign(target, 0);
  return out;
}

// Forward brute force over a full state list: (s, a) earns R_max / 2^k when
// a moves s into the set of states with a length-k walk to the target.
inline RewardMap forward_static_reward(const std::vector<SweetState>& states, const SweetState& target,
                                       const std::vector<Action>& actions, double r_max, int k_max) {
  RewardMap out;
  std::set<StateKey> level{encode_state_key(target)};
  for (int k = 0; k < k_max; ++k) {
    std::set<StateKey> next;
    for (const SweetState& s : states) {
      for (const Action& a : actions) {
        const SweetState t = apply_gate(s, a).state;
        if (t == s || !level.contains(encode_state_key(t))) continue;
        auto& slot = out[{encode_state_key(s), a.index}];
        slot = std::max(slot, r_max / static_cast<double>(1u << k));
        next.insert(encode_state_key(s));
      }
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace qsynth::oracle
