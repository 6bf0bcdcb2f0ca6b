#include "qsynth/reward.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <cmath>

#include "qsynth/error.hpp"

namespace qsynth {

void EpisodeContext::reset(StateId s0) {
  visited_.clear();
  visited_.insert(s0);
  std::fill(counters_.begin(), counters_.end(), 0);
  t_ = 0;
}

void EpisodeContext::advance(StateId s_next, const Action& a_t) {
  visited_.insert(s_next);
  for (int i = 0; i < a_t.arity(); ++i) ++counters_.at(a_t.qubits[i]);
  ++t_;
}

void check_grid_supports(std::span<const Action> actions, PhaseGrid grid) {
  for (const Action& a : actions) {
    if ((a.kind == GateKind::T || a.kind == GateKind::TDG) && grid.size() < 8) {
      throw Error(ErrorCode::GridMismatch, "T/TDG actions need at least 3 phase bits");
    }
    if (a.kind == GateKind::CZ && grid.size() < 2) {
      throw Error(ErrorCode::GridMismatch, "CZ actions need at least 1 phase bit");
    }
  }
}

SparseTable build_static_reward(const SweetState& target, std::span<const Action> actions,
                                const StaticRewardConfig& cfg, StateIndex& index) {
  if (cfg.r_max <= 0) throw Error(ErrorCode::InvalidArgument, "R_max must be positive");
  if (cfg.k_max < 1) throw Error(ErrorCode::InvalidArgument, "k_max must be >= 1");
  check_grid_supports(actions, target.grid());

  SparseTable table;
  std::vector<SweetState> frontier{target};
  for (int k = 0; k < cfg.k_max; ++k) {
    const double value = std::ldexp(cfg.r_max, -k);
    absl::flat_hash_map<StateKey, std::size_t> seen;
    std::vector<SweetState> next;
    for (const SweetState& s : frontier) {
      for (const Action& a : actions) {
        SweetState pred = apply_gate(s, inverse_action(a)).state;
        if (pred == s) continue;
        if (!(apply_gate(pred, a).state == s)) continue;
        StateKey key = encode_state_key(pred);
        const StateId id = index.intern(key);
        if (table.get(id, a.index) < value) table.set(id, a.index, value);
        if (seen.emplace(std::move(key), next.size()).second) next.push_back(std::move(pred));
      }
    }
    frontier = std::move(next);
  }
  return table;
}

int congestion_level(const EpisodeContext& ctx, const Action& a_t) {
  int level = 0;
  for (int i = 0; i < a_t.arity(); ++i) level = std::max(level, ctx.counters().at(a_t.qubits[i]));
  return level;
}

double dynamic_penalty(const EpisodeContext& ctx, StateId s_t, const Action& a_t, StateId s_next,
                       double r_sta_value, const PenaltyConfig& pcfg, double r_max,
                       SparseTable& r_dyn) {
  double delta = 0.0;
  if (s_next == s_t) {
    if (pcfg.noop_enabled) delta -= r_max * pcfg.noop_coeff;
  } else if (pcfg.revisit_enabled && ctx.visited(s_next) && r_sta_value == 0.0) {
    delta -= r_max * pcfg.revisit_coeff;
  }
  if (pcfg.congestion_enabled &&
      static_cast<double>(congestion_level(ctx, a_t)) > static_cast<double>(ctx.step()) / 2.0) {
    delta -= r_max * pcfg.congestion_coeff;
  }
  if (delta != 0.0) r_dyn.add(s_t, a_t.index, delta);
  return delta;
}

}  // namespace qsynth
