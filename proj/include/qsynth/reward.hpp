#pragma once

#include <absl/container/flat_hash_set.h>

#include <span>
#include <vector>

#include "qsynth/actions.hpp"
#include "qsynth/sweet.hpp"
#include "qsynth/table.hpp"

namespace qsynth {

struct StaticRewardConfig {
  double r_max = 10000.0;
  int k_max = 2;  // number of strata
};

// Penalty magnitudes are fractions of R_max.
struct PenaltyConfig {
  bool revisit_enabled = true;
  bool noop_enabled = true;
  bool congestion_enabled = false;
  double revisit_coeff = 1e-4;
  double noop_coeff = 1e-3;
  double congestion_coeff = 1e-4;
};

// Per-episode bookkeeping for the dynamic penalties.
class EpisodeContext {
 public:
  explicit EpisodeContext(int n) : counters_(static_cast<std::size_t>(n), 0) {}

  void reset(StateId s0);
  // Commits a_t: marks s_next visited, bumps the counters of a_t's qubits.
  void advance(StateId s_next, const Action& a_t);

  bool visited(StateId s) const { return visited_.contains(s); }
  const std::vector<int>& counters() const { return counters_; }
  int step() const { return t_; }

 private:
  absl::flat_hash_set<StateId> visited_;
  std::vector<int> counters_;
  int t_ = 0;
};

// Throws GridMismatch if any action (or its inverse) needs a finer grid.
void check_grid_supports(std::span<const Action> actions, PhaseGrid grid);

// Layered static reward. Stratum k (0 <= k < k_max) gives R_max / 2^k to
// (s, a) when a maps s onto a state of the stratum-k frontier, whose
// frontier is the set of predecessors found at stratum k-1 (the target for
// k = 0). Entries are only raised. Inverse steps that fix the state, or whose
// forward gate does not lead back, are skipped.
SparseTable build_static_reward(const SweetState& target, std::span<const Action> actions,
                                const StaticRewardConfig& cfg, StateIndex& index);

// Max prior usage count over the action's qubits.
int congestion_level(const EpisodeContext& ctx, const Action& a_t);

// Applies the no-op / revisit / congestion penalties for (s_t, a_t) into
// r_dyn and returns the change (always <= 0).
double dynamic_penalty(const EpisodeContext& ctx, StateId s_t, const Action& a_t, StateId s_next,
                       double r_sta_value, const PenaltyConfig& pcfg, double r_max,
                       SparseTable& r_dyn);

}  // namespace qsynth
