#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsynth/actions.hpp"
#include "qsynth/circuit.hpp"
#include "qsynth/reward.hpp"
#include "qsynth/rng.hpp"
#include "qsynth/sweet.hpp"
#include "qsynth/table.hpp"

namespace qsynth {

struct TrainConfig {
  double epsilon = 0.8;
  double alpha = 0.8;
  double gamma = 0.5;
  int episodes_per_batch = 10000;
  int episode_length = 50;
  int max_batches = 10;
  int rollout_cap = 50;  // l_c
  std::uint64_t seed = 0;
  PenaltyConfig penalty;
  StaticRewardConfig reward;
  int bellman_window = 10000;
  // Optional extra requirements on a successful rollout; 0 disables.
  int accept_max_gates = 0;
  int accept_max_depth = 0;

  void validate() const;
};

struct TrainStats {
  std::int64_t episodes = 0;
  std::int64_t steps = 0;
  double mean_abs_delta = 0.0;  // over the last bellman_window steps
  std::size_t q_entries = 0;
  std::size_t r_sta_entries = 0;
  std::size_t r_dyn_entries = 0;
  std::size_t states = 0;
};

struct RolloutResult {
  bool success = false;
  std::vector<Action> actions;
  SweetState final_state;
  int steps = 0;
};

struct Problem {
  SweetState initial;
  SweetState target;
  GateSet gate_set;
};

struct BatchRecord {
  int batch = 0;
  bool reached_target = false;
  bool accepted = false;
  int gate_count = 0;
  int depth = 0;
};

struct SynthesisResult {
  bool converged = false;
  int batches = 0;
  RolloutResult rollout;  // accepted rollout, or the best attempt
  Circuit circuit;
  CircuitMetrics metrics;
  TrainStats stats;
  std::vector<BatchRecord> history;
};

// Sliding window of |TD error| values.
class BellmanWindow {
 public:
  explicit BellmanWindow(std::size_t capacity);
  void record(double delta);
  double mean() const;
  std::size_t count() const { return filled_; }

 private:
  std::vector<double> values_;
  std::size_t next_ = 0;
  std::size_t filled_ = 0;
};

// Epsilon-greedy; exploitation takes argmax with ties to the lowest index.
int select_action(const SparseTable& q, StateId s, int num_actions, double epsilon, Rng& rng);

// One TD step; returns delta = r + gamma * max_a' Q(s', a') - Q(s, a).
double q_update(SparseTable& q, StateId s, int action, double reward, StateId s_next,
                int num_actions, double alpha, double gamma);

// Follows argmax actions from s0 until target or rollout_cap steps. Q is
// read-only; states unknown to the index have an all-zero row.
RolloutResult greedy_rollout(const SparseTable& q, const StateIndex& index, const SweetState& s0,
                             const SweetState& target, std::span<const Action> actions,
                             int rollout_cap);

double mean_bellman_error(const TrainStats& stats);

Circuit to_circuit(int n, std::span<const Action> actions);

// Owns the tables of one synthesis problem: builds the static reward, trains
// in batches and tests with greedy rollouts.
class Trainer {
 public:
  Trainer(Problem problem, TrainConfig config);

  const std::vector<Action>& actions() const { return actions_; }
  const Problem& problem() const { return problem_; }
  const TrainConfig& config() const { return config_; }

  // One fixed-length episode from the initial state.
  void run_episode(Rng& rng);
  // episodes_per_batch episodes on per-episode substreams of the seed.
  void run_batch();
  RolloutResult rollout() const;
  bool accepts(const RolloutResult& r) const;
  // Train/test loop until an accepted rollout or max_batches.
  SynthesisResult synthesize();

  TrainStats stats() const;
  const StateIndex& index() const { return index_; }
  const SparseTable& q() const { return q_; }
  const SparseTable& r_sta() const { return r_sta_; }
  const SparseTable& r_dyn() const { return r_dyn_; }
  StateId initial_id() const { return s0_id_; }

 private:
  Problem problem_;
  TrainConfig config_;
  std::vector<Action> actions_;
  StateIndex index_;
  SparseTable q_;
  SparseTable r_sta_;
  SparseTable r_dyn_;
  StateId s0_id_ = 0;
  EpisodeContext ctx_;
  BellmanWindow window_;
  std::int64_t episodes_ = 0;
  std::int64_t steps_ = 0;
};

SynthesisResult synthesize(const Problem& problem, const TrainConfig& config);

}  // namespace qsynth
