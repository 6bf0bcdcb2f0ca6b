#include "qsynth/qlearn.hpp"

#include <numeric>
#include <tuple>

#include "qsynth/error.hpp"

namespace qsynth {

void TrainConfig::validate() const {
  const auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(epsilon) || !unit(alpha) || !unit(gamma)) {
    throw Error(ErrorCode::ConfigError, "epsilon, alpha and gamma must lie in [0, 1]");
  }
  if (episode_length < 1) throw Error(ErrorCode::ConfigError, "episode_length must be >= 1");
  if (rollout_cap < 1) throw Error(ErrorCode::ConfigError, "rollout_cap must be >= 1");
  if (episodes_per_batch < 1) throw Error(ErrorCode::ConfigError, "episodes_per_batch must be >= 1");
  if (max_batches < 1) throw Error(ErrorCode::ConfigError, "max_batches must be >= 1");
  if (reward.r_max <= 0) throw Error(ErrorCode::ConfigError, "r_max must be positive");
  if (reward.k_max < 1) throw Error(ErrorCode::ConfigError, "k_max must be >= 1");
  if (penalty.revisit_coeff < 0 || penalty.noop_coeff < 0 || penalty.congestion_coeff < 0) {
    throw Error(ErrorCode::ConfigError, "penalty coefficients must be non-negative");
  }
  if (bellman_window < 1) throw Error(ErrorCode::ConfigError, "bellman_window must be >= 1");
  if (accept_max_gates < 0 || accept_max_depth < 0) {
    throw Error(ErrorCode::ConfigError, "acceptance limits must be non-negative");
  }
}

BellmanWindow::BellmanWindow(std::size_t capacity) : values_(capacity, 0.0) {
  if (capacity == 0) throw Error(ErrorCode::InvalidArgument, "window capacity must be positive");
}

void BellmanWindow::record(double delta) {
  values_[next_] = std::abs(delta);
  next_ = (next_ + 1) % values_.size();
  filled_ = std::min(filled_ + 1, values_.size());
}

double BellmanWindow::mean() const {
  if (filled_ == 0) return 0.0;
  // Unfilled slots are zero, so summing the whole buffer is exact.
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(filled_);
}

int select_action(const SparseTable& q, StateId s, int num_actions, double epsilon, Rng& rng) {
  if (num_actions < 1) throw Error(ErrorCode::InvalidArgument, "empty action list");
  if (rng.uniform() < epsilon) return static_cast<int>(rng.below(static_cast<std::uint64_t>(num_actions)));
  return q.argmax(s, num_actions);
}

double q_update(SparseTable& q, StateId s, int action, double reward, StateId s_next,
                int num_actions, double alpha, double gamma) {
  const double current = q.get(s, action);
  const double delta = reward + gamma * q.max_value(s_next, num_actions) - current;
  q.set(s, action, current + alpha * delta);
  return delta;
}

RolloutResult greedy_rollout(const SparseTable& q, const StateIndex& index, const SweetState& s0,
                             const SweetState& target, std::span<const Action> actions,
                             int rollout_cap) {
  RolloutResult r;
  r.final_state = s0;
  const int num_actions = static_cast<int>(actions.size());
  while (!(r.final_state == target) && r.steps < rollout_cap) {
    int a = 0;
    if (auto id = index.find(encode_state_key(r.final_state))) a = q.argmax(*id, num_actions);
    r.final_state = apply_gate(r.final_state, actions[a]).state;
    r.actions.push_back(actions[a]);
    ++r.steps;
  }
  r.success = r.final_state == target;
  return r;
}

double mean_bellman_error(const TrainStats& stats) { return stats.mean_abs_delta; }

Circuit to_circuit(int n, std::span<const Action> actions) {
  Circuit c;
  c.n = n;
  c.gates.assign(actions.begin(), actions.end());
  return c;
}

Trainer::Trainer(Problem problem, TrainConfig config)
    : problem_(std::move(problem)),
      config_(config),
      ctx_(problem_.initial.n()),
      window_(static_cast<std::size_t>(std::max(config.bellman_window, 1))) {
  config_.validate();
  const int n = problem_.initial.n();
  if (problem_.target.n() != n || problem_.gate_set.n() != n) {
    throw Error(ErrorCode::ConfigError, "initial state, target and gate set disagree on n");
  }
  if (!(problem_.target.grid() == problem_.initial.grid())) {
    throw Error(ErrorCode::GridMismatch, "initial and target states use different phase grids");
  }
  actions_ = enumerate_actions(problem_.gate_set);
  if (actions_.size() > 0xFFFF) throw Error(ErrorCode::CapExceeded, "too many actions");
  r_sta_ = build_static_reward(problem_.target, actions_, config_.reward, index_);
  s0_id_ = index_.intern(encode_state_key(problem_.initial));
}

void Trainer::run_episode(Rng& rng) {
  const int num_actions = static_cast<int>(actions_.size());
  const double r_max = config_.reward.r_max;
  SweetState s = problem_.initial;
  StateId sid = s0_id_;
  ctx_.reset(sid);
  for (int t = 0; t < config_.episode_length; ++t) {
    const Action& a = actions_[select_action(q_, sid, num_actions, config_.epsilon, rng)];
    SweetState next = apply_gate(s, a).state;
    const StateId nid = index_.intern(encode_state_key(next));
    dynamic_penalty(ctx_, sid, a, nid, r_sta_.get(sid, a.index), config_.penalty, r_max, r_dyn_);
    const double reward = total_reward(r_sta_, r_dyn_, sid, a.index);
    window_.record(q_update(q_, sid, a.index, reward, nid, num_actions, config_.alpha, config_.gamma));
    ctx_.advance(nid, a);
    s = std::move(next);
    sid = nid;
    ++steps_;
  }
  ++episodes_;
}

void Trainer::run_batch() {
  for (int e = 0; e < config_.episodes_per_batch; ++e) {
    Rng rng = Rng::substream(config_.seed, static_cast<std::uint64_t>(episodes_));
    run_episode(rng);
  }
}

RolloutResult Trainer::rollout() const {
  return greedy_rollout(q_, index_, problem_.initial, problem_.target, actions_, config_.rollout_cap);
}

bool Trainer::accepts(const RolloutResult& r) const {
  if (!r.success) return false;
  const CircuitMetrics m = metrics(to_circuit(problem_.initial.n(), r.actions));
  if (config_.accept_max_gates > 0 && m.gate_count > config_.accept_max_gates) return false;
  if (config_.accept_max_depth > 0 && m.depth > config_.accept_max_depth) return false;
  return true;
}

TrainStats Trainer::stats() const {
  TrainStats s;
  s.episodes = episodes_;
  s.steps = steps_;
  s.mean_abs_delta = window_.mean();
  s.q_entries = q_.size();
  s.r_sta_entries = r_sta_.size();
  s.r_dyn_entries = r_dyn_.size();
  s.states = index_.size();
  return s;
}

SynthesisResult Trainer::synthesize() {
  SynthesisResult result;
  const int n = problem_.initial.n();
  bool have_best = false;
  std::tuple<int, int> best_rank{0, 0};
  for (int b = 1; b <= config_.max_batches; ++b) {
    run_batch();
    RolloutResult r = rollout();
    const CircuitMetrics m = metrics(to_circuit(n, r.actions));
    const bool ok = accepts(r);
    result.history.push_back({b, r.success, ok, m.gate_count, m.depth});
    result.batches = b;
    // Best attempt so far: reached the target with the shallowest, then smallest, circuit.
    const std::tuple<int, int> rank{m.depth, m.gate_count};
    if (ok || !have_best || (r.success && (!result.rollout.success || rank < best_rank))) {
      have_best = true;
      best_rank = rank;
      result.rollout = std::move(r);
    }
    if (ok) {
      result.converged = true;
      break;
    }
  }
  result.circuit = to_circuit(n, result.rollout.actions);
  result.metrics = metrics(result.circuit);
  result.stats = stats();
  return result;
}

SynthesisResult synthesize(const Problem& problem, const TrainConfig& config) {
  Trainer trainer(problem, config);
  return trainer.synthesize();
}

}  // namespace qsynth
