#include "qsynth/report.hpp"

#include <json.hpp>

namespace qsynth {

std::string run_report(const RunConfig& config, const SynthesisResult& result) {
  using nlohmann::ordered_json;
  const TrainConfig& t = config.train;

  ordered_json hyper;
  hyper["n"] = config.n;
  hyper["p"] = config.p;
  hyper["gate_set"] = config.gate_set;
  hyper["epsilon"] = t.epsilon;
  hyper["alpha"] = t.alpha;
  hyper["gamma"] = t.gamma;
  hyper["r_max"] = t.reward.r_max;
  hyper["k_max"] = t.reward.k_max;
  hyper["episodes_per_batch"] = t.episodes_per_batch;
  hyper["episode_length"] = t.episode_length;
  hyper["max_batches"] = t.max_batches;
  hyper["rollout_cap"] = t.rollout_cap;
  hyper["seed"] = t.seed;
  hyper["penalty_revisit"] = t.penalty.revisit_enabled;
  hyper["penalty_noop"] = t.penalty.noop_enabled;
  hyper["penalty_congestion"] = t.penalty.congestion_enabled;
  hyper["bellman_window"] = t.bellman_window;
  hyper["accept_max_gates"] = t.accept_max_gates;
  hyper["accept_max_depth"] = t.accept_max_depth;

  ordered_json history = ordered_json::array();
  for (const BatchRecord& b : result.history) {
    history.push_back({{"batch", b.batch},
                       {"reached_target", b.reached_target},
                       {"accepted", b.accepted},
                       {"gate_count", b.gate_count},
                       {"depth", b.depth}});
  }

  ordered_json gates = ordered_json::array();
  for (const Action& a : result.circuit.gates) gates.push_back(to_string(a));

  ordered_json report;
  report["hyperparameters"] = hyper;
  report["success"] = result.converged;
  report["reached_target"] = result.rollout.success;
  report["batches"] = result.batches;
  report["episodes"] = result.stats.episodes;
  report["steps"] = result.stats.steps;
  report["circuit"] = gates;
  report["metrics"] = {{"gate_count", result.metrics.gate_count},
                       {"t_count", result.metrics.t_count},
                       {"entangling_count", result.metrics.entangling_count},
                       {"depth", result.metrics.depth}};
  report["mean_abs_bellman_error"] = result.stats.mean_abs_delta;
  report["entries"] = {{"q", result.stats.q_entries},
                       {"r_sta", result.stats.r_sta_entries},
                       {"r_dyn", result.stats.r_dyn_entries},
                       {"states", result.stats.states}};
  report["history"] = history;
  return report.dump(2) + "\n";
}

}  // namespace qsynth
