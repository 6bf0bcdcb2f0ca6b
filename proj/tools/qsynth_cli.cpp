// qsynth: reward precomputation, synthesis runs and table/circuit inspection.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "qsynth/circuit.hpp"
#include "qsynth/config.hpp"
#include "qsynth/error.hpp"
#include "qsynth/qlearn.hpp"
#include "qsynth/report.hpp"
#include "qsynth/reward.hpp"
#include "qsynth/store.hpp"

namespace fs = std::filesystem;
using namespace qsynth;

namespace {

constexpr int kExitUnmet = 1;
constexpr int kExitError = 2;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
}

struct RunOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string graph;
};

RunConfig resolve(const RunOptions& opts) {
  RunConfig c = load_run_config(opts.config);
  if (opts.seed) c.train.seed = *opts.seed;
  if (!opts.out.empty()) c.output_dir = opts.out;
  if (!opts.graph.empty()) {
    if (!c.target_state.empty()) throw Error(ErrorCode::ConfigError, "--graph conflicts with target_state");
    c.graph = opts.graph;
  }
  fs::create_directories(c.output_dir);
  return c;
}

TableHeader header_for(const RunConfig& c, std::size_t num_actions, TableRole role) {
  return TableHeader{c.n, c.p, GateSet::parse(c.gate_set, c.n).tokens(), static_cast<int>(num_actions), role};
}

int cmd_reward_build(const RunOptions& opts) {
  const RunConfig c = resolve(opts);
  const Problem problem = build_problem(c);
  const auto actions = enumerate_actions(problem.gate_set);
  StateIndex index;
  const SparseTable r_sta = build_static_reward(problem.target, actions, c.train.reward, index);
  const fs::path path = c.output_dir / "r_sta.qtab";
  save(r_sta, index, header_for(c, actions.size(), TableRole::RSta), path);

  std::set<double> values;
  r_sta.for_each([&](StateId, int, double v) { values.insert(v); });
  std::cout << "entries " << r_sta.size() << "\nstates " << index.size() << "\nvalues";
  for (auto it = values.rbegin(); it != values.rend(); ++it) std::cout << ' ' << format_value(*it);
  std::cout << "\nwrote " << path.string() << "\n";
  return 0;
}

int cmd_synth(const RunOptions& opts) {
  const RunConfig c = resolve(opts);
  Trainer trainer(build_problem(c), c.train);
  const SynthesisResult result = trainer.synthesize();

  write_text(c.output_dir / "circuit.txt", export_circuit(result.circuit));
  write_text(c.output_dir / "report.json", run_report(c, result));
  const std::size_t na = trainer.actions().size();
  save(trainer.q(), trainer.index(), header_for(c, na, TableRole::Q), c.output_dir / "q.qtab");
  save(trainer.r_sta(), trainer.index(), header_for(c, na, TableRole::RSta), c.output_dir / "r_sta.qtab");
  save(trainer.r_dyn(), trainer.index(), header_for(c, na, TableRole::RDyn), c.output_dir / "r_dyn.qtab");

  const CircuitMetrics& m = result.metrics;
  std::cout << (result.converged ? "success" : "failure") << " batches " << result.batches << " gates "
            << m.gate_count << " depth " << m.depth << " bellman " << result.stats.mean_abs_delta << "\n";
  if (!result.converged) {
    std::cerr << error_token(ErrorCode::Unconverged) << ": no accepted rollout after " << result.batches
              << " batches; best attempt written\n";
    return kExitUnmet;
  }
  return 0;
}

int cmd_apply(const std::string& state_file, const std::string& circuit_file, int phase_bits) {
  const PhaseGrid grid{phase_bits};
  SweetState s = parse_state(read_text(state_file), grid);
  const Circuit circuit = parse_circuit(read_text(circuit_file), s.n());
  bool all_exact = true;
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    Action a = circuit.gates[i];
    ApplyOutcome out = apply_gate(s, a);
    if (!out.exact) {
      std::cout << "# gate " << i << " (" << to_string(a) << ") projected" << (out.snapped ? ", snapped" : "")
                << "\n";
      all_exact = false;
    }
    s = std::move(out.state);
  }
  std::cout << format_state(s) << "exact " << (all_exact ? "true" : "false") << "\n";
  return 0;
}

int cmd_metrics(const std::string& circuit_file) {
  const CircuitMetrics m = metrics(parse_circuit(read_text(circuit_file)));
  std::cout << "gate_count " << m.gate_count << "\nt_count " << m.t_count << "\nentangling_count "
            << m.entangling_count << "\ndepth " << m.depth << "\n";
  return 0;
}

int cmd_export(const std::string& snapshot, const std::string& csv) {
  const TableSnapshot snap = load(snapshot);
  export_csv(snap, csv);
  std::cout << "rows " << snap.entries.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tabular Q-learning synthesis of state-preparation circuits"};
  app.require_subcommand(1);

  RunOptions run;
  const auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--config", run.config, "run configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", run.seed, "override the configured seed");
    sub->add_option("--out", run.out, "output directory");
    sub->add_option("--graph", run.graph, "edge-list file for a graph-state target")->check(CLI::ExistingFile);
  };
  auto* reward = app.add_subcommand("reward-build", "build and save the static reward table");
  add_run_flags(reward);
  auto* synth = app.add_subcommand("synth", "train until an accepted rollout; write circuit, report and tables");
  add_run_flags(synth);

  std::string state_file, circuit_file, snapshot, csv;
  int phase_bits = 3;
  auto* apply = app.add_subcommand("apply", "apply a circuit to a state under SWEET semantics");
  apply->add_option("state", state_file, "state file (m:x per line)")->required()->check(CLI::ExistingFile);
  apply->add_option("circuit", circuit_file, "circuit file")->required()->check(CLI::ExistingFile);
  apply->add_option("--phase-bits", phase_bits, "phase qubits p (grid size 2^p)")->capture_default_str();
  auto* metrics_cmd = app.add_subcommand("metrics", "print circuit metrics");
  metrics_cmd->add_option("circuit", circuit_file, "circuit file")->required()->check(CLI::ExistingFile);
  auto* export_cmd = app.add_subcommand("export", "export a table snapshot as CSV");
  export_cmd->add_option("snapshot", snapshot, "snapshot file")->required()->check(CLI::ExistingFile);
  export_cmd->add_option("csv", csv, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) std::cerr << "UsageError: ";
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*reward) return cmd_reward_build(run);
    if (*synth) return cmd_synth(run);
    if (*apply) return cmd_apply(state_file, circuit_file, phase_bits);
    if (*metrics_cmd) return cmd_metrics(circuit_file);
    if (*export_cmd) return cmd_export(snapshot, csv);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << error_token(ErrorCode::IoFailure) << ": " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
