#include "qsynth/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "qsynth/error.hpp"

namespace qsynth {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto res = std::from_chars(value.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) {
    throw Error(ErrorCode::ConfigError, key + ": not a number: '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw Error(ErrorCode::ConfigError, key + ": expected on/off, got '" + value + "'");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

}  // namespace

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig c;
  TrainConfig& t = c.train;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter, std::less<>> setters = {
      {"n", [&](auto& k, auto& v) { c.n = parse_number<int>(k, v); }},
      {"p", [&](auto& k, auto& v) { c.p = parse_number<int>(k, v); }},
      {"gate_set", [&](auto&, auto& v) { c.gate_set = v; }},
      {"initial_state", [&](auto&, auto& v) { c.initial_state = v; }},
      {"target_state", [&](auto&, auto& v) { c.target_state = v; }},
      {"graph", [&](auto&, auto& v) { c.graph = base_dir / std::filesystem::path(v); }},
      {"output_dir", [&](auto&, auto& v) { c.output_dir = v; }},
      {"epsilon", [&](auto& k, auto& v) { t.epsilon = parse_number<double>(k, v); }},
      {"alpha", [&](auto& k, auto& v) { t.alpha = parse_number<double>(k, v); }},
      {"gamma", [&](auto& k, auto& v) { t.gamma = parse_number<double>(k, v); }},
      {"r_max", [&](auto& k, auto& v) { t.reward.r_max = parse_number<double>(k, v); }},
      {"k_max", [&](auto& k, auto& v) { t.reward.k_max = parse_number<int>(k, v); }},
      {"episodes_per_batch", [&](auto& k, auto& v) { t.episodes_per_batch = parse_number<int>(k, v); }},
      {"episode_length", [&](auto& k, auto& v) { t.episode_length = parse_number<int>(k, v); }},
      {"max_batches", [&](auto& k, auto& v) { t.max_batches = parse_number<int>(k, v); }},
      {"rollout_cap", [&](auto& k, auto& v) { t.rollout_cap = parse_number<int>(k, v); }},
      {"seed", [&](auto& k, auto& v) { t.seed = parse_number<std::uint64_t>(k, v); }},
      {"penalty_revisit", [&](auto& k, auto& v) { t.penalty.revisit_enabled = parse_bool(k, v); }},
      {"penalty_noop", [&](auto& k, auto& v) { t.penalty.noop_enabled = parse_bool(k, v); }},
      {"penalty_congestion", [&](auto& k, auto& v) { t.penalty.congestion_enabled = parse_bool(k, v); }},
      {"bellman_window", [&](auto& k, auto& v) { t.bellman_window = parse_number<int>(k, v); }},
      {"accept_max_gates", [&](auto& k, auto& v) { t.accept_max_gates = parse_number<int>(k, v); }},
      {"accept_max_depth", [&](auto& k, auto& v) { t.accept_max_depth = parse_number<int>(k, v); }},
  };

  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw Error(ErrorCode::ConfigError, "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw Error(ErrorCode::ConfigError, "repeated key '" + key + "'");
    if (value.empty()) throw Error(ErrorCode::ConfigError, "empty value for '" + key + "'");
    it->second(key, value);
  }

  for (const char* required : {"n", "p", "gate_set", "initial_state"}) {
    if (!seen.contains(required)) throw Error(ErrorCode::ConfigError, std::string("missing key '") + required + "'");
  }
  if (seen.contains("target_state") == seen.contains("graph")) {
    throw Error(ErrorCode::ConfigError, "exactly one of target_state and graph must be given");
  }
  if (c.n < 1 || c.p < 0 || c.n + c.p > 24) throw Error(ErrorCode::ConfigError, "n and p out of range");
  t.validate();
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_text(path), path.parent_path());
}

SweetState parse_term_list(std::string_view terms, int n, PhaseGrid grid) {
  const std::string text = trim(terms);
  if (text == "uniform") return SweetState::uniform(n, grid);
  std::istringstream in(text);
  std::string lines;
  for (std::string term; in >> term;) lines += term + "\n";
  SweetState s = parse_state(lines, grid);
  if (s.n() != n) {
    throw Error(ErrorCode::ConfigError, "state has " + std::to_string(s.n()) + " qubits, expected " + std::to_string(n));
  }
  return s;
}

Problem build_problem(const RunConfig& config) {
  const PhaseGrid grid = config.grid();
  SweetState initial = parse_term_list(config.initial_state, config.n, grid);
  SweetState target;
  if (!config.graph.empty()) {
    const Graph g = parse_edge_list(read_text(config.graph));
    if (g.n() != config.n) throw Error(ErrorCode::ConfigError, "graph vertex count differs from n");
    target = graph_state_target(g, grid);
  } else {
    target = parse_term_list(config.target_state, config.n, grid);
  }
  return Problem{std::move(initial), std::move(target), GateSet::parse(config.gate_set, config.n)};
}

}  // namespace qsynth
