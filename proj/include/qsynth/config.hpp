#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "qsynth/graph.hpp"
#include "qsynth/qlearn.hpp"

namespace qsynth {

// Flat key=value run description. Blank lines and '#' comments are ignored;
// unknown or repeated keys are errors.
struct RunConfig {
  int n = 0;
  int p = 0;
  std::string gate_set;
  std::string initial_state;  // "uniform" or whitespace-separated m:x terms
  std::string target_state;   // m:x terms; exclusive with graph
  std::filesystem::path graph;
  TrainConfig train;
  std::filesystem::path output_dir = "out";

  PhaseGrid grid() const { return PhaseGrid{p}; }
};

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

// Resolves states and gate set into a Problem; reads the graph file if set.
Problem build_problem(const RunConfig& config);

// Parses "m:x m:x ..." (or "uniform") for the given dimensions.
SweetState parse_term_list(std::string_view terms, int n, PhaseGrid grid);

}  // namespace qsynth
