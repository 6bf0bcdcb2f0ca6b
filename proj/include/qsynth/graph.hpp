#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsynth/sweet.hpp"

namespace qsynth {

// Simple undirected graph; edges are stored as (u, v) with u < v, sorted.
class Graph {
 public:
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int degree(int v) const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
};

// CZ on every edge applied to the uniform superposition: the phase of x is
// M/2 times the parity of the number of edges with both endpoints set.
SweetState graph_state_target(const Graph& g, PhaseGrid grid);

struct DepthBound {
  int max_degree = 0;
  // Minimal CZ depth equals max_degree for bipartite graphs; otherwise it is
  // max_degree or max_degree + 1.
  bool exact_if_bipartite = false;
};

DepthBound vizing_depth_bound(const Graph& g);

// Header line "n <count>", then one "u v" edge per line.
Graph parse_edge_list(std::string_view text);
std::string format_edge_list(const Graph& g);

// Seven-vertex bipartite benchmark graph, {0,1,2} | {3,4,5,6}, 10 edges, max degree 4.
Graph benchmark_graph_g7();
// Four-cycle 0-1-2-3-0.
Graph benchmark_graph_g4();

}  // namespace qsynth
