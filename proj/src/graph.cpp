#include "qsynth/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "qsynth/error.hpp"

namespace qsynth {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "graph needs at least one vertex");
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error(ErrorCode::VertexOutOfRange,
                  "edge " + std::to_string(u) + "-" + std::to_string(v) + " outside 0.." + std::to_string(n - 1));
    }
    if (u == v) throw Error(ErrorCode::SelfLoop, "self-loop on vertex " + std::to_string(u));
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw Error(ErrorCode::DuplicateEdge,
                "edge " + std::to_string(dup->first) + "-" + std::to_string(dup->second) + " repeated");
  }
}

int Graph::degree(int v) const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                        [v](const auto& e) { return e.first == v || e.second == v; }));
}

SweetState graph_state_target(const Graph& g, PhaseGrid grid) {
  if (grid.size() < 2) throw Error(ErrorCode::PhaseGridTooCoarse, "graph states need M >= 2");
  const int n = g.n();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> terms;
  terms.reserve(std::size_t{1} << n);
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
    int parity = 0;
    for (auto [u, v] : g.edges()) {
      parity ^= static_cast<int>(((x >> (n - 1 - u)) & 1) & ((x >> (n - 1 - v)) & 1));
    }
    terms.emplace_back(parity ? grid.half() : 0, x);
  }
  return SweetState::canonicalize(std::move(terms), n, grid);
}

DepthBound vizing_depth_bound(const Graph& g) {
  DepthBound b;
  std::vector<std::vector<int>> adj(g.n());
  for (auto [u, v] : g.edges()) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (const auto& nb : adj) b.max_degree = std::max(b.max_degree, static_cast<int>(nb.size()));

  std::vector<int> color(g.n(), -1);
  bool bipartite = true;
  for (int s = 0; s < g.n() && bipartite; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::queue<int> todo;
    todo.push(s);
    while (!todo.empty() && bipartite) {
      const int u = todo.front();
      todo.pop();
      for (int v : adj[u]) {
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          todo.push(v);
        } else if (color[v] == color[u]) {
          bipartite = false;
        }
      }
    }
  }
  b.exact_if_bipartite = bipartite;
  return b;
}

Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    const auto bad = [&] {
      return Error(ErrorCode::MalformedLine, "line " + std::to_string(lineno) + ": '" + line + "'");
    };
    std::string extra;
    if (n < 0) {
      if (first != "n" || !(fields >> n) || n < 1 || (fields >> extra)) throw bad();
      continue;
    }
    int u = 0;
    int v = 0;
    try {
      std::size_t used = 0;
      u = std::stoi(first, &used);
      if (used != first.size()) throw bad();
    } catch (const std::logic_error&) {
      throw bad();
    }
    if (!(fields >> v) || (fields >> extra)) throw bad();
    edges.emplace_back(u, v);
  }
  if (n < 0) throw Error(ErrorCode::MalformedLine, "missing 'n <count>' header");
  return Graph(n, std::move(edges));
}

std::string format_edge_list(const Graph& g) {
  std::string out = "n " + std::to_string(g.n()) + "\n";
  for (auto [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

Graph benchmark_graph_g7() {
  return Graph(7, {{0, 3}, {0, 4}, {0, 5}, {0, 6}, {1, 3}, {1, 4}, {1, 5}, {2, 4}, {2, 5}, {2, 6}});
}

Graph benchmark_graph_g4() { return Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

}  // namespace qsynth
