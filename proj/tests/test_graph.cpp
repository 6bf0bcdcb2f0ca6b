#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "qsynth/error.hpp"
#include "qsynth/graph.hpp"

using namespace qsynth;

namespace {

std::uint32_t phase_at(const SweetState& s, std::uint32_t x) {
  for (Slot slot : s.slots()) {
    if (s.basis_of(slot) == x) return s.phase_of(slot);
  }
  ADD_FAILURE() << "basis string missing";
  return 0;
}

// Edge-parity phase written from the graph-state definition.
std::uint32_t parity_phase(const Graph& g, std::uint32_t x, PhaseGrid grid) {
  int parity = 0;
  for (auto [u, v] : g.edges()) parity ^= ((x >> (g.n() - 1 - u)) & 1) & ((x >> (g.n() - 1 - v)) & 1);
  return parity ? grid.half() : 0;
}

ErrorCode parse_error(const char* text) {
  try {
    parse_edge_list(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted " << text;
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(GraphState, EmptyGraphIsUniform) {
  const auto s = graph_state_target(Graph(2, {}), PhaseGrid{1});
  EXPECT_EQ(s, SweetState::uniform(2, PhaseGrid{1}));
}

TEST(GraphState, SquareGraphPhases) {
  const PhaseGrid grid{2};
  const auto s = graph_state_target(benchmark_graph_g4(), grid);
  EXPECT_EQ(s.size(), 16u);
  EXPECT_EQ(phase_at(s, 0b0110), grid.half());
  EXPECT_EQ(phase_at(s, 0b1111), 0u);
  for (std::uint32_t x = 0; x < 16; ++x) EXPECT_EQ(phase_at(s, x), parity_phase(benchmark_graph_g4(), x, grid));
}

TEST(GraphState, SingleEdge) {
  const auto s = graph_state_target(Graph(2, {{0, 1}}), PhaseGrid{1});
  EXPECT_EQ(format_state(s), "0:00\n0:01\n0:10\n1:11\n");
}

TEST(GraphState, NeedsSignPhase) {
  try {
    graph_state_target(Graph(2, {{0, 1}}), PhaseGrid{0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PhaseGridTooCoarse);
  }
}

TEST(GraphState, EqualsCzFoldInAnyOrder) {
  std::mt19937_64 rng(2);
  const Graph g = benchmark_graph_g7();
  const PhaseGrid grid{1};
  const SweetState target = graph_state_target(g, grid);
  for (std::uint32_t x = 0; x < 128; ++x) EXPECT_EQ(phase_at(target, x), parity_phase(g, x, grid));
  auto edges = g.edges();
  for (int i = 0; i < 20; ++i) {
    std::shuffle(edges.begin(), edges.end(), rng);
    SweetState s = SweetState::uniform(7, grid);
    for (auto [u, v] : edges) s = apply_gate(s, Action::pair(GateKind::CZ, u, v)).state;
    EXPECT_EQ(s, target);
  }
}

TEST(DepthBound, Examples) {
  EXPECT_EQ(vizing_depth_bound(benchmark_graph_g4()).max_degree, 2);
  EXPECT_TRUE(vizing_depth_bound(benchmark_graph_g4()).exact_if_bipartite);
  const Graph g7 = benchmark_graph_g7();
  EXPECT_EQ(g7.n(), 7);
  EXPECT_EQ(g7.edges().size(), 10u);
  EXPECT_EQ(vizing_depth_bound(g7).max_degree, 4);
  EXPECT_TRUE(vizing_depth_bound(g7).exact_if_bipartite);
  const Graph triangle(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(vizing_depth_bound(triangle).max_degree, 2);
  EXPECT_FALSE(vizing_depth_bound(triangle).exact_if_bipartite);
}

TEST(EdgeList, Parse) {
  const Graph g = parse_edge_list("n 2\n0 1\n");
  EXPECT_EQ(g.n(), 2);
  EXPECT_EQ(g.edges(), (std::vector<std::pair<int, int>>{{0, 1}}));
  EXPECT_EQ(parse_edge_list("# square\nn 4\n3 0\n0 1\n2 1\n2 3\n").edges(), benchmark_graph_g4().edges());
  EXPECT_EQ(parse_edge_list(format_edge_list(benchmark_graph_g7())).edges(), benchmark_graph_g7().edges());
}

TEST(EdgeList, Errors) {
  EXPECT_EQ(parse_error("n 2\n0 0\n"), ErrorCode::SelfLoop);
  EXPECT_EQ(parse_error("n 4\n0 1\n1 0\n"), ErrorCode::DuplicateEdge);
  EXPECT_EQ(parse_error("n 2\n0 2\n"), ErrorCode::VertexOutOfRange);
  EXPECT_EQ(parse_error("0 1\n"), ErrorCode::MalformedLine);
  EXPECT_EQ(parse_error("n 3\n0 1 2\n"), ErrorCode::MalformedLine);
  EXPECT_EQ(parse_error("n 3\n0 x\n"), ErrorCode::MalformedLine);
}
