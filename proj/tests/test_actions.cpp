#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "qsynth/actions.hpp"
#include "qsynth/error.hpp"

using namespace qsynth;

namespace {

// Closed-form count with unordered pairs for symmetric kinds.
int expected_count(const std::vector<GateKind>& kinds, int n) {
  int total = 0;
  for (GateKind k : kinds) {
    if (arity(k) == 1) total += n;
    else if (is_symmetric(k)) total += n * (n - 1) / 2;
    else total += n * (n - 1);
  }
  return total;
}

}  // namespace

TEST(Enumerate, UniversalSetOnThreeQubits) {
  EXPECT_EQ(enumerate_actions(GateSet::parse("H T TDG CNOT", 3)).size(), 15u);
}

TEST(Enumerate, CzUsesUnorderedPairs) {
  const auto actions = enumerate_actions(GateSet::parse("CZ", 4));
  ASSERT_EQ(actions.size(), 6u);
  EXPECT_EQ(to_string(actions.front()), "CZ 0 1");
  EXPECT_EQ(to_string(actions.back()), "CZ 2 3");
}

TEST(Enumerate, SingleHadamard) { EXPECT_EQ(enumerate_actions(GateSet::parse("H", 1)).size(), 1u); }

TEST(Enumerate, OrderIsKindThenLexicographic) {
  const auto actions = enumerate_actions(GateSet::parse("CNOT H", 3));
  std::vector<std::string> names;
  for (const auto& a : actions) names.push_back(to_string(a));
  EXPECT_EQ(names, (std::vector<std::string>{"CNOT 0 1", "CNOT 0 2", "CNOT 1 0", "CNOT 1 2", "CNOT 2 0",
                                             "CNOT 2 1", "H 0", "H 1", "H 2"}));
}

TEST(Enumerate, IndicesAreUniquePositions) {
  const std::vector<std::vector<GateKind>> sets = {
      {GateKind::H}, {GateKind::CZ, GateKind::T}, {GateKind::H, GateKind::T, GateKind::TDG, GateKind::CNOT, GateKind::CZ}};
  for (const auto& kinds : sets) {
    for (int n = 2; n <= 6; ++n) {
      const auto actions = enumerate_actions(GateSet(kinds, n));
      EXPECT_EQ(static_cast<int>(actions.size()), expected_count(kinds, n));
      std::set<std::string> names;
      for (std::size_t i = 0; i < actions.size(); ++i) {
        EXPECT_EQ(actions[i].index, static_cast<int>(i));
        names.insert(to_string(actions[i]));
      }
      EXPECT_EQ(names.size(), actions.size());
    }
  }
}

TEST(GateSetTest, Validation) {
  EXPECT_THROW(GateSet::parse("", 3), Error);
  EXPECT_THROW(GateSet::parse("H H", 3), Error);
  EXPECT_THROW(GateSet::parse("CZ", 1), Error);
  try {
    GateSet::parse("H X", 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
  }
  EXPECT_EQ(GateSet::parse("H  T\tCNOT", 2).tokens(), "H T CNOT");
}

TEST(Inverse, Examples) {
  EXPECT_EQ(inverse_action(Action::single(GateKind::T, 0)), Action::single(GateKind::TDG, 0));
  EXPECT_EQ(inverse_action(Action::single(GateKind::TDG, 2)), Action::single(GateKind::T, 2));
  EXPECT_EQ(inverse_action(Action::pair(GateKind::CZ, 1, 3)), Action::pair(GateKind::CZ, 1, 3));
  EXPECT_EQ(inverse_action(Action::pair(GateKind::CNOT, 2, 0)), Action::pair(GateKind::CNOT, 2, 0));
  EXPECT_EQ(inverse_action(Action::single(GateKind::H, 1)), Action::single(GateKind::H, 1));
}

TEST(ActionTest, CzStoredAscending) {
  const Action a = Action::pair(GateKind::CZ, 3, 1);
  EXPECT_EQ(a.qubits[0], 1);
  EXPECT_EQ(a.qubits[1], 3);
  EXPECT_EQ(Action::pair(GateKind::CNOT, 3, 1).qubits[0], 3);
  EXPECT_THROW(Action::pair(GateKind::CNOT, 2, 2), Error);
}

TEST(Inverse, UndoesExactApplications) {
  std::mt19937_64 rng(5);
  const auto actions = enumerate_actions(GateSet::parse("H T TDG CNOT CZ", 3));
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    const SweetState s = oracle::random_state(rng, 3, PhaseGrid{3});
    const Action& a = actions[rng() % actions.size()];
    const ApplyOutcome fwd = apply_gate(s, a);
    const ApplyOutcome back = apply_gate(fwd.state, inverse_action(a));
    if (fwd.exact && back.exact) {
      EXPECT_EQ(back.state, s) << to_string(a);
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000);
}
