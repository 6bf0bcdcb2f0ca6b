#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qsynth/error.hpp"
#include "qsynth/sweet.hpp"

using namespace qsynth;
using boost::multiprecision::cpp_int;

namespace {

std::vector<Slot> slots_of(const SweetState& s) { return {s.slots().begin(), s.slots().end()}; }

SweetState from(std::vector<Slot> slots, int n, int p) { return SweetState::from_slots(std::move(slots), n, PhaseGrid{p}); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Canonicalize, SortsTerms) {
  auto s = SweetState::canonicalize({{0, 1}, {0, 0}}, 1, PhaseGrid{0});
  EXPECT_EQ(slots_of(s), (std::vector<Slot>{0, 1}));
}

TEST(Canonicalize, SlotIsPhaseTimesDimPlusBasis) {
  auto s = SweetState::canonicalize({{1, 3}}, 2, PhaseGrid{1});
  EXPECT_EQ(slots_of(s), (std::vector<Slot>{7}));
}

TEST(Canonicalize, Errors) {
  EXPECT_EQ(code_of([] { SweetState::canonicalize({{0, 2}, {1, 2}}, 2, PhaseGrid{1}); }),
            ErrorCode::ConflictingPhase);
  EXPECT_EQ(code_of([] { SweetState::canonicalize({}, 2, PhaseGrid{1}); }), ErrorCode::EmptyState);
  EXPECT_EQ(code_of([] { SweetState::canonicalize({{2, 0}}, 2, PhaseGrid{1}); }), ErrorCode::InvalidArgument);
}

TEST(Canonicalize, DuplicateTermCollapses) {
  auto s = SweetState::canonicalize({{1, 2}, {1, 2}}, 2, PhaseGrid{1});
  EXPECT_EQ(s.size(), 1u);
}

TEST(ApplyGate, CzOnPlusPlus) {
  auto out = apply_gate(from({0, 1, 2, 3}, 2, 1), Action::pair(GateKind::CZ, 0, 1));
  EXPECT_EQ(slots_of(out.state), (std::vector<Slot>{0, 1, 2, 7}));
  EXPECT_TRUE(out.exact);
}

TEST(ApplyGate, HadamardCancelsMinus) {
  auto out = apply_gate(from({0, 3}, 1, 1), Action::single(GateKind::H, 0));
  EXPECT_EQ(slots_of(out.state), (std::vector<Slot>{1}));
  EXPECT_TRUE(out.exact);
}

TEST(ApplyGate, HadamardUnequalMagnitudesProjects) {
  const SweetState in = from({0, 1, 2}, 2, 1);
  auto out = apply_gate(in, Action::single(GateKind::H, 0));
  EXPECT_EQ(format_state(out.state), "0:00\n0:01\n0:11\n");
  EXPECT_FALSE(out.exact);
  EXPECT_FALSE(out.snapped);
  // Amplitudes 2, 1, 0, 1 (over sqrt 2): same class as the projection.
  const auto dense = oracle::apply_dense(oracle::dense(in), 2, Action::single(GateKind::H, 0));
  EXPECT_TRUE(is_class_representative(dense, out.state, 1e-9));
}

TEST(ApplyGate, TOnOne) {
  auto out = apply_gate(from({1}, 1, 3), Action::single(GateKind::T, 0));
  EXPECT_EQ(slots_of(out.state), (std::vector<Slot>{3}));
  EXPECT_TRUE(out.exact);
}

TEST(ApplyGate, TdgWrapsPhase) {
  auto out = apply_gate(from({1}, 1, 3), Action::single(GateKind::TDG, 0));
  EXPECT_EQ(format_state(out.state), "7:1\n");
}

TEST(ApplyGate, CnotFlipsTargetWhereControlSet) {
  // |10> -> |11>, |01> unchanged; qubit 0 is the leftmost bit.
  auto s = SweetState::canonicalize({{0, 0b10}, {1, 0b01}}, 2, PhaseGrid{1});
  auto out = apply_gate(s, Action::pair(GateKind::CNOT, 0, 1));
  EXPECT_EQ(format_state(out.state), "0:11\n1:01\n");
  EXPECT_TRUE(out.exact);
}

TEST(ApplyGate, PhaseGridTooCoarse) {
  EXPECT_EQ(code_of([] { apply_gate(from({1}, 1, 2), Action::single(GateKind::T, 0)); }),
            ErrorCode::PhaseGridTooCoarse);
  EXPECT_EQ(code_of([] { apply_gate(from({3}, 2, 0), Action::pair(GateKind::CZ, 0, 1)); }),
            ErrorCode::PhaseGridTooCoarse);
}

TEST(ApplyGate, HadamardOffGridPhaseSnaps) {
  // (|0> + i|1>) on M=4: H gives (1+i)|0> + (1-i)|1>, both off the grid.
  auto s = SweetState::canonicalize({{0, 0}, {1, 1}}, 1, PhaseGrid{2});
  auto out = apply_gate(s, Action::single(GateKind::H, 0));
  EXPECT_FALSE(out.exact);
  EXPECT_TRUE(out.snapped);
  // arg(1+i) = pi/4 sits at index 0.5 and arg(1-i) = -pi/4 at index 3.5;
  // halfway cases round down, which keeps their relative phase.
  EXPECT_EQ(format_state(out.state), "0:0\n3:1\n");
  const auto dense = oracle::apply_dense(oracle::dense(s), 1, Action::single(GateKind::H, 0));
  EXPECT_TRUE(is_class_representative(dense, out.state, 1e-9));
}

TEST(ApplyGate, HadamardOnRealGridOnly) {
  // M=1: every term has phase +1; H on |0>+|1> interferes to |0>.
  auto out = apply_gate(from({0, 1}, 1, 0), Action::single(GateKind::H, 0));
  EXPECT_EQ(format_state(out.state), "0:0\n");
  EXPECT_TRUE(out.exact);
}

TEST(StateKey, EncodingExamples) {
  EXPECT_EQ(encode_state_key(from({0, 1, 2, 7}, 2, 1)), std::string("\x00\x01\x02\x07", 4));
  EXPECT_EQ(encode_state_key(from({256}, 5, 4)), std::string("\x01\x00", 2));
  EXPECT_EQ(slot_width_bytes(7, PhaseGrid{1}), 1);
  EXPECT_EQ(slot_width_bytes(5, PhaseGrid{4}), 2);
}

TEST(StateKey, RoundTripRandom) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const PhaseGrid grid{static_cast<int>(rng() % 4)};
    const SweetState s = oracle::random_state(rng, n, grid);
    EXPECT_EQ(decode_state_key(encode_state_key(s), n, grid), s);
  }
}

TEST(StateKey, MalformedKeys) {
  const PhaseGrid g{1};
  EXPECT_EQ(code_of([&] { decode_state_key(std::string("\x02\x01", 2), 2, g); }), ErrorCode::MalformedKey);
  EXPECT_EQ(code_of([&] { decode_state_key(std::string("\x01\x01", 2), 2, g); }), ErrorCode::MalformedKey);
  EXPECT_EQ(code_of([&] { decode_state_key("", 2, g); }), ErrorCode::MalformedKey);
  EXPECT_EQ(code_of([&] { decode_state_key(std::string("\x08", 1), 2, g); }), ErrorCode::MalformedKey);
  // Same basis string with two phases.
  EXPECT_EQ(code_of([&] { decode_state_key(std::string("\x01\x05", 2), 2, g); }), ErrorCode::MalformedKey);
  EXPECT_EQ(code_of([&] { decode_state_key(std::string("\x00\x01\x02", 3), 5, PhaseGrid{4}); }),
            ErrorCode::MalformedKey);
}

TEST(StateSpaceSize, Examples) {
  EXPECT_EQ(state_space_size(1, PhaseGrid{0}), 3);
  EXPECT_EQ(state_space_size(7, PhaseGrid{1}), (cpp_int(1) << 256) - 1);
  EXPECT_EQ(state_space_size(3, PhaseGrid{3}), (cpp_int(1) << 64) - 1);
}

TEST(ClassRepresentative, Examples) {
  const double h = 0.5;
  const double r2 = std::sqrt(2.0) / 2;
  std::vector<std::complex<double>> psi3(8, 0.0);
  psi3[0b010] = h;
  psi3[0b011] = h;
  psi3[0b100] = r2;
  auto target = SweetState::canonicalize({{0, 0b010}, {0, 0b011}, {0, 0b100}}, 3, PhaseGrid{3});
  EXPECT_TRUE(is_class_representative(psi3, target, 1e-9));

  std::vector<std::complex<double>> plus{r2, r2};
  EXPECT_FALSE(is_class_representative(plus, from({0}, 1, 1), 1e-9));

  std::vector<std::complex<double>> bell{r2, 0, 0, -r2};
  auto bell_state = SweetState::canonicalize({{0, 0}, {1, 3}}, 2, PhaseGrid{1});
  EXPECT_TRUE(is_class_representative(bell, bell_state, 1e-9));

  // A global phase is factored out.
  for (auto& a : bell) a *= std::polar(1.0, 1.234);
  EXPECT_TRUE(is_class_representative(bell, bell_state, 1e-9));
  // A relative phase is not.
  bell[3] *= std::polar(1.0, 0.1);
  EXPECT_FALSE(is_class_representative(bell, bell_state, 1e-9));
}

TEST(StateText, FormatAndParse) {
  const PhaseGrid g{3};
  auto s = parse_state("# comment\n0:010\n0:011\n\n5:100  # trailing\n", g);
  EXPECT_EQ(format_state(s), "0:010\n0:011\n5:100\n");
  EXPECT_EQ(parse_state(format_state(s), g), s);
  EXPECT_EQ(code_of([&] { parse_state("0:01\n0:011\n", g); }), ErrorCode::MalformedLine);
  EXPECT_EQ(code_of([&] { parse_state("8:01\n", g); }), ErrorCode::MalformedLine);
  EXPECT_EQ(code_of([&] { parse_state("0-01\n", g); }), ErrorCode::MalformedLine);
  EXPECT_EQ(code_of([&] { parse_state("# nothing\n", g); }), ErrorCode::EmptyState);
}

TEST(SweetProperties, OutcomesAreCanonical) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const PhaseGrid grid{static_cast<int>(rng() % 4)};
    const SweetState s = oracle::random_state(rng, n, grid);
    std::vector<GateKind> kinds{GateKind::H};
    if (grid.size() >= 8) kinds.insert(kinds.end(), {GateKind::T, GateKind::TDG});
    if (n >= 2) kinds.push_back(GateKind::CNOT);
    if (n >= 2 && grid.size() >= 2) kinds.push_back(GateKind::CZ);
    const auto actions = enumerate_actions(GateSet(kinds, n));
    const Action& a = actions[rng() % actions.size()];
    ApplyOutcome out;
    try {
      out = apply_gate(s, a);
    } catch (const Error& e) {
      // H can annihilate every term only for contradictory inputs, which
      // SWEET states never are.
      FAIL() << e.what();
    }
    const auto slots = slots_of(out.state);
    ASSERT_FALSE(slots.empty());
    EXPECT_TRUE(std::is_sorted(slots.begin(), slots.end()));
    EXPECT_EQ(SweetState::from_slots(slots, n, grid), out.state);
    EXPECT_EQ(decode_state_key(encode_state_key(out.state), n, grid), out.state);
  }
}
