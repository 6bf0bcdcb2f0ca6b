#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsynth/actions.hpp"

namespace qsynth {

// Discrete phase grid {exp(2*pi*i*m/M)}, M = 2^p. Phase index m is the plain
// binary value of the p phase bits, so -1 is m = M/2.
struct PhaseGrid {
  int p = 0;

  std::uint32_t size() const { return std::uint32_t{1} << p; }
  std::uint32_t half() const { return size() / 2; }
  friend bool operator==(PhaseGrid, PhaseGrid) = default;
};

struct ApplyOutcome;

using Slot = std::uint32_t;
// Canonical byte serialization of a state (sorted big-endian slot list).
using StateKey = std::string;

// Equal-amplitude superposition of basis strings with grid phases.
//
// Stored as a sorted set of slots, slot = m * 2^n + x, where x is the n-bit
// basis string with qubit 0 as its most significant bit. Each basis string
// carries at most one phase. Normalization is implicit.
class SweetState {
 public:
  // Placeholder with no terms; every factory below returns a canonical state.
  SweetState() = default;

  // Sorts and deduplicates. Throws ConflictingPhase / EmptyState.
  static SweetState canonicalize(std::vector<std::pair<std::uint32_t, std::uint32_t>> raw_terms,
                                 int n, PhaseGrid grid);

  // Accepts a slot list in any order; validates like canonicalize.
  static SweetState from_slots(std::vector<Slot> slots, int n, PhaseGrid grid);

  // |0...0> with phase index 0.
  static SweetState basis(std::uint32_t x, int n, PhaseGrid grid);
  // Uniform superposition over all 2^n basis strings.
  static SweetState uniform(int n, PhaseGrid grid);

  int n() const { return n_; }
  PhaseGrid grid() const { return grid_; }
  std::span<const Slot> slots() const { return slots_; }
  std::size_t size() const { return slots_.size(); }

  std::uint32_t phase_of(Slot s) const { return s >> n_; }
  std::uint32_t basis_of(Slot s) const { return s & ((std::uint32_t{1} << n_) - 1); }
  Slot make_slot(std::uint32_t m, std::uint32_t x) const { return (m << n_) | x; }

  friend bool operator==(const SweetState& a, const SweetState& b) {
    return a.n_ == b.n_ && a.grid_ == b.grid_ && a.slots_ == b.slots_;
  }

 private:
  friend ApplyOutcome apply_gate(const SweetState& state, const Action& action);
  SweetState(int n, PhaseGrid grid, std::vector<Slot> slots)
      : n_(n), grid_(grid), slots_(std::move(slots)) {}

  int n_ = 0;
  PhaseGrid grid_;
  std::vector<Slot> slots_;
};

struct ApplyOutcome {
  SweetState state;
  // True iff every surviving amplitude had equal magnitude and a grid phase.
  bool exact = true;
  // True iff some amplitude phase was off-grid and had to be rounded.
  bool snapped = false;
};

// Requirements: T/TDG need M >= 8, CZ needs M >= 2.
ApplyOutcome apply_gate(const SweetState& state, const Action& action);

StateKey encode_state_key(const SweetState& state);
SweetState decode_state_key(std::string_view key, int n, PhaseGrid grid);
int slot_width_bytes(int n, PhaseGrid grid);

// 2^(2^(n+p)) - 1.
boost::multiprecision::cpp_int state_space_size(int n, PhaseGrid grid);

// Class membership: same basis support (|amp| > tol) and, after aligning the
// global phase on the first listed term, grid phases within tol.
bool is_class_representative(std::span<const std::complex<double>> amplitudes,
                             const SweetState& state, double tol);

// Dense amplitude vector exp(2*pi*i*m/M) on each term (unnormalized).
std::vector<std::complex<double>> to_amplitudes(const SweetState& state);

// "m:x" per line, sorted by slot.
std::string format_state(const SweetState& state);
// Inverse of format_state. Blank lines and '#' comments are ignored; n is
// taken from the basis-string width.
SweetState parse_state(std::string_view text, PhaseGrid grid);

}  // namespace qsynth
