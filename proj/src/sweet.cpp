#include "qsynth/sweet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qsynth/error.hpp"

namespace qsynth {

namespace {

void check_dims(int n, PhaseGrid grid) {
  if (n < 1 || grid.p < 0 || n + grid.p > 31) {
    throw Error(ErrorCode::InvalidArgument, "unsupported qubit/phase-bit counts");
  }
}

// Sorted slots -> rejects duplicated basis strings.
void check_unique_basis(std::span<const Slot> sorted_slots, int n) {
  const std::uint32_t mask = (std::uint32_t{1} << n) - 1;
  std::vector<std::uint32_t> xs;
  xs.reserve(sorted_slots.size());
  for (Slot s : sorted_slots) xs.push_back(s & mask);
  std::sort(xs.begin(), xs.end());
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) {
    throw Error(ErrorCode::ConflictingPhase, "basis string carries two phases");
  }
}

// Exact value of a sum of grid phases, reduced with zeta^(M/2) = -1.
struct Coefficient {
  bool zero = false;
  bool on_grid = false;  // single reduced term: phase is exactly a grid point
  bool snapped = false;
  std::uint32_t phase = 0;
  long magnitude = 0;  // valid when on_grid
};

std::uint32_t snap_angle(double angle, std::uint32_t m_size) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  angle = std::fmod(angle, two_pi);
  if (angle < 0) angle += two_pi;
  const double pos = angle * m_size / two_pi;
  const double fl = std::floor(pos);
  const double frac = pos - fl;
  const auto lo = static_cast<std::uint32_t>(fl) % m_size;
  const auto hi = (lo + 1) % m_size;
  // Halfway: round down in index space, so M - 1/2 goes to M - 1, not 0.
  if (std::abs(frac - 0.5) < 1e-9) return lo;
  return frac < 0.5 ? lo : hi;
}

// contributions: grid phase indices, each a unit-magnitude term (signs folded).
Coefficient reduce(std::span<const std::uint32_t> contributions, std::uint32_t m_size,
                   std::vector<long>& scratch) {
  Coefficient c;
  if (m_size == 1) {
    // Only the real axis is available; a folded "-1" is encoded as phase 1.
    long value = 0;
    for (std::uint32_t v : contributions) value += (v == 0) ? 1 : -1;
    if (value == 0) {
      c.zero = true;
    } else if (value > 0) {
      c.on_grid = true;
      c.magnitude = value;
    } else {
      c.snapped = true;
    }
    return c;
  }
  const std::uint32_t half = m_size / 2;
  scratch.assign(half, 0);
  for (std::uint32_t v : contributions) {
    if (v < half) scratch[v] += 1;
    else scratch[v - half] -= 1;
  }
  int nonzero = 0;
  std::uint32_t last = 0;
  for (std::uint32_t j = 0; j < half; ++j) {
    if (scratch[j] != 0) {
      ++nonzero;
      last = j;
    }
  }
  if (nonzero == 0) {
    c.zero = true;
    return c;
  }
  if (nonzero == 1) {
    c.on_grid = true;
    c.magnitude = std::abs(scratch[last]);
    c.phase = scratch[last] > 0 ? last : last + half;
    return c;
  }
  std::complex<double> value{0.0, 0.0};
  for (std::uint32_t j = 0; j < half; ++j) {
    if (scratch[j] == 0) continue;
    const double theta = 2.0 * std::numbers::pi * j / m_size;
    value += static_cast<double>(scratch[j]) * std::polar(1.0, theta);
  }
  const std::uint32_t snapped = snap_angle(std::arg(value), m_size);
  // Off-grid only if the argument is not (numerically) a grid point.
  const double grid_angle = 2.0 * std::numbers::pi * snapped / m_size;
  const double diff = std::remainder(std::arg(value) - grid_angle, 2.0 * std::numbers::pi);
  c.phase = snapped;
  c.snapped = std::abs(diff) > 1e-9;
  c.magnitude = 0;
  return c;
}

ApplyOutcome apply_hadamard(const SweetState& state, int q) {
  const int n = state.n();
  const std::uint32_t m_size = state.grid().size();
  const std::uint32_t bit = std::uint32_t{1} << (n - 1 - q);
  // The folded encoding of -zeta^m; for M = 1 index 1 stands for -1.
  const auto negate = [&](std::uint32_t m) {
    return m_size == 1 ? std::uint32_t{1} : (m + m_size / 2) % m_size;
  };

  std::vector<std::pair<std::uint32_t, std::uint32_t>> by_basis;  // (x, m)
  by_basis.reserve(state.size());
  for (Slot s : state.slots()) by_basis.emplace_back(state.basis_of(s), state.phase_of(s));
  std::sort(by_basis.begin(), by_basis.end());
  const auto lookup = [&](std::uint32_t x) -> const std::pair<std::uint32_t, std::uint32_t>* {
    auto it = std::lower_bound(by_basis.begin(), by_basis.end(),
                               std::pair<std::uint32_t, std::uint32_t>{x, 0});
    return (it != by_basis.end() && it->first == x) ? &*it : nullptr;
  };

  std::vector<Slot> out;
  out.reserve(state.size() * 2);
  std::vector<long> scratch;
  bool exact = true;
  bool snapped = false;
  long common_magnitude = -1;

  const auto emit = [&](std::uint32_t x, const Coefficient& c) {
    if (c.zero) return;
    if (c.on_grid) {
      if (common_magnitude < 0) common_magnitude = c.magnitude;
      else if (c.magnitude != common_magnitude) exact = false;
    } else {
      exact = false;
    }
    if (c.snapped) snapped = true;
    out.push_back(state.make_slot(c.phase, x));
  };

  for (const auto& [x, m] : by_basis) {
    const std::uint32_t y0 = x & ~bit;
    const std::uint32_t y1 = x | bit;
    if ((x & bit) != 0 && lookup(y0) != nullptr) continue;  // handled with partner
    const auto* t0 = lookup(y0);
    const auto* t1 = lookup(y1);
    std::uint32_t to0[2];
    std::uint32_t to1[2];
    std::size_t k = 0;
    if (t0 != nullptr) {
      to0[k] = t0->second;
      to1[k] = t0->second;
      ++k;
    }
    if (t1 != nullptr) {
      to0[k] = t1->second;
      to1[k] = negate(t1->second);
      ++k;
    }
    emit(y0, reduce(std::span<const std::uint32_t>(to0, k), m_size, scratch));
    emit(y1, reduce(std::span<const std::uint32_t>(to1, k), m_size, scratch));
  }

  if (out.empty()) {
    throw Error(ErrorCode::AllTermsCancelled, "Hadamard cancelled every amplitude");
  }
  if (snapped) exact = false;
  std::sort(out.begin(), out.end());
  return ApplyOutcome{SweetState::from_slots(std::move(out), n, state.grid()), exact, snapped};
}

}  // namespace

SweetState SweetState::canonicalize(
    std::vector<std::pair<std::uint32_t, std::uint32_t>> raw_terms, int n, PhaseGrid grid) {
  check_dims(n, grid);
  std::vector<Slot> slots;
  slots.reserve(raw_terms.size());
  for (const auto& [m, x] : raw_terms) {
    if (m >= grid.size() || x >= (std::uint32_t{1} << n)) {
      throw Error(ErrorCode::InvalidArgument, "term outside the phase grid or basis range");
    }
    slots.push_back((m << n) | x);
  }
  return from_slots(std::move(slots), n, grid);
}

SweetState SweetState::from_slots(std::vector<Slot> slots, int n, PhaseGrid grid) {
  check_dims(n, grid);
  if (slots.empty()) throw Error(ErrorCode::EmptyState, "state has no terms");
  const Slot limit = grid.size() << n;
  std::sort(slots.begin(), slots.end());
  slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
  if (slots.back() >= limit) throw Error(ErrorCode::InvalidArgument, "slot out of range");
  check_unique_basis(slots, n);
  return SweetState(n, grid, std::move(slots));
}

SweetState SweetState::basis(std::uint32_t x, int n, PhaseGrid grid) {
  return canonicalize({{0, x}}, n, grid);
}

SweetState SweetState::uniform(int n, PhaseGrid grid) {
  check_dims(n, grid);
  std::vector<Slot> slots(std::size_t{1} << n);
  for (std::size_t x = 0; x < slots.size(); ++x) slots[x] = static_cast<Slot>(x);
  return SweetState(n, grid, std::move(slots));
}

ApplyOutcome apply_gate(const SweetState& state, const Action& action) {
  const int n = state.n();
  for (int i = 0; i < action.arity(); ++i) {
    if (action.qubits[i] >= n) throw Error(ErrorCode::InvalidArgument, "qubit index >= n");
  }
  const std::uint32_t m_size = state.grid().size();
  const auto bit = [n](int q) { return std::uint32_t{1} << (n - 1 - q); };
  const std::uint32_t mask = (std::uint32_t{1} << n) - 1;

  if (action.kind == GateKind::H) return apply_hadamard(state, action.qubits[0]);

  std::uint32_t phase_step = 0;
  std::uint32_t cond = 0;
  std::uint32_t flip = 0;
  switch (action.kind) {
    case GateKind::T:
    case GateKind::TDG:
      if (m_size < 8) throw Error(ErrorCode::PhaseGridTooCoarse, "T/TDG need M >= 8");
      cond = bit(action.qubits[0]);
      phase_step = action.kind == GateKind::T ? m_size / 8 : m_size - m_size / 8;
      break;
    case GateKind::CZ:
      if (m_size < 2) throw Error(ErrorCode::PhaseGridTooCoarse, "CZ needs M >= 2");
      cond = bit(action.qubits[0]) | bit(action.qubits[1]);
      phase_step = m_size / 2;
      break;
    case GateKind::CNOT:
      cond = bit(action.qubits[0]);
      flip = bit(action.qubits[1]);
      break;
    case GateKind::H:
      break;
  }

  std::vector<Slot> out;
  out.reserve(state.size());
  for (Slot s : state.slots()) {
    std::uint32_t m = s >> n;
    std::uint32_t x = s & mask;
    if ((x & cond) == cond) {
      m = (m + phase_step) % m_size;
      x ^= flip;
    }
    out.push_back((m << n) | x);
  }
  std::sort(out.begin(), out.end());
  return ApplyOutcome{SweetState(n, state.grid(), std::move(out)), true, false};
}

int slot_width_bytes(int n, PhaseGrid grid) { return (n + grid.p + 7) / 8; }

StateKey encode_state_key(const SweetState& state) {
  const int width = slot_width_bytes(state.n(), state.grid());
  StateKey key;
  key.resize(state.size() * width);
  std::size_t pos = 0;
  for (Slot s : state.slots()) {
    for (int b = width - 1; b >= 0; --b) key[pos++] = static_cast<char>((s >> (8 * b)) & 0xFF);
  }
  return key;
}

SweetState decode_state_key(std::string_view key, int n, PhaseGrid grid) {
  check_dims(n, grid);
  const auto width = static_cast<std::size_t>(slot_width_bytes(n, grid));
  if (key.empty() || key.size() % width != 0) {
    throw Error(ErrorCode::MalformedKey, "key length is not a positive multiple of the slot width");
  }
  std::vector<Slot> slots;
  slots.reserve(key.size() / width);
  for (std::size_t pos = 0; pos < key.size(); pos += width) {
    Slot s = 0;
    for (std::size_t b = 0; b < width; ++b) s = (s << 8) | static_cast<unsigned char>(key[pos + b]);
    if (!slots.empty() && s <= slots.back()) throw Error(ErrorCode::MalformedKey, "slots not strictly increasing");
    slots.push_back(s);
  }
  if (slots.back() >= (grid.size() << n)) throw Error(ErrorCode::MalformedKey, "slot out of range");
  try {
    check_unique_basis(slots, n);
  } catch (const Error&) {
    throw Error(ErrorCode::MalformedKey, "basis string repeated");
  }
  return SweetState::from_slots(std::move(slots), n, grid);
}

boost::multiprecision::cpp_int state_space_size(int n, PhaseGrid grid) {
  check_dims(n, grid);
  if (n + grid.p > 24) throw Error(ErrorCode::InvalidArgument, "n + p too large for exact count");
  boost::multiprecision::cpp_int one = 1;
  return (one << (std::size_t{1} << (n + grid.p))) - 1;
}

bool is_class_representative(std::span<const std::complex<double>> amplitudes,
                             const SweetState& state, double tol) {
  const std::size_t dim = std::size_t{1} << state.n();
  if (amplitudes.size() != dim) return false;
  std::vector<std::int64_t> phase(dim, -1);
  for (Slot s : state.slots()) phase[state.basis_of(s)] = state.phase_of(s);
  for (std::size_t x = 0; x < dim; ++x) {
    if ((std::abs(amplitudes[x]) > tol) != (phase[x] >= 0)) return false;
  }
  const double step = 2.0 * std::numbers::pi / state.grid().size();
  const Slot first = state.slots().front();
  const double global = std::arg(amplitudes[state.basis_of(first)]) - step * state.phase_of(first);
  for (Slot s : state.slots()) {
    const double want = global + step * state.phase_of(s);
    const double diff = std::remainder(std::arg(amplitudes[state.basis_of(s)]) - want,
                                       2.0 * std::numbers::pi);
    if (std::abs(diff) > tol) return false;
  }
  return true;
}

std::vector<std::complex<double>> to_amplitudes(const SweetState& state) {
  std::vector<std::complex<double>> amps(std::size_t{1} << state.n());
  const double step = 2.0 * std::numbers::pi / state.grid().size();
  for (Slot s : state.slots()) amps[state.basis_of(s)] = std::polar(1.0, step * state.phase_of(s));
  return amps;
}

std::string format_state(const SweetState& state) {
  std::string out;
  for (Slot s : state.slots()) {
    out += std::to_string(state.phase_of(s));
    out += ':';
    const std::uint32_t x = state.basis_of(s);
    for (int q = 0; q < state.n(); ++q) out += ((x >> (state.n() - 1 - q)) & 1) ? '1' : '0';
    out += '\n';
  }
  return out;
}

SweetState parse_state(std::string_view text, PhaseGrid grid) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> terms;
  int n = -1;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    const auto bad = [&] {
      return Error(ErrorCode::MalformedLine, "line " + std::to_string(lineno) + ": '" + line + "'");
    };
    if (colon == std::string::npos || colon == 0 || colon + 1 == line.size()) throw bad();
    const std::string mtext = line.substr(0, colon);
    const std::string xtext = line.substr(colon + 1);
    if (mtext.find_first_not_of("0123456789") != std::string::npos) throw bad();
    if (xtext.find_first_not_of("01") != std::string::npos || xtext.size() > 30) throw bad();
    if (n < 0) n = static_cast<int>(xtext.size());
    if (static_cast<int>(xtext.size()) != n) throw bad();
    const unsigned long m = std::stoul(mtext);
    if (m >= grid.size()) throw bad();
    terms.emplace_back(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(std::stoul(xtext, nullptr, 2)));
  }
  if (terms.empty()) throw Error(ErrorCode::EmptyState, "state text has no terms");
  return SweetState::canonicalize(std::move(terms), n, grid);
}

}  // namespace qsynth
