#pragma once

#include <absl/container/flat_hash_map.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "qsynth/sweet.hpp"

namespace qsynth {

using StateId = std::uint32_t;

// Interns canonical state keys to dense ids. Key bytes live in stable
// chunks, so ids and views stay valid for the lifetime of the index.
class StateIndex {
 public:
  StateIndex() = default;
  StateIndex(const StateIndex&) = delete;
  StateIndex& operator=(const StateIndex&) = delete;
  StateIndex(StateIndex&&) = default;
  StateIndex& operator=(StateIndex&&) = default;

  StateId intern(std::string_view key);
  std::optional<StateId> find(std::string_view key) const;
  std::string_view key(StateId id) const { return keys_.at(id); }
  std::size_t size() const { return keys_.size(); }

 private:
  std::string_view store(std::string_view key);

  static constexpr std::size_t kChunkBytes = std::size_t{1} << 20;
  std::vector<std::unique_ptr<char[]>> chunks_;
  std::size_t chunk_used_ = kChunkBytes;
  std::vector<std::string_view> keys_;
  absl::flat_hash_map<std::string_view, StateId> ids_;
};

// Sparse (state, action) -> value map. Absent entries read as zero and
// exact zeros are never stored.
class SparseTable {
 public:
  double get(StateId s, int action) const {
    auto it = values_.find(pack(s, action));
    return it == values_.end() ? 0.0 : it->second;
  }

  void set(StateId s, int action, double value);
  void add(StateId s, int action, double delta) { set(s, action, get(s, action) + delta); }

  // Largest value over actions [0, num_actions), absent = 0.
  double max_value(StateId s, int num_actions) const;
  // First action index attaining the maximum.
  int argmax(StateId s, int num_actions) const;

  std::size_t size() const { return values_.size(); }
  void clear() { values_.clear(); }
  void reserve(std::size_t n) { values_.reserve(n); }

  template <typename F>
  void for_each(F&& f) const {
    for (const auto& [k, v] : values_) f(static_cast<StateId>(k >> 16), static_cast<int>(k & 0xFFFF), v);
  }

  friend bool operator==(const SparseTable& a, const SparseTable& b) { return a.values_ == b.values_; }

  static std::uint64_t pack(StateId s, int action) {
    return (static_cast<std::uint64_t>(s) << 16) | static_cast<std::uint16_t>(action);
  }

 private:
  absl::flat_hash_map<std::uint64_t, double> values_;
};

// Both tables index states with the same StateIndex.
double total_reward(const SparseTable& r_sta, const SparseTable& r_dyn, StateId s, int action);

}  // namespace qsynth
