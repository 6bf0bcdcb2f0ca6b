#include "qsynth/table.hpp"

#include <algorithm>
#include <cstring>

#include "qsynth/error.hpp"

namespace qsynth {

std::string_view StateIndex::store(std::string_view key) {
  if (key.size() > kChunkBytes) {
    // Oversized keys get a chunk of their own; the next key opens a fresh chunk.
    chunks_.push_back(std::make_unique<char[]>(key.size()));
    std::memcpy(chunks_.back().get(), key.data(), key.size());
    chunk_used_ = kChunkBytes;
    return {chunks_.back().get(), key.size()};
  }
  if (chunk_used_ + key.size() > kChunkBytes) {
    chunks_.push_back(std::make_unique<char[]>(kChunkBytes));
    chunk_used_ = 0;
  }
  char* dst = chunks_.back().get() + chunk_used_;
  std::memcpy(dst, key.data(), key.size());
  chunk_used_ += key.size();
  return {dst, key.size()};
}

StateId StateIndex::intern(std::string_view key) {
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  if (keys_.size() >= 0xFFFFFFFFu) throw Error(ErrorCode::CapExceeded, "state index full");
  const auto id = static_cast<StateId>(keys_.size());
  const std::string_view owned = store(key);
  keys_.push_back(owned);
  ids_.emplace(owned, id);
  return id;
}

std::optional<StateId> StateIndex::find(std::string_view key) const {
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  return std::nullopt;
}

void SparseTable::set(StateId s, int action, double value) {
  if (value == 0.0) {
    values_.erase(pack(s, action));
  } else {
    values_.insert_or_assign(pack(s, action), value);
  }
}

double SparseTable::max_value(StateId s, int num_actions) const {
  double best = get(s, 0);
  for (int a = 1; a < num_actions; ++a) best = std::max(best, get(s, a));
  return best;
}

int SparseTable::argmax(StateId s, int num_actions) const {
  int best_a = 0;
  double best = get(s, 0);
  for (int a = 1; a < num_actions; ++a) {
    const double v = get(s, a);
    if (v > best) {
      best = v;
      best_a = a;
    }
  }
  return best_a;
}

double total_reward(const SparseTable& r_sta, const SparseTable& r_dyn, StateId s, int action) {
  return r_sta.get(s, action) + r_dyn.get(s, action);
}

}  // namespace qsynth
