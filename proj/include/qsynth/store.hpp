#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qsynth/sweet.hpp"
#include "qsynth/table.hpp"

namespace qsynth {

enum class TableRole { Q, RSta, RDyn };

std::string_view role_token(TableRole role);
TableRole parse_role_token(std::string_view token);

struct TableHeader {
  int n = 0;
  int p = 0;
  std::string gate_tokens;
  int action_count = 0;
  TableRole role = TableRole::Q;

  friend bool operator==(const TableHeader&, const TableHeader&) = default;
};

struct Triplet {
  StateKey key;
  int action = 0;
  double value = 0.0;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

struct TableSnapshot {
  TableHeader header;
  std::vector<Triplet> entries;  // sorted by (key, action)
};

// Throws HeaderMismatch if the action count disagrees with the gate set.
void validate_header(const TableHeader& header);

// Single-file snapshot: magic + version, header, state dictionary,
// (state_index, action_index, value) triplets with raw IEEE-754 values,
// and a trailing checksum.
void save(const SparseTable& table, const StateIndex& index, const TableHeader& header,
          const std::filesystem::path& path);
TableSnapshot load(const std::filesystem::path& path);

// Loads into an existing index (e.g. to resume training); the stored header
// must equal `expected`.
SparseTable load_into(const std::filesystem::path& path, const TableHeader& expected, StateIndex& index);

TableSnapshot snapshot_of(const SparseTable& table, const StateIndex& index, const TableHeader& header);

// "state,action,value" then one row per entry sorted by (key, action); the
// key is lowercase hex and the value is the shortest round-trip decimal.
std::string format_csv(const TableSnapshot& snapshot);
void export_csv(const TableSnapshot& snapshot, const std::filesystem::path& path);

std::string format_value(double value);

}  // namespace qsynth
