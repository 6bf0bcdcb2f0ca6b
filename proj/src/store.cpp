#include "qsynth/store.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "qsynth/actions.hpp"
#include "qsynth/error.hpp"

namespace qsynth {

namespace {

constexpr char kMagic[8] = {'Q', 'S', 'Y', 'N', 'T', 'A', 'B', '\0'};
constexpr std::uint32_t kVersion = 1;

enum class KeyEncoding : std::uint8_t { SlotList = 0, Bitmap = 1 };

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

class Writer {
 public:
  template <typename T>
  void put(T v) {
    static_assert(std::is_integral_v<T>);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      buf_.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xFF));
    }
  }
  void put_double(double v) { put(std::bit_cast<std::uint64_t>(v)); }
  void put_bytes(std::string_view s) { buf_.append(s); }
  std::string& buffer() { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }
  double get_double() { return std::bit_cast<double>(get<std::uint64_t>()); }
  std::string_view get_bytes(std::size_t n) {
    need(n);
    auto out = data_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw Error(ErrorCode::CorruptFile, "truncated snapshot");
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

std::string header_text(const TableHeader& h) {
  std::ostringstream out;
  out << "n=" << h.n << "\np=" << h.p << "\ngates=" << h.gate_tokens << "\nactions=" << h.action_count
      << "\nrole=" << role_token(h.role) << "\n";
  return out.str();
}

TableHeader parse_header_text(std::string_view text) {
  TableHeader h;
  std::istringstream in{std::string(text)};
  std::string line;
  int seen = 0;
  try {
    while (std::getline(in, line)) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::CorruptFile, "bad header line");
      const std::string k = line.substr(0, eq);
      const std::string v = line.substr(eq + 1);
      if (k == "n") h.n = std::stoi(v);
      else if (k == "p") h.p = std::stoi(v);
      else if (k == "gates") h.gate_tokens = v;
      else if (k == "actions") h.action_count = std::stoi(v);
      else if (k == "role") h.role = parse_role_token(v);
      else throw Error(ErrorCode::CorruptFile, "unknown header field " + k);
      ++seen;
    }
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::CorruptFile, "unreadable header value");
  }
  if (seen != 5) throw Error(ErrorCode::CorruptFile, "incomplete header");
  return h;
}

std::string bitmap_of_key(std::string_view key, int width, std::size_t bitmap_bytes) {
  std::string bits(bitmap_bytes, '\0');
  for (std::size_t pos = 0; pos < key.size(); pos += width) {
    std::uint32_t s = 0;
    for (int b = 0; b < width; ++b) s = (s << 8) | static_cast<unsigned char>(key[pos + b]);
    bits[s / 8] = static_cast<char>(bits[s / 8] | (1 << (s % 8)));
  }
  return bits;
}

StateKey key_of_bitmap(std::string_view bits, int width) {
  StateKey key;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const auto byte = static_cast<unsigned char>(bits[i]);
    for (int j = 0; j < 8; ++j) {
      if (!(byte & (1 << j))) continue;
      const auto s = static_cast<std::uint32_t>(i * 8 + j);
      for (int b = width - 1; b >= 0; --b) key.push_back(static_cast<char>((s >> (8 * b)) & 0xFF));
    }
  }
  return key;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoFailure, "read failed for " + path.string());
  return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

std::string hex(std::string_view bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

}  // namespace

std::string_view role_token(TableRole role) {
  switch (role) {
    case TableRole::Q: return "Q";
    case TableRole::RSta: return "R_sta";
    case TableRole::RDyn: return "R_dyn";
  }
  return "?";
}

TableRole parse_role_token(std::string_view token) {
  if (token == "Q") return TableRole::Q;
  if (token == "R_sta") return TableRole::RSta;
  if (token == "R_dyn") return TableRole::RDyn;
  throw Error(ErrorCode::CorruptFile, "unknown table role " + std::string(token));
}

void validate_header(const TableHeader& header) {
  try {
    const GateSet gs = GateSet::parse(header.gate_tokens, header.n);
    if (static_cast<int>(enumerate_actions(gs).size()) != header.action_count) {
      throw Error(ErrorCode::HeaderMismatch, "action count does not match the gate set");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::HeaderMismatch) throw;
    throw Error(ErrorCode::HeaderMismatch, e.what());
  }
  if (header.p < 0 || header.n + header.p > 31) throw Error(ErrorCode::HeaderMismatch, "bad n/p");
}

void save(const SparseTable& table, const StateIndex& index, const TableHeader& header,
          const std::filesystem::path& path) {
  validate_header(header);
  const PhaseGrid grid{header.p};
  const int width = slot_width_bytes(header.n, grid);

  // Dictionary of the states this table references, in key order.
  std::vector<StateId> ids;
  ids.reserve(table.size());
  table.for_each([&](StateId s, int, double) { ids.push_back(s); });
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::sort(ids.begin(), ids.end(), [&](StateId a, StateId b) { return index.key(a) < index.key(b); });
  absl::flat_hash_map<StateId, std::uint32_t> position;
  position.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) position.emplace(ids[i], static_cast<std::uint32_t>(i));

  const std::size_t bitmap_bytes = ((std::size_t{grid.size()} << header.n) + 7) / 8;
  std::size_t list_bytes = 0;
  for (StateId id : ids) list_bytes += 4 + index.key(id).size();
  const KeyEncoding enc =
      bitmap_bytes * ids.size() < list_bytes ? KeyEncoding::Bitmap : KeyEncoding::SlotList;

  Writer w;
  w.put_bytes(std::string_view(kMagic, sizeof kMagic));
  w.put<std::uint32_t>(kVersion);
  const std::string htext = header_text(header);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(htext.size()));
  w.put_bytes(htext);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(enc));
  w.put<std::uint64_t>(ids.size());
  for (StateId id : ids) {
    if (enc == KeyEncoding::Bitmap) {
      w.put_bytes(bitmap_of_key(index.key(id), width, bitmap_bytes));
    } else {
      w.put<std::uint32_t>(static_cast<std::uint32_t>(index.key(id).size()));
      w.put_bytes(index.key(id));
    }
  }

  struct Row {
    std::uint32_t state;
    int action;
    double value;
  };
  std::vector<Row> rows;
  rows.reserve(table.size());
  table.for_each([&](StateId s, int a, double v) { rows.push_back({position.at(s), a, v}); });
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    return std::tie(x.state, x.action) < std::tie(y.state, y.action);
  });
  w.put<std::uint64_t>(rows.size());
  for (const Row& r : rows) {
    w.put<std::uint32_t>(r.state);
    w.put<std::uint16_t>(static_cast<std::uint16_t>(r.action));
    w.put_double(r.value);
  }
  w.put<std::uint64_t>(fnv1a(w.buffer()));
  write_file(path, w.buffer());
}

TableSnapshot load(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  if (data.size() < sizeof kMagic + 8 || std::memcmp(data.data(), kMagic, sizeof kMagic) != 0) {
    throw Error(ErrorCode::CorruptFile, path.string() + " is not a table snapshot");
  }
  const std::string_view body(data.data(), data.size() - 8);
  if (Reader(std::string_view(data).substr(body.size())).get<std::uint64_t>() != fnv1a(body)) {
    throw Error(ErrorCode::CorruptFile, "checksum mismatch in " + path.string());
  }

  Reader r(body);
  r.get_bytes(sizeof kMagic);
  if (r.get<std::uint32_t>() != kVersion) throw Error(ErrorCode::CorruptFile, "unsupported snapshot version");
  TableSnapshot snap;
  snap.header = parse_header_text(r.get_bytes(r.get<std::uint32_t>()));
  try {
    validate_header(snap.header);
  } catch (const Error& e) {
    throw Error(ErrorCode::CorruptFile, e.what());
  }
  const PhaseGrid grid{snap.header.p};
  const int width = slot_width_bytes(snap.header.n, grid);
  const std::size_t bitmap_bytes = ((std::size_t{grid.size()} << snap.header.n) + 7) / 8;

  const auto enc = static_cast<KeyEncoding>(r.get<std::uint8_t>());
  if (enc != KeyEncoding::Bitmap && enc != KeyEncoding::SlotList) {
    throw Error(ErrorCode::CorruptFile, "unknown key encoding");
  }
  const auto num_states = r.get<std::uint64_t>();
  std::vector<StateKey> keys;
  keys.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(num_states, body.size())));
  for (std::uint64_t i = 0; i < num_states; ++i) {
    StateKey key = enc == KeyEncoding::Bitmap ? key_of_bitmap(r.get_bytes(bitmap_bytes), width)
                                              : StateKey(r.get_bytes(r.get<std::uint32_t>()));
    try {
      decode_state_key(key, snap.header.n, grid);
    } catch (const Error& e) {
      throw Error(ErrorCode::CorruptFile, std::string("bad state key: ") + e.what());
    }
    keys.push_back(std::move(key));
  }

  const auto num_entries = r.get<std::uint64_t>();
  snap.entries.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(num_entries, body.size())));
  for (std::uint64_t i = 0; i < num_entries; ++i) {
    const auto s = r.get<std::uint32_t>();
    const auto a = r.get<std::uint16_t>();
    const double v = r.get_double();
    if (s >= keys.size() || a >= snap.header.action_count) {
      throw Error(ErrorCode::CorruptFile, "triplet references unknown state or action");
    }
    snap.entries.push_back({keys[s], a, v});
  }
  if (!r.done()) throw Error(ErrorCode::CorruptFile, "trailing bytes in snapshot");
  std::sort(snap.entries.begin(), snap.entries.end(), [](const Triplet& x, const Triplet& y) {
    return std::tie(x.key, x.action) < std::tie(y.key, y.action);
  });
  for (std::size_t i = 1; i < snap.entries.size(); ++i) {
    if (snap.entries[i - 1].key == snap.entries[i].key && snap.entries[i - 1].action == snap.entries[i].action) {
      throw Error(ErrorCode::CorruptFile, "duplicate (state, action) entry");
    }
  }
  return snap;
}

SparseTable load_into(const std::filesystem::path& path, const TableHeader& expected, StateIndex& index) {
  TableSnapshot snap = load(path);
  if (!(snap.header == expected)) {
    throw Error(ErrorCode::HeaderMismatch, "snapshot header does not match the run configuration");
  }
  SparseTable table;
  table.reserve(snap.entries.size());
  for (const Triplet& t : snap.entries) table.set(index.intern(t.key), t.action, t.value);
  return table;
}

TableSnapshot snapshot_of(const SparseTable& table, const StateIndex& index, const TableHeader& header) {
  TableSnapshot snap;
  snap.header = header;
  snap.entries.reserve(table.size());
  table.for_each([&](StateId s, int a, double v) { snap.entries.push_back({StateKey(index.key(s)), a, v}); });
  std::sort(snap.entries.begin(), snap.entries.end(), [](const Triplet& x, const Triplet& y) {
    return std::tie(x.key, x.action) < std::tie(y.key, y.action);
  });
  return snap;
}

std::string format_value(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_csv(const TableSnapshot& snapshot) {
  std::string out = "state,action,value\n";
  for (const Triplet& t : snapshot.entries) {
    out += hex(t.key);
    out += ',';
    out += std::to_string(t.action);
    out += ',';
    out += format_value(t.value);
    out += '\n';
  }
  return out;
}

void export_csv(const TableSnapshot& snapshot, const std::filesystem::path& path) {
  write_file(path, format_csv(snapshot));
}

}  // namespace qsynth
