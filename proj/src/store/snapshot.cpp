#include "pitchgraph/store/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "pitchgraph/error.hpp"

namespace pitchgraph::store {

namespace {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes little-endian host");

constexpr char kMagic[4] = {'K', 'G', 'F', '1'};

class Writer {
 public:
  void bytes(const void* p, std::size_t n) { out_.append(static_cast<const char*>(p), n); }
  void u8(std::uint8_t v) { bytes(&v, 1); }
  void u32(std::uint32_t v) { bytes(&v, 4); }
  void u64(std::uint64_t v) { bytes(&v, 8); }
  void i64(std::int64_t v) { bytes(&v, 8); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  std::string& str() { return out_; }

  void section(const char tag[4], const std::string& payload) {
    bytes(tag, 4);
    u64(payload.size());
    out_ += payload;
  }

 private:
  std::string out_;
};

class StringPool {
 public:
  std::uint32_t intern(const std::string& s) {
    auto [it, inserted] = ids_.emplace(s, static_cast<std::uint32_t>(order_.size()));
    if (inserted) order_.push_back(&it->first);
    return it->second;
  }
  [[nodiscard]] const std::vector<const std::string*>& order() const { return order_; }

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<const std::string*> order_;
};

void write_props(Writer& w, StringPool& pool, const PropertyMap& props) {
  w.u32(static_cast<std::uint32_t>(props.size()));
  for (const auto& [key, value] : props) {
    w.u32(pool.intern(key));
    w.u8(static_cast<std::uint8_t>(value.tag()));
    switch (value.tag()) {
      case PropertyValue::Tag::Text: w.u32(pool.intern(value.as_text())); break;
      case PropertyValue::Tag::Int: w.i64(value.as_int()); break;
      case PropertyValue::Tag::Float: w.f64(value.as_float()); break;
      case PropertyValue::Tag::Bool: w.u8(value.as_bool() ? 1 : 0); break;
    }
  }
}

class Reader {
 public:
  Reader(std::string_view data, std::size_t base) : data_(data), base_(base) {}

  [[nodiscard]] std::size_t offset() const { return base_ + pos_; }
  [[nodiscard]] bool done() const { return pos_ == data_.size(); }

  void take(void* dst, std::size_t n) {
    if (data_.size() - pos_ < n) throw FormatError(offset(), "unexpected end of data");
    std::memcpy(dst, data_.data() + pos_, n);
    pos_ += n;
  }
  std::string_view view(std::size_t n) {
    if (data_.size() - pos_ < n) throw FormatError(offset(), "unexpected end of data");
    auto v = data_.substr(pos_, n);
    pos_ += n;
    return v;
  }
  std::uint8_t u8() { std::uint8_t v; take(&v, 1); return v; }
  std::uint32_t u32() { std::uint32_t v; take(&v, 4); return v; }
  std::uint64_t u64() { std::uint64_t v; take(&v, 8); return v; }
  std::int64_t i64() { std::int64_t v; take(&v, 8); return v; }
  double f64() { return std::bit_cast<double>(u64()); }

 private:
  std::string_view data_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

const std::string& lookup(const std::vector<std::string>& strings, std::uint32_t idx, const Reader& r) {
  if (idx >= strings.size()) throw FormatError(r.offset() - 4, "string index out of range");
  return strings[idx];
}

PropertyMap read_props(Reader& r, const std::vector<std::string>& strings) {
  PropertyMap props;
  const std::uint32_t n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::string& key = lookup(strings, r.u32(), r);
    const std::size_t tag_at = r.offset();
    const std::uint8_t tag = r.u8();
    PropertyValue value;
    switch (static_cast<PropertyValue::Tag>(tag)) {
      case PropertyValue::Tag::Text: value = PropertyValue(lookup(strings, r.u32(), r)); break;
      case PropertyValue::Tag::Int: value = PropertyValue(r.i64()); break;
      case PropertyValue::Tag::Float: value = PropertyValue(r.f64()); break;
      case PropertyValue::Tag::Bool: {
        const std::size_t at = r.offset();
        const std::uint8_t b = r.u8();
        if (b > 1) throw FormatError(at, "invalid boolean byte");
        value = PropertyValue(b == 1);
        break;
      }
      default: throw FormatError(tag_at, "unknown property tag " + std::to_string(tag));
    }
    if (!props.emplace(key, std::move(value)).second)
      throw FormatError(tag_at, "duplicate property key " + key);
  }
  return props;
}

}  // namespace

std::string snapshot_bytes(const Graph& g) {
  StringPool pool;
  Writer nodes;
  nodes.u32(static_cast<std::uint32_t>(g.node_count()));
  for (const auto& n : g.nodes()) {
    nodes.u32(pool.intern(n.label));
    write_props(nodes, pool, n.props);
  }
  Writer edges;
  edges.u32(static_cast<std::uint32_t>(g.edge_count()));
  for (const auto& e : g.edges()) {
    edges.u32(raw(e.src));
    edges.u32(raw(e.dst));
    edges.u32(pool.intern(e.type));
    write_props(edges, pool, e.props);
  }
  Writer strings;
  strings.u32(static_cast<std::uint32_t>(pool.order().size()));
  for (const std::string* s : pool.order()) {
    strings.u32(static_cast<std::uint32_t>(s->size()));
    strings.bytes(s->data(), s->size());
  }

  Writer out;
  out.bytes(kMagic, 4);
  out.u32(kSnapshotVersion);
  out.section("STRS", strings.str());
  out.section("NODE", nodes.str());
  out.section("EDGE", edges.str());
  out.section("END.", {});
  return std::move(out.str());
}

void snapshot_save(const Graph& g, std::ostream& sink) {
  const std::string bytes = snapshot_bytes(g);
  sink.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!sink) throw IoError("snapshot write failed");
}

void snapshot_save(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  snapshot_save(g, out);
}

Graph snapshot_from_bytes(std::string_view bytes) {
  Reader r(bytes, 0);
  char magic[4];
  r.take(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw FormatError(0, "bad magic, not a KGF snapshot");
  const std::uint32_t version = r.u32();
  if (version != kSnapshotVersion)
    throw VersionError("unsupported snapshot version " + std::to_string(version));

  std::vector<std::string> strings;
  Graph g;
  bool seen_strings = false, seen_nodes = false, seen_edges = false, seen_end = false;
  while (!seen_end) {
    const std::size_t section_at = r.offset();
    std::string tag(r.view(4));
    const std::uint64_t len = r.u64();
    if (len > bytes.size()) throw FormatError(section_at, "section length exceeds file size");
    Reader s(r.view(static_cast<std::size_t>(len)), r.offset() - static_cast<std::size_t>(len));

    if (tag == "STRS" && !seen_strings) {
      const std::uint32_t n = s.u32();
      for (std::uint32_t i = 0; i < n; ++i) strings.emplace_back(s.view(s.u32()));
      seen_strings = true;
    } else if (tag == "NODE" && seen_strings && !seen_nodes) {
      const std::uint32_t n = s.u32();
      for (std::uint32_t i = 0; i < n; ++i) {
        std::string label = lookup(strings, s.u32(), s);
        if (label.empty()) throw FormatError(s.offset(), "empty node label");
        g.add_node(std::move(label), read_props(s, strings));
      }
      seen_nodes = true;
    } else if (tag == "EDGE" && seen_nodes && !seen_edges) {
      const std::uint32_t n = s.u32();
      for (std::uint32_t i = 0; i < n; ++i) {
        const std::size_t at = s.offset();
        const auto src = static_cast<NodeId>(s.u32());
        const auto dst = static_cast<NodeId>(s.u32());
        if (!g.contains(src) || !g.contains(dst)) throw FormatError(at, "edge endpoint out of range");
        std::string type = lookup(strings, s.u32(), s);
        g.add_edge(src, dst, std::move(type), read_props(s, strings));
      }
      seen_edges = true;
    } else if (tag == "END." && seen_edges) {
      seen_end = true;
    } else {
      throw FormatError(section_at, "unexpected section '" + tag + "'");
    }
    if (!s.done()) throw FormatError(s.offset(), "trailing bytes in section " + tag);
  }
  if (!r.done()) throw FormatError(r.offset(), "trailing bytes after end section");
  g.freeze();
  return g;
}

Graph snapshot_load(std::istream& source) {
  std::ostringstream ss;
  ss << source.rdbuf();
  return snapshot_from_bytes(ss.str());
}

Graph snapshot_load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return snapshot_load(in);
}

}  // namespace pitchgraph::store
