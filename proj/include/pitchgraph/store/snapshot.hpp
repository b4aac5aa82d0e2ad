#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pitchgraph/store/graph.hpp"

namespace pitchgraph::store {

// Binary snapshot layout (all integers little-endian):
//
//   magic "KGF1" | u32 version
//   then sections, each: 4-byte tag | u64 payload length | payload
//     "STRS"  u32 count, then count x (u32 length, bytes)
//     "NODE"  u32 count, then count x (u32 label, props)
//     "EDGE"  u32 count, then count x (u32 src, u32 dst, u32 type, props)
//     "END."  empty
//   props := u32 count, then count x (u32 key, u8 tag, value)
//   value := Text u32 string index | Int i64 | Float f64 bits | Bool u8
//
// Strings are interned in first-use order, so identical graphs produce
// identical bytes.
inline constexpr std::uint32_t kSnapshotVersion = 1;

std::string snapshot_bytes(const Graph& g);
void snapshot_save(const Graph& g, std::ostream& sink);
void snapshot_save(const Graph& g, const std::filesystem::path& path);

// Returned graph is frozen. Throws FormatError (with byte offset) or
// VersionError.
Graph snapshot_from_bytes(std::string_view bytes);
Graph snapshot_load(std::istream& source);
Graph snapshot_load(const std::filesystem::path& path);

}  // namespace pitchgraph::store
