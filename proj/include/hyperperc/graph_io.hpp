#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>

#include "hyperperc/graph.hpp"

namespace hyperperc {

inline constexpr int kGraphSchemaVersion = 1;
inline constexpr const char* kGraphFormatName = "hyperperc-graph";

/// CRC-32 over the file content (header scalars, vertex table, edge list) in a
/// fixed little-endian layout. Edges are hashed as given, canonical or not.
std::uint32_t content_checksum(const ModelParams& params, std::uint64_t edge_count,
                               std::span<const Vertex> vertices, std::span<const Edge> edges);

/// Self-describing JSON document:
///   {"format", "schema_version",
///    "header": {N, alpha, nu, R, seed, edge_count, checksum},
///    "vertices": [[id, r, theta], ...],   shortest round-trip decimals
///    "edges": [[min_id, max_id], ...]}    lexicographic
void write_graph(const Graph& g, std::ostream& out);
Graph read_graph(std::istream& in);

/// Throws IoError if the file cannot be opened or written.
void save_graph(const Graph& g, const std::filesystem::path& path);

/// Throws IoError, SchemaError (truncated, malformed, wrong version),
/// ChecksumError, or ValidationError (content violates a graph invariant).
Graph load_graph(const std::filesystem::path& path);

}  // namespace hyperperc
