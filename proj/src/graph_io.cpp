#include "hyperperc/graph_io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <boost/crc.hpp>
#include <json.hpp>

#include "hyperperc/errors.hpp"

namespace hyperperc {

using nlohmann::json;

namespace {

class Crc {
 public:
  void u64(std::uint64_t x) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(x >> (8 * i));
    crc_.process_bytes(b, sizeof b);
  }
  void f64(double x) { u64(std::bit_cast<std::uint64_t>(x)); }
  std::uint32_t value() const { return crc_.checksum(); }

 private:
  boost::crc_32_type crc_;
};

std::string hex32(std::uint32_t x) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", x);
  return buf;
}

template <class T>
T field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw SchemaError(std::string("graph file: missing field '") + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("graph file: bad field '") + key + "': " + e.what());
  }
}

}  // namespace

std::uint32_t content_checksum(const ModelParams& params, std::uint64_t edge_count,
                               std::span<const Vertex> vertices, std::span<const Edge> edges) {
  Crc crc;
  crc.u64(params.n);
  crc.f64(params.alpha);
  crc.f64(params.nu);
  crc.f64(params.radius);
  crc.u64(params.seed);
  crc.u64(edge_count);
  for (const Vertex& v : vertices) {
    crc.u64(v.id);
    crc.f64(v.point.r);
    crc.f64(v.point.theta);
  }
  for (const Edge& e : edges) {
    crc.u64(e.u);
    crc.u64(e.v);
  }
  return crc.value();
}

void write_graph(const Graph& g, std::ostream& out) {
  const auto edges = g.edges();
  const ModelParams& p = g.params();
  json doc;
  doc["format"] = kGraphFormatName;
  doc["schema_version"] = kGraphSchemaVersion;
  doc["header"] = {
      {"N", p.n},
      {"alpha", p.alpha},
      {"nu", p.nu},
      {"R", p.radius},
      {"seed", p.seed},
      {"edge_count", edges.size()},
      {"checksum", hex32(content_checksum(p, edges.size(), g.vertices(), edges))},
  };
  json verts = json::array();
  for (const Vertex& v : g.vertices()) verts.push_back({v.id, v.point.r, v.point.theta});
  doc["vertices"] = std::move(verts);
  json elist = json::array();
  for (const Edge& e : edges) elist.push_back({e.u, e.v});
  doc["edges"] = std::move(elist);
  out << doc.dump() << '\n';
}

Graph read_graph(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("graph file is not valid JSON (truncated?): ") + e.what());
  }
  if (field<std::string>(doc, "format") != kGraphFormatName) {
    throw SchemaError("not a hyperperc graph file");
  }
  const int version = field<int>(doc, "schema_version");
  if (version != kGraphSchemaVersion) {
    throw SchemaError("unsupported graph schema version " + std::to_string(version) +
                      " (expected " + std::to_string(kGraphSchemaVersion) + ")");
  }
  const json& header = doc.contains("header") ? doc["header"] : json();
  ModelParams params;
  try {
    params = ModelParams::make(field<std::uint64_t>(header, "N"), field<double>(header, "alpha"),
                               field<double>(header, "nu"), field<std::uint64_t>(header, "seed"));
  } catch (const ParameterError& e) {
    throw ValidationError(std::string("graph header: ") + e.what());
  }
  const double stored_radius = field<double>(header, "R");
  if (std::fabs(stored_radius - params.radius) > 1e-12 * std::max(1.0, params.radius)) {
    throw ValidationError("graph header: R does not equal 2 ln(N/nu)");
  }
  params.radius = stored_radius;
  const auto edge_count = field<std::uint64_t>(header, "edge_count");
  const auto checksum = field<std::string>(header, "checksum");

  const auto raw_vertices = field<std::vector<std::vector<double>>>(doc, "vertices");
  const auto raw_edges = field<std::vector<std::vector<std::uint64_t>>>(doc, "edges");
  if (raw_vertices.size() != params.n) {
    throw ValidationError("graph file: header N=" + std::to_string(params.n) + " but " +
                          std::to_string(raw_vertices.size()) + " vertices");
  }
  if (raw_edges.size() != edge_count) {
    throw ValidationError("graph file: header edge_count does not match the edge list");
  }

  std::vector<Vertex> vertices(raw_vertices.size());
  for (std::size_t i = 0; i < raw_vertices.size(); ++i) {
    const auto& row = raw_vertices[i];
    if (row.size() != 3) throw SchemaError("graph file: vertex rows must be [id, r, theta]");
    if (row[0] != static_cast<double>(i)) {
      throw ValidationError("graph file: vertex ids must be 0..N-1 in order");
    }
    vertices[i] = Vertex{static_cast<VertexId>(i), PolarPoint{row[1], row[2]},
                         params.radius - row[1]};
  }
  std::vector<Edge> edges(raw_edges.size());
  for (std::size_t k = 0; k < raw_edges.size(); ++k) {
    const auto& row = raw_edges[k];
    if (row.size() != 2) throw SchemaError("graph file: edge rows must be [min_id, max_id]");
    if (row[0] >= params.n || row[1] >= params.n) {
      throw ValidationError("graph file: edge endpoint out of range");
    }
    edges[k] = Edge{static_cast<VertexId>(row[0]), static_cast<VertexId>(row[1])};
  }

  if (hex32(content_checksum(params, edge_count, vertices, edges)) != checksum) {
    throw ChecksumError("graph file: checksum mismatch");
  }

  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const PolarPoint& p = vertices[i].point;
    if (!(p.r >= 0.0 && p.r <= params.radius) || !(p.theta >= 0.0 && p.theta < kTwoPi)) {
      throw ValidationError("graph file: vertex " + std::to_string(i) + " lies outside the disk");
    }
    if (i > 0 && p.theta < vertices[i - 1].point.theta) {
      throw ValidationError("graph file: vertices are not sorted by angle");
    }
  }
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (edges[k].u >= edges[k].v) {
      throw ValidationError("graph file: adjacency is not symmetric-canonical: edge (" +
                            std::to_string(edges[k].u) + ", " + std::to_string(edges[k].v) +
                            ") is not stored as (min_id, max_id)");
    }
    if (k > 0 && !(edges[k - 1] < edges[k])) {
      throw ValidationError("graph file: edge list is not strictly lexicographic");
    }
  }
  const double threshold = adjacency_threshold(params.radius);
  for (const Edge& e : edges) {
    const auto a = CachedPoint::from(vertices[e.u].point);
    const auto b = CachedPoint::from(vertices[e.v].point);
    if (!(sinh2_half_distance(a, b) < threshold)) {
      throw ValidationError("graph file: edge (" + std::to_string(e.u) + ", " +
                            std::to_string(e.v) + ") joins points at distance >= R");
    }
  }
  return Graph(params, std::move(vertices), std::move(edges));
}

void save_graph(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_graph(g, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_graph(in);
}

}  // namespace hyperperc
