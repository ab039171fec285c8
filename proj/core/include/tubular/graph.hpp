#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tubular/lattice.hpp"

namespace tubular {

enum class EdgeEnd { Minus, Plus };

std::string_view to_string(EdgeEnd end);

struct TubularEdge {
  std::string id;
  std::string minus;  // vertex at the minus end
  std::string plus;   // vertex at the plus end
  LatticeVector z_minus;
  LatticeVector z_plus;

  const std::string& vertex(EdgeEnd end) const { return end == EdgeEnd::Minus ? minus : plus; }
  const LatticeVector& inclusion(EdgeEnd end) const {
    return end == EdgeEnd::Minus ? z_minus : z_plus;
  }
  bool is_loop() const { return minus == plus; }

  friend bool operator==(const TubularEdge&, const TubularEdge&) = default;
};

// A finite graph of groups with Z^2 vertex groups and Z edge groups. Each
// edge records where the edge-group generator lands in the vertex groups at
// its two ends. Loops and multi-edges are allowed.
class TubularGraph {
 public:
  TubularGraph() = default;
  // Validates ids, references and inclusion vectors; throws InputError.
  TubularGraph(std::vector<std::string> vertices, std::vector<TubularEdge> edges);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<TubularEdge>& edges() const { return edges_; }

  bool has_vertex(std::string_view id) const;
  bool has_edge(std::string_view id) const;
  std::size_t vertex_index(std::string_view id) const;  // throws if unknown
  const TubularEdge& edge(std::string_view id) const;   // throws if unknown

  // Indices into edges() of every edge with an end at v; loops appear once.
  std::vector<std::size_t> incident_edges(std::string_view v) const;

  bool is_connected() const;
  // Connected, loop-free and |E| = |V| - 1.
  bool is_tree() const;

  friend bool operator==(const TubularGraph& a, const TubularGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<TubularEdge> edges_;
  std::map<std::string, std::size_t, std::less<>> vertex_index_;
  std::map<std::string, std::size_t, std::less<>> edge_index_;
};

nlohmann::json to_json(const TubularGraph& g);
TubularGraph graph_from_json(const nlohmann::json& j);

TubularGraph parse_graph(std::string_view text);
// Byte-deterministic: sorted keys, vertices and edges in stored order.
std::string serialize_graph(const TubularGraph& g);

// Canonical primitive representatives of the edge inclusions at v, in order
// of first appearance (edges in stored order, minus end before plus end).
std::vector<LatticeVector> parallelism_classes(const TubularGraph& g, std::string_view v);

enum class CubulationVerdict { NotCocompactlyCubulated, InconclusiveRequiresBSCheck };

std::string_view to_string(CubulationVerdict verdict);

struct CubulationScreen {
  CubulationVerdict verdict;
  std::map<std::string, std::size_t> class_counts;  // per vertex
};

// A tubular group acting geometrically on a CAT(0) cube complex has at most
// two parallelism classes of edge groups at every vertex. Any vertex with
// three or more classes rules that out; otherwise the unbalanced
// Baumslag-Solitar condition would still need checking.
CubulationScreen cubulation_screen(const TubularGraph& g);

}  // namespace tubular

namespace tubular {

// FNV-1a 64 of serialize_graph(g), as "fnv1a64:<16 hex digits>".
std::string graph_hash(const TubularGraph& g);

}  // namespace tubular
