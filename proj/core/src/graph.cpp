#include "tubular/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>

#include "tubular/error.hpp"

namespace tubular {

std::string_view to_string(EdgeEnd end) { return end == EdgeEnd::Minus ? "minus" : "plus"; }

TubularGraph::TubularGraph(std::vector<std::string> vertices, std::vector<TubularEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].empty())
      throw InputError("vertices[" + std::to_string(i) + "]: empty vertex id");
    if (!vertex_index_.emplace(vertices_[i], i).second)
      throw InputError("vertices[" + std::to_string(i) + "]: duplicate vertex id \"" +
                       vertices_[i] + "\"");
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (e.id.empty()) throw InputError(where + ": empty edge id");
    if (!edge_index_.emplace(e.id, i).second)
      throw InputError(where + ": duplicate edge id \"" + e.id + "\"");
    if (!vertex_index_.contains(e.minus))
      throw InputError(where + " (\"" + e.id + "\").minus: unknown vertex \"" + e.minus + "\"");
    if (!vertex_index_.contains(e.plus))
      throw InputError(where + " (\"" + e.id + "\").plus: unknown vertex \"" + e.plus + "\"");
    if (e.z_minus.is_zero())
      throw InputError(where + " (\"" + e.id + "\").z_minus: zero inclusion vector");
    if (e.z_plus.is_zero())
      throw InputError(where + " (\"" + e.id + "\").z_plus: zero inclusion vector");
  }
}

bool TubularGraph::has_vertex(std::string_view id) const { return vertex_index_.contains(id); }

bool TubularGraph::has_edge(std::string_view id) const { return edge_index_.contains(id); }

std::size_t TubularGraph::vertex_index(std::string_view id) const {
  auto it = vertex_index_.find(id);
  if (it == vertex_index_.end()) throw InputError("unknown vertex \"" + std::string(id) + "\"");
  return it->second;
}

const TubularEdge& TubularGraph::edge(std::string_view id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) throw InputError("unknown edge \"" + std::string(id) + "\"");
  return edges_[it->second];
}

std::vector<std::size_t> TubularGraph::incident_edges(std::string_view v) const {
  vertex_index(v);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].minus == v || edges_[i].plus == v) out.push_back(i);
  }
  return out;
}

bool TubularGraph::is_connected() const {
  if (vertices_.empty()) return true;
  std::vector<std::size_t> parent(vertices_.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = vertices_.size();
  for (const auto& e : edges_) {
    auto a = find(vertex_index(e.minus));
    auto b = find(vertex_index(e.plus));
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

bool TubularGraph::is_tree() const {
  if (vertices_.empty()) return false;
  if (edges_.size() + 1 != vertices_.size()) return false;
  for (const auto& e : edges_)
    if (e.is_loop()) return false;
  return is_connected();
}

nlohmann::json to_json(const TubularGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"id", e.id},
                     {"minus", e.minus},
                     {"plus", e.plus},
                     {"z_minus", to_json(e.z_minus)},
                     {"z_plus", to_json(e.z_plus)}});
  }
  return {{"vertices", g.vertices()}, {"edges", std::move(edges)}};
}

namespace {

const nlohmann::json& require(const nlohmann::json& obj, const char* key,
                              const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing field \"" + key + "\"");
  return *it;
}

std::string require_string(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_string()) throw InputError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

}  // namespace

TubularGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("graph: expected a JSON object");
  const auto& jv = require(j, "vertices", "graph");
  if (!jv.is_array()) throw InputError("graph.vertices: expected an array");
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < jv.size(); ++i) {
    if (!jv[i].is_string())
      throw InputError("vertices[" + std::to_string(i) + "]: expected a string id");
    vertices.push_back(jv[i].get<std::string>());
  }
  std::vector<TubularEdge> edges;
  if (auto it = j.find("edges"); it != j.end()) {
    if (!it->is_array()) throw InputError("graph.edges: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& je = (*it)[i];
      const std::string where = "edges[" + std::to_string(i) + "]";
      if (!je.is_object()) throw InputError(where + ": expected an object");
      TubularEdge e;
      e.id = require_string(je, "id", where);
      e.minus = require_string(je, "minus", where);
      e.plus = require_string(je, "plus", where);
      e.z_minus = vector_from_json(require(je, "z_minus", where), where + ".z_minus");
      e.z_plus = vector_from_json(require(je, "z_plus", where), where + ".z_plus");
      edges.push_back(std::move(e));
    }
  }
  return TubularGraph(std::move(vertices), std::move(edges));
}

TubularGraph parse_graph(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("graph: ") + e.what());
  }
  return graph_from_json(j);
}

std::string serialize_graph(const TubularGraph& g) { return to_json(g).dump(2) + "\n"; }

std::vector<LatticeVector> parallelism_classes(const TubularGraph& g, std::string_view v) {
  std::vector<LatticeVector> classes;
  auto add = [&](const LatticeVector& z) {
    auto c = canonical_class(z);
    if (std::find(classes.begin(), classes.end(), c) == classes.end())
      classes.push_back(std::move(c));
  };
  for (std::size_t i : g.incident_edges(v)) {
    const auto& e = g.edges()[i];
    if (e.minus == v) add(e.z_minus);
    if (e.plus == v) add(e.z_plus);
  }
  return classes;
}

std::string_view to_string(CubulationVerdict verdict) {
  switch (verdict) {
    case CubulationVerdict::NotCocompactlyCubulated:
      return "NotCocompactlyCubulated";
    case CubulationVerdict::InconclusiveRequiresBSCheck:
      return "InconclusiveRequiresBSCheck";
  }
  return "?";
}

CubulationScreen cubulation_screen(const TubularGraph& g) {
  CubulationScreen out{CubulationVerdict::InconclusiveRequiresBSCheck, {}};
  for (const auto& v : g.vertices()) {
    auto n = parallelism_classes(g, v).size();
    out.class_counts[v] = n;
    if (n >= 3) out.verdict = CubulationVerdict::NotCocompactlyCubulated;
  }
  return out;
}

}  // namespace tubular

namespace tubular {

std::string graph_hash(const TubularGraph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize_graph(g)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out = "fnv1a64:";
  for (int shift = 60; shift >= 0; shift -= 4) out += digits[(h >> shift) & 0xf];
  return out;
}

}  // namespace tubular
